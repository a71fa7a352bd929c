#include <string>
#include <vector>

#include "gbbm/experiment.hpp"

int main(int argc, char** argv) {
    return gbbm::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
