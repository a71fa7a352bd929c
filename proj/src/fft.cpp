#include "gbbm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace gbbm {

namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

ComplexFft::ComplexFft(std::size_t n) : n_(n) {
    buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf_) throw std::bad_alloc();
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    const std::lock_guard lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(buf_);
}

void ComplexFft::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }
void ComplexFft::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

RealFft::RealFft(std::size_t n) : n_(n) {
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    spec_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    if (!real_ || !spec_) throw std::bad_alloc();
    auto* s = reinterpret_cast<fftw_complex*>(spec_);
    const std::lock_guard lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, s, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), s, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(real_);
    fftw_free(spec_);
}

void RealFft::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }
void RealFft::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

}  // namespace gbbm
