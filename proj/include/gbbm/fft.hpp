#pragma once

#include <complex>
#include <cstddef>

namespace gbbm {

// Thin RAII wrappers over FFTW plans with owned, aligned buffers. Transforms
// are unnormalized and in place on buffer(). FFTW planning is not
// thread-safe; plans are created with FFTW_ESTIMATE so construction is cheap.
class ComplexFft {
public:
    explicit ComplexFft(std::size_t n);
    ~ComplexFft();
    ComplexFft(const ComplexFft&) = delete;
    ComplexFft& operator=(const ComplexFft&) = delete;

    std::size_t size() const { return n_; }
    std::complex<double>* buffer() { return buf_; }
    // buffer <- sum_m buffer[m] exp(-2 pi i j m / n)
    void forward();
    // buffer <- sum_j buffer[j] exp(+2 pi i j m / n)
    void backward();

private:
    std::size_t n_;
    std::complex<double>* buf_;
    void* fwd_;
    void* bwd_;
};

// Real <-> half-complex pair of size n (n/2 + 1 complex bins).
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const { return n_; }
    double* real() { return real_; }
    std::complex<double>* spectrum() { return spec_; }
    void forward();   // real -> spectrum
    void backward();  // spectrum -> real (destroys spectrum)

private:
    std::size_t n_;
    double* real_;
    std::complex<double>* spec_;
    void* fwd_;
    void* bwd_;
};

}  // namespace gbbm
