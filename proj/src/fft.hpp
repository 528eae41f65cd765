#pragma once

#include <fftw3.h>

#include <complex>

namespace bohm::detail {

// RAII wrapper over an FFTW plan pair for one transform size. Owns an
// aligned scratch buffer; callers pass plain std::complex arrays.
class Fft {
public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // In-place DFT, exp(-2*pi*i*m*j/n) convention, unnormalized.
    void forward(std::complex<double>* data) const;
    // In-place inverse DFT including the 1/n factor.
    void backward(std::complex<double>* data) const;

    int size() const { return n_; }

private:
    void run(fftw_plan plan, std::complex<double>* data, double scale) const;

    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

}  // namespace bohm::detail
