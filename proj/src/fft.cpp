#include "fft.hpp"

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace bohm::detail {

namespace {
// FFTW plan creation and destruction are not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n <= 0)
        throw std::invalid_argument("Fft: transform size must be positive");
    buf_ = fftw_alloc_complex(static_cast<size_t>(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
}

void Fft::run(fftw_plan plan, std::complex<double>* data, double scale) const {
    std::memcpy(buf_, data, sizeof(fftw_complex) * static_cast<size_t>(n_));
    fftw_execute(plan);
    auto* out = reinterpret_cast<std::complex<double>*>(buf_);
    if (scale == 1.0) {
        std::memcpy(data, out, sizeof(fftw_complex) * static_cast<size_t>(n_));
    } else {
        for (int j = 0; j < n_; ++j)
            data[j] = out[j] * scale;
    }
}

void Fft::forward(std::complex<double>* data) const {
    run(fwd_, data, 1.0);
}

void Fft::backward(std::complex<double>* data) const {
    run(bwd_, data, 1.0 / static_cast<double>(n_));
}

}  // namespace bohm::detail
