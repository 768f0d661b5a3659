#include "snw/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "snw/errors.hpp"

namespace snw {

// FFTW's planner mutates global state; serialize all plan create/destroy.
static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

Fft3d::Fft3d(int n) : n_(n) {
    if (n < 2) throw validation_error("fft size must be >= 2");
    std::lock_guard lock(planner_mutex());
    // Plan against a dummy buffer; executions use the new-array interface.
    // FFTW_UNALIGNED keeps the plan valid for any caller allocation.
    fftw_complex* dummy = fftw_alloc_complex(std::size_t(n) * n * n);
    plan_fwd_ = fftw_plan_dft_3d(n, n, n, dummy, dummy, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_inv_ = fftw_plan_dft_3d(n, n, n, dummy, dummy, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(dummy);
    if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("fftw plan failed");
}

Fft3d::~Fft3d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Fft3d::forward(std::complex<double>* data) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void Fft3d::inverse(std::complex<double>* data) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_inv_),
                     reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
    const double scale = 1.0 / (double(n_) * n_ * n_);
    const std::size_t total = std::size_t(n_) * n_ * n_;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

RealFft3d::RealFft3d(int n) : n_(n) {
    if (n < 2) throw validation_error("fft size must be >= 2");
    std::lock_guard lock(planner_mutex());
    double* din = fftw_alloc_real(real_size());
    fftw_complex* dout = fftw_alloc_complex(complex_size());
    plan_fwd_ = fftw_plan_dft_r2c_3d(n, n, n, din, dout,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_inv_ = fftw_plan_dft_c2r_3d(n, n, n, dout, din,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(din);
    fftw_free(dout);
    if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("fftw plan failed");
}

RealFft3d::~RealFft3d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

std::size_t RealFft3d::real_size() const { return std::size_t(n_) * n_ * n_; }

std::size_t RealFft3d::complex_size() const {
    return std::size_t(n_) * n_ * (n_ / 2 + 1);
}

void RealFft3d::forward(double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), in,
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFft3d::inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_inv_),
                         reinterpret_cast<fftw_complex*>(in), out);
    const double scale = 1.0 / (double(n_) * n_ * n_);
    const std::size_t total = real_size();
    for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

}  // namespace snw
