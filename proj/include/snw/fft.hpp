#pragma once

#include <complex>
#include <memory>

namespace snw {

// Thin RAII wrappers over FFTW double-precision plans. Plans are created with
// FFTW_ESTIMATE only: plan selection is then a pure function of the problem
// size, which keeps results bit-reproducible run to run. Plan creation and
// destruction are serialized internally (FFTW's planner is not thread-safe);
// execution on distinct buffers is safe concurrently.

class Fft3d {
  public:
    explicit Fft3d(int n);
    ~Fft3d();
    Fft3d(const Fft3d&) = delete;
    Fft3d& operator=(const Fft3d&) = delete;

    int n() const { return n_; }
    void forward(std::complex<double>* data) const;   // unnormalized, in place
    void inverse(std::complex<double>* data) const;   // divides by n^3

  private:
    int n_;
    void* plan_fwd_;
    void* plan_inv_;
};

class RealFft3d {
  public:
    explicit RealFft3d(int n);
    ~RealFft3d();
    RealFft3d(const RealFft3d&) = delete;
    RealFft3d& operator=(const RealFft3d&) = delete;

    int n() const { return n_; }
    std::size_t real_size() const;      // n^3
    std::size_t complex_size() const;   // n^2 (n/2+1)

    // out-of-place; input is preserved by neither direction
    void forward(double* in, std::complex<double>* out) const;
    void inverse(std::complex<double>* in, double* out) const;  // divides by n^3

  private:
    int n_;
    void* plan_fwd_;
    void* plan_inv_;
};

}  // namespace snw
