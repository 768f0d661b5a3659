#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace snw {

// Cubic grid of n^3 points, spacing h, axes centered on the origin:
// coordinate of index i is (i - n/2) h. n must be a power of two >= 8
// (FFT efficiency and clean zero-padding to 2n).
struct UniformGrid {
    int n = 0;
    double h = 0.0;

    UniformGrid() = default;
    UniformGrid(int n_, double h_);

    std::size_t size() const { return std::size_t(n) * n * n; }
    double extent() const { return n * h; }
    double coord(int i) const { return (i - n / 2) * h; }
    double cell_volume() const { return h * h * h; }

    // Angular frequency of FFT bin i (standard wrap-around layout).
    double freq(int i) const;

    std::size_t index(int ix, int iy, int iz) const {
        return (std::size_t(ix) * n + iy) * n + iz;
    }

    bool operator==(const UniformGrid&) const = default;
};

bool is_power_of_two(int n);

}  // namespace snw
