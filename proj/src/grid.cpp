#include "snw/grid.hpp"

#include <numbers>

#include "snw/errors.hpp"

namespace snw {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

UniformGrid::UniformGrid(int n_, double h_) : n(n_), h(h_) {
    if (n < 8 || !is_power_of_two(n))
        throw validation_error("grid n must be a power of two >= 8");
    if (!(h > 0)) throw validation_error("grid spacing h must be > 0");
}

double UniformGrid::freq(int i) const {
    const int f = (i <= n / 2 - 1) ? i : i - n;  // bin n/2 maps to -n/2
    return 2.0 * std::numbers::pi * f / (n * h);
}

}  // namespace snw
