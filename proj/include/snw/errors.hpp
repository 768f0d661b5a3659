#pragma once

#include <stdexcept>
#include <string>

namespace snw {

// Bad input: invalid parameters, malformed config, grid mismatch. CLI exit code 2.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solver failed to converge. CLI exit code 3.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Asked for a ground state of a problem that has none (e.g. G = 0:
// a free wave-packet spreads without bound). CLI exit code 3.
struct no_ground_state_error : convergence_error {
    using convergence_error::convergence_error;
};

// A run completed but violated an asserted quality threshold. CLI exit code 4.
struct threshold_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace snw
