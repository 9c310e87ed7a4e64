#pragma once

#include <stdexcept>
#include <string>

namespace nanotrap {

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// r inside the fiber core, D <= 0, Sellmeier pole, and similar.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// V >= 2.405: more than one guided mode, outside the model's validity.
struct multimode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct no_guided_mode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No interior local minimum of the potential (condition on G2/G1 violated).
struct no_trap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_sum(partial) {}
    double partial_sum; // best estimate at the point of failure
};

struct saddle_point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nanotrap
