#pragma once

#include <stdexcept>
#include <string>

namespace noma {

// Precondition violated by the caller.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Scenario configuration that cannot be realised.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or schema-violating input file.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant; should never fire.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Capacity pair outside the power budget.
struct infeasible_capacity : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace noma
