#pragma once

#include <stdexcept>
#include <string>

namespace satq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// DIMACS / model-text input failures (bad header, literal out of range,
// clause too long, duplicate variable, clause count mismatch, ...).
struct ParseError : Error {
    using Error::Error;
};

// Assignment or spin vector length does not match the target model.
struct LengthMismatch : Error {
    using Error::Error;
};

// Formula fed to the gadget has a clause without exactly 3 distinct literals.
struct NotStrict3Sat : Error {
    using Error::Error;
};

// Retrieval system has no non-negative integer solution.
struct Infeasible : Error {
    using Error::Error;
};

// Bad solver/bench/CLI parameter (zero budget, population < 2, empty input, ...).
struct InvalidParam : Error {
    using Error::Error;
};

} // namespace satq
