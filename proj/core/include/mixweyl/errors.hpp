#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixweyl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed coefficient expression; carries the byte offset of the fault.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Coefficient evaluation failed (sqrt of a negative, zero divisor, table range, ...).
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Complex or real division by an exact zero.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// The coefficient set violates a structural requirement (p(t) = 0, bad origin, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// lambda hits sigma(d) or sigma(M) on the evaluated grid, or is real where a nonreal value is required.
class InadmissibleLambda : public Error {
public:
    using Error::Error;
};

/// A magnitude left the representable range of the active precision mode.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// Index outside the stored window of a trajectory or sequence.
class WindowError : public Error {
public:
    using Error::Error;
};

/// Input to an identity check is not a solution of the equation it claims to solve.
class NotASolution : public Error {
public:
    using Error::Error;
};

/// A 2x2 system that must be uniquely solvable turned out singular.
class SingularSystem : public Error {
public:
    using Error::Error;
};

}  // namespace mixweyl
