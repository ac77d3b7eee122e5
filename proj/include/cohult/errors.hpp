#pragma once

#include <stdexcept>
#include <string>

namespace cohult {

// Base class for everything thrown by the library.  Catching cohult::Error at
// a tool boundary is enough to turn any library failure into a clean exit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (s-expressions, scenario files, structure files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A precondition of an operation was violated (arity mismatch, tuple not a
// subset, base-set mismatch, and so on).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An operation that requires a proper (or ultra) input was handed one that
// is not.
class ImproperInputError : public Error {
public:
    using Error::Error;
};

// A membership query succeeded but the promised witness could not be
// produced.  This flags a properness failure in a derived filter.
class WitnessNotFoundError : public Error {
public:
    using Error::Error;
};

// A requested exhaustive run would exceed the documented budget.  The
// message carries the case-count estimate.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Vocabulary lookups gone wrong: unknown symbol, wrong arity, unbound
// variable, profile mismatch.
class VocabularyError : public Error {
public:
    using Error::Error;
};

// Internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

}  // namespace cohult
