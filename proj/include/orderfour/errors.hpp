#ifndef ORDERFOUR_ERRORS_HPP
#define ORDERFOUR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orderfour {

// Base of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- jet arithmetic ---
struct DivisionByZeroJet : Error {
    DivisionByZeroJet() : Error("jet division by a jet with zero value") {}
};
struct DomainErrorJet : Error {
    using Error::Error;
};

// --- lexing / parsing ---
struct LexError : Error {
    std::size_t position;
    LexError(std::size_t pos, const std::string& what_arg)
        : Error("lex error at offset " + std::to_string(pos) + ": " + what_arg),
          position(pos) {}
};
struct ParseError : Error {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, const std::string& expected_set, const std::string& got)
        : Error("parse error at offset " + std::to_string(pos) + ": expected " +
                expected_set + ", got " + got),
          position(pos),
          expected(expected_set) {}
};
struct UnknownIdentifier : ParseError {
    UnknownIdentifier(std::size_t pos, const std::string& name)
        : ParseError(pos, "one of {x, pi, e, exp, ln, sin, cos, sqrt}", "'" + name + "'") {}
};

// --- evaluation ---
struct EvalDomainError : Error {
    std::size_t position;  // offset of the offending node in the source text
    EvalDomainError(std::size_t pos, const std::string& what_arg)
        : Error("domain error at offset " + std::to_string(pos) + ": " + what_arg),
          position(pos) {}
};

// --- iteration ---
struct DerivativeVanished : Error {
    DerivativeVanished() : Error("derivative vanished at the current iterate") {}
};
struct DenominatorVanished : Error {
    DenominatorVanished() : Error("method denominator vanished at the current iterate") {}
};
struct InvalidWeight : Error {
    InvalidWeight() : Error("weight function does not satisfy the fourth-order conditions") {}
};

// --- analysis ---
struct NoSignChange : Error {
    NoSignChange() : Error("bracket endpoints do not straddle a sign change") {}
};
struct NonConvergence : Error {
    using Error::Error;
};
struct InsufficientIterates : Error {
    InsufficientIterates()
        : Error("trace has fewer than three usable iterates; cannot estimate order") {}
};

}  // namespace orderfour

#endif
