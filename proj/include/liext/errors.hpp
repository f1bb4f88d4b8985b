#pragma once

#include <stdexcept>
#include <string>

namespace liext {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed expression or spec text. `position` is a byte offset, `line` is 1-based (0 if unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
        : Error(what), position_(position), line_(line) {}
    std::size_t position() const { return position_; }
    std::size_t line() const { return line_; }

private:
    std::size_t position_;
    std::size_t line_;
};

/// Result would leave the expression domain (nested exp, substitution into opaque symbols, ...).
class DomainError : public Error {
    using Error::Error;
};

class DivisionByZero : public Error {
    using Error::Error;
};

/// Denominator vanished at an evaluation point.
class SingularPoint : public Error {
    using Error::Error;
};

/// An atom has no value at an evaluation point.
class UnassignedAtom : public Error {
    using Error::Error;
};

class OrderOverflow : public Error {
    using Error::Error;
};

class NotClosed : public Error {
    using Error::Error;
};

class DependentBasis : public Error {
    using Error::Error;
};

class NotInverse : public Error {
    using Error::Error;
};

class AnsatzNotInvariant : public Error {
    using Error::Error;
};

class EmptyFamily : public Error {
    using Error::Error;
};

class AllSamplesSingular : public Error {
    using Error::Error;
};

/// Semantic problem in a problem spec (undeclared names, bad parameters).
class SpecError : public Error {
public:
    SpecError(const std::string& what, std::size_t line = 0) : Error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

using DomainEscape = DomainError;

}  // namespace liext
