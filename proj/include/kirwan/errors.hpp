#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kirwan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed. These indicate bugs or inputs that slipped
/// past a precondition; the CLI maps them to exit code 3.
class InvariantBreach : public Error {
public:
    using Error::Error;
};

class NotDivisible : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

class DepthExceeded : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

class NotInIdeal : public Error {
public:
    NotInIdeal(std::size_t row, const std::string& what)
        : Error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class InvalidPresentation : public Error {
public:
    using Error::Error;
};

class NotInvariant : public Error {
public:
    using Error::Error;
};

class TooManyVariables : public Error {
public:
    using Error::Error;
};

class NoPositiveDimensionalStabilizer : public Error {
public:
    using Error::Error;
};

class DegreeCapReached : public Error {
public:
    using Error::Error;
};

class DaggerViolation : public Error {
public:
    using Error::Error;
};

class RankUndetermined : public Error {
public:
    using Error::Error;
};

// cli-io errors

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
               const std::string& what)
        : Error(what), line_(line), column_(column), expected_(std::move(expected)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

class UnknownVariable : public Error {
public:
    UnknownVariable(std::string name, const std::string& what)
        : Error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    ValidationError(std::vector<std::string> violations, const std::string& what)
        : Error(what), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

} // namespace kirwan
