#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsc {

/// Base class of every error raised by the compiler pipeline.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t col)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line_(line), col_(col) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

class UnsupportedGate : public Error {
public:
    explicit UnsupportedGate(std::string name)
        : Error("unsupported gate: " + name), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class MultiRegister : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidRoutingCount : public Error {
public:
    using Error::Error;
};

class TooManyQubits : public Error {
public:
    using Error::Error;
};

class NoBoundaryBus : public Error {
public:
    using Error::Error;
};

class NoPath : public Error {
public:
    using Error::Error;
};

class NoSpace : public Error {
public:
    using Error::Error;
};

class Unplaceable : public Error {
public:
    using Error::Error;
};

class SchedulingDeadlock : public Error {
public:
    using Error::Error;
};

class MismatchedInputs : public Error {
public:
    using Error::Error;
};

}  // namespace lsc
