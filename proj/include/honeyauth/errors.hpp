#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace honeyauth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration: unknown profile ids, unknown policy keys, out-of-domain
// numeric parameters, missing attacker resources.
class ConfigError : public Error {
public:
    using Error::Error;
};

class EnrollError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

class TrainError : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    using Error::Error;
};

// Raised when the honeychecker cannot be reached or answers garbage.
class CheckerUnavailable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    // 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace honeyauth
