#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coherent label left the harmonic region |alpha| <= alpha_max.
class GuardViolation : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Zero-norm state handed to a measurement.
class ZeroNorm : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownMnemonic, MalformedNumber, UnboundVariable };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          kind_(kind), line_(line), column_(column), message_(message) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

}  // namespace catlab
