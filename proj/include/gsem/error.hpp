#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsem {

/// Syntax error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, std::string message)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message)
    , file_(std::move(file))
    , line_(line)
    , column_(column)
    , message_(std::move(message)) {}

    std::string const &file() const { return file_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::string const &message() const { return message_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// Evaluation of a non-ground or ill-formed term, or integer overflow.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its configured size limit.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::string what, std::size_t size, std::size_t limit)
    : std::runtime_error(what + ": size " + std::to_string(size) + " exceeds limit " + std::to_string(limit))
    , size_(size)
    , limit_(limit) {}

    std::size_t size() const { return size_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

} // namespace gsem
