#pragma once

#include <stdexcept>
#include <string>

namespace motamot {

// Base of every error raised by the library. Callers that only need the
// message can catch this; the CLI and the HTTP layer map subclasses to exit
// codes and status codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

// Optimistic revision check failed.
class Conflict : public Error {
public:
    Conflict(std::string id, long expected, long actual)
        : Error("revision conflict on " + id + ": expected " + std::to_string(expected) +
                ", stored " + std::to_string(actual)),
          id_(std::move(id)), expected_(expected), actual_(actual) {}

    const std::string& id() const { return id_; }
    long expected() const { return expected_; }
    long actual() const { return actual_; }

private:
    std::string id_;
    long expected_;
    long actual_;
};

class XmlError : public Error {
public:
    XmlError(const std::string& what, long line, long column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    long line() const { return line_; }
    long column() const { return column_; }

private:
    long line_;
    long column_;
};

}  // namespace motamot
