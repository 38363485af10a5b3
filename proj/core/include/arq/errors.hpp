#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arq {

// Base class for all library errors. Subclasses keep enough context to emit a
// single-line diagnostic that names the offending field and location.
class Error : public std::runtime_error {
public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

enum class SchemaErrorKind {
    MissingColumn,
    UnknownLabel,
    DuplicateKey,
    EmptyInput,
    BadRow,
};

// Malformed input data: missing columns, labels outside the declared set,
// duplicate (participant, trial) keys, rows with the wrong shape.
class SchemaError : public Error {
public:
    SchemaError(SchemaErrorKind kind, std::string msg, std::string field = {}, long line = -1)
        : Error(std::move(msg)), kind_(kind), field_(std::move(field)), line_(line) {}

    SchemaErrorKind kind() const { return kind_; }
    const std::string& field() const { return field_; }
    long line() const { return line_; }  // 1-based input line (or row index for JSON), -1 if n/a

private:
    SchemaErrorKind kind_;
    std::string field_;
    long line_;
};

// Invalid caller-supplied option or configuration value.
class ArgumentError : public Error {
    using Error::Error;
};

// Request outside a function's mathematical domain (e.g. label-set size < 2).
class DomainError : public Error {
    using Error::Error;
};

// A statistical routine's preconditions do not hold for the given sample.
class PreconditionError : public Error {
    using Error::Error;
};

// Filesystem- or stream-level failure.
class IoError : public Error {
    using Error::Error;
};

}  // namespace arq
