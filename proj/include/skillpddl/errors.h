#pragma once

#include <stdexcept>
#include <string>

namespace skillpddl {

// Caller handed us something the contract rejects (bad id, empty data, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Broken internal invariant, e.g. a factor partially overlapping a mask.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A learned tree has more than one true leaf while strict mode is on.
class RestrictionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input; line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace skillpddl
