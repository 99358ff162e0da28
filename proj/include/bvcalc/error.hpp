#pragma once

#include <stdexcept>
#include <string>

namespace bvcalc {

// Bad input: malformed text, violated preconditions. Maps to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (tie in an extremum search, closed form
// disagreeing with the definition, ...). Maps to exit code 2.
class InvariantBreach : public std::logic_error {
public:
    explicit InvariantBreach(const std::string& what) : std::logic_error(what) {}
};

} // namespace bvcalc
