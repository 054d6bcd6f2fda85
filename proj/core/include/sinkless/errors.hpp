#pragma once

#include <stdexcept>
#include <string>

namespace sinkless {

// Violated operation precondition (bad input shape, girth too small, ...).
// The CLI maps these to exit code 2.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured budget was exhausted (generator attempt cap, enumeration bit
// budget, round budget). The CLI maps these to exit code 1.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number for diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace sinkless
