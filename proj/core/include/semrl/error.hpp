#pragma once

#include <stdexcept>
#include <string>

namespace semrl {

/// Base error for everything this library throws on bad input or broken
/// preconditions. The message is meant to be shown to the user as-is.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error while reading a text input (INP file, CSV, rule file).
/// Carries a human-readable location ("[PIPES] line 12", "measurements line 3").
class ParseError : public Error {
public:
    ParseError(const std::string& location, const std::string& msg)
        : Error(location + ": " + msg), location_(location) {}

    const std::string& location() const { return location_; }

private:
    std::string location_;
};

} // namespace semrl
