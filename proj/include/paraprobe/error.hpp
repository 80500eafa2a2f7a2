#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace paraprobe {

// Base for everything thrown by this library. Subclasses map onto the CLI
// exit codes: parse/validation/format/io -> 2, transport/provider -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (bad record syntax, missing fields).
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally valid input that violates a domain constraint.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Vector dimension disagreement.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Unrecognized or incompatible file format / schema version.
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem failures (unwritable path, short read).
class IoError : public Error {
public:
    using Error::Error;
};

// Network failure or timeout after exhausting retries.
class TransportError : public Error {
public:
    using Error::Error;
};

// Provider answered but the response is unusable.
class ProviderError : public Error {
public:
    using Error::Error;
};

// Provider returned fewer usable texts than requested; carries what it did return.
class DegradedOutputError : public ProviderError {
public:
    DegradedOutputError(const std::string& what, std::vector<std::string> returned)
        : ProviderError(what), returned_(std::move(returned)) {}

    const std::vector<std::string>& returned() const { return returned_; }

private:
    std::vector<std::string> returned_;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int data = 2;
inline constexpr int provider = 3;
} // namespace exit_code

} // namespace paraprobe
