#pragma once

#include <stdexcept>
#include <string>

namespace copml {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape disagreement between matrix operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Fixed-point scale bookkeeping violation (e.g. adding values at different scales).
class ScaleMismatchError : public Error {
public:
    using Error::Error;
};

/// A signed value left the representable range of the field embedding.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Not enough shares / evaluations to interpolate, or duplicate points.
class InsufficientSharesError : public Error {
public:
    using Error::Error;
};

/// Protocol configuration violates a required inequality.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Transport misuse: unknown party, duplicate round tag, missing message.
class TransportError : public Error {
public:
    using Error::Error;
};

} // namespace copml
