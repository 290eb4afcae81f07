#pragma once

#include <stdexcept>
#include <string>

namespace cyclerank {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class DegenerateSimplex : public Error {
public:
    DegenerateSimplex() : Error("points are affinely dependent") {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class NotPPower : public Error {
public:
    using Error::Error;
};

class InvalidPrime : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was hit. `cap()` names the offending key
/// ("order_cap", "perm_cap" or "enumeration_cap").
class CapExceeded : public Error {
public:
    CapExceeded(std::string cap, const std::string& detail)
        : Error(cap + " exceeded: " + detail), cap_(std::move(cap)) {}

    const std::string& cap() const noexcept { return cap_; }

private:
    std::string cap_;
};

class OrderCapExceeded : public CapExceeded {
public:
    explicit OrderCapExceeded(const std::string& detail)
        : CapExceeded("order_cap", detail) {}
};

class PermCapExceeded : public CapExceeded {
public:
    explicit PermCapExceeded(const std::string& detail)
        : CapExceeded("perm_cap", detail) {}
};

} // namespace cyclerank
