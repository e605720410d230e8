#pragma once

#include <stdexcept>
#include <string>

namespace tforms {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or argument lies outside what an operation supports.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A truncated series was asked for a coefficient it does not know.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed (bad model data, inconsistent counts, ...).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace tforms
