// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace mfk {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid box domain (lower >= upper, empty bounds, length mismatch).
class InvalidDomainError : public Error {
public:
    using Error::Error;
};

/// Malformed caller input (dimension mismatch, non-finite values).
class InputError : public Error {
public:
    using Error::Error;
};

/// Correlation matrix could not be factorized even at the largest nugget.
class SingularCorrelationError : public Error {
public:
    using Error::Error;
};

/// Too few samples for the requested statistic.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// The GLS trend system F'R^-1 F is numerically non-positive.
class DegenerateTrendError : public Error {
public:
    using Error::Error;
};

/// An optimizer saw no finite objective value at all.
class TuningFailedError : public Error {
public:
    using Error::Error;
};

/// Malformed dataset, config, or model file.
class DataFormatError : public Error {
public:
    using Error::Error;
};

}  // namespace mfk
