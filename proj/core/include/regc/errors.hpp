#pragma once

#include <stdexcept>
#include <string>

namespace regc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition (bad sizes, out-of-range
/// parameters, overlapping vertex sets, ...).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// Input data could not be read or parsed (missing file, malformed CSV,
/// empty dataset after cleaning, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

/// A numeric procedure failed (degenerate kernel bandwidth, eigensolver
/// failure, reduced graph too small for the requested cluster count, ...).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace regc
