#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: wrong parameter values, malformed configs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual, const std::string& where);
    std::size_t expected;
    std::size_t actual;
};

class ParseError : public InvalidArgument {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& detail = {});
    std::size_t position;
    std::vector<std::string> expected;
};

/// Raised for failures of the numerics rather than of the input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class EmptySample : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularBasePoint : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularJacobian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularJacobianAtBase : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RadiusExceedsValidity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CenterNotInImage : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PreconditionFailed : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class WitnessFailed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnsupportedPayload : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

} // namespace holo
