#pragma once

#include <stdexcept>
#include <string>

namespace snowwalk {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested construction would exceed a configured resource cap.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Input data is malformed or inconsistent (bad file, unknown id, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Structured-text input could not be parsed.
class ParseError : public DataError {
public:
    using DataError::DataError;
};

/// A discretization produced no usable interior nodes.
class DegenerateMeshError : public DataError {
public:
    using DataError::DataError;
};

/// The walk graph is disconnected or has a node with no outgoing weight.
class ConnectivityError : public DataError {
public:
    using DataError::DataError;
};

/// No node satisfies a start-selector predicate.
class SelectionError : public DataError {
public:
    using DataError::DataError;
};

/// An operation was called outside its stated preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical procedure failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace snowwalk
