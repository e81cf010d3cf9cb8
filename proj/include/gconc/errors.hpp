#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gconc {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class NotPSD : public Error {
public:
    using Error::Error;
};

class AlphaOutOfRange : public Error {
public:
    using Error::Error;
};

class NonFiniteResult : public Error {
public:
    using Error::Error;
};

class NonPositiveInput : public Error {
public:
    using Error::Error;
};

class MissingMeanPosPart : public Error {
public:
    using Error::Error;
};

class InvalidBoundForField : public Error {
public:
    using Error::Error;
};

/// Parse error carrying the byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownIdentifier : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class VariableIndexOutOfRange : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gconc
