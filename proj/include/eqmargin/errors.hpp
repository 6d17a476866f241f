#pragma once

#include <stdexcept>
#include <string>

namespace eqmargin {

// Invalid argument or parameter outside a function's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InsufficientDataError : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateDataError : public DomainError {
public:
    using DomainError::DomainError;
};

// A supplied interval's confidence level does not match the requested alpha.
class LevelMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

class UndefinedCorrelationError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

// Input that cannot be parsed at all (bad CSV, bad numeric literal).
class InputFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace eqmargin
