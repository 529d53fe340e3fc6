#pragma once

#include <stdexcept>
#include <string>

namespace baker {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation. The CLI maps these to exit code 2.
class DomainError : public Error {
public:
    using Error::Error;
};

class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

class BranchCutError : public DomainError {
public:
    using DomainError::DomainError;
};

class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

// An iteration ran out of budget. The CLI maps these to exit code 3.
class NoConvergence : public Error {
public:
    using Error::Error;
};

class StepCollapse : public NoConvergence {
public:
    using NoConvergence::NoConvergence;
};

class ScanExhausted : public NoConvergence {
public:
    using NoConvergence::NoConvergence;
};

class NestingViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace baker
