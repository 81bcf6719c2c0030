#pragma once

#include <stdexcept>
#include <string>

namespace magnus {

// Base for every precondition violation raised by the library.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OutOfDomain : public DomainError {
public:
    using DomainError::DomainError;
};

enum class KernelErrorKind { BranchCut, OutOfDomain };

class KernelDomainError : public DomainError {
public:
    KernelDomainError(KernelErrorKind kind, const std::string& msg) : DomainError(msg), kind_(kind) {}
    KernelErrorKind kind() const { return kind_; }

private:
    KernelErrorKind kind_;
};

enum class LogabilityKind { SpectrumOnCut, NonPositiveDet };

class LogabilityError : public DomainError {
public:
    LogabilityError(LogabilityKind kind, const std::string& msg) : DomainError(msg), kind_(kind) {}
    LogabilityKind kind() const { return kind_; }

private:
    LogabilityKind kind_;
};

}  // namespace magnus
