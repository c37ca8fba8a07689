#pragma once

#include <stdexcept>

namespace atstop {

/// Evaluation requested outside an MGF validity interval (or other
/// mathematical domain). Never silently extrapolated.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The MGF vanishes at the requested point, so its reciprocal is undefined.
class SingularLawError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The law cannot supply the number of moments/derivatives requested.
class InsufficientMomentsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace atstop
