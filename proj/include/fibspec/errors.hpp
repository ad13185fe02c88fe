#pragma once

#include <stdexcept>
#include <string>

namespace fibspec {

/// Parameter outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative solver hit its iteration cap before reaching tolerance.
/// Signals a tolerance/scale bug rather than a mathematical failure.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A finite-section computation would be contaminated by the truncation cut.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// lambda is (numerically) a root of the characteristic polynomial, so
/// lambda*I - H has no bounded inverse.
class SingularResolvent : public std::runtime_error {
public:
    explicit SingularResolvent(const std::string& what) : std::runtime_error(what) {}
};

/// |lambda| <= 1: lambda lies in the spectrum, not the resolvent set.
class OutsideResolventSet : public std::runtime_error {
public:
    explicit OutsideResolventSet(const std::string& what) : std::runtime_error(what) {}
};

class NotAnEigenvalue : public std::runtime_error {
public:
    explicit NotAnEigenvalue(const std::string& what) : std::runtime_error(what) {}
};

/// The global grid probe found a lower objective value at the domain edge
/// than the local search did in the interior.
class NoInteriorMinimum : public std::runtime_error {
public:
    NoInteriorMinimum(const std::string& what, double edge_s, double edge_value)
        : std::runtime_error(what), edge_s(edge_s), edge_value(edge_value) {}
    double edge_s;
    double edge_value;
};

}  // namespace fibspec
