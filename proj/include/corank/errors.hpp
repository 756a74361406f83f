#pragma once

#include <stdexcept>
#include <string>

namespace corank {

/// Argument outside the domain of an operation (bad n, mu, eps, parity, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// A closed form exists only for odd n - mu; the caller must supply a
/// Monte Carlo moment instead.
class MomentUnavailable : public DomainError
{
  public:
    using DomainError::DomainError;
};

/// Iterative or statistical procedure failed (non-convergence, empty cells,
/// too many degenerate samples).  The message carries diagnostics.
class NumericError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An exact-arithmetic identity that must hold by theory did not.
class InternalError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

} // namespace corank
