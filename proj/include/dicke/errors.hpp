#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid physical parameters (nonpositive frequency, negative coupling, ...).
class ParameterDomainError : public Error {
  public:
    using Error::Error;
};

/// Requested basis or cutoff exceeds the configured maximum.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Iterative eigensolver ran out of budget.
class SolverError : public Error {
  public:
    SolverError(const std::string &what, double best_residual)
        : Error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

  private:
    double best_residual_;
};

/// Cutoff growth hit capacity before the ground energy settled.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, std::vector<double> energies)
        : Error(what), energies_(std::move(energies)) {}
    const std::vector<double> &energies() const noexcept { return energies_; }

  private:
    std::vector<double> energies_;
};

/// Trace, positivity or purity check failed on a numerical object.
class NumericalIntegrityError : public Error {
  public:
    using Error::Error;
};

/// Closed form evaluated on the wrong side of the critical coupling.
class PhaseDomainError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the supported domain (grid coverage, window, normalisation).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Scaling fit could not be performed on the supplied data.
class FitDomainError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace dicke
