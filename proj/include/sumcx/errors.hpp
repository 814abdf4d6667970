#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumcx {

// Bad arguments: out-of-range k, malformed group or subset strings, etc.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A residue tuple that is not reduced modulo its factor orders.
class InvalidElement : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// The requested m (from the log-n formula) does not fit inside the group.
class RegimeError : public ParameterError {
 public:
  RegimeError(const std::string& what, long long m, long long n)
      : ParameterError(what), m_(m), n_(n) {}
  long long m() const { return m_; }
  long long n() const { return n_; }

 private:
  long long m_;
  long long n_;
};

// Iterative eigensolver ran out of iterations. Carries what it had.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_estimate, double residual,
              std::size_t iterations)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        residual_(residual),
        iterations_(iterations) {}
  double best_estimate() const { return best_estimate_; }
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double best_estimate_;
  double residual_;
  std::size_t iterations_;
};

// A proven inequality or identity failed on a computed instance.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sumcx
