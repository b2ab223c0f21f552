// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hopfcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent group data: mismatched index sets, non-closed element sets,
// broken homomorphisms, non-idempotent projectors.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  LookupError(const std::string& what, bool unresolved = false)
      : Error(what), unresolved_(unresolved) {}
  bool unresolved() const { return unresolved_; }

 private:
  bool unresolved_;
};

// Δ_l restricted is singular (σ_min ≤ 1e-14·σ_max) at (l, α, β).
class ResonanceError : public Error {
 public:
  ResonanceError(int l, double alpha, double beta);
  int l() const { return l_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  int l_;
  double alpha_, beta_;
};

// A sampled modulus fell below the absolute floor on a contour.
class ZeroOnContourError : public Error {
 public:
  ZeroOnContourError(const std::string& what, double s) : Error(what), s_(s) {}
  double parameter() const { return s_; }

 private:
  double s_;
};

// Adaptive refinement hit its depth cap without resolving the phase.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Evaluation outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent user input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Newton divergence, step underflow, rejected orbits.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace hopfcert
