#pragma once

#include <stdexcept>
#include <string>

namespace mpsrg {

// Base class for every library error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Construction: ragged matrix list.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Construction: all site matrices zero, the state itself is null.
class NullState : public Error {
 public:
  using Error::Error;
};

// A spin configuration label outside [0, d).
class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

// d^m (or a dense operator of that size) exceeds the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An iterative optimizer hit its iteration cap on every start.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// |lambda_1| == |lambda_2| within tolerance: the generic fixed-point
// construction does not apply (GHZ-type states).
class DegenerateDominantEigenvalue : public Error {
 public:
  using Error::Error;
};

// Gauged left fixed-point matrix fails the Hermitian check beyond 1e-8.
class NonDiagonalizableFixedPoint : public Error {
 public:
  using Error::Error;
};

// Right fixed-point matrix is singular; the canonical gauge X X^dag does
// not exist and we refuse to guess.
class RankDeficientFixedPoint : public Error {
 public:
  using Error::Error;
};

// Concurrence is defined for qubit pairs only.
class NotQubits : public Error {
 public:
  using Error::Error;
};

// A model was given a coupling it does not accept (or vice versa).
class UnsupportedParameter : public Error {
 public:
  using Error::Error;
};

// Operation not available for this model (e.g. no parent Hamiltonian).
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

// Block size does not divide the chain length.
class BlockMismatch : public Error {
 public:
  using Error::Error;
};

// Derivative jump undefined because one side diverges.
class DivergedSide : public Error {
 public:
  using Error::Error;
};

// Scaling fit impossible: no variance in the abscissae.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// A user-supplied curve could not be evaluated inside a stencil.
class EvaluationFailed : public Error {
 public:
  using Error::Error;
};

// Internal consistency violated (e.g. entanglement below -1e-10).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpsrg
