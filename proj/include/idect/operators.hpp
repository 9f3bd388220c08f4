#pragma once

#include <cstddef>
#include <vector>

#include "idect/approx.hpp"
#include "idect/banded_matrix.hpp"

namespace idect {

// Truncated coefficient-space operators on [0,T]. Every builder takes the
// truncation degree N and returns an (N+1) x (N+1) matrix whose entries are
// the exact top-left block of the infinite operator.

/// d^order/dt^order as a map P -> C^(order + 1/2). Single superdiagonal at
/// offset `order` holding (2 order - 1)!! (2/T)^order.
BandedMatrix diff_op(int order, std::size_t degree, const Domain& domain);

/// Conversion S_lambda : C^(lambda) -> C^(lambda + 1) for lambda = from.lambda().
/// Diagonal lambda/(n + lambda), second superdiagonal -lambda/(n + lambda).
BandedMatrix conv_op(Basis from, std::size_t degree);

/// S_[r] = S_{r-1/2} ... S_{1/2} : P -> C^(r + 1/2); identity for r = 0.
BandedMatrix sr_op(int r, std::size_t degree);

/// Indefinite integral from 0, P -> P. Bandwidths (1, 1).
BandedMatrix cumint_op(std::size_t degree, const Domain& domain);

/// Integral over [0,T] placed in the constant coefficient, P -> P.
BandedMatrix defint_op(std::size_t degree, const Domain& domain);

/// Multiplication by x on [-1,1] in the C^(lambda) basis (tridiagonal).
BandedMatrix jacobi_op(Basis basis, std::size_t degree);

/// Multiplication by f in f's own coefficient space, evaluated as
/// sum_n f_n C_n(J) with Clenshaw's recurrence in a matrix argument. Built
/// at degree N + m + 1 and cropped, so no entry is polluted by truncation.
/// Throws DegreeError if 2m + 2 > N for f of degree m.
BandedMatrix mult_op(const LegendreSeries& f, std::size_t degree);

/// diag(1, -1, 1, ...): coefficients of t -> T - t.
BandedMatrix flip_op(std::size_t degree);

/// A linear functional on Legendre coefficients.
struct Functional {
  enum class Kind { Eval, DerivEval, Integral };

  Kind kind = Kind::Eval;
  double point = 0.0;  // Eval / DerivEval only

  static Functional eval(double t0) { return {Kind::Eval, t0}; }
  static Functional deriv(double t0) { return {Kind::DerivEval, t0}; }
  static Functional integral() { return {Kind::Integral, 0.0}; }
};

/// Dense row [phi(P_0), ..., phi(P_N)]. Throws DomainError for t0 outside [0,T].
std::vector<double> constraint_row(const Functional& functional, std::size_t degree,
                                   const Domain& domain);

}  // namespace idect
