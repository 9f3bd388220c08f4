#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idect/almost_banded.hpp"
#include "idect/approx.hpp"
#include "idect/banded_matrix.hpp"
#include "idect/operators.hpp"

namespace idect {

enum class IntegralKind {
  None,
  Volterra,  // int_0^t k(t - s) h(s) y(s) ds
  Fredholm,  // int_0^T k(t - s) h(s) y(s) ds
  FredholmAbs,  // int_0^T k(|t - s|) h(s) y(s) ds
  SeparableVolterra,  // int_0^t sum_i phi_i(t) psi_i(s) y(s) ds
  SeparableFredholm,  // int_0^T sum_i phi_i(t) psi_i(s) y(s) ds
};

struct ConstraintRow {
  Functional functional;
  double target = 0.0;
};

/// One linear integro-differential equation on [0,T], stored with the
/// integral moved to the left:
///
///   sum_j a_j(t) y^(j)(t) - sign * g(t) (K h y)(t) = f(t),   B y = gamma.
///
/// So `integral_sign = +1` reads "L y = f + g int ...", and -1 reads
/// "L y + g int ... = f".
struct IdeProblem {
  Domain domain{1.0};
  int order = 0;
  std::vector<ScalarFunction> coeffs;  // a_0 .. a_order
  IntegralKind kind = IntegralKind::None;
  ScalarFunction kernel;  // k(u)
  ScalarFunction g = [](double) { return 1.0; };
  ScalarFunction h = [](double) { return 1.0; };
  double integral_sign = 1.0;
  /// f as a function of t, or its Legendre coefficients on [0,T].
  std::variant<ScalarFunction, std::vector<double>> rhs = ScalarFunction([](double) { return 0.0; });
  std::vector<ConstraintRow> constraints;
  /// Terms (phi_i, psi_i) for the separable kinds.
  std::vector<std::pair<ScalarFunction, ScalarFunction>> separable_terms;
};

/// Every function of an IdeProblem resolved to a Legendre series once.
struct PreparedProblem {
  Domain domain{1.0};
  int order = 0;
  std::vector<LegendreSeries> coeffs;  // a_j lifted to C^(j + 1/2)
  IntegralKind kind = IntegralKind::None;
  std::optional<LegendreSeries> kernel;
  std::optional<LegendreSeries> flipped_kernel;
  LegendreSeries g{Domain{1.0}, {1.0}};
  LegendreSeries h{Domain{1.0}, {1.0}};
  double integral_sign = 1.0;
  LegendreSeries rhs{Domain{1.0}, {0.0}};
  std::vector<ConstraintRow> constraints;
  std::vector<std::pair<LegendreSeries, LegendreSeries>> separable_terms;
};

/// Approximates every function at tolerance `tol`. Throws
/// ConstraintCountMismatch and anything `approximate` throws.
PreparedProblem prepare(const IdeProblem& problem, double tol);

struct AssembledSystem {
  AlmostBandedMatrix matrix;
  std::vector<double> rhs;
};

/// Truncated system at degree N: the constraint rows on top, then the first
/// N + 1 - r rows of L - sign S_[r] M[g] K M[h], and right-hand side
/// [gamma; S_[r] f].
AssembledSystem assemble(const PreparedProblem& problem, std::size_t degree);
AssembledSystem assemble(const IdeProblem& problem, std::size_t degree, double tol = 1e-13);

/// The integral operator K alone at degree N (before weights), for
/// inspection; zero matrix for IntegralKind::None.
BandedMatrix integral_core(const PreparedProblem& problem, std::size_t degree);

/// sum_i M[phi_i] Q M[psi_i], with Q the indefinite integral, or the
/// definite one when `definite` is set.
BandedMatrix lowrank_volterra_block(const std::vector<std::pair<LegendreSeries, LegendreSeries>>& terms,
                                    std::size_t degree, const Domain& domain,
                                    bool definite = false);

struct SolveOptions {
  double tol = 1e-13;
  std::size_t n_min = 32;
  std::size_t n_max = 4096;
};

struct Diagnostics {
  std::size_t lower_bandwidth = 0;  // of the banded block, tightened
  std::size_t upper_bandwidth = 0;
  std::size_t dense_rows = 0;
  std::size_t kernel_degree = 0;
  double recurrence_residual = 0.0;
  double solve_seconds = 0.0;
  double trailing_magnitude = 0.0;  // max |c| over the checked tail, relative
  std::vector<std::string> warnings;
};

struct Solution {
  LegendreSeries y{Domain{1.0}, {0.0}};
  std::size_t degree_used = 0;
  double residual = 0.0;  // ||A x - b|| / (||A|| ||x|| + ||b||), infinity norms
  bool converged = false;  // false: the degree cap was reached first
  Diagnostics diagnostics;
};

/// Solves the truncated system at a fixed degree.
Solution solve_at(const PreparedProblem& problem, std::size_t degree, double tol = 1e-13);

/// Doubles N from n_min until the last max(5, N/32) coefficients are below
/// tol * max|c| and the residual is below 1e3 * tol. When n_max is reached
/// first the last solution is returned with `converged = false`.
Solution solve(const IdeProblem& problem, const SolveOptions& options = {});
Solution solve(const PreparedProblem& problem, const SolveOptions& options);

struct ConvergenceRecord {
  std::size_t degree = 0;
  double max_error = 0.0;
};

/// Max error over 1000 equispaced points for each N, against `reference`
/// or, when absent, against a fixed solve at N = 2 max(N_list).
std::vector<ConvergenceRecord> convergence_study(const PreparedProblem& problem,
                                                 const std::vector<std::size_t>& degrees,
                                                 const std::optional<ScalarFunction>& reference,
                                                 double tol = 1e-13);

/// Max |y(t) - reference(t)| over `points` equispaced samples.
double max_error(const LegendreSeries& y, const ScalarFunction& reference,
                 std::size_t points = 1000);

/// (row, col) of entries with |a_ij| > rel_threshold * max|a|, row-major.
std::vector<std::pair<std::size_t, std::size_t>> spy_pattern(const AlmostBandedMatrix& m,
                                                             double rel_threshold = 1e-14);

/// Rows of a spy pattern holding more than half of the n columns.
std::size_t count_dense_rows(const std::vector<std::pair<std::size_t, std::size_t>>& pattern,
                             std::size_t n);

}  // namespace idect
