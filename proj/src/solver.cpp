#include "idect/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "idect/convolution.hpp"
#include "idect/errors.hpp"

namespace idect {

namespace {

bool is_zero(const LegendreSeries& s) {
  return std::all_of(s.coeffs().begin(), s.coeffs().end(), [](double c) { return c == 0.0; });
}

bool uses_kernel(IntegralKind kind) {
  return kind == IntegralKind::Volterra || kind == IntegralKind::Fredholm ||
         kind == IntegralKind::FredholmAbs;
}

bool is_separable(IntegralKind kind) {
  return kind == IntegralKind::SeparableVolterra || kind == IntegralKind::SeparableFredholm;
}

std::size_t max_multiplier_degree(const PreparedProblem& p) {
  std::size_t m = std::max(p.g.degree(), p.h.degree());
  for (const auto& a : p.coeffs) m = std::max(m, a.degree());
  for (const auto& [phi, psi] : p.separable_terms) m = std::max({m, phi.degree(), psi.degree()});
  return m;
}

std::size_t core_bandwidth(const PreparedProblem& p) {
  if (p.kernel) {
    std::size_t m = p.kernel->degree();
    if (p.flipped_kernel) m = std::max(m, p.flipped_kernel->degree());
    return m + 2;
  }
  std::size_t bw = 1;
  for (const auto& [phi, psi] : p.separable_terms) bw = std::max(bw, phi.degree() + psi.degree() + 1);
  return bw;
}

// Degree at which every operator is built before cropping, so that the
// cropped block is free of truncation effects.
std::size_t working_degree(const PreparedProblem& p, std::size_t degree) {
  const std::size_t r = static_cast<std::size_t>(p.order);
  const std::size_t m = max_multiplier_degree(p);
  const std::size_t pad = 2 * r + 2 * m + core_bandwidth(p) + 4;
  return std::max(degree + pad, 2 * m + 2);
}

LegendreSeries lift(const LegendreSeries& a, int level) {
  if (level == 0) return a;
  auto c = band_matvec(sr_op(level, a.degree()), a.coeffs());
  return LegendreSeries(a.domain(), std::move(c), Basis{level});
}

std::vector<double> lifted_rhs(const PreparedProblem& p, std::size_t rows) {
  const auto f = lift(p.rhs, p.order);
  std::vector<double> out(rows, 0.0);
  std::copy_n(f.coeffs().begin(), std::min(rows, f.size()), out.begin());
  return out;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double matrix_inf_norm(const AlmostBandedMatrix& a) {
  double m = 0.0;
  for (const auto& row : a.dense_rows()) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    m = std::max(m, s);
  }
  const BandedMatrix& b = a.banded();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) s += std::abs(b(i, j));
    m = std::max(m, s);
  }
  return m;
}

}  // namespace

PreparedProblem prepare(const IdeProblem& problem, double tol) {
  if (problem.order < 0) throw DimensionMismatch("differential order must be non-negative");
  if (problem.coeffs.size() != static_cast<std::size_t>(problem.order) + 1) {
    throw DimensionMismatch("order " + std::to_string(problem.order) + " needs " +
                            std::to_string(problem.order + 1) + " coefficient functions, got " +
                            std::to_string(problem.coeffs.size()));
  }
  if (problem.constraints.size() != static_cast<std::size_t>(problem.order)) {
    throw ConstraintCountMismatch("order " + std::to_string(problem.order) + " needs " +
                                  std::to_string(problem.order) + " constraints, got " +
                                  std::to_string(problem.constraints.size()));
  }
  const Domain& d = problem.domain;
  const ApproxOptions opts{tol, 4096};
  PreparedProblem p;
  p.domain = d;
  p.order = problem.order;
  p.kind = problem.kind;
  p.integral_sign = problem.integral_sign;
  p.constraints = problem.constraints;
  for (int j = 0; j <= problem.order; ++j) {
    p.coeffs.push_back(lift(approximate(problem.coeffs[static_cast<std::size_t>(j)], d, opts), j));
  }
  if (uses_kernel(problem.kind)) {
    if (!problem.kernel) throw MissingFlippedKernel("integral term needs a kernel");
    p.kernel = approximate(problem.kernel, d, opts);
    if (problem.kind == IntegralKind::Fredholm) {
      const ScalarFunction& k = problem.kernel;
      p.flipped_kernel = approximate([&k](double u) { return k(-u); }, d, opts);
    }
  }
  if (is_separable(problem.kind)) {
    for (const auto& [phi, psi] : problem.separable_terms) {
      p.separable_terms.emplace_back(approximate(phi, d, opts), approximate(psi, d, opts));
    }
  }
  if (problem.kind != IntegralKind::None) {
    p.g = approximate(problem.g, d, opts);
    p.h = approximate(problem.h, d, opts);
  } else {
    p.g = LegendreSeries(d, {1.0});
    p.h = LegendreSeries(d, {1.0});
  }
  if (const auto* f = std::get_if<ScalarFunction>(&problem.rhs)) {
    p.rhs = approximate(*f, d, opts);
  } else {
    p.rhs = LegendreSeries(d, std::get<std::vector<double>>(problem.rhs));
  }
  return p;
}

BandedMatrix lowrank_volterra_block(const std::vector<std::pair<LegendreSeries, LegendreSeries>>& terms,
                                    std::size_t degree, const Domain& domain, bool definite) {
  std::size_t m = 0;
  for (const auto& [phi, psi] : terms) m = std::max({m, phi.degree(), psi.degree()});
  const std::size_t work = std::max(degree + 2 * m + 4, 2 * m + 2);
  const BandedMatrix q = definite ? defint_op(work, domain) : cumint_op(work, domain);
  BandedMatrix sum(work + 1, work + 1, 0, 0);
  for (const auto& [phi, psi] : terms) {
    sum = sum + mult_op(phi, work) * q * mult_op(psi, work);
  }
  return sum.crop(degree + 1, degree + 1);
}

BandedMatrix integral_core(const PreparedProblem& p, std::size_t degree) {
  switch (p.kind) {
    case IntegralKind::None:
      return BandedMatrix(degree + 1, degree + 1, 0, 0);
    case IntegralKind::Volterra:
      return volterra_op(*p.kernel, std::max(degree, p.kernel->degree() + 3)).crop(degree + 1, degree + 1);
    case IntegralKind::Fredholm:
      return fredholm_op(KernelPair{*p.kernel, p.flipped_kernel, false}, degree);
    case IntegralKind::FredholmAbs:
      return fredholm_op(KernelPair{*p.kernel, std::nullopt, true}, degree);
    case IntegralKind::SeparableVolterra:
      return lowrank_volterra_block(p.separable_terms, degree, p.domain, false);
    case IntegralKind::SeparableFredholm:
      return lowrank_volterra_block(p.separable_terms, degree, p.domain, true);
  }
  return BandedMatrix(degree + 1, degree + 1, 0, 0);
}

AssembledSystem assemble(const PreparedProblem& p, std::size_t degree) {
  const std::size_t r = static_cast<std::size_t>(p.order);
  if (p.constraints.size() != r) {
    throw ConstraintCountMismatch("order " + std::to_string(r) + " needs " + std::to_string(r) +
                                  " constraints, got " + std::to_string(p.constraints.size()));
  }
  if (degree + 1 <= r) throw TruncationError("truncation degree too small for the constraints");
  const std::size_t work = working_degree(p, degree);

  BandedMatrix op(work + 1, work + 1, 0, 0);
  for (std::size_t j = 0; j <= r; ++j) {
    const LegendreSeries& a = p.coeffs[j];
    if (is_zero(a)) continue;
    BandedMatrix term = mult_op(a, work);
    if (j > 0) term = term * diff_op(static_cast<int>(j), work, p.domain);
    for (std::size_t level = j; level < r; ++level) term = conv_op(Basis{static_cast<int>(level)}, work) * term;
    op = op + term;
  }
  if (p.kind != IntegralKind::None) {
    const BandedMatrix core = integral_core(p, work);
    BandedMatrix block = sr_op(p.order, work) * weighted_integral_block(p.g, core, p.h, work);
    op = op - p.integral_sign * std::move(block);
  }

  const std::size_t n = degree + 1;
  std::vector<std::vector<double>> dense;
  std::vector<double> rhs;
  for (const auto& c : p.constraints) {
    dense.push_back(constraint_row(c.functional, degree, p.domain));
    rhs.push_back(c.target);
  }
  const auto f = lifted_rhs(p, n - r);
  rhs.insert(rhs.end(), f.begin(), f.end());
  return {AlmostBandedMatrix(std::move(dense), op.crop(n - r, n).tightened()), std::move(rhs)};
}

AssembledSystem assemble(const IdeProblem& problem, std::size_t degree, double tol) {
  return assemble(prepare(problem, tol), degree);
}

Solution solve_at(const PreparedProblem& p, std::size_t degree, double tol) {
  AssembledSystem sys = assemble(p, degree);
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> x = aband_solve(sys.matrix, sys.rhs);
  const auto stop = std::chrono::steady_clock::now();

  Solution sol;
  sol.degree_used = degree;
  const auto ax = aband_matvec(sys.matrix, x);
  double res = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) res = std::max(res, std::abs(ax[i] - sys.rhs[i]));
  const double denom = matrix_inf_norm(sys.matrix) * inf_norm(x) + inf_norm(sys.rhs);
  sol.residual = denom > 0.0 ? res / denom : res;

  Diagnostics& diag = sol.diagnostics;
  diag.lower_bandwidth = sys.matrix.banded().lower();
  diag.upper_bandwidth = sys.matrix.banded().upper();
  diag.dense_rows = count_dense_rows(spy_pattern(sys.matrix), sys.matrix.size());
  diag.solve_seconds = std::chrono::duration<double>(stop - start).count();
  if (p.kernel) {
    diag.kernel_degree = p.kernel->degree();
    const std::size_t check_degree = std::max(degree, p.kernel->degree() + 3);
    diag.recurrence_residual = volterra_recurrence_residual(volterra_op(*p.kernel, check_degree));
    if (p.flipped_kernel) {
      const std::size_t d2 = std::max(degree, p.flipped_kernel->degree() + 3);
      diag.recurrence_residual = std::max(
          diag.recurrence_residual, volterra_recurrence_residual(volterra_op(*p.flipped_kernel, d2)));
    }
    if (diag.recurrence_residual > 1e-8) {
      diag.warnings.push_back("convolution recurrence residual " +
                              std::to_string(diag.recurrence_residual) + " exceeds 1e-8");
    }
  }

  const double scale = inf_norm(x);
  const std::size_t tail = std::min(x.size(), std::max<std::size_t>(5, x.size() / 32));
  double tail_max = 0.0;
  for (std::size_t i = x.size() - tail; i < x.size(); ++i) tail_max = std::max(tail_max, std::abs(x[i]));
  diag.trailing_magnitude = scale > 0.0 ? tail_max / scale : 0.0;
  sol.converged = diag.trailing_magnitude <= tol && sol.residual <= 1e3 * tol;
  sol.y = LegendreSeries(p.domain, std::move(x));
  return sol;
}

Solution solve(const PreparedProblem& p, const SolveOptions& options) {
  std::size_t degree = std::max<std::size_t>(options.n_min, static_cast<std::size_t>(p.order) + 1);
  for (;;) {
    Solution sol = solve_at(p, degree, options.tol);
    if (sol.converged) return sol;
    if (degree >= options.n_max) {
      sol.diagnostics.warnings.push_back("maximum degree " + std::to_string(options.n_max) +
                                         " reached before the coefficients decayed");
      return sol;
    }
    degree = std::min(2 * degree, options.n_max);
  }
}

Solution solve(const IdeProblem& problem, const SolveOptions& options) {
  return solve(prepare(problem, options.tol), options);
}

double max_error(const LegendreSeries& y, const ScalarFunction& reference, std::size_t points) {
  double err = 0.0;
  for (double t : equispaced(y.domain(), points)) {
    err = std::max(err, std::abs(evaluate(y, t) - reference(t)));
  }
  return err;
}

std::vector<ConvergenceRecord> convergence_study(const PreparedProblem& p,
                                                 const std::vector<std::size_t>& degrees,
                                                 const std::optional<ScalarFunction>& reference,
                                                 double tol) {
  ScalarFunction ref;
  if (reference) {
    ref = *reference;
  } else {
    const std::size_t top = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
    LegendreSeries ref_series = solve_at(p, 2 * top, tol).y;
    ref = [ref_series](double t) { return evaluate(ref_series, t); };
  }
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : degrees) out.push_back({n, max_error(solve_at(p, n, tol).y, ref)});
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> spy_pattern(const AlmostBandedMatrix& m,
                                                             double rel_threshold) {
  const double threshold = rel_threshold * m.max_abs();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t r = m.dense_count();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (std::abs(m.dense_rows()[i][j]) > threshold) out.emplace_back(i, j);
    }
  }
  const BandedMatrix& b = m.banded();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) {
      if (std::abs(b(i, j)) > threshold) out.emplace_back(i + r, j);
    }
  }
  return out;
}

std::size_t count_dense_rows(const std::vector<std::pair<std::size_t, std::size_t>>& pattern,
                             std::size_t n) {
  std::vector<std::size_t> per_row(n, 0);
  for (const auto& [i, j] : pattern) {
    if (i < n) ++per_row[i];
  }
  return static_cast<std::size_t>(
      std::count_if(per_row.begin(), per_row.end(), [n](std::size_t c) { return 2 * c > n; }));
}

}  // namespace idect
