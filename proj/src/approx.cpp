#include "idect/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "idect/errors.hpp"

namespace idect {

Domain::Domain(double length) : length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("interval length T must be positive and finite, got " +
                      std::to_string(length));
  }
}

bool Domain::contains(double t) const noexcept {
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * length_;
  return t >= -slack && t <= length_ + slack;
}

LegendreSeries::LegendreSeries(Domain domain, std::vector<double> coeffs, Basis basis)
    : domain_(domain), basis_(basis), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (basis_.level < 0) throw DomainMismatch("basis level must be non-negative");
}

double LegendreSeries::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double LegendreSeries::operator()(double t) const { return evaluate(*this, t); }

namespace {

// Clenshaw for sum c_n C_n^(lambda)(x), using
// C_{n+1} = (2(n+lambda) x C_n - (n+2lambda-1) C_{n-1}) / (n+1).
double clenshaw(std::span<const double> c, double lambda, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    const double kd = static_cast<double>(k);
    const double alpha = 2.0 * (kd + lambda) * x / (kd + 1.0);
    const double beta_next = -(kd + 1.0 + 2.0 * lambda - 1.0) / (kd + 2.0);
    const double b0 = c[k] + alpha * b1 + beta_next * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

// Chebyshev coefficients of the interpolant through values at
// x_j = cos(pi j / N), j = 0..N.
std::vector<double> chebyshev_from_values(std::span<const double> values) {
  const std::size_t n = values.size() - 1;
  if (n == 0) return {values[0]};
  std::vector<double> cos_table(2 * n);
  for (std::size_t m = 0; m < 2 * n; ++m) {
    cos_table[m] = std::cos(std::numbers::pi * static_cast<double>(m) /
                            static_cast<double>(n));
  }
  std::vector<double> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    double sum = 0.5 * (values[0] + ((k % 2 == 0) ? values[n] : -values[n]));
    for (std::size_t j = 1; j < n; ++j) {
      sum += values[j] * cos_table[(j * k) % (2 * n)];
    }
    coeffs[k] = 2.0 * sum / static_cast<double>(n);
  }
  coeffs[0] *= 0.5;
  coeffs[n] *= 0.5;
  return coeffs;
}

}  // namespace

std::vector<double> cheb_to_leg(std::span<const double> cheb) {
  const std::size_t n = cheb.size();
  std::vector<double> leg(n, 0.0);
  if (n == 0) return leg;
  // Legendre coefficients of T_{k-1} and T_k, built with T_{k+1} = 2x T_k - T_{k-1}.
  std::vector<double> prev(n, 0.0), curr(n, 0.0), next(n, 0.0);
  prev[0] = 1.0;
  leg[0] += cheb[0];
  if (n == 1) return leg;
  curr[1] = 1.0;
  leg[1] += cheb[1];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(k + 2), 0.0);
    // x P_j = ((j+1) P_{j+1} + j P_{j-1}) / (2j+1)
    for (std::size_t j = 0; j <= k; ++j) {
      if (curr[j] == 0.0) continue;
      const double jd = static_cast<double>(j);
      const double v = 2.0 * curr[j] / (2.0 * jd + 1.0);
      next[j + 1] += (jd + 1.0) * v;
      if (j > 0) next[j - 1] += jd * v;
    }
    for (std::size_t j = 0; j + 1 <= k; ++j) next[j] -= prev[j];
    const double c = cheb[k + 1];
    for (std::size_t j = 0; j <= k + 1; ++j) leg[j] += c * next[j];
    std::swap(prev, curr);
    std::swap(curr, next);
  }
  return leg;
}

std::vector<double> leg_to_cheb(std::span<const double> leg) {
  const std::size_t n = leg.size();
  std::vector<double> cheb(n, 0.0);
  if (n == 0) return cheb;
  // Chebyshev coefficients of P_{k-1} and P_k, built with
  // P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1).
  std::vector<double> prev(n, 0.0), curr(n, 0.0), next(n, 0.0);
  prev[0] = 1.0;
  cheb[0] += leg[0];
  if (n == 1) return cheb;
  curr[1] = 1.0;
  cheb[1] += leg[1];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(k + 2), 0.0);
    const double kd = static_cast<double>(k);
    const double a = (2.0 * kd + 1.0) / (kd + 1.0);
    const double b = kd / (kd + 1.0);
    // x T_0 = T_1, x T_j = (T_{j+1} + T_{j-1}) / 2
    for (std::size_t j = 0; j <= k; ++j) {
      if (curr[j] == 0.0) continue;
      if (j == 0) {
        next[1] += a * curr[0];
      } else {
        next[j + 1] += 0.5 * a * curr[j];
        next[j - 1] += 0.5 * a * curr[j];
      }
    }
    for (std::size_t j = 0; j + 1 <= k; ++j) next[j] -= b * prev[j];
    const double c = leg[k + 1];
    for (std::size_t j = 0; j <= k + 1; ++j) cheb[j] += c * next[j];
    std::swap(prev, curr);
    std::swap(curr, next);
  }
  return cheb;
}

std::vector<double> interpolate_legendre(const ScalarFunction& f, const Domain& domain,
                                         std::size_t degree) {
  std::vector<double> values(degree + 1);
  for (std::size_t j = 0; j <= degree; ++j) {
    const double x = degree == 0 ? 0.0
                                 : std::cos(std::numbers::pi * static_cast<double>(j) /
                                            static_cast<double>(degree));
    const double t = std::clamp(domain.from_reference(x), 0.0, domain.length());
    values[j] = f(t);
    if (!std::isfinite(values[j])) {
      throw EvalError("function returned a non-finite value at t = " +
                      std::to_string(t));
    }
  }
  return cheb_to_leg(chebyshev_from_values(values));
}

LegendreSeries approximate(const ScalarFunction& f, const Domain& domain,
                           const ApproxOptions& options) {
  if (!(options.tol > 0.0)) throw ResolutionFailure("tolerance must be positive");
  for (std::size_t n = 16;; n *= 2) {
    const std::size_t degree = std::min(n, options.max_degree);
    LegendreSeries series(domain, interpolate_legendre(f, domain, degree));
    const double scale = series.max_abs();
    if (scale == 0.0) return LegendreSeries(domain, {0.0});
    const auto c = series.coeffs();
    const std::size_t tail = std::min<std::size_t>(3, c.size());
    const bool resolved = std::all_of(c.end() - static_cast<std::ptrdiff_t>(tail), c.end(),
                                      [&](double v) { return std::abs(v) <= options.tol * scale; });
    if (resolved) return truncate(series, options.tol);
    if (degree >= options.max_degree) {
      throw ResolutionFailure("no trailing decay below tol = " + std::to_string(options.tol) +
                              " up to degree " + std::to_string(options.max_degree));
    }
  }
}

std::vector<double> evaluate(const LegendreSeries& series, std::span<const double> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (double t : points) out.push_back(evaluate(series, t));
  return out;
}

double evaluate(const LegendreSeries& series, double t) {
  const Domain& d = series.domain();
  if (!d.contains(t)) {
    throw DomainError("evaluation point t = " + std::to_string(t) + " outside [0, " +
                      std::to_string(d.length()) + "]");
  }
  const double x = std::clamp(d.to_reference(t), -1.0, 1.0);
  return clenshaw(series.coeffs(), series.basis().lambda(), x);
}

LegendreSeries truncate(const LegendreSeries& series, double tol) {
  const auto c = series.coeffs();
  const double cutoff = tol * series.max_abs();
  std::size_t keep = c.size();
  while (keep > 1 && std::abs(c[keep - 1]) <= cutoff) --keep;
  return LegendreSeries(series.domain(), std::vector<double>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(keep)),
                        series.basis());
}

LegendreSeries pad(const LegendreSeries& series, std::size_t degree) {
  std::vector<double> c(series.coeffs().begin(), series.coeffs().end());
  if (c.size() < degree + 1) c.resize(degree + 1, 0.0);
  return LegendreSeries(series.domain(), std::move(c), series.basis());
}

std::vector<double> equispaced(const Domain& domain, std::size_t count) {
  std::vector<double> t(count, 0.0);
  if (count == 1) return t;
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = domain.length() * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  t.back() = domain.length();
  return t;
}

}  // namespace idect
