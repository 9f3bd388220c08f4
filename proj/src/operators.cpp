#include "idect/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idect/errors.hpp"

namespace idect {

BandedMatrix diff_op(int order, std::size_t degree, const Domain& domain) {
  if (order < 1) throw DegreeError("differentiation order must be at least 1");
  const std::size_t n = degree + 1;
  const auto shift = static_cast<std::size_t>(order);
  double scale = 1.0;
  for (int k = 1; k <= order; ++k) scale *= (2.0 * k - 1.0) * 2.0 / domain.length();
  BandedMatrix d(n, n, 0, shift);
  for (std::size_t i = 0; i + shift < n; ++i) d.set(i, i + shift, scale);
  return d;
}

BandedMatrix conv_op(Basis from, std::size_t degree) {
  const std::size_t n = degree + 1;
  const double lambda = from.lambda();
  BandedMatrix s(n, n, 0, 2);
  for (std::size_t j = 0; j < n; ++j) {
    const double v = lambda / (static_cast<double>(j) + lambda);
    s.set(j, j, v);
    if (j >= 2) s.set(j - 2, j, -v);
  }
  return s;
}

BandedMatrix sr_op(int r, std::size_t degree) {
  BandedMatrix s = BandedMatrix::identity(degree + 1);
  for (int level = 0; level < r; ++level) s = conv_op(Basis{level}, degree) * s;
  return s;
}

BandedMatrix cumint_op(std::size_t degree, const Domain& domain) {
  const std::size_t n = degree + 1;
  const double half = 0.5 * domain.length();
  BandedMatrix q(n, n, 1, 1);
  // int_{-1}^x P_0 = P_0 + P_1; int_{-1}^x P_j = (P_{j+1} - P_{j-1}) / (2j + 1).
  q.set(0, 0, half);
  if (n > 1) q.set(1, 0, half);
  for (std::size_t j = 1; j < n; ++j) {
    const double v = half / (2.0 * static_cast<double>(j) + 1.0);
    q.set(j - 1, j, -v);
    if (j + 1 < n) q.set(j + 1, j, v);
  }
  return q;
}

BandedMatrix defint_op(std::size_t degree, const Domain& domain) {
  BandedMatrix q(degree + 1, degree + 1, 0, 0);
  q.set(0, 0, domain.length());
  return q;
}

BandedMatrix jacobi_op(Basis basis, std::size_t degree) {
  const std::size_t n = degree + 1;
  const double lambda = basis.lambda();
  BandedMatrix j(n, n, 1, 1);
  for (std::size_t c = 0; c < n; ++c) {
    const double cd = static_cast<double>(c);
    const double den = 2.0 * (cd + lambda);
    if (c + 1 < n) j.set(c + 1, c, (cd + 1.0) / den);
    if (c >= 1) j.set(c - 1, c, (cd + 2.0 * lambda - 1.0) / den);
  }
  return j;
}

BandedMatrix mult_op(const LegendreSeries& f, std::size_t degree) {
  const std::size_t m = f.degree();
  if (2 * m + 2 > degree) {
    throw DegreeError("multiplier of degree " + std::to_string(m) +
                      " needs truncation degree at least " + std::to_string(2 * m + 2) +
                      ", got " + std::to_string(degree));
  }
  const double lambda = f.basis().lambda();
  const std::size_t big = degree + m + 1;
  const BandedMatrix jac = jacobi_op(f.basis(), big);
  const BandedMatrix eye = BandedMatrix::identity(big + 1);
  const auto c = f.coeffs();

  // b_k = c_k I + alpha_k J b_{k+1} + beta_{k+1} b_{k+2}
  BandedMatrix b1(big + 1, big + 1, 0, 0);
  BandedMatrix b2(big + 1, big + 1, 0, 0);
  for (std::size_t k = m + 1; k-- > 0;) {
    const double kd = static_cast<double>(k);
    const double alpha = 2.0 * (kd + lambda) / (kd + 1.0);
    const double beta_next = -(kd + 2.0 * lambda) / (kd + 2.0);
    BandedMatrix b0 = c[k] * eye + alpha * (jac * b1) + beta_next * b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return b1.crop(degree + 1, degree + 1).tightened();
}

BandedMatrix flip_op(std::size_t degree) {
  std::vector<double> d(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) d[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return BandedMatrix::diagonal(d);
}

std::vector<double> constraint_row(const Functional& functional, std::size_t degree,
                                   const Domain& domain) {
  std::vector<double> row(degree + 1, 0.0);
  if (functional.kind == Functional::Kind::Integral) {
    row[0] = domain.length();
    return row;
  }
  if (!domain.contains(functional.point)) {
    throw DomainError("constraint point t0 = " + std::to_string(functional.point) +
                      " outside [0, " + std::to_string(domain.length()) + "]");
  }
  const double x = std::clamp(domain.to_reference(functional.point), -1.0, 1.0);
  // Legendre values by the three-term recurrence; derivatives by
  // P'_{n+1} = P'_{n-1} + (2n + 1) P_n.
  std::vector<double> p(degree + 2, 0.0), dp(degree + 2, 0.0);
  p[0] = 1.0;
  p[1] = x;
  dp[1] = 1.0;
  for (std::size_t k = 1; k <= degree; ++k) {
    const double kd = static_cast<double>(k);
    p[k + 1] = ((2.0 * kd + 1.0) * x * p[k] - kd * p[k - 1]) / (kd + 1.0);
    dp[k + 1] = dp[k - 1] + (2.0 * kd + 1.0) * p[k];
  }
  if (functional.kind == Functional::Kind::Eval) {
    std::copy(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(degree + 1), row.begin());
  } else {
    const double chain = 2.0 / domain.length();
    for (std::size_t k = 0; k <= degree; ++k) row[k] = chain * dp[k];
  }
  return row;
}

}  // namespace idect
