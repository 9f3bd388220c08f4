#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace idect {

using ScalarFunction = std::function<double(double)>;

/// The interval [0,T]. Series on it are expanded in polynomials of
/// x = 2t/T - 1.
class Domain {
 public:
  explicit Domain(double length = 1.0);

  double length() const noexcept { return length_; }
  double to_reference(double t) const noexcept { return 2.0 * t / length_ - 1.0; }
  double from_reference(double x) const noexcept { return 0.5 * length_ * (x + 1.0); }
  /// True if t lies in [0,T], allowing a few ulps of slack at the ends.
  bool contains(double t) const noexcept;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  double length_;
};

/// Coefficient space C^(lambda) with lambda = level + 1/2. Level 0 is the
/// Legendre basis; level r is the range of an r-th derivative.
struct Basis {
  int level = 0;

  double lambda() const noexcept { return level + 0.5; }
  static constexpr Basis legendre() noexcept { return Basis{0}; }

  friend bool operator==(const Basis&, const Basis&) = default;
};

/// A finite mapped-Legendre (or mapped-ultraspherical) series on [0,T].
class LegendreSeries {
 public:
  LegendreSeries(Domain domain, std::vector<double> coeffs,
                 Basis basis = Basis::legendre());

  const Domain& domain() const noexcept { return domain_; }
  Basis basis() const noexcept { return basis_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Index of the last stored coefficient (not of the last nonzero one).
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  double operator[](std::size_t n) const { return coeffs_[n]; }
  double max_abs() const noexcept;

  double operator()(double t) const;

 private:
  Domain domain_;
  Basis basis_;
  std::vector<double> coeffs_;
};

struct ApproxOptions {
  double tol = 1e-14;
  std::size_t max_degree = 4096;
};

/// Adaptive Legendre approximation of f on the domain. Samples f at
/// Chebyshev points of the second kind for N = 16, 32, 64, ... until the
/// last three coefficients fall below tol * max|c|, then chops the tail.
/// Throws ResolutionFailure once max_degree is exceeded.
LegendreSeries approximate(const ScalarFunction& f, const Domain& domain,
                           const ApproxOptions& options = {});

/// Legendre coefficients of the degree-N interpolant of f at Chebyshev
/// points of the second kind (no adaptivity, no truncation).
std::vector<double> interpolate_legendre(const ScalarFunction& f,
                                         const Domain& domain, std::size_t degree);

/// Clenshaw evaluation. Points outside [0,T] raise DomainError.
std::vector<double> evaluate(const LegendreSeries& series,
                             std::span<const double> points);
double evaluate(const LegendreSeries& series, double t);

/// First-kind Chebyshev coefficients on [-1,1] to Legendre coefficients,
/// and back. Both are O(N^2) three-term-recurrence conversions.
std::vector<double> cheb_to_leg(std::span<const double> cheb);
std::vector<double> leg_to_cheb(std::span<const double> leg);

/// Drops trailing coefficients with |c| <= tol * max|c| (at least one kept).
LegendreSeries truncate(const LegendreSeries& series, double tol);
/// Appends zeros so that the series has degree N.
LegendreSeries pad(const LegendreSeries& series, std::size_t degree);

/// `count` equispaced points on [0,T], both endpoints included.
std::vector<double> equispaced(const Domain& domain, std::size_t count);

}  // namespace idect
