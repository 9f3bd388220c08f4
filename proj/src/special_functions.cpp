#include "idect/special_functions.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "idect/errors.hpp"

namespace idect {

namespace {

constexpr double kSeriesCutoff = 2.0;

void check_envelope(int nu, double x) {
  if (nu < 0 || nu > kMaxBesselOrder) {
    throw RangeError("besselj order " + std::to_string(nu) + " outside [0, " +
                     std::to_string(kMaxBesselOrder) + "]");
  }
  if (!(std::abs(x) <= kMaxBesselArgument)) {
    throw RangeError("besselj argument " + std::to_string(x) + " outside [-500, 500]");
  }
}

// sum_k (-1)^k (x^2/4)^k / (k! (k+nu)!), i.e. J_nu(x) / (x/2)^nu.
double reduced_series(int nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int j = 1; j <= nu; ++j) term /= j;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's algorithm for x > 0.
double bessel_j_miller(int nu, double x) {
  const int start_guess =
      std::max(nu, static_cast<int>(x)) + 30 + static_cast<int>(20.0 * std::cbrt(x));
  const int start = 2 * ((start_guess + 1) / 2);
  const double two_over_x = 2.0 / x;
  double next = 0.0;  // J_{k+1}
  double curr = 1e-300;  // J_k, arbitrary scale
  double norm = 0.0;  // J_0 + 2 sum J_2k, same scale
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = static_cast<double>(k) * two_over_x * curr - next;  // J_{k-1}
    next = curr;
    curr = prev;
    if (k - 1 == nu) wanted = curr;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * curr;
    if (std::abs(curr) > 1e250) {
      curr *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      wanted *= 1e-250;
    }
  }
  if (nu == 0) wanted = curr;
  norm += curr;
  return wanted / norm;
}

}  // namespace

double bessel_j(int nu, double x) {
  check_envelope(nu, x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const double sign = (x < 0.0 && nu % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  if (ax < kSeriesCutoff) return sign * std::pow(0.5 * ax, nu) * reduced_series(nu, ax);
  return sign * bessel_j_miller(nu, ax);
}

double bessel_j_over_power(int nu, int p, double x) {
  check_envelope(nu, x);
  if (p < 0 || p > nu) {
    throw RangeError("besseljx requires 0 <= p <= nu, got p = " + std::to_string(p));
  }
  const double ax = std::abs(x);
  if (ax < kSeriesCutoff) {
    // J_nu(x)/x^p = 2^-nu x^(nu-p) * reduced_series
    return std::ldexp(std::pow(x, nu - p), -nu) * reduced_series(nu, ax);
  }
  return bessel_j(nu, x) / std::pow(x, p);
}

double erf(double x) { return x < 0.0 ? -std::erf(-x) : std::erf(x); }

}  // namespace idect
