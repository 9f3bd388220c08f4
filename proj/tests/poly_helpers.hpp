#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"

// Polynomials in monomial form sum_k a_k t^k, used to produce exact images
// of derivatives, integrals and products.
struct Poly {
  std::vector<double> a;

  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) s = s * t + a[k];
    return s;
  }
  Poly derivative() const {
    Poly d;
    for (std::size_t k = 1; k < a.size(); ++k) d.a.push_back(static_cast<double>(k) * a[k]);
    if (d.a.empty()) d.a.push_back(0.0);
    return d;
  }
  Poly integral() const {
    Poly q{{0.0}};
    for (std::size_t k = 0; k < a.size(); ++k) q.a.push_back(a[k] / static_cast<double>(k + 1));
    return q;
  }
  std::size_t degree() const { return a.size() - 1; }
  // Legendre coefficients on [0,T], exact up to quadrature rounding.
  std::vector<double> legendre(double length, std::size_t degree) const {
    return oracle::legendre_coeffs_quadrature([this](double t) { return (*this)(t); }, length, degree);
  }
};

inline Poly random_poly(std::size_t degree, double length = 1.0) {
  Poly p;
  // Scale so that terms stay O(1) on [0,T].
  for (std::size_t k = 0; k <= degree; ++k) p.a.push_back(oracle::uniform(-1.0, 1.0) / std::pow(length, k));
  return p;
}

inline Poly product(const Poly& p, const Poly& q) {
  Poly r;
  r.a.assign(p.a.size() + q.a.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    for (std::size_t j = 0; j < q.a.size(); ++j) r.a[i + j] += p.a[i] * q.a[j];
  }
  return r;
}
