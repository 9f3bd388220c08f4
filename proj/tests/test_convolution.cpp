#include <doctest.h>

#include <cmath>

#include "idect/approx.hpp"
#include "idect/convolution.hpp"
#include "idect/errors.hpp"
#include "idect/operators.hpp"
#include "oracles.hpp"

using namespace idect;

namespace {

std::vector<double> column(const BandedMatrix& m, std::size_t n) {
  std::vector<double> e(m.cols(), 0.0);
  e[n] = 1.0;
  return band_matvec(m, e);
}

LegendreSeries random_kernel(std::size_t degree, double length) {
  std::vector<double> c(degree + 1);
  for (auto& x : c) x = oracle::uniform(-1.0, 1.0);
  return {Domain(length), c};
}

oracle::Fn as_fn(const LegendreSeries& s) {
  return [c = std::vector<double>(s.coeffs().begin(), s.coeffs().end()), length = s.domain().length()](double t) {
    return oracle::legendre_sum(c, length, t);
  };
}

// k(u) for u in [-T, T] from the series of k on [0,T] and of k(-u) on [0,T].
oracle::Fn two_sided(const LegendreSeries& k, const LegendreSeries& flipped) {
  const auto kf = as_fn(k), kb = as_fn(flipped);
  return [kf, kb](double u) { return u >= 0.0 ? kf(u) : kb(-u); };
}

}  // namespace

TEST_CASE("volterra oracle sanity") {
  const auto one = [](double) { return 1.0; };
  CHECK(oracle::volterra(one, one, 0.6) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(oracle::volterra(one, [](double s) { return s; }, 0.6) == doctest::Approx(0.18).epsilon(1e-15));
}

TEST_CASE("unit kernel gives indefinite integration") {
  const Domain d(1.0);
  const auto v = volterra_op(LegendreSeries(d, {1.0}), 12);
  const auto q = cumint_op(12, d);
  CHECK(v(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v(0, 1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  for (std::size_t i = 0; i <= 12; ++i) {
    for (std::size_t j = 0; j <= 12; ++j) CHECK(std::abs(v(i, j) - q(i, j)) < 1e-15);
  }
}

TEST_CASE("exponential kernel starting value") {
  const auto k = oracle::legendre_coeffs_quadrature([](double t) { return std::exp(-t); }, 1.0, 20);
  const auto v = volterra_op(LegendreSeries(Domain(1.0), k), 25);
  CHECK(std::abs(v(0, 0) - 0.5 * ((1.0 - std::exp(-1.0)) - k[1] / 3.0)) < 1e-15);
}

TEST_CASE("polynomial kernels give exactly banded operators") {
  const auto v = volterra_op(random_kernel(5, 1.0), 40);
  std::size_t outside = 0;
  for (std::size_t i = 0; i <= 40; ++i) {
    for (std::size_t j = 0; j <= 40; ++j) {
      if ((i > j + 7 || j > i + 7) && v(i, j) != 0.0) ++outside;
    }
  }
  CHECK(outside == 0);
  // The band m + 2 is an upper bound; a degree-m kernel fills m + 1 diagonals.
  CHECK(v.occupied_lower() == 6);
  CHECK(v.occupied_upper() == 6);
}

TEST_CASE("scaled symmetry") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = static_cast<std::size_t>(trial % 9);
    const std::size_t n = 40;
    const auto v = volterra_op(random_kernel(m, oracle::uniform(0.5, 2.0)), n);
    const double scale = v.max_abs();
    double worst = 0.0;
    for (std::size_t j = 0; j + m + 3 <= n; ++j) {
      for (std::size_t c = 0; c + m + 3 <= n; ++c) {
        const double sign = ((j + c) % 2 == 0) ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(v(j, c) - sign * (2.0 * j + 1.0) / (2.0 * c + 1.0) * v(c, j)));
      }
    }
    CHECK(worst <= 1e-13 * scale);
  }
}

TEST_CASE("convolution action matches quadrature") {
  for (int trial = 0; trial < 20; ++trial) {
    const double length = oracle::uniform(0.5, 2.0);
    const auto k = random_kernel(static_cast<std::size_t>(trial % 7), length);
    const auto v = volterra_op(k, 20);
    for (unsigned n = 0; n <= 5; ++n) {
      const LegendreSeries image(k.domain(), column(v, n));
      for (double t : equispaced(k.domain(), 10)) {
        const double ref = oracle::volterra(as_fn(k), [n, length](double s) { return oracle::legendre(n, length, s); }, t);
        CHECK(std::abs(evaluate(image, t) - ref) < 1e-10);
      }
    }
  }
  const auto e = approximate([](double t) { return std::exp(-t); }, Domain(1.0));
  const LegendreSeries image(e.domain(), column(volterra_op(e, 30), 3));
  const double ref = oracle::volterra([](double u) { return std::exp(-u); },
                                      [](double s) { return oracle::legendre(3, 1.0, s); }, 0.7);
  CHECK(std::abs(evaluate(image, 0.7) - ref) < 1e-10);
}

TEST_CASE("zero kernel") {
  const auto v = volterra_op(LegendreSeries(Domain(1.0), {0.0}), 10);
  CHECK(v.max_abs() == 0.0);
}

TEST_CASE("volterra_op argument checks") {
  CHECK_THROWS_AS(volterra_op(LegendreSeries(Domain(1.0), {1.0}, Basis{1}), 10), DomainMismatch);
  CHECK_THROWS_AS(volterra_op(random_kernel(5, 1.0), 7), TruncationError);
  CHECK_NOTHROW(volterra_op(random_kernel(5, 1.0), 8));
}

TEST_CASE("recurrence residual stays at rounding level") {
  const auto e = approximate([](double t) { return std::exp(-t); }, Domain(1.0));
  CHECK(volterra_recurrence_residual(volterra_op(e, 200)) < 1e-13);
  const auto j = approximate([](double t) { return 20.0 * oracle::bessel_j(2, 20.0 * t); }, Domain(1.0));
  CHECK(volterra_recurrence_residual(volterra_op(j, 300)) < 1e-12);
}

TEST_CASE("Fredholm operator: unit kernel integrates over the interval") {
  const Domain d(1.0);
  const LegendreSeries one(d, {1.0});
  const auto f = fredholm_op(KernelPair{one, one, false}, 12);
  const auto c0 = column(f, 0);
  CHECK(std::abs(c0[0] - 1.0) < 1e-15);
  for (std::size_t i = 1; i < c0.size(); ++i) CHECK(std::abs(c0[i]) < 1e-15);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double x : column(f, n)) CHECK(std::abs(x) < 1e-15);
  }
}

TEST_CASE("Fredholm operator against quadrature") {
  const Domain d(1.0);
  const auto k = approximate([](double t) { return std::exp(-t); }, d);
  const auto kf = approximate([](double t) { return std::exp(t); }, d);
  const auto f = fredholm_op(KernelPair{k, kf, false}, 30);
  const std::vector<double> s2{1.0 / 3.0, 0.5, 1.0 / 6.0};
  const LegendreSeries image(d, band_matvec(f, s2));
  const double ref = oracle::fredholm([](double u) { return std::exp(-u); }, [](double s) { return s * s; }, 1.0, 0.3);
  CHECK(std::abs(evaluate(image, 0.3) - ref) < 1e-10);
}

TEST_CASE("Fredholm columns agree with projected double quadrature") {
  const double length = 1.5;
  const Domain d(length);
  const auto kern = [](double u) { return std::cos(u) + 0.3 * u; };
  const auto k = approximate(kern, d);
  const auto kf = approximate([&](double u) { return kern(-u); }, d);
  const std::size_t n = 14;
  const auto f = fredholm_op(KernelPair{k, kf, false}, n + k.degree() + 4);
  double worst = 0.0;
  for (unsigned c = 0; c <= 6; ++c) {
    const auto image = oracle::legendre_coeffs_quadrature(
        [&](double t) { return oracle::fredholm(kern, [c, length](double s) { return oracle::legendre(c, length, s); }, length, t); },
        length, n);
    const auto col = column(f, c);
    for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, std::abs(col[i] - image[i]));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("Fredholm operator with an absolute-difference kernel") {
  const Domain d(1.0);
  const LegendreSeries k(d, {0.5, 0.5});  // k(u) = u
  const auto f = fredholm_op(KernelPair{k, std::nullopt, true}, 12);
  const LegendreSeries image(d, column(f, 0));
  for (double t : equispaced(d, 20)) CHECK(std::abs(evaluate(image, t) - (t * t - t + 0.5)) < 1e-12);

  // Agrees with the standard form given the same flipped kernel.
  const auto g = approximate([](double u) { return std::exp(-2.0 * u); }, d);
  const auto abs_form = fredholm_op(KernelPair{g, std::nullopt, true}, 30);
  const auto std_form = fredholm_op(KernelPair{g, g, false}, 30);
  CHECK((abs_form - std_form).max_abs() == 0.0);
}

TEST_CASE("fredholm_op argument checks") {
  const Domain d(1.0);
  const LegendreSeries k(d, {1.0});
  CHECK_THROWS_AS(fredholm_op(KernelPair{k, std::nullopt, false}, 10), MissingFlippedKernel);
  CHECK_THROWS_AS(fredholm_op(KernelPair{k, k, true}, 10), DomainMismatch);
  CHECK_THROWS_AS(fredholm_op(KernelPair{k, LegendreSeries(Domain(2.0), {1.0}), false}, 10), DomainMismatch);
}

TEST_CASE("weighted integral block") {
  const Domain d(1.0);
  const LegendreSeries one(d, {1.0});
  const auto q = cumint_op(40, d);
  const auto same = weighted_integral_block(one, q, one, 30);
  for (std::size_t i = 0; i <= 30; ++i) {
    for (std::size_t j = 0; j <= 30; ++j) CHECK(same(i, j) == q(i, j));
  }
  CHECK(weighted_integral_block(LegendreSeries(d, {0.0}), q, one, 30).max_abs() == 0.0);

  const auto g = approximate([](double t) { return std::exp(t); }, d);
  const auto h = approximate([](double t) { return std::exp(-t); }, d);
  const auto core = cumint_op(60, d);
  const auto block = weighted_integral_block(g, core, h, 20);
  double worst = 0.0;
  for (unsigned c = 0; c <= 5; ++c) {
    const auto image = oracle::legendre_coeffs_quadrature(
        [c](double t) {
          return std::exp(t) *
                 oracle::integrate([c](double s) { return std::exp(-s) * oracle::legendre(c, 1.0, s); }, 0.0, t);
        },
        1.0, 20);
    const auto col = column(block, c);
    for (std::size_t i = 0; i <= 20; ++i) worst = std::max(worst, std::abs(col[i] - image[i]));
  }
  CHECK(worst <= 1e-11);
  CHECK_THROWS_AS(weighted_integral_block(g, cumint_op(10, d), h, 20), DimensionMismatch);
}
