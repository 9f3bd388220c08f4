#include "idect/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idect/errors.hpp"
#include "idect/operators.hpp"

namespace idect {

namespace {

double sym_factor(std::size_t j, std::size_t n) {
  const double sign = ((n + j) % 2 == 0) ? 1.0 : -1.0;
  return sign * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n) + 1.0);
}

}  // namespace

BandedMatrix volterra_op(const LegendreSeries& kernel, std::size_t degree) {
  if (kernel.basis() != Basis::legendre()) {
    throw DomainMismatch("convolution kernel must be given in the Legendre basis");
  }
  const std::size_t m = kernel.degree();
  if (degree < m + 3) {
    throw TruncationError("convolution with a degree-" + std::to_string(m) +
                          " kernel needs truncation degree at least " + std::to_string(m + 3) +
                          ", got " + std::to_string(degree));
  }
  const std::size_t bw = m + 2;
  const std::size_t n = degree + 1;
  const std::size_t work = n + bw + 2;
  const double half = 0.5 * kernel.domain().length();
  const auto kc = [&](std::size_t j) { return j <= m ? kernel[j] : 0.0; };

  BandedMatrix v(work, work, bw, bw);
  // Lower triangle including the diagonal; anything outside is zero.
  const auto low = [&](std::size_t j, std::size_t c) {
    return (j < work && j >= c && j - c <= bw) ? v(j, c) : 0.0;
  };

  v.set(0, 0, half * (kc(0) - kc(1) / 3.0));
  for (std::size_t j = 1; j <= std::min(work - 1, m + 1); ++j) {
    const double jd = static_cast<double>(j);
    v.set(j, 0, half * (kc(j - 1) / (2.0 * jd - 1.0) - kc(j + 1) / (2.0 * jd + 3.0)));
  }
  for (std::size_t j = 1; j <= std::min(work - 1, 1 + bw); ++j) {
    const double jd = static_cast<double>(j);
    v.set(j, 1, low(j - 1, 0) / (2.0 * jd - 1.0) - low(j, 0) - low(j + 1, 0) / (2.0 * jd + 3.0));
  }
  for (std::size_t c = 1; c + 1 < work; ++c) {
    const double a = 2.0 * static_cast<double>(c) + 1.0;
    const std::size_t last = std::min(work - 1, c + 1 + bw);
    for (std::size_t j = c + 1; j <= last; ++j) {
      const double jd = static_cast<double>(j);
      v.set(j, c + 1,
            -a / (2.0 * jd + 3.0) * low(j + 1, c) + a / (2.0 * jd - 1.0) * low(j - 1, c) +
                low(j, c - 1));
    }
  }
  for (std::size_t c = 1; c < work; ++c) {
    for (std::size_t j = c > bw ? c - bw : 0; j < c; ++j) v.set(j, c, sym_factor(j, c) * v(c, j));
  }
  return v.crop(n, n);
}

double volterra_recurrence_residual(const BandedMatrix& v) {
  const std::size_t n = std::min(v.rows(), v.cols());
  const double scale = v.max_abs();
  if (scale == 0.0 || n < 4) return 0.0;
  double worst = 0.0;
  for (std::size_t c = 1; c + 2 < n; ++c) {
    const double a = 2.0 * static_cast<double>(c) + 1.0;
    const std::size_t first = std::max<std::size_t>(1, c + 1 > v.upper() ? c + 1 - v.upper() : 1);
    for (std::size_t j = first; j <= c + 1 && j + 1 < n; ++j) {
      const double jd = static_cast<double>(j);
      const double predicted =
          -a / (2.0 * jd + 3.0) * v(j + 1, c) + a / (2.0 * jd - 1.0) * v(j - 1, c) + v(j, c - 1);
      worst = std::max(worst, std::abs(v(j, c + 1) - predicted));
    }
  }
  return worst / scale;
}

BandedMatrix fredholm_op(const KernelPair& pair, std::size_t degree) {
  const LegendreSeries* flipped = nullptr;
  if (pair.abs_mode) {
    if (pair.flipped) throw DomainMismatch("abs-mode kernel pair must not carry a flipped kernel");
    flipped = &pair.kernel;
  } else {
    if (!pair.flipped) throw MissingFlippedKernel("Fredholm operator needs k(-u) on [0,T]");
    flipped = &*pair.flipped;
  }
  if (!(flipped->domain() == pair.kernel.domain())) {
    throw DomainMismatch("kernel and flipped kernel live on different intervals");
  }
  const std::size_t need = std::max(pair.kernel.degree(), flipped->degree()) + 3;
  const std::size_t work_degree = std::max(degree, need);
  const BandedMatrix forward = volterra_op(pair.kernel, work_degree);
  const BandedMatrix backward = volterra_op(*flipped, work_degree);
  BandedMatrix f(work_degree + 1, work_degree + 1, std::max(forward.lower(), backward.lower()),
                 std::max(forward.upper(), backward.upper()));
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = f.row_begin(i); j < f.row_end(i); ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      f.set(i, j, forward(i, j) + sign * backward(i, j));
    }
  }
  return f.crop(degree + 1, degree + 1);
}

BandedMatrix weighted_integral_block(const LegendreSeries& g, const BandedMatrix& core,
                                     const LegendreSeries& h, std::size_t degree) {
  if (core.rows() != core.cols()) throw DimensionMismatch("integral core must be square");
  if (core.rows() < degree + 1) throw DimensionMismatch("integral core smaller than requested block");
  if (g.basis() != Basis::legendre() || h.basis() != Basis::legendre()) {
    throw DomainMismatch("weights must be Legendre series");
  }
  const std::size_t work_degree = core.rows() - 1;
  const BandedMatrix mg = mult_op(g, work_degree);
  const BandedMatrix mh = mult_op(h, work_degree);
  return (mg * core * mh).crop(degree + 1, degree + 1);
}

}  // namespace idect
