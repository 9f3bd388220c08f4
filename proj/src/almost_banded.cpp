#include "idect/almost_banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idect/errors.hpp"

namespace idect {

AlmostBandedMatrix::AlmostBandedMatrix(std::vector<std::vector<double>> dense_rows,
                                       BandedMatrix banded)
    : n_(banded.cols()), dense_(std::move(dense_rows)), banded_(std::move(banded)) {
  if (dense_.size() > kMaxDenseRows) {
    throw DimensionMismatch("at most " + std::to_string(kMaxDenseRows) +
                            " dense rows supported, got " + std::to_string(dense_.size()));
  }
  if (banded_.rows() + dense_.size() != n_) {
    throw DimensionMismatch(std::to_string(dense_.size()) + " dense rows and a " +
                            std::to_string(banded_.rows()) + "x" + std::to_string(n_) +
                            " banded block do not form a square matrix");
  }
  for (const auto& row : dense_) {
    if (row.size() != n_) throw DimensionMismatch("dense row length differs from matrix size");
  }
}

double AlmostBandedMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (i < dense_.size()) return j < n_ ? dense_[i][j] : 0.0;
  return banded_(i - dense_.size(), j);
}

double AlmostBandedMatrix::max_abs() const noexcept {
  double m = banded_.max_abs();
  for (const auto& row : dense_) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<std::vector<double>> AlmostBandedMatrix::to_dense() const {
  std::vector<std::vector<double>> d = dense_;
  auto rest = banded_.to_dense();
  d.insert(d.end(), rest.begin(), rest.end());
  return d;
}

std::vector<double> aband_matvec(const AlmostBandedMatrix& m, std::span<const double> v) {
  if (v.size() != m.size()) throw DimensionMismatch("vector length differs from matrix size");
  std::vector<double> y;
  y.reserve(m.size());
  for (const auto& row : m.dense_rows()) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
    y.push_back(s);
  }
  const auto rest = band_matvec(m.banded(), v);
  y.insert(y.end(), rest.begin(), rest.end());
  return y;
}

namespace {

// Working storage for the QR sweep. Row i keeps the banded part of its
// entries for columns [i - lower, i + lower + upper] and the coefficients
// alpha_i of the dense-row combination it carries.
class Workspace {
 public:
  Workspace(const AlmostBandedMatrix& m)
      : n_(m.size()), r_(m.dense_count()), dense_(m.dense_rows()) {
    const BandedMatrix& b = m.banded();
    lower_ = static_cast<std::ptrdiff_t>(r_ + b.lower());
    upper_ = static_cast<std::ptrdiff_t>(b.upper() > r_ ? b.upper() - r_ : 0);
    width_ = static_cast<std::size_t>(2 * lower_ + upper_ + 1);
    band_.assign(n_ * width_, 0.0);
    alpha_.assign(n_ * r_, 0.0);
    for (std::size_t k = 0; k < r_; ++k) alpha_[k * r_ + k] = 1.0;
    for (std::size_t i = r_; i < n_; ++i) {
      const std::size_t row = i - r_;
      for (std::size_t j = b.row_begin(row); j < b.row_end(row); ++j) band(i, j) = b(row, j);
    }
  }

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::ptrdiff_t lower() const { return lower_; }
  std::ptrdiff_t upper() const { return upper_; }

  // Caller guarantees j lies inside row i's window.
  double& band(std::size_t i, std::size_t j) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i) + lower_;
    return band_[i * width_ + static_cast<std::size_t>(k)];
  }
  double* alpha(std::size_t i) { return alpha_.data() + i * r_; }

  double total(std::size_t i, std::size_t j) {
    double v = band(i, j);
    const double* a = alpha(i);
    for (std::size_t k = 0; k < r_; ++k) v += a[k] * dense_[k][j];
    return v;
  }

  double dense(std::size_t k, std::size_t j) const { return dense_[k][j]; }

 private:
  std::size_t n_;
  std::size_t r_;
  const std::vector<std::vector<double>>& dense_;
  std::ptrdiff_t lower_ = 0;
  std::ptrdiff_t upper_ = 0;
  std::size_t width_ = 0;
  std::vector<double> band_;
  std::vector<double> alpha_;
};

}  // namespace

std::vector<double> aband_solve(const AlmostBandedMatrix& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DimensionMismatch("right-hand side length differs from matrix size");
  std::vector<double> b(rhs.begin(), rhs.end());
  if (n == 0) return b;

  Workspace w(m);
  const std::size_t r = w.r();
  const auto lower = static_cast<std::size_t>(w.lower());
  const auto reach = static_cast<std::size_t>(w.lower() + w.upper());
  const double threshold = 1e-14 * m.max_abs();

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t last_row = std::min(n - 1, j + lower);
    const std::size_t last_col = std::min(n - 1, j + reach);
    for (std::size_t i = j + 1; i <= last_row; ++i) {
      const double below = w.total(i, j);
      if (below == 0.0) continue;
      const double pivot = w.total(j, j);
      const double rho = std::hypot(pivot, below);
      const double c = pivot / rho;
      const double s = below / rho;
      for (std::size_t col = j; col <= last_col; ++col) {
        double& x = w.band(j, col);
        double& y = w.band(i, col);
        const double xn = c * x + s * y;
        y = -s * x + c * y;
        x = xn;
      }
      double* aj = w.alpha(j);
      double* ai = w.alpha(i);
      for (std::size_t k = 0; k < r; ++k) {
        const double xn = c * aj[k] + s * ai[k];
        ai[k] = -s * aj[k] + c * ai[k];
        aj[k] = xn;
      }
      const double bn = c * b[j] + s * b[i];
      b[i] = -s * b[j] + c * b[i];
      b[j] = bn;
    }
  }

  std::vector<double> x(n, 0.0);
  std::vector<double> suffix(r, 0.0);  // sum_{col > j} dense_k[col] x[col]
  for (std::size_t j = n; j-- > 0;) {
    const double diag = w.total(j, j);
    if (!(std::abs(diag) >= threshold) || diag == 0.0) {
      throw SingularSystem(j, "almost-banded system is numerically singular at column " +
                                  std::to_string(j));
    }
    double s = b[j];
    const std::size_t last_col = std::min(n - 1, j + reach);
    for (std::size_t col = j + 1; col <= last_col; ++col) s -= w.band(j, col) * x[col];
    const double* aj = w.alpha(j);
    for (std::size_t k = 0; k < r; ++k) s -= aj[k] * suffix[k];
    x[j] = s / diag;
    for (std::size_t k = 0; k < r; ++k) suffix[k] += w.dense(k, j) * x[j];
  }
  return x;
}

}  // namespace idect
