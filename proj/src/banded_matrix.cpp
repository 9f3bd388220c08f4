#include "idect/banded_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "idect/errors.hpp"

namespace idect {

BandedMatrix::BandedMatrix(std::size_t rows, std::size_t cols, std::size_t lower,
                           std::size_t upper)
    : rows_(rows), cols_(cols), lower_(lower), upper_(upper),
      data_(rows * (lower + upper + 1), 0.0) {}

BandedMatrix BandedMatrix::identity(std::size_t n) {
  BandedMatrix m(n, n, 0, 0);
  std::fill(m.data_.begin(), m.data_.end(), 1.0);
  return m;
}

BandedMatrix BandedMatrix::diagonal(std::span<const double> d) {
  BandedMatrix m(d.size(), d.size(), 0, 0);
  std::copy(d.begin(), d.end(), m.data_.begin());
  return m;
}

std::size_t BandedMatrix::row_end(std::size_t i) const noexcept {
  return std::min(cols_, i + upper_ + 1);
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  return in_band(i, j) ? data_[offset(i, j)] : 0.0;
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) {
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside band");
  }
  return data_[offset(i, j)];
}

BandedMatrix BandedMatrix::crop(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw DimensionMismatch("crop larger than matrix");
  BandedMatrix out(rows, cols, lower_, upper_);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) out.at(i, j) = (*this)(i, j);
  }
  return out;
}

std::size_t BandedMatrix::occupied_lower() const noexcept {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = row_begin(i); j < std::min(i, row_end(i)); ++j) {
      if ((*this)(i, j) != 0.0) {
        bw = std::max(bw, i - j);
        break;
      }
    }
  }
  return bw;
}

std::size_t BandedMatrix::occupied_upper() const noexcept {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = row_end(i); j-- > std::max(i + 1, row_begin(i));) {
      if ((*this)(i, j) != 0.0) {
        bw = std::max(bw, j - i);
        break;
      }
    }
  }
  return bw;
}

BandedMatrix BandedMatrix::tightened() const {
  BandedMatrix out(rows_, cols_, occupied_lower(), occupied_upper());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) out.at(i, j) = (*this)(i, j);
  }
  return out;
}

std::vector<std::vector<double>> BandedMatrix::to_dense() const {
  std::vector<std::vector<double>> d(rows_, std::vector<double>(cols_, 0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = row_begin(i); j < row_end(i); ++j) d[i][j] = (*this)(i, j);
  }
  return d;
}

double BandedMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

BandedMatrix& BandedMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

namespace {

BandedMatrix combine(const BandedMatrix& a, const BandedMatrix& b, double sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix sum of " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
  BandedMatrix out(a.rows(), a.cols(), std::max(a.lower(), b.lower()),
                   std::max(a.upper(), b.upper()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) out.at(i, j) += a(i, j);
    for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) out.at(i, j) += sign * b(i, j);
  }
  return out;
}

}  // namespace

BandedMatrix operator+(const BandedMatrix& a, const BandedMatrix& b) { return combine(a, b, 1.0); }
BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b) { return combine(a, b, -1.0); }

BandedMatrix band_mul(const BandedMatrix& a, const BandedMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("inner dimensions " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + " differ");
  }
  BandedMatrix out(a.rows(), b.cols(), a.lower() + b.lower(), a.upper() + b.upper());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = a.row_begin(i); k < a.row_end(i); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = b.row_begin(k); j < b.row_end(k); ++j) out.at(i, j) += aik * b(k, j);
    }
  }
  return out;
}

BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b) { return band_mul(a, b); }

std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v) {
  if (v.size() > a.cols()) {
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                            " for matrix with " + std::to_string(a.cols()) + " columns");
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    const std::size_t end = std::min(a.row_end(i), v.size());
    for (std::size_t j = a.row_begin(i); j < end; ++j) s += a(i, j) * v[j];
    y[i] = s;
  }
  return y;
}

}  // namespace idect
