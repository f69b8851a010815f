// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_MATRIX2_HPP
#define PMLGUIDE_MATRIX2_HPP

#include <algorithm>
#include <cmath>
#include <complex>

namespace pmlguide
{

// Dense 2x2 complex matrix, row-major. Enough algebra for metric tensors.
struct Matrix2c
{
  std::complex<double> xx{1.0}, xy{0.0}, yx{0.0}, yy{1.0};

  static Matrix2c identity() { return {}; }
  static Matrix2c diag(std::complex<double> a, std::complex<double> b)
  {
    return {a, 0.0, 0.0, b};
  }

  Matrix2c transpose() const { return {xx, yx, xy, yy}; }
  Matrix2c conj() const
  {
    return {std::conj(xx), std::conj(xy), std::conj(yx), std::conj(yy)};
  }
  std::complex<double> det() const { return xx * yy - xy * yx; }

  // Adjugate; inverse = adjugate / det.
  Matrix2c adjugate() const { return {yy, -xy, -yx, xx}; }

  Matrix2c operator*(const Matrix2c &o) const
  {
    return {xx * o.xx + xy * o.yx, xx * o.xy + xy * o.yy, yx * o.xx + yy * o.yx,
            yx * o.xy + yy * o.yy};
  }
  Matrix2c operator*(std::complex<double> c) const { return {xx * c, xy * c, yx * c, yy * c}; }
  Matrix2c operator-(const Matrix2c &o) const
  {
    return {xx - o.xx, xy - o.xy, yx - o.yx, yy - o.yy};
  }
  Matrix2c operator+(const Matrix2c &o) const
  {
    return {xx + o.xx, xy + o.xy, yx + o.yx, yy + o.yy};
  }
  bool operator==(const Matrix2c &o) const = default;

  double max_abs() const
  {
    return std::max({std::abs(xx), std::abs(xy), std::abs(yx), std::abs(yy)});
  }

  // Real quadratic form xi^T A xi for a real vector xi.
  std::complex<double> quad(double a, double b) const
  {
    return a * a * xx + a * b * (xy + yx) + b * b * yy;
  }
};

}  // namespace pmlguide

#endif  // PMLGUIDE_MATRIX2_HPP
