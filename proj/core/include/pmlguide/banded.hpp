// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_BANDED_HPP
#define PMLGUIDE_BANDED_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pmlguide
{

using complex = std::complex<double>;

//
// Square complex band matrix with kl sub- and ku super-diagonals. Row-major band
// storage: row i keeps columns [i - kl, i + ku].
//
class BandedMatrix
{
public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const
  {
    return j + kl_ >= i && j <= i + ku_;
  }

  // Entry access; (i, j) must lie in the band.
  complex &operator()(std::size_t i, std::size_t j) { return data_[i * width() + j + kl_ - i]; }
  const complex &operator()(std::size_t i, std::size_t j) const
  {
    return data_[i * width() + j + kl_ - i];
  }
  // Zero outside the band.
  complex get(std::size_t i, std::size_t j) const { return in_band(i, j) ? (*this)(i, j) : 0.0; }

  void multiply(std::span<const complex> x, std::span<complex> y) const;
  std::vector<complex> multiply(std::span<const complex> x) const;

  double max_abs() const;
  // Infinity norm (max row sum).
  double norm_inf() const;

  BandedMatrix conj() const;

  // this + alpha * other (same shape).
  BandedMatrix axpy(complex alpha, const BandedMatrix &other) const;

  std::span<const complex> raw() const { return data_; }

private:
  std::size_t width() const { return kl_ + ku_ + 1; }

  std::size_t n_ = 0, kl_ = 0, ku_ = 0;
  std::vector<complex> data_;
};

//
// LU factorization with partial pivoting inside the band (LINPACK gbfa layout: the
// multipliers are kept per column and interchanges are applied during the solve). The
// upper factor occupies kl + ku super-diagonals.
//
class BandedLU
{
public:
  // Throws NearSingularError if min |pivot| / max |A| < pivot_tolerance.
  explicit BandedLU(const BandedMatrix &A, double pivot_tolerance = 1e-14);

  std::vector<complex> solve(std::span<const complex> b) const;
  void solve_in_place(std::span<complex> x) const;

  std::size_t size() const { return n_; }
  // min |pivot| / max |A entry|
  double pivot_ratio() const { return pivot_ratio_; }
  // max |U entry| / max |A entry|
  double growth() const { return growth_; }

  // Dense reconstruction P^T L U for verification of small systems (row-major n x n).
  std::vector<complex> reconstruct_dense() const;

private:
  std::size_t n_ = 0, kl_ = 0, uu_ = 0, uw_ = 0;
  std::vector<complex> u_;         // working rows, columns [i - kl, i + kl + ku]
  std::vector<complex> mult_;      // multipliers l(k + m, k), m = 1..kl
  std::vector<std::size_t> piv_;   // row swapped with k at step k
  double pivot_ratio_ = 0.0;
  double growth_ = 0.0;
};

// ||A u - b|| / (||A|| ||u|| + ||b||) in the infinity norm.
double relative_residual(const BandedMatrix &A, std::span<const complex> u,
                         std::span<const complex> b);

}  // namespace pmlguide

#endif  // PMLGUIDE_BANDED_HPP
