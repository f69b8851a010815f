// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

// a -= l * b without the NaN-recovery path of the library complex multiply.
inline void sub_mul(complex &a, complex l, complex b)
{
  auto *pa = reinterpret_cast<double *>(&a);
  const double lr = l.real(), li = l.imag(), br = b.real(), bi = b.imag();
  pa[0] -= lr * br - li * bi;
  pa[1] -= lr * bi + li * br;
}

inline complex mul(complex a, complex b)
{
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
  : n_(n), kl_(kl), ku_(ku), data_(n * (kl + ku + 1), complex(0.0))
{
}

void BandedMatrix::multiply(std::span<const complex> x, std::span<complex> y) const
{
  if (x.size() != n_ || y.size() != n_)
  {
    throw std::invalid_argument("BandedMatrix::multiply: size mismatch");
  }
  for (std::size_t i = 0; i < n_; ++i)
  {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    complex s = 0.0;
    for (std::size_t j = j0; j <= j1; ++j)
    {
      s += mul((*this)(i, j), x[j]);
    }
    y[i] = s;
  }
}

std::vector<complex> BandedMatrix::multiply(std::span<const complex> x) const
{
  std::vector<complex> y(n_);
  multiply(x, y);
  return y;
}

double BandedMatrix::max_abs() const
{
  double m = 0.0;
  for (const auto &v : data_)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double BandedMatrix::norm_inf() const
{
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
  {
    double s = 0.0;
    for (std::size_t c = 0; c < width(); ++c)
    {
      s += std::abs(data_[i * width() + c]);
    }
    m = std::max(m, s);
  }
  return m;
}

BandedMatrix BandedMatrix::conj() const
{
  BandedMatrix out = *this;
  for (auto &v : out.data_)
  {
    v = std::conj(v);
  }
  return out;
}

BandedMatrix BandedMatrix::axpy(complex alpha, const BandedMatrix &other) const
{
  if (other.n_ != n_ || other.kl_ != kl_ || other.ku_ != ku_)
  {
    throw std::invalid_argument("BandedMatrix::axpy: shape mismatch");
  }
  BandedMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
  {
    out.data_[i] += alpha * other.data_[i];
  }
  return out;
}

BandedLU::BandedLU(const BandedMatrix &A, double pivot_tolerance)
  : n_(A.size()), kl_(A.lower()), uu_(A.lower() + A.upper())
{
  // Working row i holds columns [i - kl, i + kl + ku]; the U part of row k starts at
  // column k.
  const std::size_t ku = A.upper();
  uw_ = 2 * kl_ + ku + 1;
  u_.assign(n_ * uw_, complex(0.0));
  mult_.assign(n_ * kl_, complex(0.0));
  piv_.resize(n_);
  auto w = [&](std::size_t i, std::size_t j) -> complex & { return u_[i * uw_ + j + kl_ - i]; };

  const double amax = A.max_abs();
  for (std::size_t i = 0; i < n_; ++i)
  {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku);
    for (std::size_t j = j0; j <= j1; ++j)
    {
      w(i, j) = A(i, j);
    }
  }

  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_; ++k)
  {
    const std::size_t last = std::min(k + kl_, n_ - 1);
    std::size_t p = k;
    double best = std::norm(w(k, k));
    for (std::size_t i = k + 1; i <= last; ++i)
    {
      const double v = std::norm(w(i, k));
      if (v > best)
      {
        best = v;
        p = i;
      }
    }
    piv_[k] = p;
    const std::size_t jmax = std::min(k + uu_, n_ - 1);
    if (p != k)
    {
      for (std::size_t j = k; j <= jmax; ++j)
      {
        std::swap(w(k, j), w(p, j));
      }
    }
    const complex pivot = w(k, k);
    min_pivot = std::min(min_pivot, std::abs(pivot));
    if (amax == 0.0 || std::abs(pivot) < pivot_tolerance * amax)
    {
      pivot_ratio_ = amax == 0.0 ? 0.0 : std::abs(pivot) / amax;
      std::ostringstream os;
      os << "banded LU: pivot ratio " << pivot_ratio_ << " at row " << k
         << " (mu0 is (near) a discrete eigenvalue of the truncated operator; change R or mu0)";
      throw NearSingularError(os.str(), pivot_ratio_);
    }
    const complex inv = 1.0 / pivot;
    complex *prow = &w(k, k);
    for (std::size_t i = k + 1; i <= last; ++i)
    {
      complex &lik = w(i, k);
      if (lik == 0.0)
      {
        continue;
      }
      const complex l = mul(lik, inv);
      mult_[k * kl_ + (i - k - 1)] = l;
      lik = 0.0;
      complex *row = &w(i, k);
      for (std::size_t j = 1; j <= jmax - k; ++j)
      {
        sub_mul(row[j], l, prow[j]);
      }
    }
  }
  pivot_ratio_ = n_ == 0 ? 1.0 : min_pivot / amax;

  double umax = 0.0;
  for (std::size_t k = 0; k < n_; ++k)
  {
    const std::size_t jmax = std::min(k + uu_, n_ - 1);
    for (std::size_t j = k; j <= jmax; ++j)
    {
      umax = std::max(umax, std::abs(w(k, j)));
    }
  }
  growth_ = amax > 0.0 ? umax / amax : 0.0;
}

void BandedLU::solve_in_place(std::span<complex> x) const
{
  if (x.size() != n_)
  {
    throw std::invalid_argument("BandedLU::solve: size mismatch");
  }
  for (std::size_t k = 0; k < n_; ++k)
  {
    if (piv_[k] != k)
    {
      std::swap(x[k], x[piv_[k]]);
    }
    const std::size_t last = std::min(k + kl_, n_ - 1);
    const complex xk = x[k];
    for (std::size_t i = k + 1; i <= last; ++i)
    {
      sub_mul(x[i], mult_[k * kl_ + (i - k - 1)], xk);
    }
  }
  for (std::size_t ii = n_; ii-- > 0;)
  {
    const std::size_t jmax = std::min(ii + uu_, n_ - 1);
    const complex *row = &u_[ii * uw_ + kl_];
    complex s = x[ii];
    for (std::size_t j = ii + 1; j <= jmax; ++j)
    {
      sub_mul(s, row[j - ii], x[j]);
    }
    x[ii] = s / row[0];
  }
}

std::vector<complex> BandedLU::solve(std::span<const complex> b) const
{
  std::vector<complex> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

std::vector<complex> BandedLU::reconstruct_dense() const
{
  std::vector<complex> m(n_ * n_, complex(0.0));
  for (std::size_t i = 0; i < n_; ++i)
  {
    const std::size_t jmax = std::min(i + uu_, n_ - 1);
    for (std::size_t j = i; j <= jmax; ++j)
    {
      m[i * n_ + j] = u_[i * uw_ + j + kl_ - i];
    }
  }
  for (std::size_t k = n_; k-- > 0;)
  {
    const std::size_t last = std::min(k + kl_, n_ - 1);
    for (std::size_t i = k + 1; i <= last; ++i)
    {
      const complex l = mult_[k * kl_ + (i - k - 1)];
      for (std::size_t j = 0; j < n_; ++j)
      {
        m[i * n_ + j] += l * m[k * n_ + j];
      }
    }
    if (piv_[k] != k)
    {
      for (std::size_t j = 0; j < n_; ++j)
      {
        std::swap(m[k * n_ + j], m[piv_[k] * n_ + j]);
      }
    }
  }
  return m;
}

double relative_residual(const BandedMatrix &A, std::span<const complex> u,
                         std::span<const complex> b)
{
  const std::vector<complex> Au = A.multiply(u);
  double r = 0.0, nu = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < Au.size(); ++i)
  {
    r = std::max(r, std::abs(Au[i] - b[i]));
    nu = std::max(nu, std::abs(u[i]));
    nb = std::max(nb, std::abs(b[i]));
  }
  const double denom = A.norm_inf() * nu + nb;
  return denom == 0.0 ? 0.0 : r / denom;
}

}  // namespace pmlguide
