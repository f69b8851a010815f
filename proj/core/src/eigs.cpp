// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/eigs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

using Vec = std::vector<complex>;

complex dot(const Vec &a, const Vec &b)  // a^H b
{
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

double norm2(const Vec &a)
{
  double s = 0.0;
  for (const auto &v : a)
  {
    s += std::norm(v);
  }
  return std::sqrt(s);
}

}  // namespace

EigsResult eigs_near(const BandedMatrix &A, const BandedMatrix &M, complex shift, int count,
                     const EigsOptions &options)
{
  const std::size_t n = A.size();
  if (count < 1 || static_cast<std::size_t>(count) > n)
  {
    throw ConfigError("eigs_near: count out of range");
  }
  int m = options.subspace > 0 ? options.subspace : 4 * count;
  m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(m), n));
  m = std::max(m, std::min<int>(count + 1, static_cast<int>(n)));
  const int keep = std::max(count, std::min(2 * count, m - 1));

  const BandedLU lu(A.axpy(-shift, M));
  EigsResult result;
  result.pivot_ratio = lu.pivot_ratio();

  auto apply = [&](const Vec &x) {
    Vec y = M.multiply(x);
    lu.solve_in_place(y);
    return y;
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Vec> V(static_cast<std::size_t>(m) + 1, Vec(n));
  for (auto &v : V[0])
  {
    v = dist(rng);
  }
  {
    const double nv = norm2(V[0]);
    for (auto &v : V[0])
    {
      v /= nv;
    }
  }

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  int k = 0;
  int active = m;
  for (int restart = 0;; ++restart)
  {
    // Expand the Krylov decomposition from column k to m.
    for (int j = k; j < m; ++j)
    {
      Vec w = apply(V[j]);
      for (int pass = 0; pass < 2; ++pass)
      {
        for (int i = 0; i <= j; ++i)
        {
          const complex c = dot(V[i], w);
          H(i, j) += c;
          for (std::size_t t = 0; t < n; ++t)
          {
            w[t] -= c * V[i][t];
          }
        }
      }
      const double h = norm2(w);
      H(j + 1, j) = h;
      if (h < 1e-14 * std::abs(H(j, j)) || h == 0.0)
      {
        // Invariant subspace found; the Ritz values are exact.
        active = j + 1;
        break;
      }
      for (std::size_t t = 0; t < n; ++t)
      {
        V[j + 1][t] = w[t] / h;
      }
    }

    const Eigen::MatrixXcd Hm = H.topLeftCorner(active, active);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Hm);
    const Eigen::VectorXcd theta = es.eigenvalues();
    Eigen::MatrixXcd Y = es.eigenvectors();
    for (int c = 0; c < active; ++c)
    {
      Y.col(c).normalize();
    }
    std::vector<int> order(active);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = std::abs(theta(a)), db = std::abs(theta(b));
      if (da != db)
      {
        return da > db;
      }
      return theta(a).real() > theta(b).real();
    });

    const Eigen::RowVectorXcd brow =
        active < m ? Eigen::RowVectorXcd::Zero(active) : Eigen::RowVectorXcd(H.row(m));
    const int want = std::min(count, active);
    result.values.clear();
    bool all = true;
    for (int c = 0; c < want; ++c)
    {
      const int idx = order[c];
      const double res = std::abs((brow * Y.col(idx))(0)) / std::abs(theta(idx));
      const bool ok = res <= options.tol;
      all = all && ok;
      result.values.push_back({shift + 1.0 / theta(idx), res, ok});
    }
    result.restarts = restart;
    if (all || active < m || restart >= options.max_restarts)
    {
      result.converged = all && want == count;
      break;
    }

    // Thick restart: keep an orthonormal basis of the wanted Ritz vectors.
    Eigen::MatrixXcd Yk(m, keep);
    for (int c = 0; c < keep; ++c)
    {
      Yk.col(c) = Y.col(order[c]);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Yk);
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, keep);
    const Eigen::MatrixXcd T = Q.adjoint() * Hm * Q;
    const Eigen::RowVectorXcd bq = brow * Q;

    std::vector<Vec> Vn(static_cast<std::size_t>(keep) + 1, Vec(n, complex(0.0)));
    for (int c = 0; c < keep; ++c)
    {
      for (int i = 0; i < m; ++i)
      {
        const complex q = Q(i, c);
        for (std::size_t t = 0; t < n; ++t)
        {
          Vn[c][t] += V[i][t] * q;
        }
      }
    }
    Vn[keep] = V[m];
    for (int c = 0; c <= keep; ++c)
    {
      V[c] = std::move(Vn[c]);
    }
    H.setZero();
    H.topLeftCorner(keep, keep) = T;
    H.block(keep, 0, 1, keep) = bq;
    k = keep;
  }

  std::stable_sort(result.values.begin(), result.values.end(),
                   [&](const EigenEstimate &a, const EigenEstimate &b) {
                     return std::abs(a.value - shift) < std::abs(b.value - shift);
                   });
  return result;
}

}  // namespace pmlguide
