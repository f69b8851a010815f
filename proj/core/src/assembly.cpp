// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "pmlguide/errors.hpp"
#include "pmlguide/spectral.hpp"

namespace pmlguide
{

using std::numbers::pi;

namespace
{

constexpr double kGauss = 0.5773502691896257645;  // 1/sqrt(3)
constexpr std::array<double, 4> kXiA{-1.0, 1.0, 1.0, -1.0};
constexpr std::array<double, 4> kEtaA{-1.0, -1.0, 1.0, 1.0};

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct ElementLoad
{
  complex k[4][4];  // combined or stiffness
  complex m[4][4];
  complex f[4];
};

// Integrates stiffness, mass and load over one element with 2x2 Gauss points.
template <class CoefFn, class SourceFn>
void integrate_element(double x0, double hx, double y0, double hy, CoefFn &&coef_at,
                       SourceFn &&source_at, ElementLoad &out)
{
  for (auto &row : out.k)
  {
    std::fill(std::begin(row), std::end(row), complex(0.0));
  }
  for (auto &row : out.m)
  {
    std::fill(std::begin(row), std::end(row), complex(0.0));
  }
  std::fill(std::begin(out.f), std::end(out.f), complex(0.0));

  const double detj = 0.25 * hx * hy;
  for (int qx = 0; qx < 2; ++qx)
  {
    const double xi = qx == 0 ? -kGauss : kGauss;
    for (int qy = 0; qy < 2; ++qy)
    {
      const double eta = qy == 0 ? -kGauss : kGauss;
      const double xq = x0 + 0.5 * hx * (1.0 + xi);
      const double yq = y0 + 0.5 * hy * (1.0 + eta);
      const ScaledCoefficients c = coef_at(xq, yq);
      const double fq = source_at(xq, yq);

      double N[4], dx[4], dy[4];
      for (int a = 0; a < 4; ++a)
      {
        N[a] = 0.25 * (1.0 + kXiA[a] * xi) * (1.0 + kEtaA[a] * eta);
        dx[a] = 0.25 * kXiA[a] * (1.0 + kEtaA[a] * eta) * 2.0 / hx;
        dy[a] = 0.25 * kEtaA[a] * (1.0 + kXiA[a] * xi) * 2.0 / hy;
      }
      const complex wW = detj * c.weight;
      const Matrix2c C = c.conductivity * detj;
      for (int a = 0; a < 4; ++a)
      {
        for (int b = a; b < 4; ++b)
        {
          out.k[a][b] += C.xx * (dx[a] * dx[b]) + C.xy * (dx[a] * dy[b] + dy[a] * dx[b]) +
                         C.yy * (dy[a] * dy[b]);
          out.m[a][b] += wW * (N[a] * N[b]);
        }
        if (fq != 0.0)
        {
          out.f[a] += wW * (fq * N[a]);
        }
      }
    }
  }
  for (int a = 0; a < 4; ++a)
  {
    for (int b = 0; b < a; ++b)
    {
      out.k[a][b] = out.k[b][a];
      out.m[a][b] = out.m[b][a];
    }
  }
}

// Runs body(ic) over element columns in two parity passes; columns of equal parity
// touch disjoint node columns.
template <class Body>
void for_each_column(std::size_t ncols, int threads, Body &&body)
{
  const auto nthreads = static_cast<std::size_t>(std::max(1, threads));
  for (std::size_t parity = 0; parity < 2; ++parity)
  {
    std::vector<std::size_t> cols;
    for (std::size_t ic = parity; ic < ncols; ic += 2)
    {
      cols.push_back(ic);
    }
    if (nthreads == 1 || cols.size() < 2)
    {
      for (std::size_t ic : cols)
      {
        body(ic);
      }
      continue;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cols.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t)
    {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(cols.size(), b + chunk);
      if (b >= e)
      {
        break;
      }
      pool.emplace_back([&, b, e] {
        for (std::size_t c = b; c < e; ++c)
        {
          body(cols[c]);
        }
      });
    }
  }
}

std::array<std::ptrdiff_t, 4> element_dofs(const TensorMesh &mesh, std::size_t i,
                                           std::size_t j)
{
  const std::size_t ni[4] = {i, i + 1, i + 1, i};
  const std::size_t nj[4] = {j, j, j + 1, j + 1};
  std::array<std::ptrdiff_t, 4> d{};
  for (int a = 0; a < 4; ++a)
  {
    d[a] = mesh.is_boundary(ni[a], nj[a]) ? -1
                                          : static_cast<std::ptrdiff_t>(mesh.dof(ni[a], nj[a]));
  }
  return d;
}

BandedMatrix empty_system(const TensorMesh &mesh)
{
  const std::size_t band = mesh.ny() - 2 + 1;
  return BandedMatrix(mesh.dof_count(), band, band);
}

void check_mesh(const TensorMesh &mesh)
{
  if (mesh.nx() < 3 || mesh.ny() < 3)
  {
    throw ConfigError("assembly: mesh has no interior nodes");
  }
}

}  // namespace

double evaluate_source(const SourceSpec &source, double x, double y, const SourceContext &ctx)
{
  return std::visit(
      overloaded{
          [](const ZeroSource &) { return 0.0; },
          [&](const ModeBandSource &s) {
            if (x < s.x0 || x > s.x1)
            {
              return 0.0;
            }
            return s.amplitude * SpectralData::mode(s.mode, y);
          },
          [&](const GaussianSource &s) {
            const double dx = x - s.xc, dy = y - s.yc;
            return s.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * s.sigma * s.sigma));
          },
          [&](const ManufacturedSource &) {
            const double len = ctx.L0 + ctx.R;
            const double factor = pi * pi / (len * len) + pi * pi - ctx.mu0;
            return factor * manufactured_solution(x, y, ctx.L0, ctx.R).u;
          }},
      source);
}

double source_support_end(const SourceSpec &source)
{
  return std::visit(overloaded{[](const ZeroSource &) {
                                 return -std::numeric_limits<double>::infinity();
                               },
                               [](const ModeBandSource &s) { return s.x1; },
                               [](const GaussianSource &s) { return s.xc + 8.0 * s.sigma; },
                               [](const ManufacturedSource &) {
                                 return std::numeric_limits<double>::infinity();
                               }},
                    source);
}

ManufacturedValue manufactured_solution(double x, double y, double L0, double R)
{
  const double len = L0 + R;
  const double a = pi * (x + L0) / len;
  const double b = pi * y;
  return {std::sin(a) * std::sin(b), pi / len * std::cos(a) * std::sin(b),
          pi * std::sin(a) * std::cos(b)};
}

double source_l2_norm(const SourceSpec &source, const TensorMesh &mesh, double mu0)
{
  static constexpr double pts[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const SourceContext ctx{mesh.L0, mesh.R, mu0};
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.nx(); ++i)
  {
    const double hx = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      for (int a = 0; a < 3; ++a)
      {
        for (int b = 0; b < 3; ++b)
        {
          const double xq = mesh.x[i] + 0.5 * hx * (1.0 + pts[a]);
          const double yq = mesh.y[j] + 0.5 * hy * (1.0 + pts[b]);
          const double f = evaluate_source(source, xq, yq, ctx);
          sum += wts[a] * wts[b] * 0.25 * hx * hy * f * f;
        }
      }
    }
  }
  return std::sqrt(sum);
}

ElementMatrices element_matrices(double hx, double hy, const ScaledCoefficients &coef)
{
  ElementLoad load;
  integrate_element(
      0.0, hx, 0.0, hy, [&](double, double) { return coef; }, [](double, double) { return 0.0; },
      load);
  ElementMatrices em;
  for (int a = 0; a < 4; ++a)
  {
    for (int b = 0; b < 4; ++b)
    {
      em.stiffness[a][b] = load.k[a][b];
      em.mass[a][b] = load.m[a][b];
    }
  }
  return em;
}

DiscreteProblem assemble(const GeometryMap &geom, const PmlProfile &profile, double mu0,
                         const TensorMesh &mesh, const SourceSpec &source, int threads)
{
  check_mesh(mesh);
  DiscreteProblem prob;
  prob.matrix = empty_system(mesh);
  prob.rhs.assign(mesh.dof_count(), complex(0.0));
  prob.warnings = mesh.warnings;
  if (source_support_end(source) > profile.r)
  {
    prob.warnings.push_back(
        "source support extends past the PML start r; the scaled problem no longer matches "
        "the physical one there");
  }
  const SourceContext ctx{mesh.L0, mesh.R, mu0};
  auto coef_at = [&](double x, double y) { return coefficients(geom, profile, x, y); };
  auto source_at = [&](double x, double y) { return evaluate_source(source, x, y, ctx); };

  for_each_column(mesh.nx() - 1, threads, [&](std::size_t i) {
    ElementLoad el;
    const double hx = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      integrate_element(mesh.x[i], hx, mesh.y[j], hy, coef_at, source_at, el);
      const auto d = element_dofs(mesh, i, j);
      for (int a = 0; a < 4; ++a)
      {
        if (d[a] < 0)
        {
          continue;
        }
        prob.rhs[d[a]] += el.f[a];
        for (int b = 0; b < 4; ++b)
        {
          if (d[b] < 0)
          {
            continue;
          }
          prob.matrix(d[a], d[b]) += el.k[a][b] - mu0 * el.m[a][b];
        }
      }
    }
  });
  return prob;
}

Pencil assemble_pencil(const GeometryMap &geom, const PmlProfile &profile,
                       const TensorMesh &mesh, int threads)
{
  check_mesh(mesh);
  Pencil p{empty_system(mesh), empty_system(mesh)};
  auto coef_at = [&](double x, double y) { return coefficients(geom, profile, x, y); };
  auto no_source = [](double, double) { return 0.0; };

  for_each_column(mesh.nx() - 1, threads, [&](std::size_t i) {
    ElementLoad el;
    const double hx = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      integrate_element(mesh.x[i], hx, mesh.y[j], hy, coef_at, no_source, el);
      const auto d = element_dofs(mesh, i, j);
      for (int a = 0; a < 4; ++a)
      {
        for (int b = 0; b < 4; ++b)
        {
          if (d[a] < 0 || d[b] < 0)
          {
            continue;
          }
          p.stiffness(d[a], d[b]) += el.k[a][b];
          p.mass(d[a], d[b]) += el.m[a][b];
        }
      }
    }
  });
  return p;
}

}  // namespace pmlguide
