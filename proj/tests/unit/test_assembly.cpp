// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmlguide/assembly.hpp"
#include "pmlguide/banded.hpp"
#include "pmlguide/norms.hpp"

namespace pmlguide
{
namespace
{

using std::numbers::pi;

// Bilinear basis on [0,hx] x [0,hy], nodes counter-clockwise from the lower-left corner.
struct Basis
{
  double hx, hy;
  double value(int a, double x, double y) const
  {
    const double sx = (a == 0 || a == 3) ? 1.0 - x / hx : x / hx;
    const double sy = (a < 2) ? 1.0 - y / hy : y / hy;
    return sx * sy;
  }
  void grad(int a, double x, double y, double &gx, double &gy) const
  {
    const double sx = (a == 0 || a == 3) ? 1.0 - x / hx : x / hx;
    const double sy = (a < 2) ? 1.0 - y / hy : y / hy;
    const double dsx = (a == 0 || a == 3) ? -1.0 / hx : 1.0 / hx;
    const double dsy = (a < 2) ? -1.0 / hy : 1.0 / hy;
    gx = dsx * sy;
    gy = sx * dsy;
  }
};

// Element matrices against a fine midpoint rule.
TEST(Assembly, ElementMatricesMatchBruteForceQuadrature)
{
  const double hx = 0.3, hy = 0.2;
  ScaledCoefficients c;
  c.weight = complex(1.2, 0.4);
  c.conductivity = {complex(0.8, -0.3), complex(0.1, 0.05), complex(0.1, 0.05),
                    complex(1.1, 0.2)};
  const ElementMatrices em = element_matrices(hx, hy, c);
  const Basis B{hx, hy};
  const int n = 400;
  for (int a = 0; a < 4; ++a)
  {
    for (int b = 0; b < 4; ++b)
    {
      complex k = 0.0, m = 0.0;
      for (int i = 0; i < n; ++i)
      {
        for (int j = 0; j < n; ++j)
        {
          const double x = (i + 0.5) * hx / n, y = (j + 0.5) * hy / n;
          double ax, ay, bx, by;
          B.grad(a, x, y, ax, ay);
          B.grad(b, x, y, bx, by);
          k += c.conductivity.xx * ax * bx + c.conductivity.xy * ay * bx +
               c.conductivity.yx * ax * by + c.conductivity.yy * ay * by;
          m += c.weight * B.value(a, x, y) * B.value(b, x, y);
        }
      }
      const double area = hx * hy / (n * n);
      EXPECT_NEAR(std::abs(em.stiffness[a][b] - k * area), 0.0, 1e-5) << a << b;
      EXPECT_NEAR(std::abs(em.mass[a][b] - m * area), 0.0, 1e-6) << a << b;
      EXPECT_EQ(em.stiffness[a][b], em.stiffness[b][a]);
      EXPECT_EQ(em.mass[a][b], em.mass[b][a]);
    }
  }
}

TEST(Assembly, MatrixIsComplexSymmetricBitwise)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 3.0, 0.125, 8);
  const DiscreteProblem p = assemble(GeometryMap::log_shift(), PmlProfile{complex(0.2, 0.5), 1.0},
                                     20.0, mesh, ModeBandSource{}, 1);
  const BandedMatrix &A = p.matrix;
  for (std::size_t i = 0; i < A.size(); ++i)
  {
    for (std::size_t j = 0; j < A.size(); ++j)
    {
      ASSERT_EQ(A.get(i, j), A.get(j, i));
    }
  }
}

// Rows whose basis support lies strictly before the layer start are identical, bit for
// bit, with and without the layer.
TEST(Assembly, InterfaceExactnessAtMatrixLevel)
{
  const double r = 2.0;
  const GeometryMap g = GeometryMap::log_shift(1.5);
  const TensorMesh m = build_mesh(1.5, r, 4.0, 0.125, 8);
  const DiscreteProblem a = assemble(g, PmlProfile{complex(0.0, 0.5), r}, 20.0, m, ModeBandSource{});
  const DiscreteProblem b = assemble(g, PmlProfile{0.0, r}, 20.0, m, ModeBandSource{});
  const std::size_t ir = m.node_index_at(r);
  std::size_t checked = 0;
  for (std::size_t i = 1; i < ir; ++i)
  {
    for (std::size_t j = 1; j + 1 < m.ny(); ++j)
    {
      const std::size_t row = m.dof(i, j);
      for (std::size_t col = 0; col < a.matrix.size(); ++col)
      {
        ASSERT_EQ(a.matrix.get(row, col), b.matrix.get(row, col));
      }
      ASSERT_EQ(a.rhs[row], b.rhs[row]);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Assembly, SchwarzConjugation)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 3.0, 0.125, 8);
  const GeometryMap g = GeometryMap::log_shift();
  const complex lambda(0.1, 0.5);
  const DiscreteProblem a = assemble(g, PmlProfile{lambda, 1.0}, 20.0, mesh, ModeBandSource{});
  const DiscreteProblem b =
      assemble(g, PmlProfile{std::conj(lambda), 1.0}, 20.0, mesh, ModeBandSource{});
  const auto ra = a.matrix.raw(), rb = b.matrix.raw();
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t k = 0; k < ra.size(); ++k)
  {
    ASSERT_NEAR(std::abs(ra[k] - std::conj(rb[k])), 0.0, 1e-14 * (1.0 + std::abs(ra[k])));
  }
}

TEST(Assembly, ThreadCountDoesNotChangeResult)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 4.0, 1.0 / 32, 16);
  const GeometryMap g = GeometryMap::log_shift();
  const PmlProfile p{complex(0.0, 0.5), 1.0};
  const DiscreteProblem a = assemble(g, p, 20.0, mesh, GaussianSource{}, 1);
  const DiscreteProblem b = assemble(g, p, 20.0, mesh, GaussianSource{}, 3);
  ASSERT_TRUE(std::equal(a.matrix.raw().begin(), a.matrix.raw().end(), b.matrix.raw().begin()));
  EXPECT_EQ(a.rhs, b.rhs);
}

TEST(Assembly, PencilCombinesToSystem)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 2.0, 0.25, 8);
  const GeometryMap g = GeometryMap::straight(1.0);
  const PmlProfile p{complex(0.0, 0.5), 1.0};
  const Pencil pen = assemble_pencil(g, p, mesh);
  const DiscreteProblem prob = assemble(g, p, 7.5, mesh, ZeroSource{});
  const BandedMatrix combo = pen.stiffness.axpy(-7.5, pen.mass);
  for (std::size_t k = 0; k < combo.raw().size(); ++k)
  {
    EXPECT_NEAR(std::abs(combo.raw()[k] - prob.matrix.raw()[k]), 0.0, 1e-12);
  }
}

TEST(Assembly, ZeroSourceGivesZeroRhs)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 2.0, 0.25, 8);
  const DiscreteProblem p = assemble(GeometryMap::straight(1.0), PmlProfile{}, 3.0, mesh, ZeroSource{});
  for (const complex &b : p.rhs)
  {
    EXPECT_EQ(b, complex(0.0));
  }
}

TEST(Assembly, SourceBeyondLayerStartWarns)
{
  const TensorMesh mesh = build_mesh(1.0, 1.0, 3.0, 0.25, 8);
  const DiscreteProblem p = assemble(GeometryMap::straight(1.0), PmlProfile{complex(0, 0.5), 1.0},
                                     20.0, mesh, ModeBandSource{1, 0.0, 2.0, 1.0});
  EXPECT_FALSE(p.warnings.empty());
}

TEST(Assembly, ManufacturedSourceMatchesLaplacian)
{
  // f = (-Laplace - mu0) u* by finite differences at a few points.
  const double L0 = 2.0, R = 8.0, mu0 = 20.0;
  const SourceContext ctx{L0, R, mu0};
  for (const auto [x, y] : {std::pair{0.3, 0.4}, std::pair{-1.2, 0.9}, std::pair{5.0, 0.1}})
  {
    const double h = 1e-4;
    auto u = [&](double a, double b) { return manufactured_solution(a, b, L0, R).u; };
    const double lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4 * u(x, y)) /
                       (h * h);
    EXPECT_NEAR(evaluate_source(ManufacturedSource{}, x, y, ctx), -lap - mu0 * u(x, y), 1e-5);
  }
}

// Q1 order: the L2 error drops by about 4 per halving.
TEST(Assembly, ManufacturedSecondOrder)
{
  const double L0 = 1.0, r = 0.5, R = 1.0;
  double prev = 0.0;
  for (int n : {8, 16, 32})
  {
    const TensorMesh mesh = build_mesh(L0, r, R, 1.0 / n, n);
    const DiscreteProblem p =
        assemble(GeometryMap::straight(L0), PmlProfile{0.0, r}, 20.0, mesh, ManufacturedSource{});
    const auto u = expand_to_nodes(BandedLU(p.matrix).solve(p.rhs), mesh);
    const RegionError e = error_on_region(u, mesh, R, [&](double x, double y) {
      const ManufacturedValue m = manufactured_solution(x, y, L0, R);
      return ExactValue{m.u, m.ux, m.uy};
    });
    if (prev > 0.0)
    {
      EXPECT_NEAR(prev / e.l2, 4.0, 0.8);
    }
    prev = e.l2;
  }
}

}  // namespace
}  // namespace pmlguide
