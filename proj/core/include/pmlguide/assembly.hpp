// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_ASSEMBLY_HPP
#define PMLGUIDE_ASSEMBLY_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "pmlguide/banded.hpp"
#include "pmlguide/geometry.hpp"
#include "pmlguide/mesh.hpp"
#include "pmlguide/scaling.hpp"

namespace pmlguide
{

struct ZeroSource
{
};

// f = amplitude * phi_k(y) on [x0, x1], zero elsewhere.
struct ModeBandSource
{
  int mode = 1;
  double x0 = 0.0;
  double x1 = 1.0;
  double amplitude = 1.0;
};

struct GaussianSource
{
  double xc = 0.0;
  double yc = 0.5;
  double sigma = 0.1;
  double amplitude = 1.0;
};

// Right-hand side of the manufactured solution sin(pi (x+L0)/(L0+R)) sin(pi y) for the
// unscaled straight strip.
struct ManufacturedSource
{
};

using SourceSpec = std::variant<ZeroSource, ModeBandSource, GaussianSource, ManufacturedSource>;

// Data a source may depend on besides the point.
struct SourceContext
{
  double L0 = 0.0;
  double R = 0.0;
  double mu0 = 0.0;
};

double evaluate_source(const SourceSpec &source, double x, double y, const SourceContext &ctx);

// Right end of the x-support (+inf when unbounded, -inf for the zero source).
double source_support_end(const SourceSpec &source);

// Exact manufactured solution and its gradient.
struct ManufacturedValue
{
  double u, ux, uy;
};
ManufacturedValue manufactured_solution(double x, double y, double L0, double R);

// L2 norm of the source over the mesh rectangle (3x3 Gauss per element).
double source_l2_norm(const SourceSpec &source, const TensorMesh &mesh, double mu0);

//
// Assembled Dirichlet problem (K - mu0 M) u = b on the interior nodes. The form is
// complex symmetric: no conjugation anywhere.
//
struct DiscreteProblem
{
  BandedMatrix matrix;
  std::vector<complex> rhs;
  std::vector<std::string> warnings;
};

struct Pencil
{
  BandedMatrix stiffness;
  BandedMatrix mass;
};

// Q1 elements, 2x2 Gauss quadrature, homogeneous Dirichlet on all four sides. Element
// columns are processed in two parity passes so the result is independent of `threads`.
DiscreteProblem assemble(const GeometryMap &geom, const PmlProfile &profile, double mu0,
                         const TensorMesh &mesh, const SourceSpec &source, int threads = 1);

Pencil assemble_pencil(const GeometryMap &geom, const PmlProfile &profile,
                       const TensorMesh &mesh, int threads = 1);

// Element matrices of one rectangle for constant coefficients (test hook). Node order
// counter-clockwise from the lower-left corner.
struct ElementMatrices
{
  complex stiffness[4][4];
  complex mass[4][4];
};
ElementMatrices element_matrices(double hx, double hy, const ScaledCoefficients &coef);

}  // namespace pmlguide

#endif  // PMLGUIDE_ASSEMBLY_HPP
