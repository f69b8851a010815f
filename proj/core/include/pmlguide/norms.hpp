// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_NORMS_HPP
#define PMLGUIDE_NORMS_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "pmlguide/mesh.hpp"

namespace pmlguide
{

using complex = std::complex<double>;

// Full nodal vector (x-major, zero on the Dirichlet boundary) from interior dofs.
std::vector<complex> expand_to_nodes(std::span<const complex> dofs, const TensorMesh &mesh);

struct RegionNorms
{
  double l2 = 0.0;
  double h1_semi = 0.0;
  // Broken second differences of nodal values; a diagnostic stand-in for the H2 norm,
  // which Q1 elements do not control.
  double h2_proxy = 0.0;

  double h1() const;
};

// Norms of the bilinear interpolant over (-L0, x_cut) x (0,1). x_cut must be a node.
RegionNorms norms_on_region(std::span<const complex> nodal, const TensorMesh &mesh,
                            double x_cut);

// Norms of a - b over (-L0, x_cut), for two meshes with identical nodes there.
RegionNorms difference_on_region(std::span<const complex> a, const TensorMesh &mesh_a,
                                 std::span<const complex> b, const TensorMesh &mesh_b,
                                 double x_cut);

struct ExactValue
{
  complex u, ux, uy;
};
using ExactFn = std::function<ExactValue(double, double)>;

struct RegionError
{
  double l2 = 0.0;       // ||u_h - u||
  double h1_semi = 0.0;  // ||grad(u_h - u)||
  double ref_l2 = 0.0;   // ||u||
  double ref_h1_semi = 0.0;

  double relative_l2() const { return ref_l2 > 0.0 ? l2 / ref_l2 : l2; }
  double relative_h1() const;
};

// Error of the bilinear interpolant against an exact field over (-L0, x_cut), 3x3 Gauss
// per element.
RegionError error_on_region(std::span<const complex> nodal, const TensorMesh &mesh,
                            double x_cut, const ExactFn &exact);

}  // namespace pmlguide

#endif  // PMLGUIDE_NORMS_HPP
