// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_MESH_HPP
#define PMLGUIDE_MESH_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace pmlguide
{

//
// Tensor-product mesh of the parameter rectangle (-L0, R) x (0, 1). The x nodes land
// exactly on 0 and r; spacing is uniform inside each of the bands (-L0,0), (0,r), (r,R).
// Nodes are numbered x-major: node (i, j) -> i * ny + j.
//
struct TensorMesh
{
  std::vector<double> x;
  std::vector<double> y;
  double L0 = 0.0;
  double r = 0.0;
  double R = 0.0;
  std::vector<std::string> warnings;

  std::size_t nx() const { return x.size(); }
  std::size_t ny() const { return y.size(); }
  std::size_t node_count() const { return x.size() * y.size(); }
  std::size_t node(std::size_t i, std::size_t j) const { return i * y.size() + j; }

  // Interior (non-Dirichlet) nodes, x-major.
  std::size_t dof_count() const { return (nx() - 2) * (ny() - 2); }
  std::size_t dof(std::size_t i, std::size_t j) const { return (i - 1) * (ny() - 2) + (j - 1); }
  bool is_boundary(std::size_t i, std::size_t j) const
  {
    return i == 0 || j == 0 || i + 1 == nx() || j + 1 == ny();
  }

  // Index of the node equal to x (within 1e-12); throws ConfigError if none.
  std::size_t node_index_at(double xv) const;

  // Largest element width in x.
  double max_hx() const;
};

// Throws ConfigError unless 0 < r < R, L0 > 0, hx > 0 and Ny >= 4.
TensorMesh build_mesh(double L0, double r, double R, double hx, int Ny);

}  // namespace pmlguide

#endif  // PMLGUIDE_MESH_HPP
