// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

// Appends nodes of [a, b] excluding a; the last node is exactly b.
void append_band(std::vector<double> &nodes, double a, double b, double hx)
{
  const double len = b - a;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / hx - 1e-9)));
  for (std::size_t i = 1; i < n; ++i)
  {
    nodes.push_back(a + len * static_cast<double>(i) / static_cast<double>(n));
  }
  nodes.push_back(b);
}

}  // namespace

std::size_t TensorMesh::node_index_at(double xv) const
{
  const auto it = std::lower_bound(x.begin(), x.end(), xv - 1e-12);
  if (it == x.end() || std::abs(*it - xv) > 1e-12)
  {
    std::ostringstream os;
    os << "mesh: no node at x = " << xv;
    throw ConfigError(os.str());
  }
  return static_cast<std::size_t>(it - x.begin());
}

double TensorMesh::max_hx() const
{
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
  {
    h = std::max(h, x[i + 1] - x[i]);
  }
  return h;
}

TensorMesh build_mesh(double L0, double r, double R, double hx, int Ny)
{
  if (!(L0 > 0.0))
  {
    throw ConfigError("mesh: L0 must be positive");
  }
  if (!(r > 0.0))
  {
    throw ConfigError("mesh: r must be positive");
  }
  if (!(R > r))
  {
    std::ostringstream os;
    os << "mesh: truncation R = " << R << " must exceed the PML start r = " << r;
    throw ConfigError(os.str());
  }
  if (!(hx > 0.0))
  {
    throw ConfigError("mesh: hx must be positive");
  }
  if (Ny < 4)
  {
    throw ConfigError("mesh: need Ny >= 4");
  }

  TensorMesh mesh;
  mesh.L0 = L0;
  mesh.r = r;
  mesh.R = R;
  mesh.x.push_back(-L0);
  append_band(mesh.x, -L0, 0.0, hx);
  append_band(mesh.x, 0.0, r, hx);
  const std::size_t before = mesh.x.size();
  append_band(mesh.x, r, R, hx);
  if (mesh.x.size() - before == 1)
  {
    mesh.warnings.push_back("mesh: the PML band is a single element wide");
  }
  mesh.x.front() = -L0;

  mesh.y.resize(static_cast<std::size_t>(Ny) + 1);
  for (int j = 0; j <= Ny; ++j)
  {
    mesh.y[j] = static_cast<double>(j) / Ny;
  }
  return mesh;
}

}  // namespace pmlguide
