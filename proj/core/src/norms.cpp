// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/norms.hpp"

#include <cmath>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

std::size_t cut_index(const TensorMesh &mesh, double x_cut)
{
  if (x_cut > mesh.x.back() + 1e-12 || x_cut < mesh.x.front() - 1e-12)
  {
    std::ostringstream os;
    os << "norms: x_cut = " << x_cut << " lies outside the mesh";
    throw ConfigError(os.str());
  }
  return mesh.node_index_at(x_cut);
}

void check_size(std::span<const complex> nodal, const TensorMesh &mesh)
{
  if (nodal.size() != mesh.node_count())
  {
    throw std::invalid_argument("norms: nodal vector does not match the mesh");
  }
}

RegionNorms norms_impl(const std::function<complex(std::size_t, std::size_t)> &u,
                       const TensorMesh &mesh, std::size_t icut)
{
  constexpr double g = 0.5773502691896257645;
  RegionNorms out;
  double l2 = 0.0, h1 = 0.0, h2 = 0.0;
  for (std::size_t i = 0; i < icut; ++i)
  {
    const double hx = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      const complex u00 = u(i, j), u10 = u(i + 1, j), u11 = u(i + 1, j + 1),
                    u01 = u(i, j + 1);
      for (double s : {-g, g})
      {
        for (double t : {-g, g})
        {
          const double a = 0.5 * (1.0 + s), b = 0.5 * (1.0 + t);
          const complex v = (1 - a) * (1 - b) * u00 + a * (1 - b) * u10 + a * b * u11 +
                            (1 - a) * b * u01;
          const complex vx = ((1 - b) * (u10 - u00) + b * (u11 - u01)) / hx;
          const complex vy = ((1 - a) * (u01 - u00) + a * (u11 - u10)) / hy;
          const double w = 0.25 * hx * hy;
          l2 += w * std::norm(v);
          h1 += w * (std::norm(vx) + std::norm(vy));
        }
      }
      const complex mixed = (u11 - u10 - u01 + u00) / (hx * hy);
      h2 += 2.0 * std::norm(mixed) * hx * hy;
    }
  }
  for (std::size_t i = 1; i < icut; ++i)
  {
    const double hm = mesh.x[i] - mesh.x[i - 1], hp = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 1; j + 1 < mesh.ny(); ++j)
    {
      const double km = mesh.y[j] - mesh.y[j - 1], kp = mesh.y[j + 1] - mesh.y[j];
      const complex dxx =
          2.0 * ((u(i + 1, j) - u(i, j)) / hp - (u(i, j) - u(i - 1, j)) / hm) / (hp + hm);
      const complex dyy =
          2.0 * ((u(i, j + 1) - u(i, j)) / kp - (u(i, j) - u(i, j - 1)) / km) / (kp + km);
      h2 += (std::norm(dxx) + std::norm(dyy)) * 0.25 * (hp + hm) * (kp + km);
    }
  }
  out.l2 = std::sqrt(l2);
  out.h1_semi = std::sqrt(h1);
  out.h2_proxy = std::sqrt(h2);
  return out;
}

}  // namespace

double RegionNorms::h1() const { return std::hypot(l2, h1_semi); }

double RegionError::relative_h1() const
{
  const double ref = std::hypot(ref_l2, ref_h1_semi);
  return ref > 0.0 ? std::hypot(l2, h1_semi) / ref : std::hypot(l2, h1_semi);
}

std::vector<complex> expand_to_nodes(std::span<const complex> dofs, const TensorMesh &mesh)
{
  if (dofs.size() != mesh.dof_count())
  {
    throw std::invalid_argument("expand_to_nodes: dof vector does not match the mesh");
  }
  std::vector<complex> nodal(mesh.node_count(), complex(0.0));
  for (std::size_t i = 1; i + 1 < mesh.nx(); ++i)
  {
    for (std::size_t j = 1; j + 1 < mesh.ny(); ++j)
    {
      nodal[mesh.node(i, j)] = dofs[mesh.dof(i, j)];
    }
  }
  return nodal;
}

RegionNorms norms_on_region(std::span<const complex> nodal, const TensorMesh &mesh,
                            double x_cut)
{
  check_size(nodal, mesh);
  const std::size_t icut = cut_index(mesh, x_cut);
  return norms_impl([&](std::size_t i, std::size_t j) { return nodal[mesh.node(i, j)]; },
                    mesh, icut);
}

RegionNorms difference_on_region(std::span<const complex> a, const TensorMesh &mesh_a,
                                 std::span<const complex> b, const TensorMesh &mesh_b,
                                 double x_cut)
{
  check_size(a, mesh_a);
  check_size(b, mesh_b);
  const std::size_t icut = cut_index(mesh_a, x_cut);
  if (cut_index(mesh_b, x_cut) != icut || mesh_a.ny() != mesh_b.ny())
  {
    throw ConfigError("norms: meshes differ on the comparison region");
  }
  for (std::size_t i = 0; i <= icut; ++i)
  {
    if (mesh_a.x[i] != mesh_b.x[i])
    {
      throw ConfigError("norms: meshes differ on the comparison region");
    }
  }
  return norms_impl(
      [&](std::size_t i, std::size_t j) {
        return a[mesh_a.node(i, j)] - b[mesh_b.node(i, j)];
      },
      mesh_a, icut);
}

RegionError error_on_region(std::span<const complex> nodal, const TensorMesh &mesh,
                            double x_cut, const ExactFn &exact)
{
  check_size(nodal, mesh);
  const std::size_t icut = cut_index(mesh, x_cut);
  static constexpr double pts[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double e0 = 0.0, e1 = 0.0, r0 = 0.0, r1 = 0.0;
  for (std::size_t i = 0; i < icut; ++i)
  {
    const double hx = mesh.x[i + 1] - mesh.x[i];
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      const complex u00 = nodal[mesh.node(i, j)], u10 = nodal[mesh.node(i + 1, j)],
                    u11 = nodal[mesh.node(i + 1, j + 1)], u01 = nodal[mesh.node(i, j + 1)];
      for (int p = 0; p < 3; ++p)
      {
        for (int q = 0; q < 3; ++q)
        {
          const double a = 0.5 * (1.0 + pts[p]), b = 0.5 * (1.0 + pts[q]);
          const double w = wts[p] * wts[q] * 0.25 * hx * hy;
          const complex v = (1 - a) * (1 - b) * u00 + a * (1 - b) * u10 + a * b * u11 +
                            (1 - a) * b * u01;
          const complex vx = ((1 - b) * (u10 - u00) + b * (u11 - u01)) / hx;
          const complex vy = ((1 - a) * (u01 - u00) + a * (u11 - u10)) / hy;
          const ExactValue ex = exact(mesh.x[i] + a * hx, mesh.y[j] + b * hy);
          e0 += w * std::norm(v - ex.u);
          e1 += w * (std::norm(vx - ex.ux) + std::norm(vy - ex.uy));
          r0 += w * std::norm(ex.u);
          r1 += w * (std::norm(ex.ux) + std::norm(ex.uy));
        }
      }
    }
  }
  return {std::sqrt(e0), std::sqrt(e1), std::sqrt(r0), std::sqrt(r1)};
}

}  // namespace pmlguide
