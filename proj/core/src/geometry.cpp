// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

// Logarithmic integral li(w) for real w > 1 via Ei(log w) and its power series.
double log_integral(double w)
{
  const double t = std::log(w);
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 500; ++k)
  {
    term *= t / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum))
    {
      break;
    }
  }
  return std::numbers::egamma + std::log(t) + sum;
}

std::string format_point(complex z)
{
  std::ostringstream os;
  os.precision(17);
  os << "z = " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void check_domain(const GeometryMap &geom, complex z)
{
  constexpr double slack = 1e-12;
  if (z.real() < -geom.bounded_length - slack)
  {
    throw DomainError("geometry evaluated left of the bounded part: " + format_point(z));
  }
  if (z.real() > 0.0 && std::abs(std::arg(z)) >= geom.alpha)
  {
    throw DomainError("geometry evaluated outside the analyticity sector: " +
                      format_point(z));
  }
  double sing = -std::numeric_limits<double>::infinity();
  switch (geom.kind)
  {
    case GeometryKind::Straight:
      break;
    case GeometryKind::LogShift:
      sing = -2.0;
      break;
    case GeometryKind::PhiPsi:
      sing = std::max(geom.phi.singular_point(), geom.psi.singular_point());
      break;
  }
  if (z.real() <= sing + 1e-9)
  {
    throw DomainError("geometry evaluated at or beyond a singularity: " + format_point(z));
  }
}

}  // namespace

complex ProfileFn::value(complex z) const
{
  switch (kind)
  {
    case ProfileKind::One:
      return 1.0;
    case ProfileKind::OnePlusExpNeg:
      return 1.0 + std::exp(-z);
    case ProfileKind::OnePlusPowerNeg:
      return 1.0 + std::pow(z + 1.0, -s);
    case ProfileKind::OnePlusInvLog:
      return 1.0 + 1.0 / std::log(z + 2.0);
  }
  return 1.0;
}

complex ProfileFn::derivative(complex z) const
{
  switch (kind)
  {
    case ProfileKind::One:
      return 0.0;
    case ProfileKind::OnePlusExpNeg:
      return -std::exp(-z);
    case ProfileKind::OnePlusPowerNeg:
      return -s * std::pow(z + 1.0, -s - 1.0);
    case ProfileKind::OnePlusInvLog:
    {
      const complex l = std::log(z + 2.0);
      return -1.0 / ((z + 2.0) * l * l);
    }
  }
  return 0.0;
}

double ProfileFn::integral(double x) const
{
  switch (kind)
  {
    case ProfileKind::One:
      return x;
    case ProfileKind::OnePlusExpNeg:
      return x + 1.0 - std::exp(-x);
    case ProfileKind::OnePlusPowerNeg:
      if (s == 1.0)
      {
        return x + std::log1p(x);
      }
      return x + (std::pow(x + 1.0, 1.0 - s) - 1.0) / (1.0 - s);
    case ProfileKind::OnePlusInvLog:
      return x + log_integral(x + 2.0) - log_integral(2.0);
  }
  return x;
}

double ProfileFn::singular_point() const
{
  switch (kind)
  {
    case ProfileKind::One:
    case ProfileKind::OnePlusExpNeg:
      return -std::numeric_limits<double>::infinity();
    case ProfileKind::OnePlusPowerNeg:
    case ProfileKind::OnePlusInvLog:
      return -1.0;
  }
  return -std::numeric_limits<double>::infinity();
}

GeometryMap GeometryMap::straight(double L0)
{
  GeometryMap g;
  g.kind = GeometryKind::Straight;
  g.bounded_length = L0;
  return g;
}

GeometryMap GeometryMap::log_shift(double L0)
{
  GeometryMap g;
  g.kind = GeometryKind::LogShift;
  g.bounded_length = L0;
  return g;
}

GeometryMap GeometryMap::phi_psi(ProfileFn phi, ProfileFn psi, double L0)
{
  GeometryMap g;
  g.kind = GeometryKind::PhiPsi;
  g.phi = phi;
  g.psi = psi;
  g.bounded_length = L0;
  return g;
}

void GeometryMap::validate() const
{
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 4))
  {
    throw ConfigError("geometry: alpha must lie in (0, pi/4)");
  }
  if (!(bounded_length > 0.0))
  {
    throw ConfigError("geometry: L0 must be positive");
  }
  double sing = -std::numeric_limits<double>::infinity();
  if (kind == GeometryKind::LogShift)
  {
    sing = -2.0;
  }
  else if (kind == GeometryKind::PhiPsi)
  {
    for (const ProfileFn *p : {&phi, &psi})
    {
      if (p->kind == ProfileKind::OnePlusPowerNeg && !(p->s > 0.0))
      {
        throw ConfigError("geometry: power profile needs s > 0");
      }
      sing = std::max(sing, p->singular_point());
    }
  }
  if (-bounded_length <= sing)
  {
    std::ostringstream os;
    os << "geometry: the map is singular at x = " << sing << ", need L0 < " << -sing;
    throw ConfigError(os.str());
  }
}

PhysicalPoint eval_map(const GeometryMap &geom, double x, double y)
{
  check_domain(geom, x);
  switch (geom.kind)
  {
    case GeometryKind::Straight:
      return {x, y};
    case GeometryKind::LogShift:
      return {x, y + std::log(x + 2.0)};
    case GeometryKind::PhiPsi:
      return {geom.phi.integral(x), y * geom.psi.value(x).real()};
  }
  return {x, y};
}

Matrix2c jacobian(const GeometryMap &geom, complex z, double y)
{
  check_domain(geom, z);
  switch (geom.kind)
  {
    case GeometryKind::Straight:
      return Matrix2c::identity();
    case GeometryKind::LogShift:
      return {1.0, 0.0, 1.0 / (z + 2.0), 1.0};
    case GeometryKind::PhiPsi:
      return {geom.phi.value(z), 0.0, y * geom.psi.derivative(z), geom.psi.value(z)};
  }
  return Matrix2c::identity();
}

Matrix2c metric(const GeometryMap &geom, complex z, double y)
{
  const Matrix2c J = jacobian(geom, z, y);
  Matrix2c g = J.transpose() * J;
  // Symmetric by construction; copy to make the off-diagonal pair bitwise equal.
  g.yx = g.xy;
  return g;
}

std::vector<double> decay_profile(const GeometryMap &geom, std::span<const double> x_samples)
{
  constexpr int ny = 11;
  std::vector<double> out;
  out.reserve(x_samples.size());
  for (double x : x_samples)
  {
    double worst = 0.0;
    for (int j = 0; j < ny; ++j)
    {
      const double y = static_cast<double>(j) / (ny - 1);
      worst = std::max(worst, (metric(geom, x, y) - Matrix2c::identity()).max_abs());
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace pmlguide
