// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/scaling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

using std::numbers::pi;

double s_value(double t)
{
  if (t <= 0.0)
  {
    return 0.0;
  }
  if (t >= 1.0)
  {
    return t - 0.5;
  }
  return 0.5 * t - std::sin(pi * t) / (2.0 * pi);
}

double s_prime(double t)
{
  if (t <= 0.0)
  {
    return 0.0;
  }
  if (t >= 1.0)
  {
    return 1.0;
  }
  return 0.5 * (1.0 - std::cos(pi * t));
}

double s_second(double t)
{
  if (t <= 0.0 || t >= 1.0)
  {
    return 0.0;
  }
  return 0.5 * pi * std::sin(pi * t);
}

complex scaled_point(const PmlProfile &profile, double x)
{
  if (x <= profile.r)
  {
    return x;
  }
  return x + profile.lambda * s_value(x - profile.r);
}

Matrix2c scaled_metric(const GeometryMap &geom, const PmlProfile &profile, double x, double y)
{
  if (x <= profile.r)
  {
    return metric(geom, x, y);
  }
  const complex stretch = 1.0 + profile.lambda * s_prime(x - profile.r);
  const Matrix2c D = Matrix2c::diag(stretch, 1.0);
  Matrix2c g = D * metric(geom, scaled_point(profile, x), y) * D;
  g.yx = g.xy;
  return g;
}

ScaledCoefficients coefficients(const GeometryMap &geom, const PmlProfile &profile, double x,
                                double y)
{
  const Matrix2c g = scaled_metric(geom, profile, x, y);
  const complex det = g.det();
  if (std::abs(det) < 1e-12)
  {
    std::ostringstream os;
    os << "scaled metric is singular at (x, y) = (" << x << ", " << y
       << "); increase the PML start r";
    throw SingularMetricError(os.str());
  }
  // sqrt(det g) = (1 + lambda s') det J(z), continuous along the curve and positive where
  // the scaling is off.
  complex weight;
  if (x <= profile.r)
  {
    weight = jacobian(geom, x, y).det();
  }
  else
  {
    const complex stretch = 1.0 + profile.lambda * s_prime(x - profile.r);
    weight = stretch * jacobian(geom, scaled_point(profile, x), y).det();
  }
  Matrix2c cond = g.adjugate() * (1.0 / weight);
  cond.yx = cond.xy;
  return {weight, cond};
}

ProfileDiagnostics validate_profile(const GeometryMap &geom, const PmlProfile &profile,
                                    double x_max)
{
  geom.validate();
  ProfileDiagnostics diag;
  if (!(profile.r > 0.0))
  {
    throw ConfigError("pml: r must be positive");
  }
  const double bound = std::sin(geom.alpha);
  if (!(std::abs(profile.lambda) < bound))
  {
    std::ostringstream os;
    os << "pml: |lambda| = " << std::abs(profile.lambda) << " violates |lambda| < sin(alpha) = "
       << bound;
    throw ConfigError(os.str());
  }
  if (profile.lambda.imag() == 0.0 && profile.lambda.real() != 0.0)
  {
    diag.warnings.push_back("pml: real lambda rescales the axis but absorbs nothing");
  }
  if (x_max <= profile.r)
  {
    x_max = profile.r + 30.0;
  }

  constexpr int nx = 400;
  constexpr int ny = 9;
  constexpr int nxi = 32;
  const double x0 = -geom.bounded_length;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (int i = 0; i <= nx; ++i)
  {
    const double x = x0 + (x_max - x0) * i / nx;
    for (int j = 0; j < ny; ++j)
    {
      const double y = static_cast<double>(j) / (ny - 1);
      const Matrix2c g = scaled_metric(geom, profile, x, y);
      const complex det = g.det();
      if (std::abs(det) < 1e-12)
      {
        std::ostringstream os;
        os << "pml: singular scaled metric at (x, y) = (" << x << ", " << y << ")";
        throw ConfigError(os.str());
      }
      const Matrix2c ginv = g.adjugate() * (1.0 / det);
      for (int k = 0; k < nxi; ++k)
      {
        const double t = pi * k / nxi;
        const complex q = ginv.quad(std::cos(t), std::sin(t));
        const double a = std::abs(std::arg(q));
        if (a > diag.worst_angle)
        {
          diag.worst_angle = a;
          diag.worst_x = x;
          diag.worst_y = y;
        }
        min_abs = std::min(min_abs, std::abs(q));
        max_abs = std::max(max_abs, std::abs(q));
      }
    }
  }
  diag.ellipticity = std::min(min_abs, 1.0 / max_abs);
  if (diag.worst_angle >= pi / 2 - 1e-3 || diag.ellipticity <= 1e-6)
  {
    std::ostringstream os;
    os << "pml: sectoriality check failed (angle " << diag.worst_angle << ", ellipticity "
       << diag.ellipticity << ") near (x, y) = (" << diag.worst_x << ", " << diag.worst_y
       << "); increase r or reduce |lambda|";
    throw ConfigError(os.str());
  }
  return diag;
}

}  // namespace pmlguide
