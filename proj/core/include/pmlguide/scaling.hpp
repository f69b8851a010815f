// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_SCALING_HPP
#define PMLGUIDE_SCALING_HPP

#include <complex>
#include <string>
#include <vector>

#include "pmlguide/geometry.hpp"
#include "pmlguide/matrix2.hpp"

namespace pmlguide
{

// Scaling function: zero for t <= 0, cosine ramp of the derivative on [0,1], slope one
// beyond. C^2 with 0 <= s' <= 1.
double s_value(double t);
double s_prime(double t);
double s_second(double t);

//
// Complex scaling x -> x + lambda s(x - r) of the axial parameter. The layer starts at
// x = r; the geometry is unchanged for x <= r.
//
struct PmlProfile
{
  complex lambda{0.0, 0.0};
  double r = 2.0;
  double ramp_width = 1.0;  // fixed by the choice of s
};

complex scaled_point(const PmlProfile &profile, double x);

// diag(1 + lambda s', 1) g(x + lambda s, y) diag(1 + lambda s', 1); equals metric(x, y)
// for x <= r (shared code path).
Matrix2c scaled_metric(const GeometryMap &geom, const PmlProfile &profile, double x, double y);

// Coefficient fields of the weak form: weight W = sqrt(det g) and conductivity
// W g^{-1}.
struct ScaledCoefficients
{
  complex weight;
  Matrix2c conductivity;
};

// Throws SingularMetricError when |det g| < 1e-12.
ScaledCoefficients coefficients(const GeometryMap &geom, const PmlProfile &profile, double x,
                                double y);

struct ProfileDiagnostics
{
  double worst_angle = 0.0;       // max |arg(xi^T g^{-1} xi)| over samples
  double ellipticity = 0.0;       // delta: min(|xi^T g^{-1} xi|, 1 / max |...|)
  double worst_x = 0.0;           // sample attaining worst_angle
  double worst_y = 0.0;
  std::vector<std::string> warnings;
};

// Samples the numerical range of g_{lambda,r}^{-1} over x in [-L0, x_max] and checks
// |lambda| < sin(alpha). Throws ConfigError on violation. x_max <= r means r + 30.
ProfileDiagnostics validate_profile(const GeometryMap &geom, const PmlProfile &profile,
                                    double x_max = 0.0);

}  // namespace pmlguide

#endif  // PMLGUIDE_SCALING_HPP
