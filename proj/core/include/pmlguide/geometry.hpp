// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_GEOMETRY_HPP
#define PMLGUIDE_GEOMETRY_HPP

#include <complex>
#include <span>
#include <vector>

#include "pmlguide/matrix2.hpp"

namespace pmlguide
{

using complex = std::complex<double>;

//
// Axial profile functions used by the PhiPsi geometry family. Every kind is analytic in
// a right half-plane containing the parameter rectangle and can be evaluated at complex
// axial coordinate together with its derivative.
//
enum class ProfileKind
{
  One,              // 1
  OnePlusExpNeg,    // 1 + e^{-x}
  OnePlusPowerNeg,  // 1 + (x+1)^{-s}, s > 0
  OnePlusInvLog     // 1 + 1/log(x+2)
};

struct ProfileFn
{
  ProfileKind kind = ProfileKind::One;
  double s = 1.0;  // exponent for OnePlusPowerNeg

  complex value(complex z) const;
  complex derivative(complex z) const;

  // Closed-form integral of the profile from 0 to x (real x only).
  double integral(double x) const;

  // Rightmost real point where the profile (or its integral) is singular; -inf if none.
  double singular_point() const;
};

enum class GeometryKind
{
  Straight,  // (x, y)
  LogShift,  // (x, y + log(x+2))
  PhiPsi     // (int_0^x phi, y psi(x))
};

//
// Analytic diffeomorphism of the parameter rectangle (-L0, inf) x (0,1) onto the
// quasi-cylinder. The metric g = J^T J is evaluated at complex axial coordinate by
// analytic continuation of the closed-form Jacobian.
//
struct GeometryMap
{
  GeometryKind kind = GeometryKind::Straight;
  ProfileFn phi;
  ProfileFn psi;
  double alpha = default_alpha();
  double bounded_length = 2.0;  // L0

  static constexpr double default_alpha() { return 0.7853981633974483 - 1e-3; }

  static GeometryMap straight(double L0 = 2.0);
  static GeometryMap log_shift(double L0 = 1.0);
  static GeometryMap phi_psi(ProfileFn phi, ProfileFn psi, double L0 = 0.5);

  // Throws ConfigError if alpha, L0 or a profile singularity are inconsistent.
  void validate() const;
};

struct PhysicalPoint
{
  double zeta;
  double eta;
};

PhysicalPoint eval_map(const GeometryMap &geom, double x, double y);

// Rows (d zeta/dx, d zeta/dy) and (d eta/dx, d eta/dy) at complex axial coordinate z.
Matrix2c jacobian(const GeometryMap &geom, complex z, double y);

// Complex-symmetric metric J^T J (transpose, no conjugation).
Matrix2c metric(const GeometryMap &geom, complex z, double y);

// For each x: sup over sampled y of the max-entry norm of g(x,y) - Id.
std::vector<double> decay_profile(const GeometryMap &geom, std::span<const double> x_samples);

}  // namespace pmlguide

#endif  // PMLGUIDE_GEOMETRY_HPP
