// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_ORACLE_HPP
#define PMLGUIDE_ORACLE_HPP

#include <complex>
#include <string>
#include <vector>

#include "pmlguide/assembly.hpp"
#include "pmlguide/norms.hpp"
#include "pmlguide/spectral.hpp"

namespace pmlguide
{

enum class Direction
{
  Outgoing,  // radiation e^{+i k x}; matched by Im lambda > 0
  Incoming   // radiation e^{-i k x}; matched by Im lambda < 0
};

// Axial profile f_k(x) of one transverse mode: piecewise constant on [x0, x1] or a
// Gaussian c * exp(-(x - xc)^2 / (2 sigma^2)).
struct AxialProfile
{
  enum class Kind
  {
    Band,
    Gaussian
  };
  int mode = 1;
  Kind kind = Kind::Band;
  double coefficient = 0.0;
  double x0 = 0.0, x1 = 0.0;        // Band
  double center = 0.0, sigma = 1.0;  // Gaussian

  double operator()(double x) const;
};

struct ProjectedSource
{
  std::vector<AxialProfile> profiles;  // nonzero modes only
  std::vector<std::string> warnings;
};

// f_k(x) = int_0^1 f(x, y) phi_k(y) dy for k = 1..K. Throws ConfigError for sources
// without a modal expansion (manufactured).
ProjectedSource project_source(const SourceSpec &source, const SpectralData &spectral);

//
// Closed-form modal solution of (-Laplace - mu0) u = f on the straight strip
// (-L0, inf) x (0,1) with Dirichlet walls, per mode a_k(x) = -int G_k(x, t) f_k(t) dt with
// G_k = v1(min) v2(max) / W, v1 = sin(k_a (x + L0)), v2 = exp(i q x).
//
class ModalSolution
{
public:
  ModalSolution(double mu0, double L0, std::vector<AxialProfile> profiles, Direction direction);

  double mu0() const { return mu0_; }
  double L0() const { return L0_; }
  Direction direction() const { return direction_; }
  const std::vector<AxialProfile> &profiles() const { return profiles_; }

  // Principal axial wavenumber sqrt(mu0 - nu_k).
  complex wavenumber(int mode) const;
  // Wavenumber used in the radiating solution: -k_a for incoming propagating modes.
  complex radiating_wavenumber(int mode) const;
  // v1 v2' - v1' v2.
  complex wronskian(int mode) const;

  complex amplitude(std::size_t profile_index, double x) const;
  complex amplitude_derivative(std::size_t profile_index, double x) const;

  complex value(double x, double y) const;
  ExactValue evaluate(double x, double y) const;

  // Amplitude of the profile for `mode` (zero if not excited).
  complex mode_amplitude(int mode, double x) const;

private:
  struct Integrals
  {
    complex left;   // int_{-L0}^{x} v1 f
    complex right;  // int_{x}^{inf} v2 f
  };
  Integrals integrals(const AxialProfile &p, complex k, complex q, double x) const;

  double mu0_, L0_;
  std::vector<AxialProfile> profiles_;
  Direction direction_;
};

ModalSolution outgoing_oracle(double mu0, double L0, const ProjectedSource &projected);
ModalSolution incoming_oracle(double mu0, double L0, const ProjectedSource &projected);

complex outgoing_solution(double mu0, double L0, const ProjectedSource &projected, double x,
                          double y);
complex incoming_solution(double mu0, double L0, const ProjectedSource &projected, double x,
                          double y);

struct OracleReport
{
  bool passed = true;
  double ode_residual = 0.0;       // max relative 1D residual
  double dirichlet = 0.0;          // max |a_k(-L0)|
  double amplitude_variation = 0.0;
  double wronskian_error = 0.0;
  bool flux_ok = true;
  std::vector<std::string> failures;
};

// Checks the per-mode ODE residual by finite differences, the wall condition, the flux
// sign beyond the support (positive for outgoing), amplitude constancy of propagating
// modes and the Wronskian. `expected` is the direction the solution claims to be.
OracleReport oracle_selfcheck(const ModalSolution &solution, Direction expected);

}  // namespace pmlguide

#endif  // PMLGUIDE_ORACLE_HPP
