// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmlguide/banded.hpp"
#include "pmlguide/errors.hpp"
#include "pmlguide/oracle.hpp"
#include "pmlguide/scaling.hpp"

namespace pmlguide
{
namespace
{

using std::numbers::pi;

const SpectralData kSpectral = make_spectral(default_mode_count(20.0));

ProjectedSource band(int mode = 1) { return project_source(ModeBandSource{mode, 0.0, 1.0, 1.0}, kSpectral); }

TEST(ProjectSource, ModeBandSelectsOneMode)
{
  const ProjectedSource p = band(1);
  ASSERT_EQ(p.profiles.size(), 1u);
  EXPECT_EQ(p.profiles[0].mode, 1);
  EXPECT_EQ(p.profiles[0](0.5), 1.0);
  EXPECT_EQ(p.profiles[0](1.5), 0.0);
  EXPECT_TRUE(p.warnings.empty());
}

TEST(ProjectSource, ModeOutsideRetainedSetWarns)
{
  const ProjectedSource p =
      project_source(ModeBandSource{kSpectral.mode_count() + 3, 0.0, 1.0, 1.0}, kSpectral);
  EXPECT_TRUE(p.profiles.empty());
  EXPECT_FALSE(p.warnings.empty());
}

TEST(ProjectSource, CenteredGaussianHasNoEvenModes)
{
  const ProjectedSource p = project_source(GaussianSource{0.0, 0.5, 0.1, 1.0}, kSpectral);
  for (const auto &prof : p.profiles)
  {
    if (prof.mode % 2 == 0)
    {
      EXPECT_LT(std::abs(prof.coefficient), 1e-12);
    }
  }
  // Odd-mode coefficient against a direct midpoint quadrature of exp(-(y-0.5)^2/2s^2) phi_1.
  double ref = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
  {
    const double y = (i + 0.5) / n;
    ref += std::exp(-(y - 0.5) * (y - 0.5) / 0.02) * SpectralData::mode(1, y) / n;
  }
  ASSERT_FALSE(p.profiles.empty());
  EXPECT_EQ(p.profiles[0].mode, 1);
  EXPECT_NEAR(p.profiles[0].coefficient, ref, 1e-9);
}

TEST(ProjectSource, ManufacturedHasNoModalForm)
{
  EXPECT_THROW(project_source(ManufacturedSource{}, kSpectral), ConfigError);
}

TEST(Oracle, ZeroSourceIsZero)
{
  const ProjectedSource p = project_source(ZeroSource{}, kSpectral);
  EXPECT_EQ(outgoing_solution(20.0, 2.0, p, 0.3, 0.4), complex(0.0));
  EXPECT_EQ(incoming_solution(20.0, 2.0, p, 0.3, 0.4), complex(0.0));
}

TEST(Oracle, PropagatingAmplitudeBeyondSupport)
{
  const ModalSolution sol = outgoing_oracle(20.0, 2.0, band());
  const double k1 = std::sqrt(20.0 - pi * pi);
  const double expected = std::abs(std::cos(k1 * 2.0) - std::cos(k1 * 3.0)) / (k1 * k1);
  EXPECT_NEAR(expected, 0.19633, 1e-5);
  for (double x : {1.5, 3.0, 10.0})
  {
    EXPECT_NEAR(std::abs(sol.mode_amplitude(1, x)), expected, 1e-13);
  }
}

TEST(Oracle, EvanescentDecayRate)
{
  const ModalSolution sol = outgoing_oracle(20.0, 2.0, band(2));
  const double kappa = std::sqrt(4 * pi * pi - 20.0);
  EXPECT_NEAR(kappa, 4.41343, 1e-5);
  const double a0 = std::abs(sol.mode_amplitude(2, 1.5));
  for (double x : {2.0, 2.7, 4.0})
  {
    EXPECT_NEAR(std::abs(sol.mode_amplitude(2, x)) / a0, std::exp(-kappa * (x - 1.5)), 1e-12);
  }
}

TEST(Oracle, IncomingIsConjugateForRealSources)
{
  for (const SourceSpec &s : {SourceSpec{ModeBandSource{}}, SourceSpec{GaussianSource{0.3, 0.4, 0.15, 1.0}}})
  {
    const ProjectedSource p = project_source(s, kSpectral);
    for (double x : {-1.5, 0.2, 0.9, 3.0})
    {
      for (double y : {0.1, 0.5, 0.77})
      {
        const complex out = outgoing_solution(20.0, 2.0, p, x, y);
        const complex in = incoming_solution(20.0, 2.0, p, x, y);
        EXPECT_NEAR(std::abs(in - std::conj(out)), 0.0, 1e-12);
      }
    }
  }
  const ModalSolution o = outgoing_oracle(20.0, 2.0, band());
  const ModalSolution i = incoming_oracle(20.0, 2.0, band());
  EXPECT_NEAR(std::abs(o.mode_amplitude(1, 4.0)), std::abs(i.mode_amplitude(1, 4.0)), 1e-14);
}

TEST(Oracle, Wronskian)
{
  const ModalSolution sol = outgoing_oracle(20.0, 2.0, band());
  const complex k = sol.wavenumber(1);
  EXPECT_NEAR(std::abs(sol.wronskian(1) - (-k * std::exp(-complex(0, 1) * k * 2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sol.wronskian(1)), k.real(), 1e-13);
  // Evanescent mode: principal root is +i kappa.
  EXPECT_NEAR(sol.wavenumber(2).real(), 0.0, 1e-15);
  EXPECT_GT(sol.wavenumber(2).imag(), 0.0);
}

TEST(Oracle, SelfCheckPassesAndNegativeControlFails)
{
  for (const SourceSpec &s : {SourceSpec{ModeBandSource{}}, SourceSpec{GaussianSource{0.3, 0.35, 0.1, 1.0}}})
  {
    const ProjectedSource p = project_source(s, kSpectral);
    const OracleReport rep = oracle_selfcheck(outgoing_oracle(20.0, 2.0, p), Direction::Outgoing);
    EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_LE(rep.ode_residual, 1e-6);
    EXPECT_LE(rep.dirichlet, 1e-12);
    EXPECT_TRUE(rep.flux_ok);
    EXPECT_TRUE(oracle_selfcheck(incoming_oracle(20.0, 2.0, p), Direction::Incoming).passed);
  }
  // Flipped branch: the incoming field presented as outgoing.
  const OracleReport bad = oracle_selfcheck(incoming_oracle(20.0, 2.0, band()), Direction::Outgoing);
  EXPECT_FALSE(bad.passed);
  EXPECT_FALSE(bad.flux_ok);
}

// Independent 1D finite-difference solve of a'' + (mu0 - nu_1) a = -f on [-L0, X] with
// a(-L0) = 0 and the exact outgoing condition a'(X) = i k a(X).
TEST(Oracle, AgreesWithFiniteDifferenceSolve)
{
  const double mu0 = 20.0, L0 = 2.0, X = 3.0;
  const double k = std::sqrt(mu0 - pi * pi);
  const std::size_t n = 50000;
  const double h = (X + L0) / n;
  BandedMatrix A(n, 1, 1);  // unknowns a_1 .. a_n
  std::vector<complex> b(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    const double x = -L0 + (i + 1) * h;
    A(i, i) = -2.0 / (h * h) + k * k;
    if (i > 0)
    {
      A(i, i - 1) = 1.0 / (h * h);
    }
    if (i + 1 < n)
    {
      A(i, i + 1) = 1.0 / (h * h);
    }
    b[i] = (x >= 0.0 && x <= 1.0) ? -1.0 : 0.0;
  }
  // Ghost point a_{n+1} = a_{n-1} + 2 h i k a_n.
  A(n - 1, n - 2) = 2.0 / (h * h);
  A(n - 1, n - 1) += 2.0 * complex(0, 1) * k / h;
  const auto a = BandedLU(A).solve(b);
  const ModalSolution sol = outgoing_oracle(mu0, L0, band());
  for (double x : {-1.0, 0.5, 2.0, 3.0})
  {
    const std::size_t i = static_cast<std::size_t>(std::lround((x + L0) / h)) - 1;
    EXPECT_NEAR(std::abs(a[i] - sol.mode_amplitude(1, x)), 0.0, 1e-3);
  }
}

// The outgoing mode continued along the scaled path decays at rate k Im(lambda).
TEST(Oracle, DampingAlongScaledPath)
{
  const double k = std::sqrt(20.0 - pi * pi);
  const PmlProfile p{complex(0.0, 0.5), 2.0};
  for (double x : {2.5, 4.0, 7.0})
  {
    const complex z = scaled_point(p, x);
    const double mag = std::abs(std::exp(complex(0, 1) * k * z));
    EXPECT_NEAR(mag, std::exp(-k * 0.5 * s_value(x - 2.0)), 1e-14);
    EXPECT_LT(mag, 1.0);
  }
}

}  // namespace
}  // namespace pmlguide
