// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

using std::numbers::pi;

namespace
{

constexpr complex I{0.0, 1.0};

struct GaussRule
{
  std::vector<double> nodes, weights;  // on [-1, 1]
};

// Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n)
{
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i)
  {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    g.nodes[i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

const GaussRule &rule64()
{
  static const GaussRule r = gauss_legendre(64);
  return r;
}

const GaussRule &rule12()
{
  static const GaussRule r = gauss_legendre(12);
  return r;
}

// Composite 12-point Gauss-Legendre with panels no wider than `panel`.
template <class F>
complex integrate(F &&f, double a, double b, double panel)
{
  if (!(b > a))
  {
    return 0.0;
  }
  const auto &g = rule12();
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
  const double h = (b - a) / n;
  complex s = 0.0;
  for (int p = 0; p < n; ++p)
  {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
    {
      s += g.weights[i] * 0.5 * h * f(mid + 0.5 * h * g.nodes[i]);
    }
  }
  return s;
}

double support_end(const AxialProfile &p)
{
  return p.kind == AxialProfile::Kind::Band ? p.x1 : p.center + 8.0 * p.sigma;
}

double support_begin(const AxialProfile &p, double L0)
{
  return p.kind == AxialProfile::Kind::Band ? std::max(p.x0, -L0)
                                            : std::max(-L0, p.center - 8.0 * p.sigma);
}

}  // namespace

double AxialProfile::operator()(double x) const
{
  if (kind == Kind::Band)
  {
    return (x >= x0 && x <= x1) ? coefficient : 0.0;
  }
  const double d = x - center;
  return coefficient * std::exp(-d * d / (2.0 * sigma * sigma));
}

ProjectedSource project_source(const SourceSpec &source, const SpectralData &spectral)
{
  ProjectedSource out;
  if (std::holds_alternative<ManufacturedSource>(source))
  {
    throw ConfigError("oracle: the manufactured source has no modal oracle");
  }
  if (const auto *band = std::get_if<ModeBandSource>(&source))
  {
    if (band->mode >= 1 && band->mode <= spectral.mode_count() && band->amplitude != 0.0)
    {
      AxialProfile p;
      p.mode = band->mode;
      p.kind = AxialProfile::Kind::Band;
      p.coefficient = band->amplitude;
      p.x0 = band->x0;
      p.x1 = band->x1;
      out.profiles.push_back(p);
    }
  }
  else if (const auto *gauss = std::get_if<GaussianSource>(&source))
  {
    const auto &g = rule64();
    for (int k = 1; k <= spectral.mode_count(); ++k)
    {
      double c = 0.0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
      {
        const double y = 0.5 * (1.0 + g.nodes[i]);
        const double dy = y - gauss->yc;
        c += 0.5 * g.weights[i] * std::exp(-dy * dy / (2.0 * gauss->sigma * gauss->sigma)) *
             SpectralData::mode(k, y);
      }
      AxialProfile p;
      p.mode = k;
      p.kind = AxialProfile::Kind::Gaussian;
      p.coefficient = gauss->amplitude * c;
      p.center = gauss->xc;
      p.sigma = gauss->sigma;
      out.profiles.push_back(p);
    }
  }
  double largest = 0.0;
  for (const auto &p : out.profiles)
  {
    largest = std::max(largest, std::abs(p.coefficient));
  }
  if (largest < 1e-14)
  {
    out.profiles.clear();
    out.warnings.push_back("oracle: source is orthogonal to every retained mode");
  }
  return out;
}

ModalSolution::ModalSolution(double mu0, double L0, std::vector<AxialProfile> profiles,
                             Direction direction)
  : mu0_(mu0), L0_(L0), profiles_(std::move(profiles)), direction_(direction)
{
  for (const auto &p : profiles_)
  {
    const double nu = (p.mode * pi) * (p.mode * pi);
    if (std::abs(mu0_ - nu) < 1e-12)
    {
      throw AdmissibilityError("oracle: mu0 sits on a threshold");
    }
  }
}

complex ModalSolution::wavenumber(int mode) const
{
  const double nu = (mode * pi) * (mode * pi);
  return std::sqrt(complex(mu0_ - nu, 0.0));
}

complex ModalSolution::radiating_wavenumber(int mode) const
{
  const complex k = wavenumber(mode);
  const bool propagating = k.imag() == 0.0;
  return (direction_ == Direction::Incoming && propagating) ? -k : k;
}

complex ModalSolution::wronskian(int mode) const
{
  const complex k = wavenumber(mode);
  const complex q = radiating_wavenumber(mode);
  return -k * std::exp(-I * q * L0_);
}

ModalSolution::Integrals ModalSolution::integrals(const AxialProfile &p, complex k, complex q,
                                                  double x) const
{
  Integrals out{0.0, 0.0};
  const double a = support_begin(p, L0_);
  const double b = support_end(p);
  if (p.kind == AxialProfile::Kind::Band)
  {
    if (x > a)
    {
      const double m = std::min(x, b);
      out.left = p.coefficient * (std::cos(k * (a + L0_)) - std::cos(k * (m + L0_))) / k;
    }
    if (x < b)
    {
      const double m = std::max(x, a);
      out.right = p.coefficient * (std::exp(I * q * b) - std::exp(I * q * m)) / (I * q);
    }
    return out;
  }
  const double panel = 0.25 * p.sigma;
  if (x > a)
  {
    out.left = integrate([&](double t) { return p(t) * std::sin(k * (t + L0_)); }, a,
                         std::min(x, b), panel);
  }
  if (x < b)
  {
    out.right =
        integrate([&](double t) { return p(t) * std::exp(I * q * t); }, std::max(x, a), b, panel);
  }
  return out;
}

complex ModalSolution::amplitude(std::size_t index, double x) const
{
  const AxialProfile &p = profiles_.at(index);
  const complex k = wavenumber(p.mode);
  const complex q = radiating_wavenumber(p.mode);
  const Integrals ints = integrals(p, k, q, x);
  complex a = std::exp(I * q * x) * ints.left;
  if (ints.right != 0.0)
  {
    a += std::sin(k * (x + L0_)) * ints.right;
  }
  return -a / wronskian(p.mode);
}

complex ModalSolution::amplitude_derivative(std::size_t index, double x) const
{
  const AxialProfile &p = profiles_.at(index);
  const complex k = wavenumber(p.mode);
  const complex q = radiating_wavenumber(p.mode);
  const Integrals ints = integrals(p, k, q, x);
  complex d = I * q * std::exp(I * q * x) * ints.left;
  if (ints.right != 0.0)
  {
    d += k * std::cos(k * (x + L0_)) * ints.right;
  }
  return -d / wronskian(p.mode);
}

complex ModalSolution::value(double x, double y) const
{
  complex u = 0.0;
  for (std::size_t i = 0; i < profiles_.size(); ++i)
  {
    u += amplitude(i, x) * SpectralData::mode(profiles_[i].mode, y);
  }
  return u;
}

ExactValue ModalSolution::evaluate(double x, double y) const
{
  ExactValue v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < profiles_.size(); ++i)
  {
    const int k = profiles_[i].mode;
    const complex a = amplitude(i, x);
    v.u += a * SpectralData::mode(k, y);
    v.ux += amplitude_derivative(i, x) * SpectralData::mode(k, y);
    v.uy += a * SpectralData::mode_derivative(k, y);
  }
  return v;
}

complex ModalSolution::mode_amplitude(int mode, double x) const
{
  complex a = 0.0;
  for (std::size_t i = 0; i < profiles_.size(); ++i)
  {
    if (profiles_[i].mode == mode)
    {
      a += amplitude(i, x);
    }
  }
  return a;
}

ModalSolution outgoing_oracle(double mu0, double L0, const ProjectedSource &projected)
{
  return ModalSolution(mu0, L0, projected.profiles, Direction::Outgoing);
}

ModalSolution incoming_oracle(double mu0, double L0, const ProjectedSource &projected)
{
  return ModalSolution(mu0, L0, projected.profiles, Direction::Incoming);
}

complex outgoing_solution(double mu0, double L0, const ProjectedSource &projected, double x,
                          double y)
{
  return outgoing_oracle(mu0, L0, projected).value(x, y);
}

complex incoming_solution(double mu0, double L0, const ProjectedSource &projected, double x,
                          double y)
{
  return incoming_oracle(mu0, L0, projected).value(x, y);
}

OracleReport oracle_selfcheck(const ModalSolution &sol, Direction expected)
{
  OracleReport rep;
  const double L0 = sol.L0();
  constexpr double h = 2e-4;
  constexpr int samples = 1000;

  for (std::size_t idx = 0; idx < sol.profiles().size(); ++idx)
  {
    const AxialProfile &p = sol.profiles()[idx];
    const double nu = (p.mode * pi) * (p.mode * pi);
    const double lo = -L0 + 0.05;
    const double a = support_begin(p, L0);
    const double b = support_end(p);
    const double hi = b + 5.0;

    // ODE residual a'' + (mu0 - nu) a + f = 0 by central differences.
    double scale = 0.0, worst = 0.0;
    for (int s = 0; s < samples; ++s)
    {
      const double x = lo + (hi - lo) * (s + 0.5) / samples;
      if (p.kind == AxialProfile::Kind::Band &&
          (std::abs(x - a) < 3 * h || std::abs(x - b) < 3 * h))
      {
        continue;
      }
      const complex am = sol.amplitude(idx, x - h), a0 = sol.amplitude(idx, x),
                    ap = sol.amplitude(idx, x + h);
      const complex second = (ap - 2.0 * a0 + am) / (h * h);
      const complex res = second + (sol.mu0() - nu) * a0 + p(x);
      scale = std::max(scale, std::abs((sol.mu0() - nu) * a0) + std::abs(p(x)));
      worst = std::max(worst, std::abs(res));
    }
    const double rel = scale > 0.0 ? worst / scale : worst;
    rep.ode_residual = std::max(rep.ode_residual, rel);

    rep.dirichlet = std::max(rep.dirichlet, std::abs(sol.amplitude(idx, -L0)));

    const complex W = sol.wronskian(p.mode);
    const complex k = sol.wavenumber(p.mode);
    const complex q = sol.radiating_wavenumber(p.mode);
    for (double x : {-L0, 0.0, 1.0, 3.0})
    {
      const complex v1 = std::sin(k * (x + L0)), dv1 = k * std::cos(k * (x + L0));
      const complex v2 = std::exp(I * q * x), dv2 = I * q * v2;
      rep.wronskian_error =
          std::max(rep.wronskian_error, std::abs(v1 * dv2 - dv1 * v2 - W) / std::abs(W));
    }

    if (nu < sol.mu0())
    {
      const complex am = sol.amplitude(idx, b + 1.0);
      const double flux = (std::conj(am) * sol.amplitude_derivative(idx, b + 1.0)).imag();
      const bool outgoing_flux = flux > 0.0;
      if (outgoing_flux != (expected == Direction::Outgoing))
      {
        rep.flux_ok = false;
      }
      if (std::abs(std::abs(W) - std::abs(k)) > 1e-12 * std::abs(k))
      {
        rep.wronskian_error = std::max(rep.wronskian_error, 1.0);
      }
      double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
      for (int s = 0; s <= 200; ++s)
      {
        const double x = b + 0.1 + 4.9 * s / 200.0;
        const double m = std::abs(sol.amplitude(idx, x));
        amin = std::min(amin, m);
        amax = std::max(amax, m);
      }
      if (amax > 0.0)
      {
        rep.amplitude_variation = std::max(rep.amplitude_variation, (amax - amin) / amax);
      }
    }
  }

  auto fail = [&](const std::string &what) {
    rep.passed = false;
    rep.failures.push_back(what);
  };
  if (rep.ode_residual > 1e-6)
  {
    fail("ODE residual above 1e-6");
  }
  if (rep.dirichlet > 1e-12)
  {
    fail("wall condition a(-L0) = 0 violated");
  }
  if (!rep.flux_ok)
  {
    fail("flux sign does not match the claimed radiation direction");
  }
  if (rep.amplitude_variation > 1e-10)
  {
    fail("propagating amplitude is not constant beyond the support");
  }
  if (rep.wronskian_error > 1e-12)
  {
    fail("Wronskian mismatch");
  }
  return rep;
}

}  // namespace pmlguide
