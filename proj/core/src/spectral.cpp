// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

using std::numbers::pi;

namespace
{

double segment_distance(complex p, complex a, complex b)
{
  const complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0)
  {
    return std::abs(p - a);
  }
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

}  // namespace

double SpectralData::mode(int k, double y)
{
  return std::numbers::sqrt2 * std::sin(k * pi * y);
}

double SpectralData::mode_derivative(int k, double y)
{
  return std::numbers::sqrt2 * k * pi * std::cos(k * pi * y);
}

std::vector<double> thresholds(int K)
{
  if (K < 1)
  {
    throw ConfigError("spectral: need at least one mode");
  }
  std::vector<double> nu(K);
  for (int k = 1; k <= K; ++k)
  {
    nu[k - 1] = (k * pi) * (k * pi);
  }
  return nu;
}

SpectralData make_spectral(int K) { return {thresholds(K)}; }

int default_mode_count(double mu0)
{
  int k = 1;
  while ((k * pi) * (k * pi) <= mu0 + 100.0)
  {
    ++k;
  }
  return k;
}

double beta_max(double mu0, complex lambda, const SpectralData &spectral)
{
  double best = std::numeric_limits<double>::infinity();
  for (double nu : spectral.thresholds)
  {
    if (std::abs(mu0 - nu) <= 1e-8)
    {
      std::ostringstream os;
      os << "spectral: mu0 = " << mu0 << " sits on the threshold " << nu;
      throw AdmissibilityError(os.str());
    }
    const complex root = std::sqrt(complex(mu0 - nu, 0.0));
    best = std::min(best, std::abs(((1.0 + lambda) * root).imag()));
  }
  if (spectral.thresholds.empty() || spectral.thresholds.back() <= mu0)
  {
    throw AdmissibilityError("spectral: retained thresholds must extend above mu0");
  }
  return best;
}

std::vector<EssentialCurve> essential_curves(complex lambda, double beta,
                                             const SpectralData &spectral,
                                             const XiRange &range)
{
  const complex factor = 1.0 / ((1.0 + lambda) * (1.0 + lambda));
  std::vector<EssentialCurve> curves;
  curves.reserve(spectral.thresholds.size());
  for (double nu : spectral.thresholds)
  {
    EssentialCurve c{nu, {}, {}};
    const int n = std::max(range.count, 2);
    for (int i = 0; i < n; ++i)
    {
      const double xi = range.min + (range.max - range.min) * i / (n - 1);
      const complex w(beta, xi);
      c.xi.push_back(xi);
      c.points.push_back(nu - factor * w * w);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

double distance_to_curves(complex mu, std::span<const EssentialCurve> curves)
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto &c : curves)
  {
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i)
    {
      best = std::min(best, segment_distance(mu, c.points[i], c.points[i + 1]));
    }
    if (c.points.size() == 1)
    {
      best = std::min(best, std::abs(mu - c.points[0]));
    }
  }
  return best;
}

double distance_to_rays(complex mu, complex lambda, const SpectralData &spectral)
{
  const complex dir = 1.0 / ((1.0 + lambda) * (1.0 + lambda));
  const complex unit = dir / std::abs(dir);
  double best = std::numeric_limits<double>::infinity();
  for (double nu : spectral.thresholds)
  {
    const complex rel = mu - nu;
    const double t = std::max(0.0, (rel * std::conj(unit)).real());
    best = std::min(best, std::abs(rel - t * unit));
  }
  return best;
}

AdmissibilityReport admissibility(double mu0, complex lambda, const SpectralData &spectral)
{
  AdmissibilityReport rep;
  rep.threshold_distance = std::numeric_limits<double>::infinity();
  for (double nu : spectral.thresholds)
  {
    const double d = std::abs(mu0 - nu);
    if (d < rep.threshold_distance)
    {
      rep.threshold_distance = d;
      rep.nearest_threshold = nu;
    }
  }
  rep.curve_distance = distance_to_rays(mu0, lambda, spectral);
  if (rep.threshold_distance < 1e-6)
  {
    rep.admissible = false;
    rep.reasons.push_back("mu0 coincides with a threshold");
  }
  if (rep.curve_distance < 1e-6)
  {
    rep.admissible = false;
    rep.reasons.push_back("mu0 lies on the essential spectrum of the scaled operator");
  }
  return rep;
}

}  // namespace pmlguide
