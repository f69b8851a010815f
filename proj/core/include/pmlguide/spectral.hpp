// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_SPECTRAL_HPP
#define PMLGUIDE_SPECTRAL_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace pmlguide
{

using complex = std::complex<double>;

// Thresholds nu_k = (k pi)^2 and modes sqrt(2) sin(k pi y) of the Dirichlet Laplacian on
// the cross-section (0,1). Mode indices are 1-based.
struct SpectralData
{
  std::vector<double> thresholds;

  int mode_count() const { return static_cast<int>(thresholds.size()); }
  double threshold(int k) const { return thresholds.at(k - 1); }

  static double mode(int k, double y);
  static double mode_derivative(int k, double y);
};

std::vector<double> thresholds(int K);
SpectralData make_spectral(int K);

// Smallest K with nu_K > mu0 + 100.
int default_mode_count(double mu0);

// min over thresholds of |Im((1 + lambda) sqrt(mu0 - nu))|. Decay rates beta in
// [0, beta_max) are admissible. Throws AdmissibilityError at a threshold or if the
// retained modes do not reach above mu0.
double beta_max(double mu0, complex lambda, const SpectralData &spectral);

struct EssentialCurve
{
  double nu;
  std::vector<double> xi;
  std::vector<complex> points;  // nu - (1+lambda)^{-2} (beta + i xi)^2
};

struct XiRange
{
  double min = 0.0;
  double max = 10.0;
  int count = 201;
};

std::vector<EssentialCurve> essential_curves(complex lambda, double beta,
                                             const SpectralData &spectral,
                                             const XiRange &range = {});

// Distance from a point to the union of sampled curves (piecewise-linear).
double distance_to_curves(complex mu, std::span<const EssentialCurve> curves);

// Distance from a point to the beta = 0 half-lines {nu + t (1+lambda)^{-2}, t >= 0}.
double distance_to_rays(complex mu, complex lambda, const SpectralData &spectral);

struct AdmissibilityReport
{
  bool admissible = true;
  double threshold_distance = 0.0;
  double nearest_threshold = 0.0;
  double curve_distance = 0.0;
  std::vector<std::string> reasons;
};

AdmissibilityReport admissibility(double mu0, complex lambda, const SpectralData &spectral);

}  // namespace pmlguide

#endif  // PMLGUIDE_SPECTRAL_HPP
