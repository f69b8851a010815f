// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_STUDIES_HPP
#define PMLGUIDE_STUDIES_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmlguide/config.hpp"
#include "pmlguide/eigs.hpp"
#include "pmlguide/mesh.hpp"
#include "pmlguide/norms.hpp"
#include "pmlguide/oracle.hpp"

namespace pmlguide
{

struct RunOptions
{
  int threads = 1;
  std::uint64_t seed = 1;
};

struct SolveOutput
{
  double R = 0.0;
  TensorMesh mesh;
  std::vector<complex> nodal;
  double pivot_ratio = 0.0;
  double growth = 0.0;
  double residual = 0.0;
  double seconds = 0.0;
  RegionNorms interior;  // on (-L0, r)
  RegionNorms full;      // on (-L0, R)
  double source_l2 = 0.0;
  // Error against a known solution on (-L0, r): the matching oracle, or the manufactured
  // solution for the unscaled straight strip.
  std::optional<RegionError> exact_error;
  std::string exact_label;
  std::vector<std::string> warnings;
};

// Oracle matching the configuration: straight strip, modal source and non-real lambda
// (outgoing for Im lambda > 0, incoming for Im lambda < 0).
std::optional<ModalSolution> matching_oracle(const StudyConfig &config);

// Assemble, factor and solve at one truncation length. Does not re-run check_config.
SolveOutput solve_once(const StudyConfig &config, double R, int threads = 1);

// Validates the configuration, then solves at config.R.
SolveOutput run_solve(const StudyConfig &config, const RunOptions &options = {});

struct StudyRecord
{
  double R = 0.0;
  double h = 0.0;
  double err_l2 = 0.0;  // relative, on (-L0, r)
  double err_h1 = 0.0;
  double ratio = 0.0;   // ||v_R||_{H1} / ||g||_{L2}
  double pivot = 0.0;
  double seconds = 0.0;
};

struct RateFit
{
  double rate = 0.0;  // positive decay constant of the error per unit R
  double intercept = 0.0;
  int points_used = 0;
  bool conclusive = false;
  bool monotone = false;  // errors strictly decrease over the fitted points
};

// Least squares of log(err) against R after dropping trailing points whose error is
// within 3x of the minimum, and points with zero error. Needs 4 points.
RateFit fit_rate(std::span<const double> R, std::span<const double> err);

struct ConvergenceResult
{
  std::vector<StudyRecord> records;
  RateFit fit;     // on err_l2
  RateFit fit_h1;  // on err_h1
  std::string reference;  // "oracle" or "self(R_ref)"
  double beta_max = 0.0;
  std::vector<std::string> warnings;
};

ConvergenceResult run_convergence(const StudyConfig &config, const RunOptions &options = {});

struct DecayResult
{
  int mode = 1;
  std::vector<double> x;
  std::vector<complex> amplitude;
  double window_begin = 0.0;
  double window_end = 0.0;
  int points_used = 0;
  double slope = 0.0;
  double expected_slope = 0.0;
  bool conclusive = false;
  std::vector<std::string> warnings;
};

// Projection of a nodal field on phi_mode at every x node (trapezoid in y).
std::vector<complex> mode_projection(std::span<const complex> nodal, const TensorMesh &mesh,
                                     int mode);

DecayResult run_decay_probe(const StudyConfig &config, const RunOptions &options = {});

struct StabilityResult
{
  std::vector<StudyRecord> records;
  double variation = 0.0;  // (max - min) / min of the ratio over the top half of R
  bool flagged = false;
  double beta_max = 0.0;
  std::vector<std::string> warnings;
};

StabilityResult run_stability(const StudyConfig &config, const RunOptions &options = {});

struct SpectrumEntry
{
  complex shift;
  complex value;
  double dist_to_curve = 0.0;
  double dist_to_ray = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct SpectrumResult
{
  std::vector<SpectrumEntry> entries;
  std::vector<EssentialCurve> curves;
  std::size_t unknowns = 0;
  std::vector<std::string> warnings;
};

// Default shift when none is configured: nu_1 + 0.5 (1 + lambda)^{-2}.
SpectrumResult run_spectrum(const StudyConfig &config, const RunOptions &options = {});

}  // namespace pmlguide

#endif  // PMLGUIDE_STUDIES_HPP
