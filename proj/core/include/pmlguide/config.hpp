// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_CONFIG_HPP
#define PMLGUIDE_CONFIG_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmlguide/assembly.hpp"
#include "pmlguide/geometry.hpp"
#include "pmlguide/scaling.hpp"
#include "pmlguide/spectral.hpp"

namespace pmlguide
{

enum class StudyKind
{
  Solve,
  Converge,
  Decay,
  Stability,
  Spectrum
};

enum class ReferenceKind
{
  Auto,    // oracle when available, otherwise self-convergence
  Oracle,  // modal oracle (straight strip only)
  Self     // discrete solution at R_ref
};

struct StudyConfig
{
  GeometryMap geometry = GeometryMap::straight(2.0);
  PmlProfile pml{complex(0.0, 0.5), 2.0, 1.0};
  double mu0 = 20.0;
  int modes = 0;  // 0: smallest K with nu_K > mu0 + 100

  double hx = 1.0 / 64.0;
  int ny = 64;

  SourceSpec source = ModeBandSource{1, 0.0, 1.0, 1.0};

  StudyKind kind = StudyKind::Solve;
  double R = 8.0;
  std::vector<double> R_list{3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
  double R_ref = 0.0;  // 0: max(R_list) for self-convergence
  ReferenceKind reference = ReferenceKind::Auto;

  std::vector<complex> shifts;
  int eig_count = 3;
  double beta = 0.0;  // essential-spectrum curves

  int probe_mode = 0;  // 0: source mode (or 1)

  double L0() const { return geometry.bounded_length; }
  SpectralData spectral() const;
};

// Parses the TOML configuration. Unknown tables or keys are rejected.
StudyConfig parse_config(std::string_view text);
StudyConfig load_config(const std::filesystem::path &path);

StudyKind parse_study_kind(std::string_view name);
std::string to_string(StudyKind kind);

struct ConfigCheck
{
  ProfileDiagnostics profile;
  AdmissibilityReport admissibility;
  double beta_max = 0.0;
  std::vector<std::string> warnings;
};

// Runs validate_profile and the admissibility checks. Throws ConfigError or
// AdmissibilityError when a solve must not proceed.
ConfigCheck check_config(const StudyConfig &config, double R_max);

}  // namespace pmlguide

#endif  // PMLGUIDE_CONFIG_HPP
