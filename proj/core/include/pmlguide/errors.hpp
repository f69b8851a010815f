// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_ERRORS_HPP
#define PMLGUIDE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pmlguide
{

// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Evaluation outside the analyticity region of a geometry map.
class DomainError : public Error
{
public:
  using Error::Error;
};

// Invalid or inconsistent configuration (mesh, PML profile, study parameters).
class ConfigError : public Error
{
public:
  using Error::Error;
};

// The scaled metric is (numerically) singular at a sample point.
class SingularMetricError : public Error
{
public:
  using Error::Error;
};

// The spectral parameter sits on a threshold or on the essential spectrum.
class AdmissibilityError : public Error
{
public:
  using Error::Error;
};

// Banded LU hit a pivot below the relative threshold.
class NearSingularError : public Error
{
public:
  NearSingularError(const std::string &what, double pivot_ratio)
    : Error(what), pivot_ratio_(pivot_ratio)
  {
  }
  double pivot_ratio() const { return pivot_ratio_; }

private:
  double pivot_ratio_;
};

}  // namespace pmlguide

#endif  // PMLGUIDE_ERRORS_HPP
