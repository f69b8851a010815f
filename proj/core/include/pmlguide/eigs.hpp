// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_EIGS_HPP
#define PMLGUIDE_EIGS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "pmlguide/banded.hpp"

namespace pmlguide
{

struct EigsOptions
{
  int max_restarts = 300;
  // Relative Ritz residual ||Op x - theta x|| / |theta| of the shift-inverted operator.
  double tol = 1e-10;
  // Krylov subspace dimension; 0 selects 4 * count.
  int subspace = 0;
  std::uint64_t seed = 1;
};

struct EigenEstimate
{
  complex value;
  double residual = 0.0;
  bool converged = false;
};

struct EigsResult
{
  std::vector<EigenEstimate> values;  // ordered by distance to the shift
  int restarts = 0;
  bool converged = false;
  double pivot_ratio = 0.0;
};

//
// Generalized eigenvalues of A x = mu M x nearest `shift`, by thick-restarted Arnoldi on
// (A - shift M)^{-1} M. The start vector is real (seeded), so conjugate inputs give
// conjugate outputs. Non-convergence within max_restarts returns the current Ritz
// values flagged unconverged.
//
EigsResult eigs_near(const BandedMatrix &A, const BandedMatrix &M, complex shift, int count,
                     const EigsOptions &options = {});

}  // namespace pmlguide

#endif  // PMLGUIDE_EIGS_HPP
