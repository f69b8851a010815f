// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "pmlguide/assembly.hpp"
#include "pmlguide/banded.hpp"
#include "pmlguide/eigs.hpp"

namespace pmlguide
{
namespace
{

TensorMesh default_mesh(int n) { return build_mesh(2.0, 2.0, 8.0, 1.0 / n, n); }

void BM_Assemble(benchmark::State &state)
{
  const TensorMesh mesh = default_mesh(static_cast<int>(state.range(0)));
  const PmlProfile pml{complex(0.0, 0.5), 2.0};
  for (auto _ : state)
  {
    DiscreteProblem p = assemble(GeometryMap::log_shift(), pml, 20.0, mesh, ModeBandSource{},
                                 static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(p.rhs.data());
  }
  state.counters["unknowns"] = static_cast<double>(mesh.dof_count());
}
BENCHMARK(BM_Assemble)->Args({32, 1})->Args({64, 1})->Args({64, 2})->Unit(benchmark::kMillisecond);

void BM_Factor(benchmark::State &state)
{
  const TensorMesh mesh = default_mesh(static_cast<int>(state.range(0)));
  const DiscreteProblem p = assemble(GeometryMap::straight(), PmlProfile{complex(0.0, 0.5), 2.0},
                                     20.0, mesh, ModeBandSource{});
  for (auto _ : state)
  {
    BandedLU lu(p.matrix);
    benchmark::DoNotOptimize(lu.pivot_ratio());
  }
  state.counters["unknowns"] = static_cast<double>(mesh.dof_count());
}
BENCHMARK(BM_Factor)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State &state)
{
  const TensorMesh mesh = default_mesh(static_cast<int>(state.range(0)));
  const DiscreteProblem p = assemble(GeometryMap::straight(), PmlProfile{complex(0.0, 0.5), 2.0},
                                     20.0, mesh, ModeBandSource{});
  const BandedLU lu(p.matrix);
  for (auto _ : state)
  {
    auto u = lu.solve(p.rhs);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_Solve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EigsNear(benchmark::State &state)
{
  const TensorMesh mesh = build_mesh(2.0, 2.0, 20.0, 1.0 / 16, 16);
  const complex lambda(0.0, 0.5);
  const Pencil p = assemble_pencil(GeometryMap::straight(), PmlProfile{lambda, 2.0}, mesh);
  const complex shift = 9.8696044 + 0.5 / ((1.0 + lambda) * (1.0 + lambda));
  for (auto _ : state)
  {
    EigsResult r = eigs_near(p.stiffness, p.mass, shift, 3);
    benchmark::DoNotOptimize(r.values.data());
  }
}
BENCHMARK(BM_EigsNear)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pmlguide

BENCHMARK_MAIN();
