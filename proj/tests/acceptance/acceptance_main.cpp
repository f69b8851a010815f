// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runs A1-A8. Prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails. Pass criterion names (A1 ... A8) to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmlguide/assembly.hpp"
#include "pmlguide/banded.hpp"
#include "pmlguide/config.hpp"
#include "pmlguide/norms.hpp"
#include "pmlguide/oracle.hpp"
#include "pmlguide/scaling.hpp"
#include "pmlguide/studies.hpp"

namespace
{

using namespace pmlguide;
using std::numbers::pi;

struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void info(const std::string &s) { std::printf("    %s\n", s.c_str()); }

// Default experiment: straight strip, L0 = 2, r = 2, mu0 = 20, lambda = 0.5i,
// ModeBand{1, 0, 1}, hx = 1/64, Ny = 64, R in {3..8}.
StudyConfig default_config()
{
  return StudyConfig{};
}

double manufactured_error(double L0, double r, double R, double hx, int ny, double x_cut)
{
  StudyConfig c;
  c.geometry = GeometryMap::straight(L0);
  c.pml = PmlProfile{0.0, r};
  c.hx = hx;
  c.ny = ny;
  c.source = ManufacturedSource{};
  const SolveOutput out = solve_once(c, R, 1);
  if (x_cut == r)
  {
    return out.exact_error->relative_l2();
  }
  return error_on_region(out.nodal, out.mesh, x_cut, [&](double x, double y) {
           const ManufacturedValue m = manufactured_solution(x, y, L0, R);
           return ExactValue{m.u, m.ux, m.uy};
         }).relative_l2();
}

Outcome a1()
{
  // Short strip of length 1.5 keeps mu0 = 20 away from the closed-strip eigenvalues
  // pi^2 (1 + (m/1.5)^2) and the finest level small enough for a quick banded solve.
  const double L0 = 1.0, r = 0.25, R = 0.5;
  std::vector<double> err;
  for (int n : {16, 32, 64, 128})
  {
    err.push_back(manufactured_error(L0, r, R, 1.0 / n, n, R));
  }
  std::string ratios;
  bool ok = true;
  for (std::size_t i = 1; i < err.size(); ++i)
  {
    const double q = err[i - 1] / err[i];
    ok = ok && q >= 3.2 && q <= 4.8;
    ratios += fmt("%.3f ", q);
  }
  info(fmt("L2 errors: %.3e %.3e %.3e %.3e", err[0], err[1], err[2], err[3]));
  return {ok, "error ratios per halving " + ratios + "(need [3.2, 4.8])"};
}

Outcome a2()
{
  const StudyConfig out_cfg = default_config();
  StudyConfig in_cfg = out_cfg;
  in_cfg.pml.lambda = std::conj(out_cfg.pml.lambda);
  const double ref = manufactured_error(out_cfg.L0(), out_cfg.pml.r, out_cfg.R, out_cfg.hx,
                                        out_cfg.ny, out_cfg.pml.r);
  const SolveOutput so = run_solve(out_cfg);
  const SolveOutput si = run_solve(in_cfg);
  const double eo = so.exact_error->relative_l2();
  const double ei = si.exact_error->relative_l2();
  info(fmt("manufactured error %.4e; %s error %.4e; %s error %.4e", ref, so.exact_label.c_str(),
           eo, si.exact_label.c_str(), ei));
  const bool ok = eo <= 3.0 * ref && ei <= 3.0 * ref;
  return {ok, fmt("outgoing/manufactured %.2f, incoming/manufactured %.2f (need <= 3)", eo / ref,
                  ei / ref)};
}

std::optional<ConvergenceResult> g_straight;

const ConvergenceResult &straight_convergence()
{
  if (!g_straight)
  {
    StudyConfig c = default_config();
    c.reference = ReferenceKind::Self;
    c.R_ref = 10.0;
    g_straight = run_convergence(c);
  }
  return *g_straight;
}

void print_records(const ConvergenceResult &res)
{
  std::string line = "err_l2 by R:";
  for (const auto &r : res.records)
  {
    line += fmt(" %g:%.3e", r.R, r.err_l2);
  }
  info(line);
}

Outcome a3()
{
  const ConvergenceResult &res = straight_convergence();
  print_records(res);
  // The oracle-referenced sweep plateaus at the discretization error almost immediately.
  StudyConfig oc = default_config();
  oc.reference = ReferenceKind::Oracle;
  const ConvergenceResult orc = run_convergence(oc);
  print_records(orc);
  info(fmt("oracle reference: %d points above the plateau%s", orc.fit.points_used,
           orc.fit.conclusive ? fmt(", rate %.3f", orc.fit.rate).c_str() : " (inconclusive)"));
  const double bound = 0.8 * res.beta_max;
  const bool ok = res.fit.conclusive && res.fit.points_used >= 4 && res.fit.monotone &&
                  res.fit.rate >= bound;
  return {ok, fmt("rate %.4f from %d points, monotone %s, reference %s (need >= %.4f)",
                  res.fit.rate, res.fit.points_used, res.fit.monotone ? "yes" : "no",
                  res.reference.c_str(), bound)};
}

Outcome a4()
{
  const ConvergenceResult &straight = straight_convergence();
  StudyConfig c = default_config();
  c.geometry = GeometryMap::log_shift(1.0);
  c.reference = ReferenceKind::Self;
  c.R_ref = 10.0;
  const ConvergenceResult res = run_convergence(c);
  print_records(res);
  const double rel = std::abs(res.fit.rate - straight.fit.rate) / straight.fit.rate;
  const bool ok = res.fit.conclusive && straight.fit.conclusive && rel <= 0.25;
  return {ok, fmt("log-shift rate %.4f vs straight %.4f, difference %.1f%% (need <= 25%%)",
                  res.fit.rate, straight.fit.rate, 100.0 * rel)};
}

Outcome a5()
{
  const StabilityResult res = run_stability(default_config());
  std::string line = "ratio by R:";
  for (const auto &r : res.records)
  {
    line += fmt(" %g:%.5f", r.R, r.ratio);
  }
  info(line);
  return {res.variation < 0.1,
          fmt("variation over the upper half %.3f%% (need < 10%%)", 100.0 * res.variation)};
}

Outcome a6()
{
  const DecayResult res = run_decay_probe(default_config());
  const double lo = -1.59 * 1.15, hi = -1.59 * 0.85;
  const bool ok = res.conclusive && res.slope >= lo && res.slope <= hi;
  return {ok, fmt("slope %.4f over [%g, %g], %d nodes (need [%.4f, %.4f])", res.slope,
                  res.window_begin, res.window_end, res.points_used, lo, hi)};
}

Outcome a7()
{
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string &what) {
    info(fmt("%-44s %s", what.c_str(), ok ? "ok" : "FAILED"));
    if (!ok)
    {
      failed.push_back(what);
    }
  };

  const GeometryMap geom = GeometryMap::log_shift(1.0);
  const complex lambda(0.1, 0.5);
  const double r = 2.0;
  const TensorMesh mesh = build_mesh(1.0, r, 5.0, 1.0 / 32, 32);
  const DiscreteProblem A = assemble(geom, PmlProfile{lambda, r}, 20.0, mesh, ModeBandSource{});

  // Complex symmetry, bitwise.
  bool sym = true;
  for (std::size_t i = 0; i < A.matrix.size() && sym; ++i)
  {
    for (std::size_t j = i + 1; j <= std::min(A.matrix.size() - 1, i + A.matrix.upper()); ++j)
    {
      sym = sym && A.matrix.get(i, j) == A.matrix.get(j, i);
    }
  }
  check(sym, "complex symmetry A = A^T (bitwise)");

  // Interface exactness: rows supported before r match the unscaled assembly bitwise.
  const DiscreteProblem A0 = assemble(geom, PmlProfile{0.0, r}, 20.0, mesh, ModeBandSource{});
  bool iface = true;
  const std::size_t ir = mesh.node_index_at(r);
  for (std::size_t i = 1; i < ir; ++i)
  {
    for (std::size_t j = 1; j + 1 < mesh.ny(); ++j)
    {
      const std::size_t row = mesh.dof(i, j);
      for (std::size_t col = (row > A.matrix.lower() ? row - A.matrix.lower() : 0);
           col <= std::min(A.matrix.size() - 1, row + A.matrix.upper()); ++col)
      {
        iface = iface && A.matrix.get(row, col) == A0.matrix.get(row, col);
      }
      iface = iface && A.rhs[row] == A0.rhs[row];
    }
  }
  check(iface, "interface exactness before r (bitwise)");

  // Schwarz conjugation end to end with a real source.
  {
    StudyConfig c = default_config();
    c.geometry = geom;
    c.pml = PmlProfile{lambda, r};
    c.hx = 1.0 / 32;
    c.ny = 32;
    c.source = GaussianSource{0.3, 0.35, 0.15, 1.0};
    StudyConfig cc = c;
    cc.pml.lambda = std::conj(lambda);
    const SolveOutput u = solve_once(c, 6.0, 1), v = solve_once(cc, 6.0, 1);
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < u.nodal.size(); ++k)
    {
      diff = std::max(diff, std::abs(u.nodal[k] - std::conj(v.nodal[k])));
      scale = std::max(scale, std::abs(u.nodal[k]));
    }
    check(diff <= 1e-10 * scale, fmt("Schwarz v(conj l) = conj v(l): %.1e", diff / scale));
  }

  // Scaling function: zero before the layer, 0 <= s' <= 1, slope one past the ramp, C^2.
  {
    bool ok = true;
    for (int i = 0; i <= 100000; ++i)
    {
      const double t = -1.0 + 3.0 * i / 100000.0;
      ok = ok && (t > 0.0 || (s_value(t) == 0.0 && s_prime(t) == 0.0));
      ok = ok && s_prime(t) >= 0.0 && s_prime(t) <= 1.0;
      ok = ok && (t < 1.0 || (s_prime(t) == 1.0 && s_second(t) == 0.0));
    }
    for (double t : {0.0, 1.0})
    {
      const double e = 1e-9;
      ok = ok && std::abs(s_second(t + e) - s_second(t - e)) < 1e-6;
    }
    check(ok, "scaling function s: support, slope bounds, C^2");
  }

  // Field-of-values sector bound at 10^4 samples.
  {
    const PmlProfile p{complex(0.0, 0.5), r};
    const ProfileDiagnostics d = validate_profile(geom, p);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(-1.0, 40.0), uy(0.0, 1.0), ut(0.0, 2 * pi);
    double worst = 0.0, lo = INFINITY, hi = 0.0;
    for (int k = 0; k < 10000; ++k)
    {
      const double x = ux(rng), y = uy(rng), t = ut(rng);
      const Matrix2c g = scaled_metric(geom, p, x, y);
      const complex q = (g.adjugate() * (1.0 / g.det())).quad(std::cos(t), std::sin(t));
      worst = std::max(worst, std::abs(std::arg(q)));
      lo = std::min(lo, std::abs(q));
      hi = std::max(hi, std::abs(q));
    }
    const bool ok = worst < pi / 2 && worst <= d.worst_angle + 1e-2 &&
                    lo >= 0.99 * d.ellipticity && hi <= 1.01 / d.ellipticity;
    check(ok, fmt("sector: max|arg| %.4f, phi %.4f, delta %.3f", worst, d.worst_angle,
                  d.ellipticity));
  }

  // Holomorphy of the coefficients: Cauchy mean value on circles in z and in lambda.
  {
    double err = 0.0;
    const int n = 256;
    for (const complex z0 : {complex(1.0, 0.2), complex(4.0, -0.5)})
    {
      Matrix2c mean{0.0, 0.0, 0.0, 0.0};
      for (int k = 0; k < n; ++k)
      {
        mean = mean + metric(geom, z0 + 0.3 * std::polar(1.0, 2 * pi * k / n), 0.6) * (1.0 / n);
      }
      err = std::max(err, (mean - metric(geom, z0, 0.6)).max_abs());
    }
    for (double x : {2.5, 4.0})
    {
      complex w = 0.0;
      Matrix2c c{0.0, 0.0, 0.0, 0.0};
      for (int k = 0; k < n; ++k)
      {
        const complex l = lambda + 0.05 * std::polar(1.0, 2 * pi * k / n);
        const ScaledCoefficients sc = coefficients(geom, PmlProfile{l, r}, x, 0.6);
        w += sc.weight / static_cast<double>(n);
        c = c + sc.conductivity * (1.0 / n);
      }
      const ScaledCoefficients s0 = coefficients(geom, PmlProfile{lambda, r}, x, 0.6);
      err = std::max({err, std::abs(w - s0.weight), (c - s0.conductivity).max_abs()});
    }
    check(err < 1e-10, fmt("coefficient holomorphy (Cauchy): %.1e", err));
  }

  std::string detail = failed.empty() ? "all structural checks hold" : "failed:";
  for (const auto &f : failed)
  {
    detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

Outcome a8()
{
  StudyConfig c = default_config();
  c.hx = 1.0 / 16;
  c.ny = 16;
  c.R = 20.0;
  c.eig_count = 3;
  c.source = ZeroSource{};
  const SpectrumResult s = run_spectrum(c);
  StudyConfig cc = c;
  cc.pml.lambda = std::conj(c.pml.lambda);
  const SpectrumResult t = run_spectrum(cc);

  double worst = 0.0, pair = 0.0;
  bool converged = s.entries.size() == 3 && t.entries.size() == 3;
  for (const auto &e : s.entries)
  {
    info(fmt("mu = %.6f %+.6fi, distance to first-family ray %.4f", e.value.real(),
             e.value.imag(), e.dist_to_ray));
    worst = std::max(worst, e.dist_to_ray);
    converged = converged && e.converged;
    double best = INFINITY;
    for (const auto &f : t.entries)
    {
      best = std::min(best, std::abs(e.value - std::conj(f.value)));
    }
    pair = std::max(pair, best);
  }
  const bool ok = converged && worst <= 0.5 && pair <= 1e-8;
  return {ok, fmt("%zu unknowns; max distance to ray %.4f (need <= 0.5); conjugate pairing %.1e "
                  "(need <= 1e-8)",
                  s.unknowns, worst, pair)};
}

}  // namespace

int main(int argc, char **argv)
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},
      {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}};
  std::set<std::string> selected(argv + 1, argv + argc);
  int failures = 0;
  for (const auto &[name, run] : criteria)
  {
    if (!selected.empty() && !selected.count(name))
    {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = run();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s  %s  [%.1f s]\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                sec);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
