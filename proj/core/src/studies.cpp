// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/studies.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "pmlguide/assembly.hpp"
#include "pmlguide/banded.hpp"
#include "pmlguide/errors.hpp"
#include "pmlguide/io.hpp"

namespace pmlguide
{

namespace
{

// Runs f(0..n-1) on up to `threads` workers; the first exception (by index) is rethrown.
template <class F>
void parallel_for(std::size_t n, int threads, F &&f)
{
  if (threads <= 1 || n <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      f(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    for (std::size_t t = 0; t < workers; ++t)
    {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
          try
          {
            f(i);
          }
          catch (...)
          {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

bool is_modal(const SourceSpec &source)
{
  return std::holds_alternative<ModeBandSource>(source) ||
         std::holds_alternative<GaussianSource>(source) ||
         std::holds_alternative<ZeroSource>(source);
}

std::vector<double> sorted_R(const StudyConfig &config)
{
  std::vector<double> Rs = config.R_list;
  std::sort(Rs.begin(), Rs.end());
  Rs.erase(std::unique(Rs.begin(), Rs.end()), Rs.end());
  if (Rs.size() < 4)
  {
    throw ConfigError("study needs at least 4 distinct values in R_list");
  }
  return Rs;
}

double stability_ratio(const SolveOutput &out)
{
  return out.source_l2 > 0.0 ? out.full.h1() / out.source_l2 : 0.0;
}

void append(std::vector<std::string> &to, const std::vector<std::string> &from)
{
  for (const auto &w : from)
  {
    if (std::find(to.begin(), to.end(), w) == to.end())
    {
      to.push_back(w);
    }
  }
}

// The oracle field with per-x caching of the modal amplitudes; error integration visits
// each quadrature abscissa for many y values.
ExactFn cached_field(const ModalSolution &oracle)
{
  struct Axial
  {
    std::vector<complex> a, da;
  };
  auto cache = std::make_shared<std::unordered_map<double, Axial>>();
  return [&oracle, cache](double x, double y) {
    auto it = cache->find(x);
    if (it == cache->end())
    {
      if (cache->size() > 256)
      {
        cache->clear();
      }
      Axial ax;
      for (std::size_t i = 0; i < oracle.profiles().size(); ++i)
      {
        ax.a.push_back(oracle.amplitude(i, x));
        ax.da.push_back(oracle.amplitude_derivative(i, x));
      }
      it = cache->emplace(x, std::move(ax)).first;
    }
    ExactValue v{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < oracle.profiles().size(); ++i)
    {
      const int k = oracle.profiles()[i].mode;
      v.u += it->second.a[i] * SpectralData::mode(k, y);
      v.ux += it->second.da[i] * SpectralData::mode(k, y);
      v.uy += it->second.a[i] * SpectralData::mode_derivative(k, y);
    }
    return v;
  };
}

}  // namespace

std::optional<ModalSolution> matching_oracle(const StudyConfig &config)
{
  if (config.geometry.kind != GeometryKind::Straight || !is_modal(config.source) ||
      config.pml.lambda.imag() == 0.0)
  {
    return std::nullopt;
  }
  const ProjectedSource projected = project_source(config.source, config.spectral());
  return config.pml.lambda.imag() > 0.0 ? outgoing_oracle(config.mu0, config.L0(), projected)
                                        : incoming_oracle(config.mu0, config.L0(), projected);
}

SolveOutput solve_once(const StudyConfig &config, double R, int threads)
{
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutput out;
  out.R = R;
  out.mesh = build_mesh(config.L0(), config.pml.r, R, config.hx, config.ny);
  DiscreteProblem prob =
      assemble(config.geometry, config.pml, config.mu0, out.mesh, config.source, threads);
  const BandedLU lu(prob.matrix);
  const std::vector<complex> u = lu.solve(prob.rhs);
  out.pivot_ratio = lu.pivot_ratio();
  out.growth = lu.growth();
  out.residual = relative_residual(prob.matrix, u, prob.rhs);
  out.nodal = expand_to_nodes(u, out.mesh);
  out.interior = norms_on_region(out.nodal, out.mesh, config.pml.r);
  out.full = norms_on_region(out.nodal, out.mesh, R);
  out.source_l2 = source_l2_norm(config.source, out.mesh, config.mu0);
  append(out.warnings, out.mesh.warnings);
  append(out.warnings, prob.warnings);

  if (const auto oracle = matching_oracle(config))
  {
    out.exact_error = error_on_region(out.nodal, out.mesh, config.pml.r, cached_field(*oracle));
    out.exact_label = oracle->direction() == Direction::Outgoing ? "oracle-outgoing"
                                                                 : "oracle-incoming";
  }
  else if (std::holds_alternative<ManufacturedSource>(config.source) &&
           config.geometry.kind == GeometryKind::Straight && config.pml.lambda == complex(0.0))
  {
    const double L0 = config.L0();
    out.exact_error =
        error_on_region(out.nodal, out.mesh, config.pml.r, [&](double x, double y) {
          const ManufacturedValue m = manufactured_solution(x, y, L0, R);
          return ExactValue{m.u, m.ux, m.uy};
        });
    out.exact_label = "manufactured";
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SolveOutput run_solve(const StudyConfig &config, const RunOptions &options)
{
  const ConfigCheck check = check_config(config, config.R);
  SolveOutput out = solve_once(config, config.R, options.threads);
  std::vector<std::string> warnings = check.warnings;
  append(warnings, out.warnings);
  out.warnings = std::move(warnings);
  return out;
}

RateFit fit_rate(std::span<const double> R, std::span<const double> err)
{
  if (R.size() != err.size())
  {
    throw ConfigError("fit_rate: R and error lists differ in length");
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < R.size(); ++i)
  {
    if (err[i] > 0.0 && std::isfinite(err[i]))
    {
      pts.emplace_back(R[i], err[i]);
    }
  }
  std::sort(pts.begin(), pts.end());
  RateFit fit;
  if (pts.empty())
  {
    return fit;
  }
  double emin = pts.front().second;
  for (const auto &p : pts)
  {
    emin = std::min(emin, p.second);
  }
  while (!pts.empty() && pts.back().second <= 3.0 * emin)
  {
    pts.pop_back();
  }
  fit.points_used = static_cast<int>(pts.size());
  if (pts.size() < 4)
  {
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (const auto &[x, e] : pts)
  {
    mx += x;
    my += std::log(e);
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto &[x, e] : pts)
  {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (std::log(e) - my);
  }
  const double slope = sxy / sxx;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  fit.conclusive = true;
  fit.monotone = true;
  for (std::size_t i = 1; i < pts.size(); ++i)
  {
    fit.monotone = fit.monotone && pts[i].second < pts[i - 1].second;
  }
  return fit;
}

ConvergenceResult run_convergence(const StudyConfig &config, const RunOptions &options)
{
  const std::vector<double> Rs = sorted_R(config);
  ConvergenceResult result;

  std::optional<ModalSolution> oracle;
  if (config.reference != ReferenceKind::Self)
  {
    oracle = matching_oracle(config);
    if (!oracle && config.reference == ReferenceKind::Oracle)
    {
      throw ConfigError(
          "reference = oracle needs the straight geometry, a modal source and non-real "
          "lambda");
    }
  }
  const double R_ref = config.R_ref > 0.0 ? config.R_ref : Rs.back();
  const ConfigCheck check = check_config(config, std::max(Rs.back(), oracle ? 0.0 : R_ref));
  result.beta_max = check.beta_max;
  result.warnings = check.warnings;

  std::optional<SolveOutput> ref;
  if (oracle)
  {
    result.reference = "oracle";
  }
  else
  {
    if (R_ref < Rs.back())
    {
      throw ConfigError("R_ref must not be smaller than the largest R in R_list");
    }
    ref = solve_once(config, R_ref, options.threads);
    append(result.warnings, ref->warnings);
    result.reference = "self(R_ref=" + format_number(R_ref) + ")";
  }

  result.records.resize(Rs.size());
  std::vector<std::vector<std::string>> warnings(Rs.size());
  const int assembly_threads = options.threads > 1 && Rs.size() > 1 ? 1 : options.threads;
  parallel_for(Rs.size(), options.threads, [&](std::size_t i) {
    const SolveOutput out = solve_once(config, Rs[i], assembly_threads);
    StudyRecord &rec = result.records[i];
    rec.R = Rs[i];
    rec.h = out.mesh.max_hx();
    rec.ratio = stability_ratio(out);
    rec.pivot = out.pivot_ratio;
    rec.seconds = out.seconds;
    if (oracle)
    {
      rec.err_l2 = out.exact_error->relative_l2();
      rec.err_h1 = out.exact_error->relative_h1();
    }
    else
    {
      const RegionNorms d = difference_on_region(out.nodal, out.mesh, ref->nodal, ref->mesh,
                                                 config.pml.r);
      rec.err_l2 = ref->interior.l2 > 0.0 ? d.l2 / ref->interior.l2 : d.l2;
      rec.err_h1 = ref->interior.h1() > 0.0 ? d.h1() / ref->interior.h1() : d.h1();
    }
    warnings[i] = out.warnings;
  });
  for (const auto &w : warnings)
  {
    append(result.warnings, w);
  }

  std::vector<double> R, e2, e1;
  for (const auto &rec : result.records)
  {
    R.push_back(rec.R);
    e2.push_back(rec.err_l2);
    e1.push_back(rec.err_h1);
  }
  result.fit = fit_rate(R, e2);
  result.fit_h1 = fit_rate(R, e1);
  if (!result.fit.conclusive)
  {
    result.warnings.push_back("convergence study inconclusive: fewer than 4 points above the "
                              "error plateau");
  }
  return result;
}

std::vector<complex> mode_projection(std::span<const complex> nodal, const TensorMesh &mesh,
                                     int mode)
{
  std::vector<complex> a(mesh.nx(), complex(0.0));
  for (std::size_t i = 0; i < mesh.nx(); ++i)
  {
    for (std::size_t j = 0; j + 1 < mesh.ny(); ++j)
    {
      const double hy = mesh.y[j + 1] - mesh.y[j];
      a[i] += 0.5 * hy *
              (nodal[mesh.node(i, j)] * SpectralData::mode(mode, mesh.y[j]) +
               nodal[mesh.node(i, j + 1)] * SpectralData::mode(mode, mesh.y[j + 1]));
    }
  }
  return a;
}

DecayResult run_decay_probe(const StudyConfig &config, const RunOptions &options)
{
  if (config.geometry.kind != GeometryKind::Straight)
  {
    throw ConfigError("decay probe needs the straight geometry");
  }
  DecayResult result;
  result.mode = config.probe_mode > 0 ? config.probe_mode : 1;
  if (config.probe_mode <= 0)
  {
    if (const auto *band = std::get_if<ModeBandSource>(&config.source))
    {
      result.mode = band->mode;
    }
  }
  const SpectralData spectral = config.spectral();
  if (result.mode > spectral.mode_count())
  {
    throw ConfigError("probe_mode exceeds the retained mode count");
  }
  const SolveOutput out = run_solve(config, options);
  result.warnings = out.warnings;
  result.x = out.mesh.x;
  result.amplitude = mode_projection(out.nodal, out.mesh, result.mode);

  const complex k = std::sqrt(complex(config.mu0 - spectral.threshold(result.mode), 0.0));
  result.expected_slope = -std::abs(((1.0 + config.pml.lambda) * k).imag());

  double peak = 0.0;
  for (const complex &a : result.amplitude)
  {
    peak = std::max(peak, std::abs(a));
  }
  result.window_begin = config.pml.r + 1.0;
  result.window_end = config.R - 1.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < result.x.size(); ++i)
  {
    const double x = result.x[i];
    if (x < result.window_begin - 1e-12 || x > result.window_end + 1e-12)
    {
      continue;
    }
    const double mag = std::abs(result.amplitude[i]);
    if (mag < 1e-14 * peak || mag == 0.0)
    {
      result.window_end = x;
      result.warnings.push_back("decay probe: amplitude underflow truncates the fit window");
      break;
    }
    xs.push_back(x);
    ys.push_back(std::log(mag));
  }
  result.points_used = static_cast<int>(xs.size());
  if (xs.size() < 3)
  {
    result.warnings.push_back("decay probe inconclusive: fit window holds fewer than 3 nodes");
    return result;
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  result.slope = sxy / sxx;
  result.conclusive = true;
  return result;
}

StabilityResult run_stability(const StudyConfig &config, const RunOptions &options)
{
  const std::vector<double> Rs = sorted_R(config);
  StabilityResult result;
  const ConfigCheck check = check_config(config, Rs.back());
  result.beta_max = check.beta_max;
  result.warnings = check.warnings;

  result.records.resize(Rs.size());
  std::vector<std::vector<std::string>> warnings(Rs.size());
  const int assembly_threads = options.threads > 1 ? 1 : options.threads;
  parallel_for(Rs.size(), options.threads, [&](std::size_t i) {
    const SolveOutput out = solve_once(config, Rs[i], assembly_threads);
    StudyRecord &rec = result.records[i];
    rec.R = Rs[i];
    rec.h = out.mesh.max_hx();
    rec.ratio = stability_ratio(out);
    rec.pivot = out.pivot_ratio;
    rec.seconds = out.seconds;
    warnings[i] = out.warnings;
  });
  for (const auto &w : warnings)
  {
    append(result.warnings, w);
  }

  const std::size_t first = Rs.size() / 2;
  double lo = result.records[first].ratio, hi = lo, min_pivot = result.records[first].pivot;
  for (std::size_t i = first; i < result.records.size(); ++i)
  {
    lo = std::min(lo, result.records[i].ratio);
    hi = std::max(hi, result.records[i].ratio);
    min_pivot = std::min(min_pivot, result.records[i].pivot);
  }
  result.variation = lo > 0.0 ? (hi - lo) / lo : 0.0;
  result.flagged = result.variation > 0.1;
  if (result.flagged)
  {
    result.warnings.push_back(
        "stability ratio varies by " + std::to_string(100.0 * result.variation) +
        "% over the upper half of R (smallest pivot ratio " + std::to_string(min_pivot) +
        "): possible near-resonance");
  }
  return result;
}

SpectrumResult run_spectrum(const StudyConfig &config, const RunOptions &options)
{
  SpectrumResult result;
  const SpectralData spectral = config.spectral();
  const ProfileDiagnostics diag = validate_profile(config.geometry, config.pml, config.R);
  result.warnings = diag.warnings;

  const TensorMesh mesh = build_mesh(config.L0(), config.pml.r, config.R, config.hx, config.ny);
  append(result.warnings, mesh.warnings);
  result.unknowns = mesh.dof_count();
  if (result.unknowns > 10000)
  {
    result.warnings.push_back("spectrum: more than 1e4 unknowns; expect slow restarts");
  }
  const Pencil pencil = assemble_pencil(config.geometry, config.pml, mesh, options.threads);
  result.curves = essential_curves(config.pml.lambda, config.beta, spectral);

  std::vector<complex> shifts = config.shifts;
  if (shifts.empty())
  {
    const complex opl = 1.0 + config.pml.lambda;
    shifts.push_back(spectral.threshold(1) + 0.5 / (opl * opl));
  }
  EigsOptions eo;
  eo.seed = options.seed;
  for (const complex &shift : shifts)
  {
    const EigsResult eig = eigs_near(pencil.stiffness, pencil.mass, shift, config.eig_count, eo);
    if (!eig.converged)
    {
      result.warnings.push_back("spectrum: eigensolver did not converge near shift (" +
                                std::to_string(shift.real()) + ", " +
                                std::to_string(shift.imag()) + ")");
    }
    for (const EigenEstimate &e : eig.values)
    {
      SpectrumEntry entry;
      entry.shift = shift;
      entry.value = e.value;
      entry.dist_to_curve = distance_to_curves(e.value, result.curves);
      entry.dist_to_ray = distance_to_rays(e.value, config.pml.lambda, spectral);
      entry.residual = e.residual;
      entry.converged = e.converged;
      result.entries.push_back(entry);
    }
  }
  return result;
}

}  // namespace pmlguide
