// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line runner: pmlguide solve|converge|decay|stability|spectrum --config <path>
// --out <dir> [--threads N] [--seed S]

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "pmlguide/config.hpp"
#include "pmlguide/errors.hpp"
#include "pmlguide/io.hpp"
#include "pmlguide/studies.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pmlguide;

namespace
{

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

json records_json(const std::vector<StudyRecord> &records)
{
  json out = json::array();
  for (const auto &r : records)
  {
    out.push_back({{"R", r.R},
                   {"h", r.h},
                   {"err_l2", r.err_l2},
                   {"err_h1", r.err_h1},
                   {"ratio", r.ratio},
                   {"pivot", r.pivot}});
  }
  return out;
}

json fit_json(const RateFit &fit)
{
  return {{"rate", fit.rate},
          {"intercept", fit.intercept},
          {"points_used", fit.points_used},
          {"conclusive", fit.conclusive},
          {"monotone", fit.monotone}};
}

template <class Writer>
std::string to_text(Writer &&w)
{
  std::ostringstream os;
  w(os);
  return os.str();
}

void report_warnings(const std::vector<std::string> &warnings)
{
  for (const auto &w : warnings)
  {
    std::cerr << "warning: " << w << '\n';
  }
}

void run(StudyKind kind, const fs::path &config_path, const fs::path &out, const RunOptions &opt)
{
  StudyConfig config = load_config(config_path);
  config.kind = kind;
  json summary{{"study", to_string(kind)}, {"config", config_path.string()}};
  std::vector<std::string> warnings;

  switch (kind)
  {
    case StudyKind::Solve:
    {
      const SolveOutput s = run_solve(config, opt);
      warnings = s.warnings;
      write_text_file(out / "field.csv",
                      to_text([&](std::ostream &os) { write_field_csv(os, s.mesh, s.nodal); }));
      write_text_file(out / "field.svg", heatmap_svg(s.mesh, s.nodal, "|u| on the parameter strip"));
      summary["R"] = s.R;
      summary["unknowns"] = s.mesh.dof_count();
      summary["pivot_ratio"] = s.pivot_ratio;
      summary["growth"] = s.growth;
      summary["residual"] = s.residual;
      summary["norms_interior"] = {{"l2", s.interior.l2},
                                   {"h1_semi", s.interior.h1_semi},
                                   {"h2_proxy", s.interior.h2_proxy}};
      summary["source_l2"] = s.source_l2;
      if (s.exact_error)
      {
        summary["exact_error"] = {{"reference", s.exact_label},
                                  {"relative_l2", s.exact_error->relative_l2()},
                                  {"relative_h1", s.exact_error->relative_h1()}};
      }
      std::printf("solve: R=%g unknowns=%zu pivot_ratio=%.3e residual=%.3e\n", s.R,
                  s.mesh.dof_count(), s.pivot_ratio, s.residual);
      if (s.exact_error)
      {
        std::printf("error vs %s on x<r: L2 %.4e  H1 %.4e (relative)\n", s.exact_label.c_str(),
                    s.exact_error->relative_l2(), s.exact_error->relative_h1());
      }
      break;
    }
    case StudyKind::Converge:
    {
      const ConvergenceResult c = run_convergence(config, opt);
      warnings = c.warnings;
      write_text_file(out / "study.csv", to_text([&](std::ostream &os) {
                        write_records_csv(os, c.records);
                      }));
      PlotSeries l2{"L2 error", {}, {}}, h1{"H1 error", {}, {}};
      for (const auto &r : c.records)
      {
        l2.x.push_back(r.R), l2.y.push_back(r.err_l2);
        h1.x.push_back(r.R), h1.y.push_back(r.err_h1);
      }
      const PlotSeries series[] = {l2, h1};
      write_text_file(out / "convergence.svg",
                      log_plot_svg(series, "error on x < r, reference " + c.reference, "R",
                                   "relative error"));
      summary["reference"] = c.reference;
      summary["beta_max"] = c.beta_max;
      summary["fit_l2"] = fit_json(c.fit);
      summary["fit_h1"] = fit_json(c.fit_h1);
      summary["records"] = records_json(c.records);
      std::printf("converge: reference %s, beta_max %.4f\n", c.reference.c_str(), c.beta_max);
      for (const auto &r : c.records)
      {
        std::printf("  R=%-6g err_l2=%.4e err_h1=%.4e\n", r.R, r.err_l2, r.err_h1);
      }
      if (c.fit.conclusive)
      {
        std::printf("fitted rate %.4f from %d points\n", c.fit.rate, c.fit.points_used);
      }
      else
      {
        std::printf("fitted rate inconclusive (%d points above the plateau)\n",
                    c.fit.points_used);
      }
      break;
    }
    case StudyKind::Decay:
    {
      const DecayResult d = run_decay_probe(config, opt);
      warnings = d.warnings;
      write_text_file(out / "decay.csv",
                      to_text([&](std::ostream &os) { write_decay_csv(os, d); }));
      PlotSeries a{"|a_" + std::to_string(d.mode) + "(x)|", d.x, {}};
      for (const complex &v : d.amplitude)
      {
        a.y.push_back(std::abs(v));
      }
      const PlotSeries series[] = {a};
      write_text_file(out / "decay.svg",
                      log_plot_svg(series, "modal amplitude", "x", "|a(x)|"));
      summary["mode"] = d.mode;
      summary["window"] = json::array({d.window_begin, d.window_end});
      summary["points_used"] = d.points_used;
      summary["slope"] = d.slope;
      summary["expected_slope"] = d.expected_slope;
      summary["conclusive"] = d.conclusive;
      std::printf("decay: mode %d slope %.4f (expected %.4f) over [%g, %g]\n", d.mode, d.slope,
                  d.expected_slope, d.window_begin, d.window_end);
      break;
    }
    case StudyKind::Stability:
    {
      const StabilityResult s = run_stability(config, opt);
      warnings = s.warnings;
      write_text_file(out / "study.csv", to_text([&](std::ostream &os) {
                        write_records_csv(os, s.records);
                      }));
      PlotSeries ratio{"||v||_H1 / ||g||_L2", {}, {}};
      for (const auto &r : s.records)
      {
        ratio.x.push_back(r.R), ratio.y.push_back(r.ratio);
      }
      const PlotSeries series[] = {ratio};
      write_text_file(out / "stability.svg",
                      log_plot_svg(series, "stability ratio", "R", "ratio"));
      summary["beta_max"] = s.beta_max;
      summary["variation"] = s.variation;
      summary["flagged"] = s.flagged;
      summary["records"] = records_json(s.records);
      for (const auto &r : s.records)
      {
        std::printf("  R=%-6g ratio=%.6e pivot=%.3e\n", r.R, r.ratio, r.pivot);
      }
      std::printf("stability: variation over the upper half %.2f%%%s\n", 100.0 * s.variation,
                  s.flagged ? " (flagged)" : "");
      break;
    }
    case StudyKind::Spectrum:
    {
      const SpectrumResult s = run_spectrum(config, opt);
      warnings = s.warnings;
      write_text_file(out / "spectrum.csv", to_text([&](std::ostream &os) {
                        write_spectrum_csv(os, s.entries);
                      }));
      write_text_file(out / "curves.csv",
                      to_text([&](std::ostream &os) { write_curves_csv(os, s.curves); }));
      json entries = json::array();
      for (const auto &e : s.entries)
      {
        entries.push_back({{"shift", complex_json(e.shift)},
                           {"mu", complex_json(e.value)},
                           {"dist_to_curve", e.dist_to_curve},
                           {"dist_to_ray", e.dist_to_ray},
                           {"residual", e.residual},
                           {"converged", e.converged}});
        std::printf("  mu = %.6f %+.6fi  dist_to_curve %.3e%s\n", e.value.real(),
                    e.value.imag(), e.dist_to_curve, e.converged ? "" : "  (unconverged)");
      }
      summary["unknowns"] = s.unknowns;
      summary["eigenvalues"] = entries;
      break;
    }
  }
  summary["warnings"] = warnings;
  write_text_file(out / "summary.json", summary.dump(2) + "\n");
  report_warnings(warnings);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Complex-scaled PML solver and studies for semi-infinite waveguides"};
  app.require_subcommand(1);

  fs::path config_path, out_dir;
  RunOptions opt;
  const std::pair<const char *, StudyKind> kinds[] = {
      {"solve", StudyKind::Solve},         {"converge", StudyKind::Converge},
      {"decay", StudyKind::Decay},         {"stability", StudyKind::Stability},
      {"spectrum", StudyKind::Spectrum}};
  StudyKind chosen = StudyKind::Solve;
  for (const auto &[name, kind] : kinds)
  {
    CLI::App *sub = app.add_subcommand(name, std::string("run a ") + name + " study");
    sub->add_option("--config", config_path, "TOML configuration")->required()->check(
        CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "eigensolver start-vector seed");
    sub->callback([&chosen, k = kind] { chosen = k; });
  }
  CLI11_PARSE(app, argc, argv);

  try
  {
    run(chosen, config_path, out_dir, opt);
  }
  catch (const NearSingularError &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  catch (const AdmissibilityError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
