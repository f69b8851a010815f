// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PMLGUIDE_IO_HPP
#define PMLGUIDE_IO_HPP

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pmlguide/mesh.hpp"
#include "pmlguide/studies.hpp"

namespace pmlguide
{

// Shortest round-trip decimal form of a double.
std::string format_number(double v);

// x,y,re_u,im_u per mesh node, x-major.
void write_field_csv(std::ostream &os, const TensorMesh &mesh, std::span<const complex> nodal);

// R,h,err_l2,err_h1,ratio,pivot,seconds
void write_records_csv(std::ostream &os, std::span<const StudyRecord> records);

// re_mu,im_mu,dist_to_curve,converged
void write_spectrum_csv(std::ostream &os, std::span<const SpectrumEntry> entries);

// nu,xi,re_mu,im_mu
void write_curves_csv(std::ostream &os, std::span<const EssentialCurve> curves);

// x,re_a,im_a,abs_a
void write_decay_csv(std::ostream &os, const DecayResult &decay);

// Magnitude heatmap of a nodal field; at most max_columns x max_rows cells.
std::string heatmap_svg(const TensorMesh &mesh, std::span<const complex> nodal,
                        const std::string &title, int max_columns = 320, int max_rows = 64);

struct PlotSeries
{
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // plotted on a log10 axis; non-positive values are skipped
};

std::string log_plot_svg(std::span<const PlotSeries> series, const std::string &title,
                         const std::string &x_label, const std::string &y_label);

// Writes text to a file, creating parent directories. Throws Error on failure.
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace pmlguide

#endif  // PMLGUIDE_IO_HPP
