// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

std::string escape_xml(const std::string &s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Piecewise-linear approximation of the viridis color map.
std::string color(double t)
{
  static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                               {59, 82, 139},
                                                               {33, 145, 140},
                                                               {94, 201, 98},
                                                               {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
  {
    rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string fixed(double v, int digits = 2)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string format_number(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_field_csv(std::ostream &os, const TensorMesh &mesh, std::span<const complex> nodal)
{
  os << "x,y,re_u,im_u\n";
  for (std::size_t i = 0; i < mesh.nx(); ++i)
  {
    for (std::size_t j = 0; j < mesh.ny(); ++j)
    {
      const complex u = nodal[mesh.node(i, j)];
      os << format_number(mesh.x[i]) << ',' << format_number(mesh.y[j]) << ','
         << format_number(u.real()) << ',' << format_number(u.imag()) << '\n';
    }
  }
}

void write_records_csv(std::ostream &os, std::span<const StudyRecord> records)
{
  os << "R,h,err_l2,err_h1,ratio,pivot,seconds\n";
  for (const auto &r : records)
  {
    os << format_number(r.R) << ',' << format_number(r.h) << ',' << format_number(r.err_l2)
       << ',' << format_number(r.err_h1) << ',' << format_number(r.ratio) << ','
       << format_number(r.pivot) << ',' << format_number(r.seconds) << '\n';
  }
}

void write_spectrum_csv(std::ostream &os, std::span<const SpectrumEntry> entries)
{
  os << "re_mu,im_mu,dist_to_curve,converged\n";
  for (const auto &e : entries)
  {
    os << format_number(e.value.real()) << ',' << format_number(e.value.imag()) << ','
       << format_number(e.dist_to_curve) << ',' << (e.converged ? 1 : 0) << '\n';
  }
}

void write_curves_csv(std::ostream &os, std::span<const EssentialCurve> curves)
{
  os << "nu,xi,re_mu,im_mu\n";
  for (const auto &c : curves)
  {
    for (std::size_t i = 0; i < c.points.size(); ++i)
    {
      os << format_number(c.nu) << ',' << format_number(c.xi[i]) << ','
         << format_number(c.points[i].real()) << ',' << format_number(c.points[i].imag())
         << '\n';
    }
  }
}

void write_decay_csv(std::ostream &os, const DecayResult &decay)
{
  os << "x,re_a,im_a,abs_a\n";
  for (std::size_t i = 0; i < decay.x.size(); ++i)
  {
    const complex a = decay.amplitude[i];
    os << format_number(decay.x[i]) << ',' << format_number(a.real()) << ','
       << format_number(a.imag()) << ',' << format_number(std::abs(a)) << '\n';
  }
}

std::string heatmap_svg(const TensorMesh &mesh, std::span<const complex> nodal,
                        const std::string &title, int max_columns, int max_rows)
{
  const std::size_t sx = std::max<std::size_t>(1, (mesh.nx() + max_columns - 1) / max_columns);
  const std::size_t sy = std::max<std::size_t>(1, (mesh.ny() + max_rows - 1) / max_rows);
  double peak = 0.0;
  for (const complex &u : nodal)
  {
    peak = std::max(peak, std::abs(u));
  }
  const double width = 960.0, height = 240.0, margin = 40.0;
  const double x0 = mesh.x.front(), x1 = mesh.x.back();
  auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * width; };
  auto py = [&](double y) { return margin + (1.0 - y) * height; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + 2 * margin
     << "\" height=\"" << height + 2 * margin + 20 << "\">\n";
  os << "<text x=\"" << margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape_xml(title) << " (max |u| = " << format_number(peak) << ")</text>\n";
  for (std::size_t i = 0; i + 1 < mesh.nx(); i += sx)
  {
    const std::size_t i1 = std::min(i + sx, mesh.nx() - 1);
    for (std::size_t j = 0; j + 1 < mesh.ny(); j += sy)
    {
      const std::size_t j1 = std::min(j + sy, mesh.ny() - 1);
      const double mag = 0.25 * (std::abs(nodal[mesh.node(i, j)]) +
                                 std::abs(nodal[mesh.node(i1, j)]) +
                                 std::abs(nodal[mesh.node(i, j1)]) +
                                 std::abs(nodal[mesh.node(i1, j1)]));
      const double t = peak > 0.0 ? mag / peak : 0.0;
      os << "<rect x=\"" << fixed(px(mesh.x[i])) << "\" y=\"" << fixed(py(mesh.y[j1]))
         << "\" width=\"" << fixed(px(mesh.x[i1]) - px(mesh.x[i]) + 0.3) << "\" height=\""
         << fixed(py(mesh.y[j]) - py(mesh.y[j1]) + 0.3) << "\" fill=\"" << color(t)
         << "\"/>\n";
    }
  }
  const double r = mesh.r;
  os << "<line x1=\"" << fixed(px(r)) << "\" y1=\"" << margin << "\" x2=\"" << fixed(px(r))
     << "\" y2=\"" << margin + height << "\" stroke=\"white\" stroke-dasharray=\"4 3\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"" << margin + height + 18
     << "\" font-family=\"sans-serif\" font-size=\"12\">x = " << format_number(x0) << "</text>\n";
  os << "<text x=\"" << fixed(px(r) + 4) << "\" y=\"" << margin + height + 18
     << "\" font-family=\"sans-serif\" font-size=\"12\">r = " << format_number(r) << "</text>\n";
  os << "<text x=\"" << fixed(width + margin - 60) << "\" y=\"" << margin + height + 18
     << "\" font-family=\"sans-serif\" font-size=\"12\">x = " << format_number(x1) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string log_plot_svg(std::span<const PlotSeries> series, const std::string &title,
                         const std::string &x_label, const std::string &y_label)
{
  static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  double xmin = INFINITY, xmax = -INFINITY, lmin = INFINITY, lmax = -INFINITY;
  for (const auto &s : series)
  {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
    {
      if (s.y[i] > 0.0 && std::isfinite(s.y[i]))
      {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        lmin = std::min(lmin, std::log10(s.y[i]));
        lmax = std::max(lmax, std::log10(s.y[i]));
      }
    }
  }
  if (!std::isfinite(xmin))
  {
    xmin = 0.0, xmax = 1.0, lmin = -1.0, lmax = 0.0;
  }
  if (xmax == xmin)
  {
    xmax = xmin + 1.0;
  }
  lmin = std::floor(lmin);
  lmax = std::max(std::ceil(lmax), lmin + 1.0);

  const double width = 560.0, height = 360.0, left = 70.0, top = 40.0;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * width; };
  auto py = [&](double l) { return top + (lmax - l) / (lmax - lmin) * height; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + left + 160
     << "\" height=\"" << height + top + 60 << "\" font-family=\"sans-serif\">\n";
  os << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << escape_xml(title)
     << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\""
     << height << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double l = lmin; l <= lmax + 1e-9; l += 1.0)
  {
    os << "<line x1=\"" << left << "\" y1=\"" << fixed(py(l)) << "\" x2=\"" << left + width
       << "\" y2=\"" << fixed(py(l)) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py(l) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">1e" << static_cast<int>(l) << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t)
  {
    const double x = xmin + (xmax - xmin) * t / 5.0;
    os << "<text x=\"" << fixed(px(x)) << "\" y=\"" << top + height + 16
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(x, 2) << "</text>\n";
  }
  os << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 40
     << "\" font-size=\"12\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
     << top + height / 2 << ")\" text-anchor=\"middle\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k)
  {
    const auto &s = series[k];
    const char *c = palette[k % 5];
    std::string path;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
    {
      if (!(s.y[i] > 0.0) || !std::isfinite(s.y[i]))
      {
        continue;
      }
      const double X = px(s.x[i]), Y = py(std::log10(s.y[i]));
      path += (path.empty() ? "M" : " L") + fixed(X) + " " + fixed(Y);
      os << "<circle cx=\"" << fixed(X) << "\" cy=\"" << fixed(Y) << "\" r=\"3\" fill=\"" << c
         << "\"/>\n";
    }
    if (!path.empty())
    {
      os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    }
    os << "<text x=\"" << left + width + 12 << "\" y=\"" << top + 16 + 18 * k
       << "\" font-size=\"12\" fill=\"" << c << "\">" << escape_xml(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Error("cannot write " + path.string());
  }
  out << text;
  if (!out)
  {
    throw Error("failed writing " + path.string());
  }
}

}  // namespace pmlguide
