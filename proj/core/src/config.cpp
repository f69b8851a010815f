// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "pmlguide/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "pmlguide/errors.hpp"

namespace pmlguide
{

namespace
{

// Minimal TOML reader: [tables], key = value with numbers, strings, booleans and
// (nested) single-line arrays. Enough for study configurations.
struct Value
{
  std::variant<double, std::string, bool, std::vector<Value>> data;
};

class Parser
{
public:
  Parser(std::string_view text, int line) : s_(text), line_(line) {}

  Value parse_value()
  {
    skip_ws();
    if (pos_ >= s_.size())
    {
      error("missing value");
    }
    const char c = s_[pos_];
    if (c == '"')
    {
      ++pos_;
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != '"')
      {
        out += s_[pos_++];
      }
      if (pos_ >= s_.size())
      {
        error("unterminated string");
      }
      ++pos_;
      return {out};
    }
    if (c == '[')
    {
      ++pos_;
      std::vector<Value> items;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ']')
      {
        ++pos_;
        return {items};
      }
      while (true)
      {
        items.push_back(parse_value());
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',')
        {
          ++pos_;
          skip_ws();
          if (pos_ < s_.size() && s_[pos_] == ']')
          {
            ++pos_;
            break;
          }
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ']')
        {
          ++pos_;
          break;
        }
        error("expected ',' or ']' in array");
      }
      return {items};
    }
    std::size_t end = pos_;
    while (end < s_.size() && s_[end] != ',' && s_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(s_[end])))
    {
      ++end;
    }
    std::string tok(s_.substr(pos_, end - pos_));
    pos_ = end;
    if (tok == "true" || tok == "false")
    {
      return {tok == "true"};
    }
    std::string clean;
    for (char ch : tok)
    {
      if (ch != '_')
      {
        clean += ch;
      }
    }
    try
    {
      std::size_t used = 0;
      const double v = std::stod(clean, &used);
      if (used != clean.size())
      {
        error("malformed number '" + tok + "'");
      }
      return {v};
    }
    catch (const std::logic_error &)
    {
      error("malformed value '" + tok + "'");
    }
    return {0.0};
  }

  void expect_end()
  {
    skip_ws();
    if (pos_ != s_.size())
    {
      error("trailing characters");
    }
  }

private:
  void skip_ws()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
    {
      ++pos_;
    }
  }
  [[noreturn]] void error(const std::string &what) const
  {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string strip_comment(const std::string &line)
{
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i)
  {
    if (line[i] == '"')
    {
      in_string = !in_string;
    }
    else if (line[i] == '#' && !in_string)
    {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

using Table = std::map<std::string, Value>;

Table parse_toml(std::string_view text)
{
  Table out;
  std::string table;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw))
  {
    ++line;
    const std::string l = trim(strip_comment(raw));
    if (l.empty())
    {
      continue;
    }
    if (l.front() == '[')
    {
      if (l.back() != ']')
      {
        throw ConfigError("config line " + std::to_string(line) + ": malformed table header");
      }
      table = trim(l.substr(1, l.size() - 2));
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(l.substr(0, eq));
    Parser p(std::string_view(l).substr(eq + 1), line);
    Value v = p.parse_value();
    p.expect_end();
    const std::string full = table.empty() ? key : table + "." + key;
    if (out.count(full))
    {
      throw ConfigError("config line " + std::to_string(line) + ": duplicate key " + full);
    }
    out.emplace(full, std::move(v));
  }
  return out;
}

class Reader
{
public:
  explicit Reader(Table t) : t_(std::move(t)) {}

  bool has(const std::string &k) const { return t_.count(k) > 0; }

  double number(const std::string &k, double fallback)
  {
    if (!has(k))
    {
      return fallback;
    }
    used_.insert(k);
    if (const auto *d = std::get_if<double>(&t_.at(k).data))
    {
      return *d;
    }
    throw ConfigError("config: " + k + " must be a number");
  }

  std::string string(const std::string &k, const std::string &fallback)
  {
    if (!has(k))
    {
      return fallback;
    }
    used_.insert(k);
    if (const auto *s = std::get_if<std::string>(&t_.at(k).data))
    {
      return *s;
    }
    throw ConfigError("config: " + k + " must be a string");
  }

  std::vector<double> numbers(const std::string &k, const std::vector<double> &fallback)
  {
    if (!has(k))
    {
      return fallback;
    }
    used_.insert(k);
    std::vector<double> out;
    const auto *arr = std::get_if<std::vector<Value>>(&t_.at(k).data);
    if (arr == nullptr)
    {
      throw ConfigError("config: " + k + " must be an array of numbers");
    }
    for (const auto &v : *arr)
    {
      const auto *d = std::get_if<double>(&v.data);
      if (d == nullptr)
      {
        throw ConfigError("config: " + k + " must be an array of numbers");
      }
      out.push_back(*d);
    }
    return out;
  }

  std::vector<complex> complexes(const std::string &k)
  {
    if (!has(k))
    {
      return {};
    }
    used_.insert(k);
    std::vector<complex> out;
    const auto *arr = std::get_if<std::vector<Value>>(&t_.at(k).data);
    if (arr == nullptr)
    {
      throw ConfigError("config: " + k + " must be an array of [re, im] pairs");
    }
    for (const auto &v : *arr)
    {
      const auto *pair = std::get_if<std::vector<Value>>(&v.data);
      if (pair == nullptr || pair->size() != 2 || !std::holds_alternative<double>((*pair)[0].data) ||
          !std::holds_alternative<double>((*pair)[1].data))
      {
        throw ConfigError("config: " + k + " must be an array of [re, im] pairs");
      }
      out.emplace_back(std::get<double>((*pair)[0].data), std::get<double>((*pair)[1].data));
    }
    return out;
  }

  void reject_unused() const
  {
    for (const auto &[k, v] : t_)
    {
      if (!used_.count(k))
      {
        throw ConfigError("config: unknown key " + k);
      }
    }
  }

private:
  Table t_;
  std::set<std::string> used_;
};

ProfileFn parse_profile(const std::string &name, double s)
{
  if (name == "one")
  {
    return {ProfileKind::One, s};
  }
  if (name == "exp")
  {
    return {ProfileKind::OnePlusExpNeg, s};
  }
  if (name == "power")
  {
    return {ProfileKind::OnePlusPowerNeg, s};
  }
  if (name == "invlog")
  {
    return {ProfileKind::OnePlusInvLog, s};
  }
  throw ConfigError("config: unknown profile function '" + name +
                    "' (one, exp, power, invlog)");
}

}  // namespace

SpectralData StudyConfig::spectral() const
{
  return make_spectral(modes > 0 ? modes : default_mode_count(mu0));
}

StudyKind parse_study_kind(std::string_view name)
{
  if (name == "solve")
  {
    return StudyKind::Solve;
  }
  if (name == "converge")
  {
    return StudyKind::Converge;
  }
  if (name == "decay")
  {
    return StudyKind::Decay;
  }
  if (name == "stability")
  {
    return StudyKind::Stability;
  }
  if (name == "spectrum")
  {
    return StudyKind::Spectrum;
  }
  throw ConfigError("unknown study kind '" + std::string(name) + "'");
}

std::string to_string(StudyKind kind)
{
  switch (kind)
  {
    case StudyKind::Solve:
      return "solve";
    case StudyKind::Converge:
      return "converge";
    case StudyKind::Decay:
      return "decay";
    case StudyKind::Stability:
      return "stability";
    case StudyKind::Spectrum:
      return "spectrum";
  }
  return "solve";
}

StudyConfig parse_config(std::string_view text)
{
  Reader rd(parse_toml(text));
  StudyConfig c;

  const double L0 = rd.number("domain.L0", 2.0);
  const std::string gkind = rd.string("geometry.kind", "straight");
  const double alpha = rd.number("geometry.alpha", GeometryMap::default_alpha());
  if (gkind == "straight")
  {
    c.geometry = GeometryMap::straight(L0);
  }
  else if (gkind == "logshift")
  {
    c.geometry = GeometryMap::log_shift(L0);
  }
  else if (gkind == "phipsi")
  {
    const ProfileFn phi =
        parse_profile(rd.string("geometry.phi", "one"), rd.number("geometry.phi_s", 1.0));
    const ProfileFn psi =
        parse_profile(rd.string("geometry.psi", "one"), rd.number("geometry.psi_s", 1.0));
    c.geometry = GeometryMap::phi_psi(phi, psi, L0);
  }
  else
  {
    throw ConfigError("config: unknown geometry kind '" + gkind +
                      "' (straight, logshift, phipsi)");
  }
  c.geometry.alpha = alpha;

  c.pml.lambda = complex(rd.number("pml.lambda_re", 0.0), rd.number("pml.lambda_im", 0.5));
  c.pml.r = rd.number("pml.r", 2.0);

  c.mu0 = rd.number("domain.mu0", 20.0);
  c.modes = static_cast<int>(rd.number("domain.modes", 0.0));

  c.hx = rd.number("mesh.hx", 1.0 / 64.0);
  c.ny = static_cast<int>(rd.number("mesh.ny", 64.0));

  const std::string skind = rd.string("source.kind", "mode_band");
  const double amplitude = rd.number("source.amplitude", 1.0);
  if (skind == "mode_band")
  {
    c.source = ModeBandSource{static_cast<int>(rd.number("source.mode", 1.0)),
                              rd.number("source.x0", 0.0), rd.number("source.x1", 1.0),
                              amplitude};
  }
  else if (skind == "gaussian")
  {
    c.source = GaussianSource{rd.number("source.xc", 0.0), rd.number("source.yc", 0.5),
                              rd.number("source.sigma", 0.1), amplitude};
  }
  else if (skind == "manufactured")
  {
    c.source = ManufacturedSource{};
  }
  else if (skind == "zero")
  {
    c.source = ZeroSource{};
  }
  else
  {
    throw ConfigError("config: unknown source kind '" + skind +
                      "' (mode_band, gaussian, manufactured, zero)");
  }

  c.kind = parse_study_kind(rd.string("study.kind", "solve"));
  c.R = rd.number("study.R", 8.0);
  c.R_list = rd.numbers("study.R_list", c.R_list);
  c.R_ref = rd.number("study.R_ref", 0.0);
  const std::string ref = rd.string("study.reference", "auto");
  if (ref == "auto")
  {
    c.reference = ReferenceKind::Auto;
  }
  else if (ref == "oracle")
  {
    c.reference = ReferenceKind::Oracle;
  }
  else if (ref == "self")
  {
    c.reference = ReferenceKind::Self;
  }
  else
  {
    throw ConfigError("config: unknown reference '" + ref + "' (auto, oracle, self)");
  }
  c.shifts = rd.complexes("study.shifts");
  c.eig_count = static_cast<int>(rd.number("study.count", 3.0));
  c.beta = rd.number("study.beta", 0.0);
  c.probe_mode = static_cast<int>(rd.number("study.probe_mode", 0.0));

  rd.reject_unused();
  c.geometry.validate();
  return c;
}

StudyConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ConfigCheck check_config(const StudyConfig &config, double R_max)
{
  ConfigCheck chk;
  chk.profile = validate_profile(config.geometry, config.pml, R_max);
  chk.warnings = chk.profile.warnings;
  if (config.hx <= 0.0 || config.ny < 4)
  {
    throw ConfigError("config: mesh needs hx > 0 and ny >= 4");
  }
  const SpectralData spectral = config.spectral();
  chk.admissibility = admissibility(config.mu0, config.pml.lambda, spectral);
  if (chk.admissibility.threshold_distance < 1e-6)
  {
    throw AdmissibilityError("mu0 coincides with a threshold of the cross-section");
  }
  if (chk.admissibility.curve_distance < 1e-6)
  {
    if (config.pml.lambda.imag() != 0.0)
    {
      throw AdmissibilityError("mu0 lies on the essential spectrum of the scaled operator");
    }
    chk.warnings.push_back(
        "lambda is real: mu0 lies on the continuous spectrum, the truncated problem is a "
        "closed resonator and has no radiating limit");
  }
  chk.beta_max = beta_max(config.mu0, config.pml.lambda, spectral);
  return chk;
}

}  // namespace pmlguide
