#pragma once

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "serre/analysis.hpp"
#include "serre/scenarios.hpp"
#include "serre/simulation.hpp"

namespace serre {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("unparsable number for key '" + key + "': " + value);
  }
  if (pos != value.size())
    throw ConfigError("unparsable number for key '" + key + "': " + value);
  return v;
}

}  // namespace detail

/// Parse a flat "key = value" configuration (one pair per line, '#'
/// comments). Unknown keys, missing required keys, malformed numbers and
/// out-of-range controls are all errors.
inline ScenarioConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got: " + line);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (kv.count(key)) throw ConfigError("duplicate key: " + key);
    kv[key] = value;
  }

  const std::vector<std::string> common = {"scenario", "x_min", "x_max",
                                           "n_cells", "cr",    "t_end", "g"};
  std::vector<std::string> missing;
  for (const auto& k : common)
    if (!kv.count(k)) missing.push_back(k);
  if (!kv.count("scenario")) {
    std::string msg = "missing required keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }

  ScenarioConfig cfg;
  const std::string tag = kv.at("scenario");
  if (tag == "soliton")
    cfg.tag = ScenarioTag::soliton;
  else if (tag == "dam_break")
    cfg.tag = ScenarioTag::dam_break;
  else if (tag == "rectangular_wave")
    cfg.tag = ScenarioTag::rectangular_wave;
  else if (tag == "undular_bore")
    cfg.tag = ScenarioTag::undular_bore;
  else
    throw ConfigError("unknown scenario tag: " + tag);

  std::vector<std::string> required = common;
  switch (cfg.tag) {
    case ScenarioTag::soliton:
      required.insert(required.end(), {"a0", "a1", "x0"});
      break;
    case ScenarioTag::dam_break:
      required.insert(required.end(), {"h1", "h0", "x_dam"});
      break;
    case ScenarioTag::rectangular_wave:
      required.insert(required.end(), {"h1", "drop", "b"});
      break;
    default:
      break;
  }
  missing.clear();
  for (const auto& k : required)
    if (!kv.count(k)) missing.push_back(k);
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }
  std::vector<std::string> allowed = required;
  allowed.insert(allowed.end(), {"output_times", "max_steps"});
  if (cfg.tag == ScenarioTag::undular_bore)
    allowed.insert(allowed.end(),
                   {"upstream_h", "upstream_u", "downstream_h", "downstream_u"});
  for (const auto& [k, v] : kv) {
    bool known = false;
    for (const auto& a : allowed) known = known || (a == k);
    if (!known) throw ConfigError("unknown key: " + k);
  }

  const auto num = [&](const std::string& k) {
    return detail::parse_number(k, kv.at(k));
  };
  cfg.x_min = num("x_min");
  cfg.x_max = num("x_max");
  cfg.n_cells = static_cast<int>(num("n_cells"));
  cfg.controls.cr = num("cr");
  cfg.controls.t_end = num("t_end");
  cfg.g = num("g");
  if (!(cfg.controls.cr > 0.0 && cfg.controls.cr <= 1.0))
    throw ConfigError("cr must lie in (0, 1]");
  if (!(cfg.controls.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (kv.count("max_steps"))
    cfg.controls.max_steps = static_cast<long>(num("max_steps"));
  if (kv.count("output_times")) {
    std::istringstream ts(kv.at("output_times"));
    std::string tok;
    while (std::getline(ts, tok, ','))
      cfg.output_times.push_back(
          detail::parse_number("output_times", detail::trim(tok)));
  }

  switch (cfg.tag) {
    case ScenarioTag::soliton:
      cfg.a0 = num("a0");
      cfg.a1 = num("a1");
      cfg.x0 = num("x0");
      break;
    case ScenarioTag::dam_break:
      cfg.h1 = num("h1");
      cfg.h0 = num("h0");
      cfg.x_dam = num("x_dam");
      break;
    case ScenarioTag::rectangular_wave:
      cfg.h1 = num("h1");
      cfg.drop = num("drop");
      cfg.b = num("b");
      break;
    case ScenarioTag::undular_bore: {
      const ScenarioConfig defaults = undular_bore_config();
      cfg.upstream_h =
          kv.count("upstream_h") ? num("upstream_h") : defaults.upstream_h;
      cfg.upstream_u =
          kv.count("upstream_u") ? num("upstream_u") : defaults.upstream_u;
      cfg.downstream_h =
          kv.count("downstream_h") ? num("downstream_h") : defaults.downstream_h;
      cfg.downstream_u =
          kv.count("downstream_u") ? num("downstream_u") : defaults.downstream_u;
      break;
    }
    case ScenarioTag::custom:
      break;
  }
  return cfg;
}

/// Inverse of parse_config for the supported tags.
inline std::string render_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "scenario = " << to_string(cfg.tag) << "\n";
  out << "x_min = " << cfg.x_min << "\n";
  out << "x_max = " << cfg.x_max << "\n";
  out << "n_cells = " << cfg.n_cells << "\n";
  out << "cr = " << cfg.controls.cr << "\n";
  out << "t_end = " << cfg.controls.t_end << "\n";
  out << "g = " << cfg.g << "\n";
  out << "max_steps = " << cfg.controls.max_steps << "\n";
  if (!cfg.output_times.empty()) {
    out << "output_times = ";
    for (size_t i = 0; i < cfg.output_times.size(); ++i)
      out << (i ? "," : "") << cfg.output_times[i];
    out << "\n";
  }
  switch (cfg.tag) {
    case ScenarioTag::soliton:
      out << "a0 = " << cfg.a0 << "\na1 = " << cfg.a1 << "\nx0 = " << cfg.x0
          << "\n";
      break;
    case ScenarioTag::dam_break:
      out << "h1 = " << cfg.h1 << "\nh0 = " << cfg.h0
          << "\nx_dam = " << cfg.x_dam << "\n";
      break;
    case ScenarioTag::rectangular_wave:
      out << "h1 = " << cfg.h1 << "\ndrop = " << cfg.drop << "\nb = " << cfg.b
          << "\n";
      break;
    case ScenarioTag::undular_bore:
      out << "upstream_h = " << cfg.upstream_h
          << "\nupstream_u = " << cfg.upstream_u
          << "\ndownstream_h = " << cfg.downstream_h
          << "\ndownstream_u = " << cfg.downstream_u << "\n";
      break;
    case ScenarioTag::custom:
      break;
  }
  return out.str();
}

/// Profile CSV: header x,h,u,G and one row per cell center, full-precision
/// scientific, LF endings. h and G are cell-center point values, u the
/// integer-node velocity.
inline void emit_profile_csv(const Snapshot& snap, const Grid& grid,
                             std::ostream& out) {
  const std::vector<double> h_pts = averages_to_points(snap.h);
  const std::vector<double> G_pts = averages_to_points(snap.G);
  out << "x,h,u,G\n";
  out << std::scientific << std::setprecision(16);
  for (int j = 0; j < grid.n_cells; ++j) {
    const size_t sj = static_cast<size_t>(j);
    out << grid.cell_center(j) << ',' << h_pts[sj] << ','
        << snap.u.integer_nodes[sj] << ',' << G_pts[sj] << '\n';
  }
}

inline void emit_convergence_csv(const ConvergenceResult& res,
                                 std::ostream& out) {
  if (res.rows.size() < 2)
    throw ConfigError("convergence CSV needs at least 2 rows");
  out << "dx,l1_h,l1_u\n";
  out << std::scientific << std::setprecision(16);
  for (const ConvergenceRow& r : res.rows)
    out << r.dx << ',' << r.l1_h << ',' << r.l1_u << '\n';
  out << std::setprecision(8) << "# slope_h=" << res.slope_h
      << ", slope_u=" << res.slope_u << "\n";
}

inline constexpr const char* code_version = "serre1d 1.0.0";

/// One manifest per run: the resolved configuration, snapped discontinuity
/// positions, interpretation flags and timing.
inline void write_manifest(const ScenarioConfig& cfg, const InitialState& init,
                           double elapsed_seconds, long steps,
                           std::ostream& out) {
  out << "version = " << code_version << "\n";
  out << render_config(cfg);
  out << std::setprecision(17);
  for (size_t i = 0; i < init.snapped_positions.size(); ++i)
    out << "snapped_position_" << i << " = " << init.snapped_positions[i]
        << "\n";
  if (cfg.tag == ScenarioTag::undular_bore)
    out << "note = upstream boundary figure interpreted as depth-averaged "
           "velocity in m/s\n";
  out << "steps = " << steps << "\n";
  out << "elapsed_seconds = " << elapsed_seconds << "\n";
}

}  // namespace serre
