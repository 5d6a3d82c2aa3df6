#include "ferrohyst/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;
using SectionTable = std::map<std::string, Setter, std::less<>>;

std::string unquote(std::string v) {
  boost::algorithm::trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, err] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (err != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw Error(ErrorCode::Config, key + ": expected a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, err] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (err != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::Config, key + ": expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::Config, key + ": expected true or false, got '" + v + "'");
}

ShapeFunction to_shape(const std::string& v) {
  if (v == "linear") return ShapeFunction::linear();
  if (v == "quartic") return ShapeFunction::quartic();
  throw Error(ErrorCode::Config, "material.shape: expected linear or quartic, got '" + v + "'");
}

#define FH_NUM(field) [](RunConfig& c, const std::string& v) { c.field = to_double(#field, v); }
#define FH_UINT(field) \
  [](RunConfig& c, const std::string& v) { c.field = static_cast<decltype(c.field)>(to_unsigned(#field, v)); }

const std::map<std::string, SectionTable, std::less<>>& schema() {
  static const std::map<std::string, SectionTable, std::less<>> table = {
      {"scenario",
       {{"name", [](RunConfig& c, const std::string& v) { c.scenario = v; }},
        {"seed", FH_UINT(seed)},
        {"cases", FH_UINT(cases)}}},
      {"material",
       {{"c_E", FH_NUM(material.c_E)},
        {"e_pz", FH_NUM(material.e_pz)},
        {"kappa", FH_NUM(material.kappa)},
        {"nu", FH_NUM(material.nu)},
        {"rho", FH_NUM(material.rho)},
        {"shape", [](RunConfig& c, const std::string& v) { c.material.shape = to_shape(v); }}}},
      {"hysteresis",
       {{"density",
         [](RunConfig& c, const std::string& v) {
           if (v != "projection" && v != "prandtl" && v != "zero") {
             throw Error(ErrorCode::Config, "hysteresis.density: expected projection, prandtl or zero");
           }
           c.density.kind = v;
         }},
        {"prandtl_table",
         [](RunConfig& c, const std::string& v) { c.density.cells = parse_prandtl_table(v); }},
        {"cutoff", FH_NUM(density.cutoff)},
        {"nodes", FH_UINT(density.nodes)}}},
      {"drive",
       {{"waveform", [](RunConfig& c, const std::string& v) { c.drive.kind = parse_waveform(v); }},
        {"amplitude", FH_NUM(drive.amplitude)},
        {"periods", FH_NUM(drive.periods)},
        {"samples_per_period", FH_UINT(drive.samples_per_period)},
        {"period", FH_NUM(drive.period)}}},
      {"stress",
       {{"poling_field", FH_NUM(stress.poling_field)},
        {"poling_samples", FH_UINT(stress.poling_samples)},
        {"stress_peak", FH_NUM(stress.stress_peak)},
        {"stress_samples", FH_UINT(stress.stress_samples)},
        {"duration", FH_NUM(stress.duration)}}},
      {"beam",
       {{"length", FH_NUM(beam.mesh.length)},
        {"elements", FH_UINT(beam.mesh.elements)},
        {"dt", FH_NUM(beam.stepper.dt)},
        {"picard_tolerance", FH_NUM(beam.stepper.picard_tolerance)},
        {"picard_max_iterations", FH_UINT(beam.stepper.picard_max_iterations)},
        {"lumped_mass",
         [](RunConfig& c, const std::string& v) { c.beam.stepper.lumped_mass = to_bool("lumped_mass", v); }},
        {"t_end", FH_NUM(beam.t_end)},
        {"output_stride", FH_UINT(beam.output_stride)},
        {"traction", FH_NUM(beam.traction)},
        {"r_amplitude", FH_NUM(beam.r_amplitude)},
        {"r_period", FH_NUM(beam.r_period)}}},
      {"output", {{"dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }}}},
  };
  return table;
}

#undef FH_NUM
#undef FH_UINT

void validate(const RunConfig& c) {
  c.material.validate();
  c.drive.validate();
  if (c.density.kind == "prandtl" && c.density.cells.empty()) {
    throw Error(ErrorCode::Config, "hysteresis.density = prandtl needs a prandtl_table");
  }
  if (!(c.density.cutoff > 0.0) || c.density.nodes == 0) {
    throw Error(ErrorCode::Config, "hysteresis.cutoff must be positive and nodes at least 1");
  }
  if (c.stress.poling_samples == 0 || c.stress.stress_samples == 0 || !(c.stress.duration > 0.0)) {
    throw Error(ErrorCode::Config, "stress phases need samples and a positive duration");
  }
  c.beam.mesh.validate();
  c.beam.stepper.validate();
  if (!(c.beam.t_end >= 0.0) || c.beam.output_stride == 0 || !(c.beam.r_period > 0.0)) {
    throw Error(ErrorCode::Config, "beam needs t_end >= 0, output_stride >= 1 and r_period > 0");
  }
}

}  // namespace

PreisachDensity DensitySpec::build() const {
  if (kind == "projection") return PreisachDensity::projection();
  if (kind == "zero") return PreisachDensity::zero();
  if (kind == "prandtl") return PreisachDensity::prandtl(cells);
  throw Error(ErrorCode::Config, "unknown density '" + kind + "'");
}

std::vector<std::string_view> scenario_names() {
  return {"bipolar-linear", "bipolar-quartic", "stress-linear", "stress-quartic", "beam-demo"};
}

RunConfig default_config(std::string_view scenario) {
  RunConfig c;
  c.scenario = std::string(scenario);
  if (scenario == "bipolar-linear" || scenario == "stress-linear") {
    c.material.shape = ShapeFunction::linear();
  } else if (scenario == "bipolar-quartic" || scenario == "stress-quartic") {
    c.material.shape = ShapeFunction::quartic();
  } else if (scenario == "beam-demo") {
    c.material.nu = 0.01;
    c.density.cutoff = 1.0;
    c.density.nodes = 64;
  } else {
    throw Error(ErrorCode::Config, "unknown scenario '" + std::string(scenario) + "'");
  }
  return c;
}

std::vector<PrandtlCell> parse_prandtl_table(std::string_view text) {
  std::vector<PrandtlCell> cells;
  std::stringstream ss{std::string(text)};
  for (std::string item; std::getline(ss, item, ',');) {
    boost::algorithm::trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::Config, "prandtl_table entry '" + item + "' is not r:mu");
    }
    std::string r = item.substr(0, colon);
    std::string mu = item.substr(colon + 1);
    boost::algorithm::trim(r);
    boost::algorithm::trim(mu);
    cells.push_back({to_double("prandtl_table", r), to_double("prandtl_table", mu)});
  }
  if (cells.empty()) throw Error(ErrorCode::Config, "prandtl_table is empty");
  return cells;
}

RunConfig parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::Config, e.what());
  }

  std::string name = "bipolar-linear";
  if (auto v = tree.get_optional<std::string>("scenario.name")) name = unquote(*v);
  RunConfig cfg = default_config(name);

  const auto& sections = schema();
  for (const auto& [section, keys] : tree) {
    auto s = sections.find(section);
    if (s == sections.end() || keys.empty()) {
      throw Error(ErrorCode::Config, "unknown section [" + section + "]");
    }
    for (const auto& [key, value] : keys) {
      auto k = s->second.find(key);
      if (k == s->second.end()) {
        throw Error(ErrorCode::Config, "unknown key " + section + "." + key);
      }
      k->second(cfg, unquote(value.data()));
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Config, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::string& configured) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("FERROHYST_OUT"); env != nullptr && *env != '\0') return env;
  return configured;
}

}  // namespace ferrohyst
