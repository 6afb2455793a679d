// Copyright 2026 The homsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMSIM_SCENARIO_HPP_
#define HOMSIM_SCENARIO_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homsim/beam_splitter_decomposition.hpp"
#include "homsim/devices.hpp"
#include "homsim/errors.hpp"
#include "homsim/hom_analysis.hpp"
#include "homsim/serialization.hpp"

namespace homsim {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kScenarioSchemaVersion = 1;

enum class DeviceKind { passive, mirror, cw_bragg, synthesized, from_file };
enum class TaskKind { run, scan, decompose, synthesize, verify };

inline std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::run:
      return "run";
    case TaskKind::scan:
      return "scan";
    case TaskKind::decompose:
      return "decompose";
    case TaskKind::synthesize:
      return "synthesize";
    case TaskKind::verify:
      return "verify";
  }
  return "?";
}

struct GridConfig {
  double center = 0.0;
  double span = 0.0;
  std::size_t n = 0;
};

struct PacketConfig {
  double omega0 = 0.0;
  double sigma = 0.0;
  double chirp = 0.0;
  double delay = 0.0;
};

/// One batch job: a device, its band grids, the input photon pair and a task.
struct Scenario {
  DeviceKind device = DeviceKind::passive;
  double tau = 0.0;
  double rho = 0.0;
  double beta = 0.0;         // mirror speed v/c
  double omega_shift = 0.0;  // Bragg pump frequency difference
  std::filesystem::path spec_path;    // synthesized: Schmidt spec document
  std::filesystem::path kernel_path;  // from_file: saved kernel document
  std::optional<GridConfig> grid;
  std::optional<GridConfig> blue_grid;  // synthesized only
  std::optional<PacketConfig> red_packet;
  std::optional<PacketConfig> blue_packet;
  std::optional<std::size_t> matched;  // 1-based Schmidt mode selector
  TaskKind task = TaskKind::run;
  std::vector<double> delays;  // scan offsets, in the order to evaluate
  std::string output_name;
  std::string config_hash;
  std::filesystem::path base_dir;
};

/// Result summary handed back to the caller. Timing is reported here but
/// never serialized, so identical configs produce byte-identical files.
struct RunReport {
  std::optional<OutputProbabilities> probabilities;
  std::vector<double> schmidt_sigma;
  std::optional<double> condition_residual;
  std::optional<double> unitarity_residual;
  std::optional<double> reconstruction_residual;
  double elapsed_seconds = 0.0;
  std::string config_hash;
  std::string version{kVersion};
  std::vector<std::filesystem::path> outputs;
};

namespace detail {

inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw ValidationError(what);
}

inline double require_number(const nlohmann::json& j, const char* section,
                             const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail_validation(std::string(section) + "." + key +
                    " must be a number");
  return j[key].get<double>();
}

inline GridConfig parse_grid(const nlohmann::json& j, const char* section) {
  GridConfig g;
  g.center = require_number(j, section, "center");
  g.span = require_number(j, section, "span");
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    fail_validation(std::string(section) + ".n must be a positive integer");
  g.n = j["n"].get<std::size_t>();
  if (g.n == 0) fail_validation(std::string(section) + ".n must be >= 1");
  if (g.span <= 0.0)
    fail_validation(std::string(section) + ".span must be > 0");
  if (g.center - g.span / 2.0 <= 0.0)
    fail_validation(std::string(section) +
                    ": center - span/2 must stay positive");
  return g;
}

inline PacketConfig parse_packet(const nlohmann::json& j,
                                 const char* section) {
  if (j.contains("family") && j["family"].get<std::string>() != "gaussian")
    fail_validation(std::string(section) +
                    ".family: only \"gaussian\" is supported");
  PacketConfig p;
  p.omega0 = require_number(j, section, "omega0");
  p.sigma = require_number(j, section, "sigma");
  if (p.sigma <= 0.0)
    fail_validation(std::string(section) + ".sigma must be > 0");
  if (j.contains("chirp")) p.chirp = j["chirp"].get<double>();
  if (j.contains("delay")) p.delay = j["delay"].get<double>();
  return p;
}

/// tau/rho defaulting: absent -> 50/50; one given -> complete the other;
/// both given -> enforce the constraint.
inline void resolve_coefficients(const nlohmann::json& dev, Scenario& s) {
  const bool has_tau = dev.contains("tau");
  const bool has_rho = dev.contains("rho");
  if (!has_tau && !has_rho) {
    s.tau = s.rho = 1.0 / std::sqrt(2.0);
    return;
  }
  if (has_tau) s.tau = dev["tau"].get<double>();
  if (has_rho) s.rho = dev["rho"].get<double>();
  if (s.tau < 0.0 || (has_rho && s.rho < 0.0))
    fail_validation("device: tau and rho must be non-negative");
  if (has_tau && !has_rho) {
    if (s.tau > 1.0) fail_validation("device.tau must lie in [0, 1]");
    s.rho = std::sqrt(1.0 - s.tau * s.tau);
  } else if (has_rho && !has_tau) {
    if (s.rho > 1.0) fail_validation("device.rho must lie in [0, 1]");
    s.tau = std::sqrt(1.0 - s.rho * s.rho);
  } else if (std::abs(s.tau * s.tau + s.rho * s.rho - 1.0) >
             kCoefficientTolerance) {
    fail_validation("device: tau^2 + rho^2 = 1 violated");
  }
}

inline std::string default_output_name(TaskKind task) {
  switch (task) {
    case TaskKind::run:
      return "report.json";
    case TaskKind::scan:
      return "curve.csv";
    case TaskKind::decompose:
      return "decomposition.json";
    case TaskKind::synthesize:
      return "kernel.json";
    case TaskKind::verify:
      return "verify.json";
  }
  return "out.json";
}

}  // namespace detail

/// Parses and validates one scenario document. Parse failures carry the
/// JSON diagnostic (with byte position); validation failures name the
/// violated precondition.
inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed while reading " + path.string());

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  Scenario s;
  s.config_hash = detail::fnv1a_hex(bytes);
  s.base_dir = path.has_parent_path() ? path.parent_path()
                                      : std::filesystem::path(".");

  if (j.contains("schema_version") &&
      j["schema_version"].get<int>() != kScenarioSchemaVersion)
    detail::fail_validation("unsupported schema_version");

  if (!j.contains("device") || !j["device"].is_object())
    detail::fail_validation("missing device section");
  const auto& dev = j["device"];
  const std::string kind = dev.value("type", "");
  if (kind == "passive") {
    s.device = DeviceKind::passive;
  } else if (kind == "mirror") {
    s.device = DeviceKind::mirror;
  } else if (kind == "cw_bragg") {
    s.device = DeviceKind::cw_bragg;
  } else if (kind == "synthesized") {
    s.device = DeviceKind::synthesized;
  } else if (kind == "from_file") {
    s.device = DeviceKind::from_file;
  } else {
    detail::fail_validation("device.type must be one of passive, mirror, "
                            "cw_bragg, synthesized, from_file");
  }

  switch (s.device) {
    case DeviceKind::passive:
      detail::resolve_coefficients(dev, s);
      break;
    case DeviceKind::mirror:
      detail::resolve_coefficients(dev, s);
      s.beta = detail::require_number(dev, "device", "beta");
      if (!(std::abs(s.beta) < 1.0))
        detail::fail_validation("device.beta: |beta| < 1 violated");
      break;
    case DeviceKind::cw_bragg:
      detail::resolve_coefficients(dev, s);
      s.omega_shift = detail::require_number(dev, "device", "omega_shift");
      if (s.omega_shift == 0.0)
        detail::fail_validation("device.omega_shift must be nonzero "
                                "(a zero shift is the passive splitter)");
      break;
    case DeviceKind::synthesized:
      if (!dev.contains("spec_path"))
        detail::fail_validation("device.spec_path required for synthesized");
      s.spec_path = dev["spec_path"].get<std::string>();
      break;
    case DeviceKind::from_file:
      if (!dev.contains("kernel_path"))
        detail::fail_validation("device.kernel_path required for from_file");
      s.kernel_path = dev["kernel_path"].get<std::string>();
      break;
  }

  if (s.device == DeviceKind::from_file) {
    if (j.contains("grid"))
      detail::fail_validation(
          "grid must be omitted for from_file (the kernel carries its basis)");
  } else {
    if (!j.contains("grid")) detail::fail_validation("missing grid section");
    s.grid = detail::parse_grid(j["grid"], "grid");
  }
  if (j.contains("blue_grid")) {
    if (s.device != DeviceKind::synthesized)
      detail::fail_validation(
          "blue_grid is only accepted for synthesized devices");
    s.blue_grid = detail::parse_grid(j["blue_grid"], "blue_grid");
  } else if (s.device == DeviceKind::synthesized) {
    detail::fail_validation("blue_grid required for synthesized devices");
  }

  if (!j.contains("task") || !j["task"].is_object())
    detail::fail_validation("missing task section");
  const auto& task = j["task"];
  const std::string tkind = task.value("type", "");
  if (tkind == "run") {
    s.task = TaskKind::run;
  } else if (tkind == "scan") {
    s.task = TaskKind::scan;
  } else if (tkind == "decompose") {
    s.task = TaskKind::decompose;
  } else if (tkind == "synthesize") {
    s.task = TaskKind::synthesize;
  } else if (tkind == "verify") {
    s.task = TaskKind::verify;
  } else {
    detail::fail_validation(
        "task.type must be one of run, scan, decompose, synthesize, verify");
  }
  s.output_name = task.value("out", detail::default_output_name(s.task));

  const bool needs_packets =
      s.task == TaskKind::run || s.task == TaskKind::scan;
  if (j.contains("packets")) {
    if (!needs_packets)
      detail::fail_validation("packets are only used by run and scan tasks");
    const auto& pk = j["packets"];
    if (pk.contains("matched")) {
      if (pk.contains("red") || pk.contains("blue"))
        detail::fail_validation(
            "packets: give either matched or red/blue, not both");
      const auto idx = pk["matched"].get<std::int64_t>();
      if (idx < 1)
        detail::fail_validation("packets.matched is a 1-based mode index");
      s.matched = static_cast<std::size_t>(idx);
    } else {
      if (!pk.contains("red") || !pk.contains("blue"))
        detail::fail_validation("packets needs red and blue subsections");
      s.red_packet = detail::parse_packet(pk["red"], "packets.red");
      s.blue_packet = detail::parse_packet(pk["blue"], "packets.blue");
    }
  } else if (needs_packets) {
    detail::fail_validation("missing packets section");
  }

  if (s.task == TaskKind::scan) {
    if (!task.contains("delays"))
      detail::fail_validation("task.delays required for scan");
    const auto& d = task["delays"];
    if (d.is_array()) {
      s.delays = d.get<std::vector<double>>();
    } else if (d.is_object()) {
      const double lo = detail::require_number(d, "task.delays", "min");
      const double hi = detail::require_number(d, "task.delays", "max");
      if (!d.contains("count") || !d["count"].is_number_unsigned())
        detail::fail_validation("task.delays.count must be a positive integer");
      const auto count = d["count"].get<std::size_t>();
      if (count == 0)
        detail::fail_validation("task.delays.count must be >= 1");
      s.delays.resize(count);
      for (std::size_t i = 0; i < count; ++i)
        s.delays[i] =
            count == 1 ? lo
                       : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1);
    } else {
      detail::fail_validation("task.delays must be a list or {min,max,count}");
    }
    if (s.delays.empty())
      detail::fail_validation("task.delays must be non-empty");
  }

  if (s.task == TaskKind::synthesize && s.device != DeviceKind::synthesized)
    detail::fail_validation("task synthesize requires device.type synthesized");

  return s;
}

/// Plot-ready dip curve: header `t_d,P_RB`, one row per sample at full
/// double precision, LF line endings.
inline void emit_curve(const std::vector<DipSample>& curve,
                       const std::filesystem::path& path) {
  if (curve.empty())
    throw InvalidArgument("refusing to write an empty curve");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "t_d,P_RB\n";
  for (const auto& sample : curve)
    out << detail::format_full(sample.delay) << ','
        << detail::format_full(sample.p_rb) << '\n';
  if (!out) throw IoError("failed while writing " + path.string());
}

namespace detail {

/// Schmidt-spec document for kernel synthesis: Hermite-Gauss mode families
/// on each band plus a (tau, theta) splitter entry per mode order.
inline SchmidtSpec load_schmidt_spec(const std::filesystem::path& path,
                                     const ModeBasis& basis) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.contains("modes") || !j.contains("entries"))
    fail_validation(path.string() + ": needs modes and entries sections");
  const auto& modes = j["modes"];
  if (modes.value("family", "") != "hermite_gauss")
    fail_validation(path.string() +
                    ": modes.family must be \"hermite_gauss\"");
  const auto& entries = j["entries"];
  if (!entries.is_array() || entries.empty())
    fail_validation(path.string() + ": entries must be a non-empty list");
  const std::size_t m = entries.size();
  if (m > basis.size1() || m > basis.size2())
    throw TooManyModes(path.string() + ": more entries than band modes");

  const auto& red = modes["red"];
  const auto& blue = modes["blue"];
  const auto red_family = hermite_gauss_family(
      basis.band1(), require_number(red, "modes.red", "omega0"),
      require_number(red, "modes.red", "sigma"), m);
  const auto blue_family = hermite_gauss_family(
      basis.band2(), require_number(blue, "modes.blue", "omega0"),
      require_number(blue, "modes.blue", "sigma"), m);

  SchmidtSpec spec;
  spec.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = entries[i];
    const double tau = require_number(e, "entries[i]", "tau");
    if (tau < 0.0 || tau > 1.0)
      fail_validation(path.string() + ": entry tau must lie in [0, 1]");
    const double theta = e.value("theta", 0.0);
    spec.push_back(SchmidtEntry{tau, theta, red_family[i], red_family[i],
                                blue_family[i], blue_family[i]});
  }
  return spec;
}

inline FrequencyGrid build_grid(const GridConfig& g, Band band) {
  return make_uniform_grid(g.center, g.span, g.n, band);
}

inline BlockKernel build_kernel(const Scenario& s) {
  switch (s.device) {
    case DeviceKind::passive:
      return passive_splitter(s.tau, s.rho,
                              build_grid(*s.grid, Band::port1));
    case DeviceKind::mirror:
      return moving_mirror(MirrorParams(s.tau, s.rho, s.beta),
                           build_grid(*s.grid, Band::red));
    case DeviceKind::cw_bragg:
      return cw_bragg(BraggParams(s.tau, s.rho, s.omega_shift),
                      build_grid(*s.grid, Band::red));
    case DeviceKind::synthesized: {
      ModeBasis basis(build_grid(*s.grid, Band::red),
                      build_grid(*s.blue_grid, Band::blue));
      const auto spec_file = s.spec_path.is_absolute()
                                 ? s.spec_path
                                 : s.base_dir / s.spec_path;
      return synthesize_kernel(load_schmidt_spec(spec_file, basis), basis);
    }
    case DeviceKind::from_file: {
      const auto kernel_file = s.kernel_path.is_absolute()
                                   ? s.kernel_path
                                   : s.base_dir / s.kernel_path;
      return load_kernel(kernel_file);
    }
  }
  throw InvalidArgument("unreachable device kind");
}

struct InputPair {
  WavePacket red;
  WavePacket blue;
};

inline InputPair build_packets(const Scenario& s, const BlockKernel& kernel) {
  if (s.matched) {
    const MatchedInputs m = matched_inputs(kernel, *s.matched - 1);
    return InputPair{m.red, m.blue};
  }
  const auto& r = *s.red_packet;
  const auto& b = *s.blue_packet;
  return InputPair{
      gaussian_packet(kernel.basis().band1(), r.omega0, r.sigma, r.chirp,
                      r.delay),
      gaussian_packet(kernel.basis().band2(), b.omega0, b.sigma, b.chirp,
                      b.delay)};
}

inline void write_json_file(const nlohmann::json& j,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed while writing " + path.string());
}

}  // namespace detail

/// Runs the scenario's task and writes its artifacts under `out_dir`.
/// Everything serialized is a pure function of the config file bytes.
inline RunReport execute(const Scenario& s,
                         const std::filesystem::path& out_dir) {
  const auto t_start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out_path = out_dir / s.output_name;

  RunReport report;
  report.config_hash = s.config_hash;
  const BlockKernel kernel = detail::build_kernel(s);

  switch (s.task) {
    case TaskKind::run: {
      const auto inputs = detail::build_packets(s, kernel);
      const TwoPhotonState out_state = apply_kernel(
          kernel, two_photon_input(kernel.basis(), inputs.red, inputs.blue));
      report.probabilities = output_probabilities(out_state);
      const SchmidtDecomposition sd = schmidt_decompose(hom_kernel(kernel));
      report.schmidt_sigma.assign(sd.sigma.data(),
                                  sd.sigma.data() + sd.sigma.size());
      report.condition_residual =
          check_interference_condition(inputs.red, inputs.blue, kernel);
      nlohmann::json doc{
          {"schema_version", kScenarioSchemaVersion},
          {"task", "run"},
          {"probabilities",
           {{"p_rr", report.probabilities->p_rr},
            {"p_rb", report.probabilities->p_rb},
            {"p_bb", report.probabilities->p_bb}}},
          {"schmidt_sigma", report.schmidt_sigma},
          {"condition_residual", *report.condition_residual},
          {"config_hash", report.config_hash},
          {"version", report.version}};
      detail::write_json_file(doc, out_path);
      break;
    }
    case TaskKind::scan: {
      const auto inputs = detail::build_packets(s, kernel);
      const auto curve = dip_scan(kernel, inputs.red, inputs.blue, s.delays);
      emit_curve(curve, out_path);
      const TwoPhotonState out_state = apply_kernel(
          kernel, two_photon_input(kernel.basis(), inputs.red, inputs.blue));
      report.probabilities = output_probabilities(out_state);
      const SchmidtDecomposition sd = schmidt_decompose(hom_kernel(kernel));
      report.schmidt_sigma.assign(sd.sigma.data(),
                                  sd.sigma.data() + sd.sigma.size());
      report.condition_residual =
          check_interference_condition(inputs.red, inputs.blue, kernel);
      break;
    }
    case TaskKind::decompose: {
      const BeamSplitterDecomposition d = beam_splitter_decompose(kernel);
      const SchmidtDecomposition sd = schmidt_decompose(hom_kernel(kernel));
      report.schmidt_sigma.assign(sd.sigma.data(),
                                  sd.sigma.data() + sd.sigma.size());
      report.reconstruction_residual = d.reconstruction_residual;
      nlohmann::json doc = decomposition_report(d, sd);
      doc["task"] = "decompose";
      doc["config_hash"] = report.config_hash;
      doc["version"] = report.version;
      detail::write_json_file(doc, out_path);
      break;
    }
    case TaskKind::synthesize: {
      save_kernel(kernel, out_path);
      const SchmidtDecomposition sd = schmidt_decompose(hom_kernel(kernel));
      report.schmidt_sigma.assign(sd.sigma.data(),
                                  sd.sigma.data() + sd.sigma.size());
      break;
    }
    case TaskKind::verify: {
      const UnitarityReport u = verify_unitarity(kernel);
      report.unitarity_residual = u.max_residual();
      nlohmann::json doc{{"schema_version", kScenarioSchemaVersion},
                         {"task", "verify"},
                         {"unitarity",
                          {{"left", u.left_residual},
                           {"right", u.right_residual},
                           {"block_rr", u.block_rr},
                           {"block_rb", u.block_rb},
                           {"block_br", u.block_br},
                           {"block_bb", u.block_bb},
                           {"max", u.max_residual()}}},
                         {"config_hash", report.config_hash},
                         {"version", report.version}};
      detail::write_json_file(doc, out_path);
      break;
    }
  }

  report.outputs.push_back(out_path);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    t_start)
          .count();
  return report;
}

}  // namespace homsim

#endif  // HOMSIM_SCENARIO_HPP_
