#include "vortex/harness/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "vortex/initial_data.hpp"

namespace vortex::harness {

namespace {

using nlohmann::json;

void reject_unknown(const YAML::Node& node, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (!node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("key '{}' has the wrong type", key));
  }
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Phase parse_phase(const std::string& s) {
  if (s == "cos") return Phase::cos;
  if (s == "sin") return Phase::sin;
  throw ConfigError("noise phase must be cos or sin, got " + s);
}

NoiseSpec parse_noise(const YAML::Node& node) {
  NoiseSpec spec;
  if (node.IsScalar()) {
    spec.preset = node.as<std::string>();
    return spec;
  }
  reject_unknown(node, "noise", {"preset", "amplitude", "constant", "radius", "modes", "c_nu"});
  read(node, "preset", spec.preset);
  read(node, "amplitude", spec.amplitude);
  read(node, "radius", spec.shell_radius);
  if (node["constant"]) {
    const auto v = node["constant"].as<std::vector<double>>();
    if (v.size() != 2) throw ConfigError("noise.constant must have two components");
    spec.constant = {v[0], v[1]};
  }
  if (node["c_nu"]) spec.c_nu = node["c_nu"].as<double>();
  if (node["modes"]) {
    if (!node["preset"]) spec.preset = "modes";
    for (const auto& m : node["modes"]) {
      reject_unknown(m, "noise.modes entry", {"m", "phase", "amplitude"});
      const auto k = m["m"].as<std::vector<int>>();
      if (k.size() != 2) throw ConfigError("noise mode m must have two components");
      NoiseMode mode{{k[0], k[1]}, parse_phase(m["phase"] ? m["phase"].as<std::string>() : "cos"),
                     m["amplitude"] ? m["amplitude"].as<double>() : 0.0};
      spec.modes.push_back(mode);
    }
  }
  return spec;
}

const char* name_of(ParticleScheme s) { return s == ParticleScheme::euler_maruyama_ito ? "ito" : "heun"; }
const char* name_of(InteractionMode m) {
  switch (m) {
    case InteractionMode::direct_pairwise: return "direct";
    case InteractionMode::particle_mesh: return "mesh";
    case InteractionMode::none: return "none";
  }
  return "?";
}
const char* name_of(SpdeVariant v) {
  switch (v) {
    case SpdeVariant::single: return "single";
    case SpdeVariant::coupled: return "coupled";
    case SpdeVariant::truncated_single: return "truncated_single";
    case SpdeVariant::truncated_coupled: return "truncated_coupled";
  }
  return "?";
}
const char* name_of(SpdeForm f) { return f == SpdeForm::ito ? "ito" : "stratonovich"; }
const char* name_of(HessianForm h) { return h == HessianForm::divergence ? "divergence" : "pointwise"; }

}  // namespace

int ExperimentConfig::n_steps() const { return static_cast<int>(std::llround(T / dt)); }

std::vector<int> ExperimentConfig::observation_steps() const {
  const int steps = n_steps();
  std::vector<int> out;
  for (int j = 0; j < observations; ++j) {
    out.push_back(observations == 1 ? steps : static_cast<int>(std::llround(static_cast<double>(j) * steps / (observations - 1))));
  }
  return out;
}

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a YAML mapping");
  reject_unknown(root, "config",
                 {"name", "seed", "paths", "output", "grid", "nu", "T", "dt", "observations", "initial",
                  "noise", "particles", "spde", "norms", "verdict", "strict_assumptions",
                  "record_wallclock", "write_particles", "write_snapshots"});
  ExperimentConfig cfg;
  read(root, "name", cfg.name);
  read(root, "seed", cfg.seed);
  read(root, "paths", cfg.paths);
  if (root["output"]) cfg.output = root["output"].as<std::string>();
  read(root, "grid", cfg.grid);
  read(root, "nu", cfg.nu);
  read(root, "T", cfg.T);
  read(root, "dt", cfg.dt);
  read(root, "observations", cfg.observations);
  read(root, "strict_assumptions", cfg.strict_assumptions);
  read(root, "record_wallclock", cfg.record_wallclock);
  read(root, "write_particles", cfg.write_particles);
  read(root, "write_snapshots", cfg.write_snapshots);
  if (const auto init = root["initial"]) {
    if (init.IsScalar()) {
      cfg.initial = init.as<std::string>();
    } else {
      reject_unknown(init, "initial", {"preset", "snapshot"});
      read(init, "preset", cfg.initial);
      if (init["snapshot"]) {
        cfg.initial = "snapshot";
        cfg.initial_snapshot = init["snapshot"].as<std::string>();
      }
    }
  }
  if (root["noise"]) cfg.noise = parse_noise(root["noise"]);
  if (const auto p = root["particles"]) {
    reject_unknown(p, "particles", {"ladder", "beta", "scheme", "interaction", "truncation", "cross_check"});
    read(p, "ladder", cfg.ladder);
    read(p, "beta", cfg.beta);
    read(p, "cross_check", cfg.cross_check);
    if (p["scheme"]) {
      const auto s = lower(p["scheme"].as<std::string>());
      if (s == "ito") cfg.particle_scheme = ParticleScheme::euler_maruyama_ito;
      else if (s == "heun") cfg.particle_scheme = ParticleScheme::heun_stratonovich;
      else throw ConfigError("particles.scheme must be ito or heun");
    }
    if (p["interaction"]) {
      const auto s = lower(p["interaction"].as<std::string>());
      if (s == "mesh") cfg.interaction = InteractionMode::particle_mesh;
      else if (s == "direct") cfg.interaction = InteractionMode::direct_pairwise;
      else if (s == "none") cfg.interaction = InteractionMode::none;
      else throw ConfigError("particles.interaction must be mesh, direct or none");
    }
    if (p["truncation"] && p["truncation"].as<std::string>() != "auto") {
      cfg.truncation = p["truncation"].as<double>();
    }
  }
  if (const auto s = root["spde"]) {
    reject_unknown(s, "spde", {"variant", "form", "hessian"});
    if (s["variant"]) {
      const auto v = s["variant"].as<std::string>();
      if (v == "single") cfg.variant = SpdeVariant::single;
      else if (v == "coupled") cfg.variant = SpdeVariant::coupled;
      else if (v == "truncated_single") cfg.variant = SpdeVariant::truncated_single;
      else if (v == "truncated_coupled") cfg.variant = SpdeVariant::truncated_coupled;
      else throw ConfigError("unknown spde.variant " + v);
    }
    if (s["form"]) {
      const auto f = s["form"].as<std::string>();
      if (f == "ito") cfg.form = SpdeForm::ito;
      else if (f == "stratonovich") cfg.form = SpdeForm::stratonovich;
      else throw ConfigError("spde.form must be ito or stratonovich");
    }
    if (s["hessian"]) {
      const auto h = s["hessian"].as<std::string>();
      if (h == "divergence") cfg.hessian = HessianForm::divergence;
      else if (h == "pointwise") cfg.hessian = HessianForm::pointwise;
      else throw ConfigError("spde.hessian must be divergence or pointwise");
    }
  }
  if (const auto n = root["norms"]) {
    reject_unknown(n, "norms", {"alpha", "p", "eta", "epsilon"});
    read(n, "alpha", cfg.alpha);
    read(n, "p", cfg.p);
    read(n, "eta", cfg.eta);
    read(n, "epsilon", cfg.epsilon);
  }
  if (const auto v = root["verdict"]) {
    reject_unknown(v, "verdict", {"threshold"});
    read(v, "threshold", cfg.threshold);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_config(buf.str());
  if (cfg.initial_snapshot && cfg.initial_snapshot->is_relative()) {
    cfg.initial_snapshot = path.parent_path() / *cfg.initial_snapshot;
  }
  return cfg;
}

double beta_bound(double alpha, double p) { return 1.0 / (4.0 + 2.0 * alpha - 4.0 / p); }

Validation validate_config(const ExperimentConfig& cfg) {
  Validation v;
  auto structural = [&v](bool bad, const std::string& msg) {
    if (bad) v.errors.push_back(msg);
  };
  structural(!(cfg.grid >= 8 && cfg.grid % 2 == 0), "grid must be an even integer >= 8");
  structural(!(cfg.nu >= 0.0), "nu must be nonnegative");
  structural(!(cfg.T > 0.0), "T must be positive");
  structural(!(cfg.dt > 0.0), "dt must be positive");
  structural(cfg.dt > 0.0 && std::abs(cfg.n_steps() * cfg.dt - cfg.T) > 1e-9 * cfg.T,
             "T must be an integer multiple of dt");
  structural(cfg.observations < 1, "observations must be >= 1");
  structural(cfg.paths < 1, "paths must be >= 1");
  structural(cfg.ladder.empty(), "particles.ladder must not be empty");
  for (std::size_t n : cfg.ladder) structural(n < 1, "particle counts must be positive");
  structural(cfg.truncation && !(*cfg.truncation > 0.0), "particles.truncation must be positive");
  structural(!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0), "norms.epsilon must lie in (0, 1)");
  structural(!(cfg.threshold > 0.0), "verdict.threshold must be positive");
  structural(!(cfg.beta > 0.0 && cfg.beta < 1.0), "beta must lie in (0, 1)");
  structural(!(cfg.p >= 1.0), "p must be >= 1 for the Sobolev norm to be defined");
  try {
    const NoiseModel model = NoiseModel::from_spec(cfg.noise);
    const std::string w = model.budget_warning(cfg.noise.c_nu);
    if (!w.empty()) v.warnings.push_back(w);
    if (2 * model.max_wavenumber() > cfg.grid / 2) {
      v.errors.push_back("grid too coarse for the noise wavenumbers");
    }
  } catch (const ConfigError& e) {
    v.errors.push_back(e.what());
  }
  if (cfg.initial != "snapshot") {
    try {
      (void)initial_preset(cfg.initial);
    } catch (const ConfigError& e) {
      v.errors.push_back(e.what());
    }
  } else if (!cfg.initial_snapshot) {
    v.errors.push_back("initial snapshot path missing");
  }

  v.beta_bound = cfg.p > 0.0 ? beta_bound(cfg.alpha, cfg.p) : 0.0;
  std::vector<std::string> violated;
  if (!(cfg.p > 2.0)) violated.push_back(fmt::format("p > 2 violated (p = {})", cfg.p));
  if (!(2.0 / cfg.p < cfg.eta)) {
    violated.push_back(fmt::format("2/p < eta violated (2/p = {:.6g}, eta = {})", 2.0 / cfg.p, cfg.eta));
  }
  if (!(cfg.eta < cfg.alpha)) {
    violated.push_back(fmt::format("eta < alpha violated (eta = {}, alpha = {})", cfg.eta, cfg.alpha));
  }
  if (!(2.0 / cfg.p < cfg.alpha)) {
    violated.push_back(fmt::format("alpha > 2/p violated (alpha = {}, 2/p = {:.6g})", cfg.alpha, 2.0 / cfg.p));
  }
  if (!(cfg.alpha < 1.0)) violated.push_back(fmt::format("alpha < 1 violated (alpha = {})", cfg.alpha));
  if (!(cfg.beta < v.beta_bound)) {
    violated.push_back(fmt::format("beta < 1/(4 + 2 alpha - 4/p) = {:.6g} violated (beta = {})",
                                   v.beta_bound, cfg.beta));
  }
  for (auto& msg : violated) {
    (cfg.strict_assumptions ? v.errors : v.warnings).push_back(std::move(msg));
  }
  return v;
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json noise_modes = json::array();
  for (const auto& m : cfg.noise.modes) {
    noise_modes.push_back({{"m", {m.m[0], m.m[1]}},
                           {"phase", m.phase == Phase::cos ? "cos" : "sin"},
                           {"amplitude", m.amplitude}});
  }
  json j = {
      {"name", cfg.name},
      {"seed", cfg.seed},
      {"paths", cfg.paths},
      {"grid", cfg.grid},
      {"nu", cfg.nu},
      {"T", cfg.T},
      {"dt", cfg.dt},
      {"observations", cfg.observations},
      {"initial", cfg.initial},
      {"initial_snapshot", cfg.initial_snapshot ? cfg.initial_snapshot->string() : ""},
      {"noise",
       {{"preset", cfg.noise.preset},
        {"amplitude", cfg.noise.amplitude},
        {"constant", {cfg.noise.constant[0], cfg.noise.constant[1]}},
        {"radius", cfg.noise.shell_radius},
        {"modes", noise_modes},
        {"c_nu", cfg.noise.c_nu ? json(*cfg.noise.c_nu) : json(nullptr)}}},
      {"particles",
       {{"ladder", cfg.ladder},
        {"beta", cfg.beta},
        {"scheme", name_of(cfg.particle_scheme)},
        {"interaction", name_of(cfg.interaction)},
        {"truncation", cfg.truncation ? json(*cfg.truncation) : json("auto")},
        {"cross_check", cfg.cross_check}}},
      {"spde", {{"variant", name_of(cfg.variant)}, {"form", name_of(cfg.form)}, {"hessian", name_of(cfg.hessian)}}},
      {"norms", {{"alpha", cfg.alpha}, {"p", cfg.p}, {"eta", cfg.eta}, {"epsilon", cfg.epsilon}}},
      {"verdict", {{"threshold", cfg.threshold}}},
      {"strict_assumptions", cfg.strict_assumptions},
      {"record_wallclock", cfg.record_wallclock},
  };
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

// int over [-pi, pi]^2 of 1 / (2 pi |x|)
double kernel_l1_proxy() { return 4.0 * std::asinh(1.0); }

}  // namespace vortex::harness
