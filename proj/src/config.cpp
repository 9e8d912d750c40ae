#include "aiduco/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace aiduco {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "schema_version", "class",       "mask",        "m_true",   "observer_gain",
      "adaptation_gain", "mhat0_scale", "mhat0",       "v0",       "duration",
      "dt",             "delta",       "stride",      "analyze",  "noise_sigma",
      "seed",           "holdout_duration", "output"};
  return keys;
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config: '" + key + "' " + why);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(key, "has the wrong type");
  }
}

// A 6-vector, or a single number repeated in every entry.
Vec6 vec6(const YAML::Node& node, const std::string& key, bool allow_scalar) {
  if (node.IsScalar() && allow_scalar) {
    return Vec6::Constant(scalar<double>(node, key));
  }
  if (!node.IsSequence() || node.size() != 6) {
    fail(key, "must be a list of 6 numbers");
  }
  Vec6 out;
  for (std::size_t i = 0; i < 6; ++i) {
    out(static_cast<Eigen::Index>(i)) = scalar<double>(node[i], key);
  }
  return out;
}

std::string number(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string list(const Vec6& v) {
  std::string out = "[";
  for (int i = 0; i < 6; ++i) {
    out += (i ? ", " : "") + number(v(i));
  }
  return out + "]";
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: not valid YAML: ") + e.what());
  }
  if (root.IsNull()) {
    root = YAML::Node(YAML::NodeType::Map);
  }
  if (!root.IsMap()) {
    throw std::invalid_argument("config: top level must be a mapping");
  }
  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    if (!known_keys().contains(key)) {
      fail(key, "is not a known setting");
    }
  }
  if (root["schema_version"]) {
    const int version = scalar<int>(root["schema_version"], "schema_version");
    if (version != ScenarioConfig::kSchemaVersion) {
      fail("schema_version", "must be " + std::to_string(ScenarioConfig::kSchemaVersion));
    }
  }

  const int class_id = root["class"] ? scalar<int>(root["class"], "class") : 0;
  ScenarioConfig cfg = ScenarioConfig::preset(class_id);

  if (const YAML::Node n = root["mask"]) {
    cfg.mask = ControlSchedule::mask_from_flags(vec6(n, "mask", false));
  }
  if (const YAML::Node n = root["m_true"]) cfg.m_true = vec6(n, "m_true", false);
  if (const YAML::Node n = root["observer_gain"]) {
    cfg.gains.observer = vec6(n, "observer_gain", true);
  }
  if (const YAML::Node n = root["adaptation_gain"]) {
    cfg.gains.adaptation = vec6(n, "adaptation_gain", true);
  }
  if (const YAML::Node n = root["mhat0_scale"]) {
    cfg.mhat0_scale = scalar<double>(n, "mhat0_scale");
  }
  if (const YAML::Node n = root["mhat0"]) cfg.mhat0 = vec6(n, "mhat0", false);
  if (const YAML::Node n = root["v0"]) cfg.v0 = vec6(n, "v0", false);
  if (const YAML::Node n = root["duration"]) cfg.duration = scalar<double>(n, "duration");
  if (const YAML::Node n = root["dt"]) cfg.dt = scalar<double>(n, "dt");
  if (const YAML::Node n = root["delta"]) cfg.delta = scalar<double>(n, "delta");
  if (const YAML::Node n = root["stride"]) {
    const long long stride = scalar<long long>(n, "stride");
    if (stride < 1) {
      fail("stride", "must be at least 1");
    }
    cfg.stride = static_cast<std::size_t>(stride);
  }
  if (const YAML::Node n = root["analyze"]) cfg.analyze = scalar<bool>(n, "analyze");
  if (const YAML::Node n = root["noise_sigma"]) {
    cfg.noise_sigma = scalar<double>(n, "noise_sigma");
  }
  if (const YAML::Node n = root["seed"]) cfg.seed = scalar<std::uint64_t>(n, "seed");
  if (const YAML::Node n = root["holdout_duration"]) {
    cfg.holdout_duration = scalar<double>(n, "holdout_duration");
  }
  if (const YAML::Node n = root["output"]) cfg.output = scalar<std::string>(n, "output");

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "schema_version: " << ScenarioConfig::kSchemaVersion << '\n';
  out << "class: " << cfg.class_id << '\n';
  if (cfg.mask) {
    Vec6 flags;
    for (int i = 0; i < 6; ++i) {
      flags(i) = (*cfg.mask)[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    }
    out << "mask: " << list(flags) << '\n';
  }
  out << "m_true: " << list(cfg.m_true) << '\n';
  out << "observer_gain: " << list(cfg.gains.observer) << '\n';
  out << "adaptation_gain: " << list(cfg.gains.adaptation) << '\n';
  if (cfg.mhat0) {
    out << "mhat0: " << list(*cfg.mhat0) << '\n';
  } else {
    out << "mhat0_scale: " << number(cfg.mhat0_scale) << '\n';
  }
  out << "v0: " << list(cfg.v0) << '\n';
  out << "duration: " << number(cfg.duration) << '\n';
  out << "dt: " << number(cfg.dt) << '\n';
  out << "delta: " << number(cfg.delta) << '\n';
  out << "stride: " << cfg.stride << '\n';
  out << "analyze: " << (cfg.analyze ? "true" : "false") << '\n';
  out << "noise_sigma: " << number(cfg.noise_sigma) << '\n';
  out << "seed: " << cfg.seed << '\n';
  out << "holdout_duration: " << number(cfg.holdout_duration) << '\n';
  if (!cfg.output.empty()) {
    YAML::Emitter e;
    e << YAML::DoubleQuoted << cfg.output;
    out << "output: " << e.c_str() << '\n';
  }
  return out.str();
}

}  // namespace aiduco
