#include <erdlab/config.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace erdlab {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

Scalar parse_scalar(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    const Scalar v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs a number, got '" + value + "'");
  }
}

long parse_long(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                        const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs an unsigned integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(origin, line, "key '" + key + "' needs true/false, got '" + value + "'");
}

std::vector<Scalar> parse_list(const std::string& origin, int line, const std::string& key,
                               const std::string& value) {
  std::vector<Scalar> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(origin, line, "key '" + key + "' has an empty list entry");
    out.push_back(parse_scalar(origin, line, key, item));
  }
  if (out.empty()) fail(origin, line, "key '" + key + "' needs a comma-separated list");
  return out;
}

std::string format_scalar(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<Scalar>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_scalar(values[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig config;
  std::stringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value', got '" + raw + "'");
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) fail(origin, line, "missing key before '='");
    if (value.empty()) fail(origin, line, "missing value for key '" + key + "'");

    if (key == "schedule") {
      try {
        config.schedule.kind = schedule_kind_from_string(value);
      } catch (const std::exception& e) {
        fail(origin, line, e.what());
      }
    } else if (key == "beta_min") {
      config.schedule.beta_min = parse_scalar(origin, line, key, value);
    } else if (key == "beta_max") {
      config.schedule.beta_max = parse_scalar(origin, line, key, value);
    } else if (key == "lambda_clamp") {
      config.schedule.lambda_clamp = parse_scalar(origin, line, key, value);
    } else if (key == "target") {
      try {
        config.target = target_kind_from_string(value);
      } catch (const std::exception& e) {
        fail(origin, line, e.what());
      }
    } else if (key == "weight") {
      try {
        config.weight = weight_kind_from_string(value);
      } catch (const std::exception& e) {
        fail(origin, line, e.what());
      }
    } else if (key == "gamma") {
      config.gamma = parse_scalar(origin, line, key, value);
    } else if (key == "iterations") {
      config.iterations = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "batch") {
      config.batch = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "lr") {
      config.lr = parse_scalar(origin, line, key, value);
    } else if (key == "adam_beta1") {
      config.adam_beta1 = parse_scalar(origin, line, key, value);
    } else if (key == "adam_beta2") {
      config.adam_beta2 = parse_scalar(origin, line, key, value);
    } else if (key == "adam_eps") {
      config.adam_eps = parse_scalar(origin, line, key, value);
    } else if (key == "t_lo") {
      config.t_lo = parse_scalar(origin, line, key, value);
    } else if (key == "t_hi") {
      config.t_hi = parse_scalar(origin, line, key, value);
    } else if (key == "seed") {
      config.seed = parse_u64(origin, line, key, value);
    } else if (key == "embed_dim") {
      config.embed_dim = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "hidden_dim") {
      config.hidden_dim = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "depth") {
      config.depth = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "t_grid_size") {
      config.t_grid_size = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "n_mc") {
      config.n_mc = parse_long(origin, line, key, value);
    } else if (key == "eval_mc") {
      config.eval_mc = parse_long(origin, line, key, value);
    } else if (key == "plot") {
      config.plot = parse_bool(origin, line, key, value);
    } else if (key == "oracle_only") {
      config.oracle_only = parse_bool(origin, line, key, value);
    } else if (key == "bins") {
      config.bins = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "ntk_points") {
      config.ntk_points = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "ntk_t_grid") {
      config.ntk_t_grid = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "heatmap_times") {
      config.heatmap_times = parse_list(origin, line, key, value);
    } else if (key == "pca_times") {
      config.pca_times = parse_list(origin, line, key, value);
    } else if (key == "pca_samples") {
      config.pca_samples = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "phase_samples") {
      config.phase_samples = static_cast<int>(parse_long(origin, line, key, value));
    } else {
      fail(origin, line, "unknown key '" + key + "'");
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void validate(const ExperimentConfig& config) {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError("invalid config: " + message);
  };
  if (config.schedule.kind == ScheduleKind::VP) {
    try {
      Schedule::vp(config.schedule.beta_min, config.schedule.beta_max);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid config: ") + e.what());
    }
  }
  require(config.schedule.lambda_clamp > 0, "lambda_clamp must be positive");
  require(config.gamma > 0, "gamma must be positive");
  require(config.iterations >= 0, "iterations must be nonnegative");
  require(config.batch >= 1, "batch must be at least 1");
  require(std::isfinite(config.lr) && config.lr > 0, "lr must be positive");
  require(config.adam_beta1 >= 0 && config.adam_beta1 < 1, "adam_beta1 must lie in [0,1)");
  require(config.adam_beta2 >= 0 && config.adam_beta2 < 1, "adam_beta2 must lie in [0,1)");
  require(config.adam_eps > 0, "adam_eps must be positive");
  require(config.t_lo >= 0 && config.t_lo < config.t_hi && config.t_hi <= 1,
          "need 0 <= t_lo < t_hi <= 1");
  require(config.embed_dim >= 2 && config.embed_dim % 2 == 0,
          "embed_dim must be even and at least 2");
  require(config.hidden_dim >= 1, "hidden_dim must be at least 1");
  require(config.depth >= 1, "depth must be at least 1");
  require(!config.out_dir.empty(), "out_dir must not be empty");
  require(config.t_grid_size >= 2, "t_grid_size must be at least 2");
  require(config.n_mc >= 2, "n_mc must be at least 2");
  require(config.eval_mc >= 2, "eval_mc must be at least 2");
  require(config.bins >= 1, "bins must be at least 1");
  require(config.ntk_points >= 1, "ntk_points must be at least 1");
  require(config.ntk_t_grid >= 2, "ntk_t_grid must be at least 2");
  for (const char* key : {"heatmap_times", "pca_times"}) {
    const auto& times =
        std::string(key) == "heatmap_times" ? config.heatmap_times : config.pca_times;
    require(!times.empty(), std::string(key) + " must not be empty");
    for (const Scalar t : times)
      require(t >= 0 && t <= 1, std::string(key) + " entries must lie in [0,1]");
  }
  require(config.pca_samples > 2, "pca_samples must exceed 2");
  require(config.phase_samples >= 1, "phase_samples must be at least 1");
}

std::vector<std::pair<std::string, std::string>> config_snapshot(const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> kv;
  const auto put = [&kv](const std::string& key, const std::string& value) {
    kv.emplace_back(key, value);
  };
  put("schedule", to_string(config.schedule.kind));
  put("beta_min", format_scalar(config.schedule.beta_min));
  put("beta_max", format_scalar(config.schedule.beta_max));
  put("lambda_clamp", format_scalar(config.schedule.lambda_clamp));
  put("target", to_string(config.target));
  put("weight", to_string(config.weight));
  put("gamma", format_scalar(config.gamma));
  put("iterations", std::to_string(config.iterations));
  put("batch", std::to_string(config.batch));
  put("lr", format_scalar(config.lr));
  put("adam_beta1", format_scalar(config.adam_beta1));
  put("adam_beta2", format_scalar(config.adam_beta2));
  put("adam_eps", format_scalar(config.adam_eps));
  put("t_lo", format_scalar(config.t_lo));
  put("t_hi", format_scalar(config.t_hi));
  put("seed", std::to_string(config.seed));
  put("embed_dim", std::to_string(config.embed_dim));
  put("hidden_dim", std::to_string(config.hidden_dim));
  put("depth", std::to_string(config.depth));
  put("out_dir", config.out_dir);
  put("t_grid_size", std::to_string(config.t_grid_size));
  put("n_mc", std::to_string(config.n_mc));
  put("eval_mc", std::to_string(config.eval_mc));
  put("plot", config.plot ? "true" : "false");
  put("oracle_only", config.oracle_only ? "true" : "false");
  put("bins", std::to_string(config.bins));
  put("ntk_points", std::to_string(config.ntk_points));
  put("ntk_t_grid", std::to_string(config.ntk_t_grid));
  put("heatmap_times", format_list(config.heatmap_times));
  put("pca_times", format_list(config.pca_times));
  put("pca_samples", std::to_string(config.pca_samples));
  put("phase_samples", std::to_string(config.phase_samples));
  return kv;
}

}  // namespace erdlab
