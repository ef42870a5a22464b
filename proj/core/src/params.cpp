#include "loom/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

namespace loom {
namespace {

using Member = std::variant<int ModelParams::*, double ModelParams::*>;

struct FieldSpec {
  std::string_view key;
  Member member;
};

// Scalar keys in serialization order. channel_weights and border_policy are
// handled separately.
constexpr FieldSpec kScalarFields[] = {
    {"frame_width", &ModelParams::frame_width},
    {"frame_height", &ModelParams::frame_height},
    {"dt", &ModelParams::dt},
    {"intensity_scale", &ModelParams::intensity_scale},
    {"persistence_depth", &ModelParams::persistence_depth},
    {"persistence_u", &ModelParams::persistence_u},
    {"dog_gain", &ModelParams::dog_gain},
    {"dog_sigma1", &ModelParams::dog_sigma1},
    {"dog_sigma2", &ModelParams::dog_sigma2},
    {"cascade_gain", &ModelParams::cascade_gain},
    {"cascade_decay", &ModelParams::cascade_decay},
    {"cascade_transmission", &ModelParams::cascade_transmission},
    {"cascade_tau", &ModelParams::cascade_tau},
    {"n_fast", &ModelParams::n_fast},
    {"n_slow", &ModelParams::n_slow},
    {"gabor_lambda", &ModelParams::gabor_lambda},
    {"gabor_sigma", &ModelParams::gabor_sigma},
    {"orientation_count", &ModelParams::orientation_count},
    {"cs_lambda", &ModelParams::cs_lambda},
    {"cs_sigma", &ModelParams::cs_sigma},
    {"cs_psi", &ModelParams::cs_psi},
    {"attention_sigma", &ModelParams::attention_sigma},
    {"gamma_a", &ModelParams::gamma_a},
    {"gamma_d", &ModelParams::gamma_d},
    {"top_k", &ModelParams::top_k},
    {"spike_scale", &ModelParams::spike_scale},
    {"spike_threshold", &ModelParams::spike_threshold},
    {"spike_window", &ModelParams::spike_window},
    {"warn_threshold", &ModelParams::warn_threshold},
    {"cluster_eps", &ModelParams::cluster_eps},
    {"cluster_min_pts", &ModelParams::cluster_min_pts},
    {"kernel_size_small", &ModelParams::kernel_size_small},
    {"kernel_size_blur", &ModelParams::kernel_size_blur},
    {"neuron_count", &ModelParams::neuron_count},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_int(std::string_view text, int& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view text, double& out) {
  // from_chars for double is available in libstdc++ 11.
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool is_odd_and_at_least_3(int size) { return size >= 3 && size % 2 == 1; }

}  // namespace

ModelParams default_params() { return ModelParams{}; }

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid model parameters:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<std::string> validate(const ModelParams& p) {
  std::vector<std::string> out;
  auto require = [&](bool ok, std::string message) {
    if (!ok) out.push_back(std::move(message));
  };

  require(p.frame_width > 0 && p.frame_height > 0, "frame dimensions must be positive");
  require(p.dt > 0.0, "dt must be positive");
  require(p.persistence_depth >= 0, "persistence_depth must be >= 0");
  require(p.dog_sigma1 > 0.0, "dog_sigma1 must be positive");
  require(p.dog_sigma1 < p.dog_sigma2, "dog_sigma ordering: dog_sigma1 < dog_sigma2 required (got " +
                                           format_double(p.dog_sigma1) + ", " +
                                           format_double(p.dog_sigma2) + ")");
  require(p.intensity_scale > 0.0, "intensity_scale must be positive");
  require(p.cascade_tau > 0.0, "cascade_tau must be positive");
  require(p.cascade_decay > 0.0, "cascade_decay (A) must be positive");
  require(p.n_fast >= 1, "n_fast must be >= 1");
  require(p.n_fast < p.n_slow, "n_f < n_s required (n_fast=" + std::to_string(p.n_fast) +
                                   ", n_slow=" + std::to_string(p.n_slow) + ")");
  const double euler = p.dt * p.cascade_decay / p.cascade_tau;
  require(euler < 2.0, "Euler stability: dt*A/tau = " + format_double(euler) + " must be < 2");
  require(p.gabor_lambda > 0.0 && p.gabor_sigma > 0.0, "gabor_lambda and gabor_sigma must be positive");
  require(p.cs_lambda > 0.0 && p.cs_sigma > 0.0, "cs_lambda and cs_sigma must be positive");
  require(p.attention_sigma > 0.0, "attention_sigma must be positive");
  require(p.orientation_count >= 4 && p.orientation_count % 4 == 0,
          "orientation_count must be a positive multiple of 4 so that 0 and pi/2 are sampled");
  require(p.top_k > 0 && p.top_k < p.orientation_count,
          "top_k must satisfy 0 < top_k < orientation_count");
  for (double w : p.channel_weights.to_array()) {
    if (!(w >= 0.0)) {
      out.push_back("channel_weights must all be >= 0");
      break;
    }
  }
  require(p.gamma_a > 0.0 && p.gamma_d > 0.0, "gamma_a and gamma_d must be positive");
  require(p.spike_window >= 1, "spike_window must be >= 1");
  require(p.cluster_eps > 0.0, "cluster_eps must be positive");
  require(p.cluster_min_pts >= 1, "cluster_min_pts must be >= 1");
  require(is_odd_and_at_least_3(p.kernel_size_small),
          "odd kernel size >= 3 required: kernel_size_small=" + std::to_string(p.kernel_size_small));
  require(is_odd_and_at_least_3(p.kernel_size_blur),
          "odd kernel size >= 3 required: kernel_size_blur=" + std::to_string(p.kernel_size_blur));
  require(p.neuron_count >= 0, "neuron_count must be >= 0 (0 selects width*height)");
  return out;
}

ChannelWeights parse_channel_weights(std::string_view text) {
  std::array<double, 6> w{};
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ',' || text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != ' ' && text[end] != '\t') ++end;
    if (count == w.size() || !parse_double(text.substr(pos, end - pos), w[count])) {
      throw ConfigParseError("channel_weights expects 6 reals, got '" + std::string(text) + "'");
    }
    ++count;
    pos = end;
  }
  if (count != w.size()) {
    throw ConfigParseError("channel_weights expects 6 reals, got '" + std::string(text) + "'");
  }
  return ChannelWeights::from_array(w);
}

ModelParams load_params(std::string_view config_text, const ModelParams& base) {
  ModelParams p = base;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= config_text.size()) {
    std::size_t end = config_text.find('\n', start);
    if (end == std::string_view::npos) end = config_text.size();
    std::string_view line = config_text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == config_text.size()) break;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigParseError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string where = "line " + std::to_string(line_no) + " (" + std::string(key) + ")";

    if (key == "channel_weights") {
      try {
        p.channel_weights = parse_channel_weights(value);
      } catch (const ConfigParseError& e) {
        throw ConfigParseError(where + ": " + e.what());
      }
    } else if (key == "border_policy") {
      if (value != "replicate") throw ConfigParseError(where + ": only 'replicate' is supported");
      p.border_policy = BorderPolicy::kReplicate;
    } else {
      bool known = false;
      for (const auto& spec : kScalarFields) {
        if (spec.key != key) continue;
        known = true;
        const bool ok = std::visit(
            [&](auto member) {
              using T = std::remove_cvref_t<decltype(p.*member)>;
              if constexpr (std::is_same_v<T, int>) return parse_int(value, p.*member);
              else return parse_double(value, p.*member);
            },
            spec.member);
        if (!ok) throw ConfigParseError(where + ": malformed value '" + std::string(value) + "'");
        break;
      }
      if (!known) throw ConfigParseError(where + ": unknown key");
    }
    if (end == config_text.size()) break;
  }

  if (auto violations = validate(p); !violations.empty()) throw ValidationError(std::move(violations));
  return p;
}

ModelParams load_params_file(const std::string& path, const ModelParams& base) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open params file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_params(buf.str(), base);
}

std::string serialize(const ModelParams& p) {
  std::string out = "# loomdet model parameters\n";
  for (const auto& spec : kScalarFields) {
    out += spec.key;
    out += " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(p.*member)>;
          if constexpr (std::is_same_v<T, int>) out += std::to_string(p.*member);
          else out += format_double(p.*member);
        },
        spec.member);
    out += '\n';
  }
  out += "channel_weights = ";
  const auto w = p.channel_weights.to_array();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += format_double(w[i]);
  }
  out += "\nborder_policy = replicate\n";
  return out;
}

}  // namespace loom
