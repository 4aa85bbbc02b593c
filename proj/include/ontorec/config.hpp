#pragma once
// Service configuration: JSON file plus ONTOREC_* environment overrides.

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ontorec/error.hpp"
#include "ontorec/index.hpp"
#include "ontorec/profile.hpp"

namespace ontorec {

struct Config {
  double gamma = 0.5;
  bool expand_hierarchy = true;
  double alpha = 0.3;
  std::map<std::string, double> signals{{"opened", 0.2}, {"readLong", 0.5}, {"skipped", -0.1}};
  std::size_t k = 20;
  double theta = 0.05;
  double tau = 0.3;
  std::string bind = "127.0.0.1:8080";
  std::string temporal_concept = kTemporalConcept;

  void validate() const {
    auto in = [](double x, double lo, bool lo_open, double hi) { return (lo_open ? x > lo : x >= lo) && x <= hi; };
    if (!in(gamma, 0.0, true, 1.0)) throw Error(Errc::ConfigError, "gamma must lie in (0, 1]");
    if (!in(alpha, 0.0, true, 1.0)) throw Error(Errc::ConfigError, "alpha must lie in (0, 1]");
    if (!in(theta, 0.0, false, 1.0)) throw Error(Errc::ConfigError, "theta must lie in [0, 1]");
    if (!in(tau, 0.0, false, 1.0)) throw Error(Errc::ConfigError, "tau must lie in [0, 1]");
    for (const auto& [name, s] : signals)
      if (!in(s, -1.0, false, 1.0)) throw Error(Errc::ConfigError, "signal " + name + " must lie in [-1, 1]");
    if (bind.find(':') == std::string::npos) throw Error(Errc::ConfigError, "bind must be host:port");
  }

  ExpansionConfig expansion() const { return {gamma, expand_hierarchy, temporal_concept}; }
  FeedbackConfig feedback() const { return {alpha, signals}; }

  std::string host() const { return bind.substr(0, bind.rfind(':')); }
  int port() const {
    const std::string p = bind.substr(bind.rfind(':') + 1);
    int out = 0;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), out);
    if (ec != std::errc{} || ptr != p.data() + p.size() || out < 0 || out > 65535)
      throw Error(Errc::ConfigError, "bad port in bind '" + bind + "'");
    return out;
  }
};

inline json to_json(const Config& c) {
  return {{"gamma", c.gamma}, {"expandHierarchy", c.expand_hierarchy}, {"alpha", c.alpha}, {"signals", c.signals},
          {"k", c.k},         {"theta", c.theta},                      {"tau", c.tau},     {"bind", c.bind},
          {"temporalConcept", c.temporal_concept}};
}

inline Config config_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
  Config c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "gamma")
        c.gamma = value.get<double>();
      else if (key == "expandHierarchy")
        c.expand_hierarchy = value.get<bool>();
      else if (key == "alpha")
        c.alpha = value.get<double>();
      else if (key == "signals")
        c.signals = value.get<std::map<std::string, double>>();
      else if (key == "k") {
        if (!value.is_number_unsigned()) throw Error(Errc::ConfigError, "k must be a nonnegative integer");
        c.k = value.get<std::size_t>();
      }
      else if (key == "theta")
        c.theta = value.get<double>();
      else if (key == "tau")
        c.tau = value.get<double>();
      else if (key == "bind")
        c.bind = value.get<std::string>();
      else if (key == "temporalConcept")
        c.temporal_concept = value.get<std::string>();
      else
        throw Error(Errc::ConfigError, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, e.what());
  }
  c.validate();
  return c;
}

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  return v ? std::optional<std::string>(v) : std::nullopt;
}

// ONTOREC_GAMMA, _ALPHA, _K, _THETA, _TAU, _BIND, _EXPAND (true/false) and
// ONTOREC_SIGNAL_<name> (e.g. ONTOREC_SIGNAL_readLong=0.6).
inline Config apply_env(Config c, const EnvLookup& env = process_env) {
  auto number = [](const std::string& name, const std::string& text) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw Error(Errc::ConfigError, name + " is not a number: '" + text + "'");
    return out;
  };
  if (auto v = env("ONTOREC_GAMMA")) c.gamma = number("ONTOREC_GAMMA", *v);
  if (auto v = env("ONTOREC_ALPHA")) c.alpha = number("ONTOREC_ALPHA", *v);
  if (auto v = env("ONTOREC_THETA")) c.theta = number("ONTOREC_THETA", *v);
  if (auto v = env("ONTOREC_TAU")) c.tau = number("ONTOREC_TAU", *v);
  if (auto v = env("ONTOREC_K")) {
    const double k = number("ONTOREC_K", *v);
    if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k)))
      throw Error(Errc::ConfigError, "ONTOREC_K must be a nonnegative integer");
    c.k = static_cast<std::size_t>(k);
  }
  if (auto v = env("ONTOREC_BIND")) c.bind = *v;
  if (auto v = env("ONTOREC_EXPAND")) {
    if (*v != "true" && *v != "false") throw Error(Errc::ConfigError, "ONTOREC_EXPAND must be true or false");
    c.expand_hierarchy = *v == "true";
  }
  std::map<std::string, double> signals = c.signals;
  for (auto& [name, s] : signals)
    if (auto v = env("ONTOREC_SIGNAL_" + name)) s = number("ONTOREC_SIGNAL_" + name, *v);
  c.signals = std::move(signals);
  c.validate();
  return c;
}

}  // namespace ontorec
