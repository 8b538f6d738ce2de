#include "ska/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ska {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double SystemConfig::c(int k) const {
  return p_u * beta.at(static_cast<std::size_t>(k)) * N_u;
}

double SystemConfig::attack_strength(int k) const {
  return effective_attack_strength(*this, k);
}

double SystemConfig::sigma2_n(int k) const {
  return (K - 1 + 1.0 / (p_d * beta.at(static_cast<std::size_t>(k)))) / M;
}

double SystemConfig::sigma2_ne() const { return static_cast<double>(K - 1) / M; }

double SystemConfig::sigma2_z(int k) const {
  return 1.0 / (p_d * beta.at(static_cast<std::size_t>(k)) * M);
}

double effective_attack_strength(const SystemConfig& config, int k) {
  const auto i = static_cast<std::size_t>(k);
  const double num = config.p_e.at(i) * config.beta_e.at(i);
  if (num == 0.0) return 0.0;
  return std::sqrt(num / (config.p_u * config.beta.at(i)));
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (M < 1) fail("M must be >= 1");
  if (K < 2) fail("K must be >= 2 (eavesdropper interference requires it)");
  if (N_u < K) fail("N_u must be >= K so orthonormal pilots exist");
  if (N_d < 1) fail("N_d must be >= 1");
  if (!(p_u > 0.0) || !std::isfinite(p_u)) fail("p_u must be positive and finite");
  if (!(p_d > 0.0) || !std::isfinite(p_d)) fail("p_d must be positive and finite");
  if (beta.size() != static_cast<std::size_t>(K)) fail("beta must have K entries");
  if (beta_e.size() != static_cast<std::size_t>(K)) fail("beta_e must have K entries");
  if (p_e.size() != static_cast<std::size_t>(K)) fail("p_e must have K entries");
  for (double b : beta)
    if (!(b > 0.0) || !std::isfinite(b)) fail("beta entries must be positive and finite");
  for (double b : beta_e)
    if (!(b > 0.0) || !std::isfinite(b)) fail("beta_e entries must be positive and finite");
  for (double p : p_e)
    if (!(p >= 0.0) || !std::isfinite(p)) fail("p_e entries must be non-negative and finite");
  if (!(delta >= 0.0)) fail("delta must be >= 0");
  if (!(a_slack >= 0.0) || !(b_slack >= 0.0)) fail("slacks must be >= 0");
  if (users_tracked < 0 || users_tracked > K) fail("users_tracked must be in [0, K]");
  for (int k = 0; k < K; ++k) {
    if (attack_strength(k) > 1.0) {
      std::cerr << "warning: attack strength w_" << k << " = " << attack_strength(k)
                << " exceeds 1; such an attack is detectable but remains simulable\n";
    }
  }
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  if (value == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config: trailing characters in " + key + ": '" + value + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value, int k) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.size() == 1) out.assign(static_cast<std::size_t>(k), out[0]);
  if (out.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("config: " + key + " must have 1 or K entries");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key " + key);
  }

  SystemConfig cfg;
  auto take = [&kv](const std::string& key) -> std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    return &it->second;
  };

  if (auto* v = take("M")) cfg.M = static_cast<int>(parse_double("M", *v));
  if (auto* v = take("K")) cfg.K = static_cast<int>(parse_double("K", *v));
  if (auto* v = take("N_u")) cfg.N_u = static_cast<int>(parse_double("N_u", *v));
  if (auto* v = take("N_d")) cfg.N_d = static_cast<int>(parse_double("N_d", *v));
  if (auto* v = take("p_u_db")) cfg.p_u = db_to_linear(parse_double("p_u_db", *v));
  if (auto* v = take("p_d_db")) cfg.p_d = db_to_linear(parse_double("p_d_db", *v));
  if (auto* v = take("delta")) cfg.delta = parse_double("delta", *v);
  if (auto* v = take("a_slack")) cfg.a_slack = parse_double("a_slack", *v);
  if (auto* v = take("b_slack")) cfg.b_slack = parse_double("b_slack", *v);
  if (auto* v = take("seed")) cfg.seed = static_cast<std::uint64_t>(parse_double("seed", *v));
  if (auto* v = take("users_tracked"))
    cfg.users_tracked = static_cast<int>(parse_double("users_tracked", *v));

  cfg.beta.assign(static_cast<std::size_t>(cfg.K), 1.0);
  cfg.beta_e.assign(static_cast<std::size_t>(cfg.K), 1.0);
  if (auto* v = take("beta")) cfg.beta = parse_list("beta", *v, cfg.K);
  if (auto* v = take("beta_e")) cfg.beta_e = parse_list("beta_e", *v, cfg.K);

  auto* pe_db = take("p_e_db");
  auto* w2_db = take("w2_db");
  if (pe_db && w2_db)
    throw std::invalid_argument("config: give either p_e_db or w2_db, not both");
  cfg.p_e.assign(static_cast<std::size_t>(cfg.K), 0.0);
  if (pe_db) {
    auto dbs = parse_list("p_e_db", *pe_db, cfg.K);
    for (std::size_t i = 0; i < dbs.size(); ++i)
      cfg.p_e[i] = std::isinf(dbs[i]) ? 0.0 : db_to_linear(dbs[i]);
  } else if (w2_db) {
    // w^2 = p_e beta_e / (p_u beta)  =>  p_e = w^2 p_u beta / beta_e
    auto dbs = parse_list("w2_db", *w2_db, cfg.K);
    for (std::size_t i = 0; i < dbs.size(); ++i) {
      const double w2 = std::isinf(dbs[i]) ? 0.0 : db_to_linear(dbs[i]);
      cfg.p_e[i] = w2 * cfg.p_u * cfg.beta[i] / cfg.beta_e[i];
    }
  }

  static const char* known[] = {"M",     "K",       "N_u",     "N_d",   "p_u_db",
                                "p_d_db", "beta",   "beta_e",  "p_e_db", "w2_db",
                                "delta", "a_slack", "b_slack", "seed",  "users_tracked"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("config: unknown key " + key);
  }

  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ska
