#include "corekg/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace corekg {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_i64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::int64_t r = 0;
  try {
    r = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
  return r;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t r = 0;
  try {
    r = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
  return r;
}

double parse_f64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double r = 0;
  try {
    r = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::runtime_error("config: bad number for " + key + ": '" + v + "'");
  return r;
}

std::string fmt_f64(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void TrainConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::runtime_error("config: " + msg); };
  if (k <= 0) fail("k must be positive");
  if (l <= 0) fail("l must be positive");
  if (entity_batch <= 0) fail("Ebz must be positive");
  if (type_batch <= 0) fail("Tbz must be positive");
  if (neg_size <= 0) fail("Nsz must be positive");
  if (gamma1 <= 0 || gamma2 <= 0 || gamma3 <= 0) fail("margins must be positive");
  if (alpha1 < 0 || alpha2 < 0 || alpha3 < 0) fail("temperatures must be nonnegative");
  if (lr < 0) fail("eta1 must be nonnegative");
  if (lr_decay < 0) fail("lr_decay must be nonnegative");
  if (total_steps < 0) fail("total_steps must be nonnegative");
  if (alternation_period < 1) fail("alternation_period must be at least 1");
  if (warmup_steps < 0) fail("warmup_steps must be nonnegative");
  if (checkpoint_interval < 0) fail("checkpoint_interval must be nonnegative");
}

TrainConfig parse_config(const std::string& text) {
  TrainConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error("config: line " + std::to_string(lineno) + ": expected key = value");
    if (!seen.insert(key).second)
      throw std::runtime_error("config: duplicate key '" + key + "'");

    if (key == "model") {
      if (val == "complex")
        cfg.model_kind = ModelKind::kComplEx;
      else if (val == "rotate")
        cfg.model_kind = ModelKind::kRotatE;
      else
        throw std::runtime_error("config: model must be 'complex' or 'rotate', got '" + val + "'");
    } else if (key == "k") {
      cfg.k = parse_i64(key, val);
    } else if (key == "l") {
      cfg.l = parse_i64(key, val);
    } else if (key == "Ebz") {
      cfg.entity_batch = parse_i64(key, val);
    } else if (key == "Tbz") {
      cfg.type_batch = parse_i64(key, val);
    } else if (key == "Nsz") {
      cfg.neg_size = parse_i64(key, val);
    } else if (key == "alpha1") {
      cfg.alpha1 = parse_f64(key, val);
    } else if (key == "alpha2") {
      cfg.alpha2 = parse_f64(key, val);
    } else if (key == "alpha3") {
      cfg.alpha3 = parse_f64(key, val);
    } else if (key == "gamma1") {
      cfg.gamma1 = parse_f64(key, val);
    } else if (key == "gamma2") {
      cfg.gamma2 = parse_f64(key, val);
    } else if (key == "gamma3") {
      cfg.gamma3 = parse_f64(key, val);
    } else if (key == "eta1") {
      cfg.lr = parse_f64(key, val);
    } else if (key == "lr_decay") {
      cfg.lr_decay = parse_f64(key, val);
    } else if (key == "total_steps") {
      cfg.total_steps = parse_i64(key, val);
    } else if (key == "alternation_period") {
      cfg.alternation_period = parse_i64(key, val);
    } else if (key == "warmup_steps") {
      cfg.warmup_steps = parse_i64(key, val);
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, val);
    } else if (key == "checkpoint_interval") {
      cfg.checkpoint_interval = parse_i64(key, val);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  // The per-loss margins and temperatures default to the headline values.
  if (!seen.count("alpha2")) cfg.alpha2 = cfg.alpha1;
  if (!seen.count("alpha3")) cfg.alpha3 = cfg.alpha1;
  if (!seen.count("gamma2")) cfg.gamma2 = cfg.gamma1;
  if (!seen.count("gamma3")) cfg.gamma3 = cfg.gamma1;
  cfg.validate();
  return cfg;
}

TrainConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const TrainConfig& cfg) {
  std::ostringstream out;
  out << "model = " << model_kind_name(cfg.model_kind) << "\n";
  out << "k = " << cfg.k << "\n";
  out << "l = " << cfg.l << "\n";
  out << "Ebz = " << cfg.entity_batch << "\n";
  out << "Tbz = " << cfg.type_batch << "\n";
  out << "Nsz = " << cfg.neg_size << "\n";
  out << "alpha1 = " << fmt_f64(cfg.alpha1) << "\n";
  out << "alpha2 = " << fmt_f64(cfg.alpha2) << "\n";
  out << "alpha3 = " << fmt_f64(cfg.alpha3) << "\n";
  out << "gamma1 = " << fmt_f64(cfg.gamma1) << "\n";
  out << "gamma2 = " << fmt_f64(cfg.gamma2) << "\n";
  out << "gamma3 = " << fmt_f64(cfg.gamma3) << "\n";
  out << "eta1 = " << fmt_f64(cfg.lr) << "\n";
  out << "lr_decay = " << fmt_f64(cfg.lr_decay) << "\n";
  out << "total_steps = " << cfg.total_steps << "\n";
  out << "alternation_period = " << cfg.alternation_period << "\n";
  out << "warmup_steps = " << cfg.warmup_steps << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "checkpoint_interval = " << cfg.checkpoint_interval << "\n";
  return out.str();
}

}  // namespace corekg
