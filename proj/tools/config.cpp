#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symdyn::cli {

namespace {

std::optional<nlohmann::json> scalar(const std::string& s) {
  if (s == "true") return nlohmann::json(true);
  if (s == "false") return nlohmann::json(false);
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    if (s.find_first_of(".eE") == std::string::npos && s[0] != '-') {
      unsigned long long v = std::stoull(s, &used);
      if (used == s.size()) return nlohmann::json(v);
    }
    double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return nlohmann::json(v);
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Config Config::load(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  return Config(std::move(j));
}

void Config::set_flag(const std::string& key, const std::string& text, bool literal) {
  if (literal) {
    tree_[key] = text;
    return;
  }
  if (auto v = scalar(text)) {
    tree_[key] = *v;
    return;
  }
  if (text.find(',') != std::string::npos) {
    auto parts = split(text, ',');
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : parts) {
      auto v = scalar(p);
      if (!v || !v->is_number()) {
        tree_[key] = text;
        return;
      }
      arr.push_back(*v);
    }
    tree_[key] = arr;
    return;
  }
  tree_[key] = text;
}

const nlohmann::json* Config::find(const std::string& key) const {
  auto it = tree_.find(key);
  if (it == tree_.end() || it->is_null()) return nullptr;
  return &*it;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::text(const std::string& key, std::optional<std::string> fallback) const {
  const auto* v = find(key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required");
  }
  if (v->is_string()) return v->get<std::string>();
  if (v->is_number_unsigned()) return std::to_string(v->get<std::uint64_t>());
  throw ConfigError(key, "expected a string");
}

std::size_t Config::count(const std::string& key, std::optional<std::size_t> fallback) const {
  const auto* v = find(key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required");
  }
  if (v->is_number_unsigned()) return v->get<std::size_t>();
  if (v->is_number_integer() && v->get<long long>() >= 0) return v->get<std::size_t>();
  throw ConfigError(key, "expected a non-negative integer, got " + v->dump());
}

std::size_t Config::positive(const std::string& key, std::optional<std::size_t> fallback) const {
  std::size_t v = count(key, fallback);
  if (v == 0) throw ConfigError(key, "must be positive");
  return v;
}

double Config::real(const std::string& key, std::optional<double> fallback) const {
  const auto* v = find(key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required");
  }
  if (!v->is_number()) throw ConfigError(key, "expected a number, got " + v->dump());
  return v->get<double>();
}

double Config::positive_real(const std::string& key, std::optional<double> fallback) const {
  double v = real(key, fallback);
  if (!(v > 0)) throw ConfigError(key, "must be positive");
  return v;
}

std::vector<double> Config::reals(const std::string& key,
                                  std::optional<std::vector<double>> fallback) const {
  const auto* v = find(key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required");
  }
  if (v->is_number()) return {v->get<double>()};
  if (!v->is_array() || v->empty()) throw ConfigError(key, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) throw ConfigError(key, "expected numbers, got " + e.dump());
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> Config::texts(const std::string& key,
                                       std::optional<std::vector<std::string>> fallback) const {
  const auto* v = find(key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required");
  }
  if (v->is_string()) return split(v->get<std::string>(), ';');
  if (!v->is_array() || v->empty()) throw ConfigError(key, "expected a list of strings");
  std::vector<std::string> out;
  for (const auto& e : *v) {
    if (!e.is_string()) throw ConfigError(key, "expected strings, got " + e.dump());
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::uint64_t Config::seed() const { return count("seed", 1); }

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Config::hash() const {
  nlohmann::json t = tree_;
  t.erase("out");
  t.erase("workers");
  t.erase("config");
  return fnv1a_hex(t.dump());
}

MarkovMeasure parse_measure(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? "" : spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto numbers = [&](const std::string& s) {
    std::vector<double> out;
    for (const auto& p : split(s, ',')) {
      auto v = scalar(p);
      if (!v || !v->is_number()) throw DomainError("bad number '" + p + "' in measure '" + spec + "'");
      out.push_back(v->get<double>());
    }
    return out;
  };
  if (head == "bernoulli") return MarkovMeasure::bernoulli(numbers(body));
  if (head == "markov") {
    std::vector<std::vector<double>> rows;
    for (const auto& r : split(body, '/')) rows.push_back(numbers(r));
    return MarkovMeasure(rows);
  }
  try {
    return MarkovMeasure::from_json(nlohmann::json::parse(read_file(spec)));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("measure file '" + spec + "' is not valid JSON: " + e.what());
  }
}

}  // namespace symdyn::cli
