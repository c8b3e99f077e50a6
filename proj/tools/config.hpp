#pragma once

#include "symdyn/errors.hpp"
#include "symdyn/measures.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symdyn::cli {

// Bad or missing configuration field; maps to exit status 2.
class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : DomainError("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Merged key-value tree: config file first, flags on top.
class Config {
 public:
  Config() = default;
  explicit Config(nlohmann::json tree) : tree_(std::move(tree)) {}

  static Config load(const std::string& path);
  // "20" -> 20, "0.5" -> 0.5, "true" -> true, "0.2,0.1" -> [0.2, 0.1];
  // literal keys (words, descriptions) stay strings
  void set_flag(const std::string& key, const std::string& text, bool literal = false);

  bool has(const std::string& key) const;
  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) const;
  std::size_t positive(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const;
  std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const;
  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  double positive_real(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  std::vector<double> reals(const std::string& key,
                            std::optional<std::vector<double>> fallback = std::nullopt) const;
  // array of strings, or one string split on ';'
  std::vector<std::string> texts(const std::string& key,
                                 std::optional<std::vector<std::string>> fallback = std::nullopt) const;
  std::uint64_t seed() const;

  const nlohmann::json& tree() const { return tree_; }
  // FNV-1a over the canonical dump, ignoring output location and workers.
  std::string hash() const;

 private:
  const nlohmann::json* find(const std::string& key) const;
  nlohmann::json tree_ = nlohmann::json::object();
};

// bernoulli:p0,p1,... | markov:p00,p01/p10,p11 | path to a MarkovMeasure JSON
MarkovMeasure parse_measure(const std::string& spec);

struct Output {
  nlohmann::json result = nlohmann::json::object();
  // file name -> contents, written under the output directory
  std::map<std::string, std::string> files;
};

std::string fnv1a_hex(const std::string& data);
std::string read_file(const std::string& path);

}  // namespace symdyn::cli
