#include "symdyn/potential.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/subshift.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace symdyn {

namespace {

double parse_constant(const std::string& s) {
  if (s.rfind("log", 0) == 0) {
    std::string arg = s.substr(3);
    double v = std::stod(arg);
    if (v <= 0) throw DomainError("log of a non-positive number");
    return std::log(v);
  }
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw DomainError("invalid constant '" + s + "'");
  return v;
}

}  // namespace

Potential::Potential(std::size_t depth, int alphabet_size, const std::map<Word, double>& table,
                     std::string name)
    : depth_(depth), alphabet_(alphabet_size), name_(std::move(name)) {
  if (depth_ < 1) throw DomainError("potential depth must be at least 1");
  if (alphabet_ < 1) throw DomainError("alphabet size must be positive");
  double size = std::pow(static_cast<double>(alphabet_), static_cast<double>(depth_));
  if (size > 1 << 24) throw DomainError("potential table too large");
  table_.assign(static_cast<std::size_t>(size), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [w, v] : table) {
    if (w.size() != depth_) throw DomainError("potential entry has the wrong length");
    check_alphabet(w, alphabet_);
    if (!std::isfinite(v)) throw DomainError("potential values must be finite");
    table_[index(w, 0)] = v;
  }
}

std::size_t Potential::index(const Word& window, std::size_t offset) const {
  std::size_t code = 0;
  for (std::size_t i = 0; i < depth_; ++i) {
    code = code * static_cast<std::size_t>(alphabet_) + window[offset + i];
  }
  return code;
}

Potential Potential::constant(double c, int alphabet_size) {
  if (!std::isfinite(c)) throw DomainError("potential values must be finite");
  Potential p(1, alphabet_size, {}, "const");
  std::fill(p.table_.begin(), p.table_.end(), c);
  return p;
}

Potential Potential::indicator(const Word& w, int alphabet_size) {
  if (w.empty()) throw DomainError("indicator word must be non-empty");
  check_alphabet(w, alphabet_size);
  std::map<Word, double> t;
  std::size_t total = 1;
  for (std::size_t i = 0; i < w.size(); ++i) total *= static_cast<std::size_t>(alphabet_size);
  for (std::size_t code = 0; code < total; ++code) {
    Word u(w.size());
    std::size_t c = code;
    for (std::size_t i = w.size(); i-- > 0;) {
      u[i] = static_cast<Symbol>(c % static_cast<std::size_t>(alphabet_size));
      c /= static_cast<std::size_t>(alphabet_size);
    }
    t[u] = u == w ? 1.0 : 0.0;
  }
  return Potential(w.size(), alphabet_size, t, "ind:" + format_word(w, alphabet_size));
}

Potential Potential::from_json(const nlohmann::json& j, int alphabet_size) {
  if (!j.contains("depth") || !j.contains("entries")) {
    throw DomainError("potential JSON needs 'depth' and 'entries'");
  }
  auto depth = j.at("depth").get<std::size_t>();
  std::map<Word, double> t;
  for (const auto& e : j.at("entries")) {
    t[parse_word(e.at("word").get<std::string>(), alphabet_size)] = e.at("value").get<double>();
  }
  return Potential(depth, alphabet_size, t, "json");
}

Potential Potential::parse(std::string_view spec, int alphabet_size) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw DomainError("potential spec needs a kind prefix");
  std::string kind(spec.substr(0, colon));
  std::string arg(spec.substr(colon + 1));
  if (kind == "const") {
    Potential p = constant(parse_constant(arg), alphabet_size);
    p.name_ = std::string(spec);
    return p;
  }
  if (kind == "ind") return indicator(parse_word(arg, alphabet_size), alphabet_size);
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open potential file '" + arg + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("potential file '" + arg + "': " + e.what());
    }
    Potential p = from_json(j, alphabet_size);
    p.name_ = std::string(spec);
    return p;
  }
  throw DomainError("unknown potential kind '" + kind + "'");
}

bool Potential::defined(const Word& window) const {
  if (window.size() != depth_) return false;
  for (auto s : window) {
    if (s >= alphabet_) return false;
  }
  return !std::isnan(table_[index(window, 0)]);
}

double Potential::operator()(const Word& window) const {
  if (window.size() != depth_) throw DomainError("potential window has the wrong length");
  check_alphabet(window, alphabet_);
  double v = table_[index(window, 0)];
  if (std::isnan(v)) {
    throw DomainError("potential undefined on " + format_word(window, alphabet_));
  }
  return v;
}

double Potential::at(const Word& symbols, std::size_t i) const {
  if (i + depth_ > symbols.size()) throw DomainError("not enough symbols for the potential");
  double v = table_[index(symbols, i)];
  if (std::isnan(v)) {
    throw DomainError("potential undefined on " + format_word(subword(symbols, i, depth_), alphabet_));
  }
  return v;
}

double Potential::sup_norm() const {
  double m = 0;
  for (double v : table_) {
    if (!std::isnan(v)) m = std::max(m, std::abs(v));
  }
  return m;
}

double Potential::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (!std::isnan(v)) m = std::min(m, v);
  }
  return m;
}

double Potential::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (!std::isnan(v)) m = std::max(m, v);
  }
  return m;
}

Potential Potential::scaled(double s) const {
  Potential p = *this;
  for (double& v : p.table_) v *= s;
  return p;
}

bool Potential::covers(const Subshift& shift) const {
  if (shift.alphabet_size() != alphabet_) return false;
  for (const auto& w : enumerate_language(shift, depth_)) {
    if (std::isnan(table_[index(w, 0)])) return false;
  }
  return true;
}

nlohmann::json Potential::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  Word w(depth_, 0);
  for (std::size_t code = 0; code < table_.size(); ++code) {
    std::size_t c = code;
    for (std::size_t i = depth_; i-- > 0;) {
      w[i] = static_cast<Symbol>(c % static_cast<std::size_t>(alphabet_));
      c /= static_cast<std::size_t>(alphabet_);
    }
    if (!std::isnan(table_[code])) {
      entries.push_back({{"word", format_word(w, alphabet_)}, {"value", table_[code]}});
    }
  }
  return {{"depth", depth_}, {"entries", entries}};
}

double birkhoff_sum(const Potential& f, const PointPrefix& x, std::size_t n) {
  if (n == 0) return 0.0;
  Word symbols = x.take(n + f.depth() - 1);
  return birkhoff_sum_word(f, symbols, 0, n);
}

double birkhoff_sum_word(const Potential& f, const Word& w, std::size_t start, std::size_t n) {
  if (start + n + f.depth() - 1 > w.size()) throw DomainError("word too short for the Birkhoff sum");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f.at(w, start + i);
  return s;
}

}  // namespace symdyn
