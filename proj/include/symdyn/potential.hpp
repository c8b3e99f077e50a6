#pragma once

#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

class Subshift;

// Locally constant function f(x) = table[x_1 ... x_k].
class Potential {
 public:
  Potential() = default;
  Potential(std::size_t depth, int alphabet_size, const std::map<Word, double>& table,
            std::string name = "table");

  static Potential constant(double c, int alphabet_size);
  // 1 on the cylinder [w], 0 elsewhere; depth |w|.
  static Potential indicator(const Word& w, int alphabet_size);
  // {depth, entries: [{word, value}]}
  static Potential from_json(const nlohmann::json& j, int alphabet_size);
  // const:<value|log2|logK> | ind:<word> | file:<path>
  static Potential parse(std::string_view spec, int alphabet_size);

  std::size_t depth() const { return depth_; }
  int alphabet_size() const { return alphabet_; }
  const std::string& name() const { return name_; }
  bool defined(const Word& window) const;
  double operator()(const Word& window) const;
  // f(sigma^i x) given the symbols of x.
  double at(const Word& symbols, std::size_t i) const;
  double sup_norm() const;
  double min_value() const;
  double max_value() const;
  Potential scaled(double s) const;
  // Values indexed by the base-m code of the window; NaN where undefined.
  const std::vector<double>& table() const { return table_; }
  // Defined on every word of L_k of the shift.
  bool covers(const Subshift& shift) const;
  nlohmann::json to_json() const;

 private:
  std::size_t index(const Word& window, std::size_t offset) const;

  std::size_t depth_ = 1;
  int alphabet_ = 2;
  std::vector<double> table_;  // NaN where undefined
  std::string name_;
};

// S_n f(x) = sum_{i<n} f(sigma^i x); needs n + k - 1 symbols.
double birkhoff_sum(const Potential& f, const PointPrefix& x, std::size_t n);
// Birkhoff sum over the windows lying inside w, starting at `start`.
double birkhoff_sum_word(const Potential& f, const Word& w, std::size_t start, std::size_t n);

}  // namespace symdyn
