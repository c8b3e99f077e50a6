#pragma once

#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace symdyn {

// Upper bound on the number of class occurrences among n consecutive
// window positions.
struct FrequencyFn {
  enum class Kind { Const, CPlusLog, Linear };
  Kind kind = Kind::Const;
  double c = 0.0;

  double operator()(std::size_t n) const;
  std::string describe() const;
};

struct FrequencyClass {
  std::vector<Word> words;
  FrequencyFn f;
};

struct FrequencyShiftSpec {
  int alphabet_size = 3;
  std::size_t window = 2;
  std::vector<FrequencyClass> classes;

  // Classes must be disjoint, cover the alphabet^window and use
  // non-decreasing frequency functions.
  void validate() const;
  // Index of the class containing the window starting at `pos`, or -1.
  int class_of(const Word& u, std::size_t pos) const;
  std::string describe() const;

  // F1 = {12, 21} with f1 = 0, F2 = {00, 11, 22} with f2(n) = c + ln n,
  // the remaining pairs unconstrained.
  static FrequencyShiftSpec shipped(double c);

  // {M, alphabet, classes: [{words, f: {kind: const|c_plus_log|linear, c}}]}
  nlohmann::json to_json() const;
  static FrequencyShiftSpec from_json(const nlohmann::json& j);
};

// True iff every run of n consecutive window positions inside u contains at
// most f_i(n) windows of class i, for every class and every n.
bool freq_membership(const Word& u, const FrequencyShiftSpec& spec);

}  // namespace symdyn
