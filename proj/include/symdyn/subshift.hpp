#pragma once

#include "symdyn/automaton.hpp"
#include "symdyn/frequency_shift.hpp"
#include "symdyn/quadratic.hpp"
#include "symdyn/word.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

// Allowed zero-gap lengths of an S-gap shift.
class GapSet {
 public:
  static GapSet finite(std::vector<std::size_t> values);
  // values together with every n >= from
  static GapSet cofinite(std::vector<std::size_t> values, std::size_t from);
  // Predicate trusted on [0, bound]; queries beyond the bound are rejected.
  static GapSet predicate(std::function<bool(std::size_t)> pred, std::size_t bound,
                          std::string description);

  bool contains(std::size_t g) const;
  // Smallest r such that membership is constant on [r, inf), if known.
  std::optional<std::size_t> stable_from() const;
  bool contains_beyond_stable() const { return cofinite_from_.has_value(); }
  std::optional<std::size_t> bound() const { return bound_; }
  std::string describe() const;
  bool empty() const;

 private:
  std::vector<std::size_t> values_;
  std::optional<std::size_t> cofinite_from_;
  std::function<bool(std::size_t)> pred_;
  std::optional<std::size_t> bound_;
  std::string description_;
};

// Greedy beta-expansion of 1 and its quasi-greedy comparison sequence.
class BetaData {
 public:
  explicit BetaData(QuadraticNumber beta);

  const QuadraticNumber& beta() const { return beta_; }
  int alphabet_size() const { return alphabet_; }
  // i-th digit (1-based) of the quasi-greedy expansion of 1.
  int comparison_digit(std::size_t i) const;
  // Greedy expansion of 1 terminates: (digits, true); otherwise first n digits.
  std::pair<Word, bool> greedy_expansion_of_one(std::size_t n) const;
  // Preperiod and period of the comparison sequence when eventually periodic.
  std::optional<std::pair<std::size_t, std::size_t>> periodicity(std::size_t search) const;

 private:
  void extend_to(std::size_t n) const;

  QuadraticNumber beta_;
  int alphabet_ = 0;
  mutable std::shared_ptr<struct BetaCache> cache_;
};

enum class ShiftKind { Full, Sft, SGap, Beta, Frequency };

class Subshift {
 public:
  static Subshift full(int m);
  static Subshift sft(int m, std::vector<Word> forbidden);
  static Subshift sgap(GapSet gaps);
  static Subshift beta(const QuadraticNumber& beta);
  static Subshift frequency(FrequencyShiftSpec spec);
  // full:M | sft:M:w1,w2 | sgap:1,2,5+ | beta:golden | beta:1.8 |
  // beta:quad:p,q,D,r | xf:C
  static Subshift parse(std::string_view description);

  ShiftKind kind() const { return kind_; }
  int alphabet_size() const { return alphabet_; }
  const std::string& describe() const { return description_; }

  // Throws DomainError when u has symbols outside the alphabet.
  bool is_in_language(const Word& u) const;
  // Whether the periodic point p^inf belongs to the shift.
  bool periodic_point_admissible(const Word& period) const;
  // Follower automaton correct for all lengths <= horizon; empty when the
  // kind has none (frequency shifts).
  std::optional<LanguageAutomaton> automaton(std::size_t horizon) const;

  const std::vector<Word>& forbidden() const { return forbidden_; }
  const GapSet& gaps() const { return *gaps_; }
  const BetaData& beta_data() const { return *beta_; }
  const FrequencyShiftSpec& frequency_spec() const { return *freq_; }

 private:
  Subshift() = default;
  bool sft_member(const Word& u) const;
  bool sgap_member(const Word& u) const;
  bool beta_member(const Word& u) const;
  LanguageAutomaton sft_automaton() const;
  LanguageAutomaton sgap_automaton(std::size_t horizon) const;
  LanguageAutomaton beta_automaton(std::size_t horizon) const;

  ShiftKind kind_ = ShiftKind::Full;
  int alphabet_ = 2;
  std::string description_;
  std::vector<Word> forbidden_;
  std::size_t block_ = 0;  // SFT: (longest forbidden word) - 1
  std::shared_ptr<const std::vector<Word>> live_blocks_;
  std::shared_ptr<const GapSet> gaps_;
  std::shared_ptr<const BetaData> beta_;
  std::shared_ptr<const FrequencyShiftSpec> freq_;
};

struct EnumerationOptions {
  std::size_t cap = 10'000'000;
  unsigned workers = 1;
};

std::vector<Word> enumerate_language(const Subshift& shift, std::size_t n,
                                     const EnumerationOptions& opts = {});

struct LanguageCount {
  std::optional<std::uint64_t> exact;
  double log_count = 0.0;
  bool via_automaton = false;
};

LanguageCount count_language(const Subshift& shift, std::size_t n,
                             const EnumerationOptions& opts = {});

// First n greedy digits of x in base beta.
Word beta_expansion(const QuadraticNumber& x, const QuadraticNumber& beta, std::size_t n);

}  // namespace symdyn
