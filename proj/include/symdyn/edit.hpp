#pragma once

#include "symdyn/measures.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

// Levenshtein distance (unit-cost substitutions, insertions, deletions).
std::size_t edit_distance(const Word& u, const Word& v);
// Exact distance when it is <= bound, otherwise some value > bound.
std::size_t edit_distance_bounded(const Word& u, const Word& v, std::size_t bound);

// Non-decreasing n -> g(n) into the naturals.
class MistakeFn {
 public:
  static MistakeFn constant(std::size_t c);
  // ceil(c + ln n); the smallest integer bound dominating c + ln n.
  static MistakeFn c_plus_log(double c);
  static MistakeFn zero() { return constant(0); }
  // Explicit values g(1..); the last value extends to larger n.
  static MistakeFn table(std::vector<std::size_t> values);
  // const:3 | log:2 | table:1,2,2,3
  static MistakeFn parse(const std::string& spec);

  std::size_t operator()(std::size_t n) const;
  bool non_decreasing_up_to(std::size_t n_max) const;
  const std::string& describe() const { return name_; }

 private:
  std::function<std::size_t(std::size_t)> fn_;
  std::string name_;
};

// A decidable word family with a specification gap.
class GoodFamily {
 public:
  using Predicate = std::function<bool(const Word&)>;
  using Enumerator = std::function<std::vector<Word>(std::size_t)>;

  GoodFamily(std::string name, int alphabet_size, Predicate contains, Enumerator members,
             std::size_t spec_gap, bool free_concat);

  // The language of the shift itself.
  static GoodFamily language(const Subshift& shift, std::size_t spec_gap, bool free_concat);
  // {0 a_1 0 a_2 ... 0 a_n : a_i in {1, 2}, n >= 1} over {0, 1, 2}.
  static GoodFamily alternating();
  // Members found by filtering all words of each length.
  static GoodFamily from_predicate(std::string name, int alphabet_size, Predicate contains,
                                   std::size_t spec_gap, bool free_concat);

  const std::string& name() const { return name_; }
  int alphabet_size() const { return alphabet_; }
  std::size_t spec_gap() const { return tau_; }
  bool free_concat() const { return free_; }
  bool contains(const Word& w) const;
  // Sorted members of length n (cached).
  const std::vector<Word>& members(std::size_t n) const;

 private:
  std::string name_;
  int alphabet_;
  Predicate contains_;
  Enumerator enumerate_;
  std::size_t tau_;
  bool free_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct Nearest {
  Word word;
  std::size_t distance = 0;
};

// Closest member within `radius`, ties to the shorter then the
// lexicographically smaller word.
std::optional<Nearest> nearest_in_family(const Word& u, const GoodFamily& g, std::size_t radius);

struct ApproachRow {
  std::size_t n = 0;
  std::size_t words = 0;
  std::size_t max_min_edit = 0;
  std::size_t g = 0;
  bool flag = false;
  Word worst;  // first word attaining the maximum
};

struct ApproachReport {
  std::vector<ApproachRow> rows;
  double ratio_at_max = 0.0;  // g(n_max) / n_max
  bool ratio_ok = true;
  bool any_flag() const;
  std::string to_csv() const;
};

ApproachReport check_edit_approachable(const Subshift& shift, const GoodFamily& g,
                                       const MistakeFn& mistake, std::size_t n_max,
                                       double ratio_threshold = 1.0,
                                       const EnumerationOptions& opts = {});

// Shortest connector w (lexicographically least) with |w| <= tau and uwv in G.
Word glue(const Word& u, const Word& v, const GoodFamily& g);

// Canonical nearest member within g(|u|).
Word phi_map(const Word& u, const GoodFamily& g, const MistakeFn& mistake);
std::vector<Word> phi_images(const std::vector<Word>& domain, const GoodFamily& g,
                             const MistakeFn& mistake, unsigned workers = 1);

// Number of u in the domain with image v, given the precomputed images.
std::size_t fiber_count(const Word& v, const std::vector<Word>& domain,
                        const std::vector<Word>& images);

struct EditWassersteinPair {
  std::size_t edit = 0;
  double w = 0.0;
  double tail = 0.0;
};

// Edit distance next to the bl distance between the depth-k empirical
// measures of u^inf and v^inf over n = |u| steps.
EditWassersteinPair edit_to_wasserstein_check(const Word& u, const Word& v, std::size_t depth,
                                              int alphabet_size);

}  // namespace symdyn
