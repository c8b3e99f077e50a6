#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace symdyn {

// Deterministic follower automaton: every state accepts, a missing
// transition (-1) rejects the word.
struct LanguageAutomaton {
  int alphabet_size = 0;
  int start = 0;
  std::vector<std::vector<int>> next;

  int add_state();
  std::size_t state_count() const { return next.size(); }
  // Follows u from the start state; -1 if rejected.
  int run(const std::vector<std::uint8_t>& u) const;
};

struct PathCount {
  std::optional<std::uint64_t> exact;  // empty on overflow
  double log_count = 0.0;              // -inf when zero
};

// Number of accepted words of length n.
PathCount count_paths(const LanguageAutomaton& a, std::size_t n);
// Counts for every length 0..n.
std::vector<PathCount> count_paths_all(const LanguageAutomaton& a, std::size_t n);

}  // namespace symdyn
