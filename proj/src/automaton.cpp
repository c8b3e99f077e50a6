#include "symdyn/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symdyn {

int LanguageAutomaton::add_state() {
  next.emplace_back(static_cast<std::size_t>(alphabet_size), -1);
  return static_cast<int>(next.size()) - 1;
}

int LanguageAutomaton::run(const std::vector<std::uint8_t>& u) const {
  int s = start;
  for (auto a : u) {
    if (a >= alphabet_size) return -1;
    s = next[static_cast<std::size_t>(s)][a];
    if (s < 0) return -1;
  }
  return s;
}

std::vector<PathCount> count_paths_all(const LanguageAutomaton& a, std::size_t n) {
  const std::size_t states = a.state_count();
  std::vector<std::uint64_t> exact(states, 0);
  std::vector<bool> overflow(states, false);
  std::vector<double> scaled(states, 0.0);
  double log_scale = 0.0;
  exact[static_cast<std::size_t>(a.start)] = 1;
  scaled[static_cast<std::size_t>(a.start)] = 1.0;

  std::vector<PathCount> out;
  auto record = [&] {
    PathCount pc;
    std::uint64_t total = 0;
    bool ok = true;
    double sum = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
      sum += scaled[s];
      if (overflow[s] || __builtin_add_overflow(total, exact[s], &total)) ok = false;
    }
    if (ok) pc.exact = total;
    pc.log_count = sum > 0 ? std::log(sum) + log_scale : -std::numeric_limits<double>::infinity();
    out.push_back(pc);
  };
  record();
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::uint64_t> ne(states, 0);
    std::vector<bool> no(states, false);
    std::vector<double> ns(states, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      if (scaled[s] == 0.0 && exact[s] == 0 && !overflow[s]) continue;
      for (int sym = 0; sym < a.alphabet_size; ++sym) {
        int t = a.next[s][static_cast<std::size_t>(sym)];
        if (t < 0) continue;
        auto ti = static_cast<std::size_t>(t);
        ns[ti] += scaled[s];
        if (overflow[s] || __builtin_add_overflow(ne[ti], exact[s], &ne[ti])) no[ti] = true;
      }
    }
    double mx = *std::max_element(ns.begin(), ns.end());
    if (mx > 0) {
      for (auto& v : ns) v /= mx;
      log_scale += std::log(mx);
    }
    exact.swap(ne);
    overflow.swap(no);
    scaled.swap(ns);
    record();
  }
  return out;
}

PathCount count_paths(const LanguageAutomaton& a, std::size_t n) {
  return count_paths_all(a, n).back();
}

}  // namespace symdyn
