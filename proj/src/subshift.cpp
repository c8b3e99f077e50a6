#include "symdyn/subshift.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace symdyn {

// ---------------------------------------------------------------- GapSet

GapSet GapSet::finite(std::vector<std::size_t> values) {
  GapSet g;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  g.values_ = std::move(values);
  return g;
}

GapSet GapSet::cofinite(std::vector<std::size_t> values, std::size_t from) {
  GapSet g = finite(std::move(values));
  g.values_.erase(std::remove_if(g.values_.begin(), g.values_.end(),
                                 [from](std::size_t v) { return v >= from; }),
                  g.values_.end());
  g.cofinite_from_ = from;
  return g;
}

GapSet GapSet::predicate(std::function<bool(std::size_t)> pred, std::size_t bound,
                         std::string description) {
  if (!pred) throw DomainError("empty gap predicate");
  GapSet g;
  g.pred_ = std::move(pred);
  g.bound_ = bound;
  g.description_ = std::move(description);
  return g;
}

bool GapSet::contains(std::size_t g) const {
  if (pred_) {
    if (g > *bound_) {
      throw DomainError("gap " + std::to_string(g) + " exceeds the predicate bound " +
                        std::to_string(*bound_));
    }
    return pred_(g);
  }
  if (cofinite_from_ && g >= *cofinite_from_) return true;
  return std::binary_search(values_.begin(), values_.end(), g);
}

std::optional<std::size_t> GapSet::stable_from() const {
  if (pred_) return std::nullopt;
  if (cofinite_from_) return *cofinite_from_;
  return values_.empty() ? 0 : values_.back() + 1;
}

bool GapSet::empty() const { return !pred_ && !cofinite_from_ && values_.empty(); }

std::string GapSet::describe() const {
  if (pred_) return description_;
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ",";
    os << values_[i];
  }
  if (cofinite_from_) {
    if (!values_.empty()) os << ",";
    os << *cofinite_from_ << "+";
  }
  return os.str();
}

// -------------------------------------------------------------- BetaData

struct BetaCache {
  std::mutex mutex;
  std::vector<int> greedy;               // greedy digits of 1 computed so far
  std::vector<QuadraticNumber> remainders;  // remainder after each digit
  bool finite = false;                   // greedy expansion terminated
  std::optional<std::pair<std::size_t, std::size_t>> cycle;  // (preperiod, period) of greedy digits
  std::map<std::string, std::size_t> seen;
};

BetaData::BetaData(QuadraticNumber beta) : beta_(std::move(beta)) {
  if (!(QuadraticNumber::rational(1) < beta_)) throw DomainError("beta must exceed 1");
  BigInt fl = beta_.floor();
  bool integer = beta_ == QuadraticNumber::rational(Rational(fl));
  BigInt a = integer ? fl : fl + 1;
  if (a > 255) throw DomainError("beta too large for the symbol type");
  alphabet_ = a.convert_to<int>();
  cache_ = std::make_shared<BetaCache>();
  cache_->remainders.push_back(QuadraticNumber::rational(1));
  cache_->seen[cache_->remainders.back().str()] = 0;
}

void BetaData::extend_to(std::size_t n) const {
  auto& c = *cache_;
  while (c.greedy.size() < n && !c.finite && !c.cycle) {
    const QuadraticNumber& r = c.remainders.back();
    QuadraticNumber br = beta_ * r;
    BigInt d = br.floor();
    QuadraticNumber next = br - QuadraticNumber::rational(Rational(d));
    c.greedy.push_back(d.convert_to<int>());
    c.remainders.push_back(next);
    if (next.sign() == 0) {
      c.finite = true;
      break;
    }
    auto key = next.str();
    auto it = c.seen.find(key);
    if (it != c.seen.end()) {
      // remainder repeats: digits from index it->second on are periodic
      c.cycle = std::make_pair(it->second, c.greedy.size() - it->second);
      break;
    }
    c.seen[key] = c.greedy.size();
  }
}

std::pair<Word, bool> BetaData::greedy_expansion_of_one(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  extend_to(n);
  Word out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < cache_->greedy.size()) {
      out.push_back(static_cast<Symbol>(cache_->greedy[i]));
    } else if (cache_->finite) {
      break;
    } else {
      auto [pre, per] = *cache_->cycle;
      out.push_back(static_cast<Symbol>(cache_->greedy[pre + (i - pre) % per]));
    }
  }
  return {out, cache_->finite};
}

int BetaData::comparison_digit(std::size_t i) const {
  if (i == 0) throw DomainError("comparison digits are 1-based");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  extend_to(i);
  const auto& g = cache_->greedy;
  if (cache_->finite) {
    // (d_1 ... d_{k-1} (d_k - 1))^inf
    std::size_t k = g.size();
    std::size_t pos = (i - 1) % k;
    return pos + 1 == k ? g[pos] - 1 : g[pos];
  }
  if (i <= g.size()) return g[i - 1];
  auto [pre, per] = *cache_->cycle;
  return g[pre + (i - 1 - pre) % per];
}

std::optional<std::pair<std::size_t, std::size_t>> BetaData::periodicity(std::size_t search) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  extend_to(search);
  if (cache_->finite) return std::make_pair(std::size_t{0}, cache_->greedy.size());
  return cache_->cycle;
}

Word beta_expansion(const QuadraticNumber& x, const QuadraticNumber& beta, std::size_t n) {
  if (!(QuadraticNumber::rational(1) < beta)) throw DomainError("beta must exceed 1");
  if (x.sign() < 0 || !(x < QuadraticNumber::rational(1))) {
    throw DomainError("x must lie in [0, 1)");
  }
  Word out;
  out.reserve(n);
  QuadraticNumber r = x;
  for (std::size_t i = 0; i < n; ++i) {
    QuadraticNumber br = beta * r;
    BigInt d = br.floor();
    out.push_back(static_cast<Symbol>(d.convert_to<int>()));
    r = br - QuadraticNumber::rational(Rational(d));
  }
  return out;
}

// -------------------------------------------------------------- Subshift

Subshift Subshift::full(int m) {
  if (m < 1 || m > 255) throw DomainError("alphabet size must be in [1, 255]");
  Subshift s;
  s.kind_ = ShiftKind::Full;
  s.alphabet_ = m;
  s.description_ = "full:" + std::to_string(m);
  return s;
}

Subshift Subshift::sft(int m, std::vector<Word> forbidden) {
  if (m < 1 || m > 255) throw DomainError("alphabet size must be in [1, 255]");
  Subshift s;
  s.kind_ = ShiftKind::Sft;
  s.alphabet_ = m;
  std::size_t longest = 0;
  for (const auto& w : forbidden) {
    if (w.empty()) throw DomainError("empty forbidden word");
    check_alphabet(w, m);
    longest = std::max(longest, w.size());
  }
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  s.forbidden_ = std::move(forbidden);
  s.block_ = longest == 0 ? 0 : longest - 1;
  if (std::pow(static_cast<double>(m), static_cast<double>(s.block_)) > 4e6) {
    throw DomainError("forbidden words too long for the block automaton");
  }

  auto avoids = [&](const Word& w) {
    for (const auto& f : s.forbidden_) {
      if (f.size() > w.size()) continue;
      if (std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return false;
    }
    return true;
  };
  // all admissible blocks, then prune to those with an infinite future
  std::vector<Word> blocks;
  std::size_t total = 1;
  for (std::size_t i = 0; i < s.block_; ++i) total *= static_cast<std::size_t>(m);
  for (std::size_t code = 0; code < total; ++code) {
    Word b(s.block_);
    std::size_t c = code;
    for (std::size_t i = s.block_; i-- > 0;) {
      b[i] = static_cast<Symbol>(c % static_cast<std::size_t>(m));
      c /= static_cast<std::size_t>(m);
    }
    if (avoids(b)) blocks.push_back(b);
  }
  std::set<Word> live(blocks.begin(), blocks.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = live.begin(); it != live.end();) {
      bool has_next = false;
      for (int a = 0; a < m && !has_next; ++a) {
        Word ext = *it;
        ext.push_back(static_cast<Symbol>(a));
        if (!avoids(ext)) continue;
        Word nb(ext.begin() + 1, ext.end());
        has_next = live.count(nb) > 0;
      }
      if (!has_next) {
        it = live.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  s.live_blocks_ = std::make_shared<const std::vector<Word>>(live.begin(), live.end());
  std::ostringstream os;
  os << "sft:" << m << ":";
  for (std::size_t i = 0; i < s.forbidden_.size(); ++i) {
    if (i) os << ",";
    os << format_word(s.forbidden_[i], m);
  }
  s.description_ = os.str();
  return s;
}

Subshift Subshift::sgap(GapSet gaps) {
  Subshift s;
  s.kind_ = ShiftKind::SGap;
  s.alphabet_ = 2;
  s.description_ = "sgap:" + gaps.describe();
  s.gaps_ = std::make_shared<const GapSet>(std::move(gaps));
  return s;
}

Subshift Subshift::beta(const QuadraticNumber& beta) {
  Subshift s;
  s.kind_ = ShiftKind::Beta;
  s.beta_ = std::make_shared<const BetaData>(beta);
  s.alphabet_ = s.beta_->alphabet_size();
  s.description_ = "beta:" + beta.str();
  return s;
}

Subshift Subshift::frequency(FrequencyShiftSpec spec) {
  spec.validate();
  Subshift s;
  s.kind_ = ShiftKind::Frequency;
  s.alphabet_ = spec.alphabet_size;
  s.description_ = spec.describe();
  s.freq_ = std::make_shared<const FrequencyShiftSpec>(std::move(spec));
  return s;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_size(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError(std::string("invalid ") + what + " '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

Subshift Subshift::parse(std::string_view description) {
  auto colon = description.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("shift description '" + std::string(description) + "' lacks a kind prefix");
  }
  std::string kind(description.substr(0, colon));
  std::string_view rest = description.substr(colon + 1);
  if (kind == "full") return full(static_cast<int>(parse_size(std::string(rest), "alphabet size")));
  if (kind == "sft") {
    auto c2 = rest.find(':');
    int m = static_cast<int>(parse_size(std::string(rest.substr(0, c2)), "alphabet size"));
    std::vector<Word> forb;
    if (c2 != std::string_view::npos && c2 + 1 < rest.size()) {
      for (const auto& w : split(rest.substr(c2 + 1), m <= 10 ? ',' : ';')) {
        forb.push_back(parse_word(w, m));
      }
    }
    return sft(m, std::move(forb));
  }
  if (kind == "sgap") {
    std::vector<std::size_t> values;
    std::optional<std::size_t> from;
    if (!rest.empty()) {
      for (const auto& item : split(rest, ',')) {
        if (!item.empty() && item.back() == '+') {
          from = parse_size(item.substr(0, item.size() - 1), "gap");
        } else {
          values.push_back(parse_size(item, "gap"));
        }
      }
    }
    return sgap(from ? GapSet::cofinite(values, *from) : GapSet::finite(values));
  }
  if (kind == "beta") return beta(QuadraticNumber::parse(rest));
  if (kind == "xf") {
    double c = std::stod(std::string(rest));
    return frequency(FrequencyShiftSpec::shipped(c));
  }
  throw DomainError("unknown shift kind '" + kind + "'");
}

bool Subshift::is_in_language(const Word& u) const {
  check_alphabet(u, alphabet_);
  switch (kind_) {
    case ShiftKind::Full:
      return true;
    case ShiftKind::Sft:
      return sft_member(u);
    case ShiftKind::SGap:
      return sgap_member(u);
    case ShiftKind::Beta:
      return beta_member(u);
    case ShiftKind::Frequency:
      return freq_membership(u, *freq_);
  }
  return false;
}

bool Subshift::sft_member(const Word& u) const {
  for (const auto& f : forbidden_) {
    if (f.size() <= u.size() && std::search(u.begin(), u.end(), f.begin(), f.end()) != u.end()) {
      return false;
    }
  }
  const auto& live = *live_blocks_;
  if (u.size() >= block_) {
    Word last(u.end() - static_cast<std::ptrdiff_t>(block_), u.end());
    return std::binary_search(live.begin(), live.end(), last);
  }
  auto it = std::lower_bound(live.begin(), live.end(), u);
  return it != live.end() && std::equal(u.begin(), u.end(), it->begin());
}

bool Subshift::sgap_member(const Word& u) const {
  std::optional<std::size_t> last_one;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 1) continue;
    if (last_one && !gaps_->contains(i - *last_one - 1)) return false;
    last_one = i;
  }
  return true;
}

bool Subshift::beta_member(const Word& u) const {
  // every suffix must be lexicographically <= the comparison sequence
  for (std::size_t start = 0; start < u.size(); ++start) {
    for (std::size_t i = start; i < u.size(); ++i) {
      int d = beta_->comparison_digit(i - start + 1);
      if (u[i] < d) break;
      if (u[i] > d) return false;
    }
  }
  return true;
}

bool Subshift::periodic_point_admissible(const Word& period) const {
  if (period.empty()) throw DomainError("empty period");
  check_alphabet(period, alphabet_);
  const std::size_t p = period.size();
  switch (kind_) {
    case ShiftKind::Full:
      return true;
    case ShiftKind::Sft: {
      std::size_t reps = (p + block_ + 1 + p - 1) / p + 1;
      Word w = repeat(period, reps);
      for (std::size_t s = 0; s < p; ++s) {
        if (!sft_member(subword(w, s, w.size() - s))) return false;
      }
      return true;
    }
    case ShiftKind::SGap: {
      std::vector<std::size_t> ones;
      for (std::size_t i = 0; i < p; ++i) {
        if (period[i] == 1) ones.push_back(i);
      }
      if (ones.empty()) return true;
      for (std::size_t i = 0; i < ones.size(); ++i) {
        std::size_t nxt = i + 1 < ones.size() ? ones[i + 1] : ones[0] + p;
        if (!gaps_->contains(nxt - ones[i] - 1)) return false;
      }
      return true;
    }
    case ShiftKind::Beta: {
      auto per = beta_->periodicity(256);
      std::size_t horizon = 2 * p + 64;
      if (per) horizon += 2 * (per->first + per->second * p);
      for (std::size_t s = 0; s < p; ++s) {
        bool decided = false;
        for (std::size_t i = 0; i < horizon; ++i) {
          int d = beta_->comparison_digit(i + 1);
          int x = period[(s + i) % p];
          if (x < d) {
            decided = true;
            break;
          }
          if (x > d) return false;
        }
        if (!decided && !per) {
          throw PrecisionError("periodic point agrees with the expansion of 1 beyond the horizon");
        }
      }
      return true;
    }
    case ShiftKind::Frequency: {
      Word two = repeat(period, 2);
      for (std::size_t c = 0; c < freq_->classes.size(); ++c) {
        std::size_t occ = 0;
        for (std::size_t s = 0; s < p; ++s) {
          Word w = subword(two, s, freq_->window);
          for (const auto& cw : freq_->classes[c].words) occ += cw == w;
        }
        // a positive rate eventually beats any sublinear bound
        if (occ > 0 && freq_->classes[c].f.kind != FrequencyFn::Kind::Linear) return false;
        if (freq_->classes[c].f.kind == FrequencyFn::Kind::Linear &&
            static_cast<double>(occ) > freq_->classes[c].f.c * static_cast<double>(p)) {
          return false;
        }
      }
      std::size_t reps = (512 + freq_->window) / p + 2;
      return freq_membership(repeat(period, reps), *freq_);
    }
  }
  return false;
}

LanguageAutomaton Subshift::sft_automaton() const {
  LanguageAutomaton a;
  a.alphabet_size = alphabet_;
  std::map<Word, int> id;
  std::vector<Word> words;
  auto state_of = [&](const Word& w) -> int {
    auto it = id.find(w);
    if (it != id.end()) return it->second;
    int s = a.add_state();
    id[w] = s;
    words.push_back(w);
    return s;
  };
  a.start = state_of({});
  const auto& live = *live_blocks_;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word w = words[i];
    for (int sym = 0; sym < alphabet_; ++sym) {
      Word ext = w;
      ext.push_back(static_cast<Symbol>(sym));
      bool bad = false;
      for (const auto& f : forbidden_) {
        if (f.size() <= ext.size() && std::equal(f.rbegin(), f.rend(), ext.rbegin())) {
          bad = true;
          break;
        }
      }
      if (bad) continue;
      Word key = ext.size() > block_ ? Word(ext.end() - static_cast<std::ptrdiff_t>(block_), ext.end()) : ext;
      bool ok;
      if (key.size() == block_) {
        ok = std::binary_search(live.begin(), live.end(), key);
      } else {
        auto it = std::lower_bound(live.begin(), live.end(), key);
        ok = it != live.end() && std::equal(key.begin(), key.end(), it->begin());
      }
      if (!ok) continue;
      int t = state_of(key);
      a.next[i][static_cast<std::size_t>(sym)] = t;
    }
  }
  return a;
}

LanguageAutomaton Subshift::sgap_automaton(std::size_t horizon) const {
  // state 0: no 1 yet; state 1+r: a run of r zeros after the last 1;
  // trailing state: the run can no longer close.
  LanguageAutomaton a;
  a.alphabet_size = 2;
  a.start = a.add_state();
  auto stable = gaps_->stable_from();
  std::size_t max_run = stable ? *stable : std::min(horizon, *gaps_->bound());
  bool cofinite = gaps_->contains_beyond_stable();
  std::vector<int> run_state(max_run + 1);
  for (std::size_t r = 0; r <= max_run; ++r) run_state[r] = a.add_state();
  int trailing = a.add_state();
  a.next[0][0] = 0;
  a.next[0][1] = run_state[0];
  for (std::size_t r = 0; r <= max_run; ++r) {
    auto s = static_cast<std::size_t>(run_state[r]);
    if (r < max_run) {
      a.next[s][0] = run_state[r + 1];
    } else {
      a.next[s][0] = cofinite ? run_state[r] : trailing;
    }
    bool closes = (r == max_run && cofinite) || (r < max_run && gaps_->contains(r));
    if (r == max_run && !cofinite && !stable) closes = gaps_->contains(r);
    a.next[s][1] = closes ? run_state[0] : -1;
  }
  a.next[static_cast<std::size_t>(trailing)][0] = trailing;
  return a;
}

LanguageAutomaton Subshift::beta_automaton(std::size_t horizon) const {
  // state j: the longest suffix matching the comparison sequence has length j
  auto per = beta_->periodicity(256);
  std::size_t states;
  std::size_t pre = 0;
  std::size_t period = 0;
  if (per) {
    pre = per->first;
    period = per->second;
    states = pre + period;
  } else {
    states = horizon + 1;
  }
  LanguageAutomaton a;
  a.alphabet_size = alphabet_;
  for (std::size_t j = 0; j < states; ++j) a.add_state();
  a.start = 0;
  for (std::size_t j = 0; j < states; ++j) {
    int d = beta_->comparison_digit(j + 1);
    for (int sym = 0; sym < alphabet_; ++sym) {
      if (sym < d) {
        a.next[j][static_cast<std::size_t>(sym)] = 0;
      } else if (sym == d) {
        std::size_t t = j + 1;
        if (per && t >= states) t -= period;
        if (t >= states) continue;  // beyond the horizon
        a.next[j][static_cast<std::size_t>(sym)] = static_cast<int>(t);
      }
    }
  }
  return a;
}

std::optional<LanguageAutomaton> Subshift::automaton(std::size_t horizon) const {
  switch (kind_) {
    case ShiftKind::Full: {
      LanguageAutomaton a;
      a.alphabet_size = alphabet_;
      a.start = a.add_state();
      for (int s = 0; s < alphabet_; ++s) a.next[0][static_cast<std::size_t>(s)] = 0;
      return a;
    }
    case ShiftKind::Sft:
      return sft_automaton();
    case ShiftKind::SGap:
      return sgap_automaton(horizon);
    case ShiftKind::Beta:
      return beta_automaton(horizon);
    case ShiftKind::Frequency:
      return std::nullopt;
  }
  return std::nullopt;
}

// ----------------------------------------------------------- enumeration

namespace {

void extend_dfs(const Subshift& shift, Word& cur, std::size_t n, std::vector<Word>& out,
                std::size_t cap) {
  if (cur.size() == n) {
    if (out.size() >= cap) {
      throw ResourceError("enumeration exceeded the cap of " + std::to_string(cap) + " words",
                          static_cast<double>(out.size()), static_cast<double>(cap));
    }
    out.push_back(cur);
    return;
  }
  for (int a = 0; a < shift.alphabet_size(); ++a) {
    cur.push_back(static_cast<Symbol>(a));
    if (shift.is_in_language(cur)) extend_dfs(shift, cur, n, out, cap);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_language(const Subshift& shift, std::size_t n,
                                     const EnumerationOptions& opts) {
  if (n == 0) throw DomainError("word length must be at least 1");
  double estimate;
  if (auto a = shift.automaton(n)) {
    estimate = std::exp(count_paths(*a, n).log_count);
  } else {
    estimate = std::pow(static_cast<double>(shift.alphabet_size()), static_cast<double>(n));
  }
  if (estimate > static_cast<double>(opts.cap) * (1 + 1e-9)) {
    throw ResourceError("language of length " + std::to_string(n) + " has about " +
                            std::to_string(estimate) + " words, above the cap of " +
                            std::to_string(opts.cap),
                        estimate, static_cast<double>(opts.cap));
  }
  // split the prefix tree at depth one or two across workers
  std::size_t depth = std::min<std::size_t>(n, opts.workers > 1 ? 2 : 1);
  std::vector<Word> roots;
  {
    Word cur;
    std::vector<Word> level{cur};
    for (std::size_t d = 0; d < depth; ++d) {
      std::vector<Word> nxt;
      for (const auto& w : level) {
        for (int a = 0; a < shift.alphabet_size(); ++a) {
          Word e = w;
          e.push_back(static_cast<Symbol>(a));
          if (shift.is_in_language(e)) nxt.push_back(e);
        }
      }
      level.swap(nxt);
    }
    roots = std::move(level);
  }
  std::vector<std::vector<Word>> parts(roots.size());
  parallel_for(roots.size(), opts.workers, [&](std::size_t i) {
    Word cur = roots[i];
    extend_dfs(shift, cur, n, parts[i], opts.cap);
  });
  std::vector<Word> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  if (total > opts.cap) {
    throw ResourceError("enumeration exceeded the cap of " + std::to_string(opts.cap) + " words",
                        static_cast<double>(total), static_cast<double>(opts.cap));
  }
  out.reserve(total);
  for (auto& p : parts) {
    for (auto& w : p) out.push_back(std::move(w));
  }
  return out;
}

LanguageCount count_language(const Subshift& shift, std::size_t n, const EnumerationOptions& opts) {
  if (n == 0) throw DomainError("word length must be at least 1");
  LanguageCount out;
  if (auto a = shift.automaton(n)) {
    auto pc = count_paths(*a, n);
    out.exact = pc.exact;
    out.log_count = pc.log_count;
    out.via_automaton = true;
    return out;
  }
  auto words = enumerate_language(shift, n, opts);
  out.exact = words.size();
  out.log_count = words.empty() ? -INFINITY : std::log(static_cast<double>(words.size()));
  return out;
}

}  // namespace symdyn
