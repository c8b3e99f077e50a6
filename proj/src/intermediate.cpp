#include "symdyn/intermediate.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/parallel.hpp"
#include "symdyn/pressure.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace symdyn {

std::vector<Word> typical_words(const Subshift& shift, const MarkovMeasure& nu, double eta,
                                std::size_t n, const TypicalOptions& opts) {
  if (nu.alphabet_size() != shift.alphabet_size()) throw DomainError("measure and shift alphabets differ");
  EnumerationOptions eo{opts.cap, opts.workers};
  auto words = enumerate_language(shift, n, eo);
  auto target = nu.project(opts.depth);
  double tail = tail_error(shift.alphabet_size(), opts.depth);
  std::vector<char> keep(words.size(), 0);
  parallel_for(words.size(), opts.workers, [&](std::size_t i) {
    PointPrefix x(words[i], Word{0});
    auto emp = empirical_measure(x, n, opts.depth, shift.alphabet_size());
    keep[i] = bl_distance(emp, target).value + tail < eta;
  });
  std::vector<Word> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (keep[i]) out.push_back(std::move(words[i]));
  }
  return out;
}

void CodeSubshift::validate() const {
  if (words.empty()) throw DomainError("code has no words");
  if (m == 0) throw DomainError("code block length must be positive");
  for (const auto& w : words) {
    if (w.size() != m) throw DomainError("code words must all have length M");
    check_alphabet(w, alphabet_size);
  }
}

nlohmann::json CodeSubshift::to_json() const {
  nlohmann::json j;
  j["M"] = m;
  j["alphabet"] = alphabet_size;
  auto arr = nlohmann::json::array();
  for (const auto& w : words) arr.push_back(format_word(w, alphabet_size));
  j["words"] = arr;
  return j;
}

CodeSubshift CodeSubshift::from_json(const nlohmann::json& j) {
  CodeSubshift c;
  c.m = j.at("M").get<std::size_t>();
  c.alphabet_size = j.value("alphabet", 2);
  for (const auto& w : j.at("words")) c.words.push_back(parse_word(w.get<std::string>(), c.alphabet_size));
  std::sort(c.words.begin(), c.words.end());
  c.validate();
  return c;
}

CardinalityWindow cardinality_window(std::size_t m, double h, double eps) {
  double md = static_cast<double>(m);
  double lo = std::exp(md * (h - eps / 2));
  double hi = std::exp(md * (h + eps / 2));
  if (hi > 1e15) throw ResourceError("code cardinality window too large", hi, 1e15);
  CardinalityWindow w;
  w.lower = static_cast<std::size_t>(std::ceil(lo));
  w.upper = static_cast<std::size_t>(std::ceil(hi)) - 1;
  auto t = static_cast<std::size_t>(std::llround(std::exp(md * h)));
  w.target = std::clamp(t, w.lower, std::max(w.lower, w.upper));
  return w;
}

CodeBuild build_code(const Subshift& shift, const GoodFamily& family, const MarkovMeasure& nu,
                     double h, double eps, double eta, std::size_t n, const CodeBuildOptions& opts) {
  if (!family.free_concat()) throw DomainError("the code needs a free-concatenation family");
  if (!(h > 0) || !(eps > 0)) throw DomainError("h and eps must be positive");
  CodeBuild out;
  auto typical = typical_words(shift, nu, eta, n, opts.typical);
  out.typical = typical.size();
  if (typical.empty()) {
    throw ConstructionError("no typical words at N = " + std::to_string(n) + " within eta = " +
                            std::to_string(eta));
  }
  auto images = phi_images(typical, family, opts.mistake, opts.typical.workers);
  std::map<std::size_t, std::set<Word>> by_length;
  for (auto& v : images) by_length[v.size()].insert(std::move(v));
  std::size_t best_len = 0, best_size = 0;
  for (const auto& [len, set] : by_length) {
    out.distinct_images += set.size();
    if (set.size() > best_size) {
      best_size = set.size();
      best_len = len;
    }
  }
  out.class_size = best_size;
  out.window = cardinality_window(best_len, h, eps);
  if (out.window.lower > out.window.upper) {
    throw ConstructionError("no integer cardinality in the window at M = " + std::to_string(best_len));
  }
  if (best_size < out.window.lower) {
    throw ConstructionError("image class of length " + std::to_string(best_len) + " has " +
                            std::to_string(best_size) + " words, " +
                            std::to_string(out.window.lower - best_size) + " short of " +
                            std::to_string(out.window.lower));
  }
  std::size_t k = std::min(out.window.target, best_size);
  const auto& cls = by_length[best_len];
  out.code.m = best_len;
  out.code.alphabet_size = shift.alphabet_size();
  out.code.words.assign(cls.begin(), std::next(cls.begin(), static_cast<std::ptrdiff_t>(k)));
  return out;
}

namespace {

// Prefix trie of the code; finishing a code word returns to the root.
struct CodeTrie {
  std::vector<std::vector<int>> next;
  explicit CodeTrie(const CodeSubshift& code) {
    code.validate();
    const auto m = static_cast<std::size_t>(code.alphabet_size);
    next.emplace_back(m, -1);
    for (const auto& w : code.words) {
      int v = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto& slot = next[static_cast<std::size_t>(v)][w[i]];
        if (i + 1 == w.size()) {
          slot = 0;
          break;
        }
        if (slot < 0) {
          slot = static_cast<int>(next.size());
          next.emplace_back(m, -1);
        }
        v = next[static_cast<std::size_t>(v)][w[i]];
      }
    }
  }

  std::vector<int> all() const {
    std::vector<int> s(next.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<int>(i);
    return s;
  }

  std::vector<int> step(const std::vector<int>& s, std::size_t a) const {
    std::vector<int> out;
    for (int v : s) {
      int t = next[static_cast<std::size_t>(v)][a];
      if (t >= 0) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

}  // namespace

CodeLanguageCount lambda_language_count(const CodeSubshift& code, std::size_t n) {
  CodeTrie trie(code);
  const auto m = static_cast<std::size_t>(code.alphabet_size);
  struct Cell {
    std::uint64_t exact = 0;
    bool overflow = false;
    long double approx = 0;
  };
  std::map<std::vector<int>, Cell> layer;
  layer[trie.all()] = Cell{1, false, 1};
  for (std::size_t step = 0; step < n; ++step) {
    std::map<std::vector<int>, Cell> nl;
    for (const auto& [s, c] : layer) {
      for (std::size_t a = 0; a < m; ++a) {
        auto t = trie.step(s, a);
        if (t.empty()) continue;
        auto& d = nl[t];
        d.approx += c.approx;
        if (c.overflow || __builtin_add_overflow(d.exact, c.exact, &d.exact)) d.overflow = true;
      }
    }
    layer.swap(nl);
  }
  CodeLanguageCount out;
  std::uint64_t total = 0;
  bool ok = true;
  long double approx = 0;
  for (const auto& [s, c] : layer) {
    approx += c.approx;
    if (c.overflow || __builtin_add_overflow(total, c.exact, &total)) ok = false;
  }
  if (ok) out.exact = total;
  out.log_count = approx > 0 ? static_cast<double>(std::log(approx))
                             : -std::numeric_limits<double>::infinity();
  return out;
}

std::vector<Word> lambda_language(const CodeSubshift& code, std::size_t n, std::size_t cap) {
  CodeTrie trie(code);
  const auto m = static_cast<std::size_t>(code.alphabet_size);
  std::vector<Word> out;
  Word cur;
  std::function<void(const std::vector<int>&)> dfs = [&](const std::vector<int>& s) {
    if (cur.size() == n) {
      if (out.size() >= cap) {
        throw ResourceError("code language exceeds the enumeration cap",
                            std::exp(lambda_language_count(code, n).log_count), static_cast<double>(cap));
      }
      out.push_back(cur);
      return;
    }
    for (std::size_t a = 0; a < m; ++a) {
      auto t = trie.step(s, a);
      if (t.empty()) continue;
      cur.push_back(static_cast<Symbol>(a));
      dfs(t);
      cur.pop_back();
    }
  };
  dfs(trie.all());
  return out;
}

bool EntropyWindowReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

std::string EntropyWindowReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "n,log_count,value,slack,lo,hi,pass\n";
  for (const auto& r : rows) {
    os << r.n << "," << r.log_count << "," << r.value << "," << r.slack << "," << r.lo << "," << r.hi
       << "," << (r.pass ? 1 : 0) << "\n";
  }
  return os.str();
}

EntropyWindowReport verify_entropy_window(const CodeSubshift& code, std::size_t n_max, double h,
                                          double eps) {
  code.validate();
  if (n_max < code.m || n_max % code.m) throw DomainError("n_max must be a positive multiple of M");
  EntropyWindowReport rep;
  double base = std::log(static_cast<double>(code.m)) + std::log(static_cast<double>(code.words.size()));
  for (std::size_t n = code.m; n <= n_max; n += code.m) {
    EntropyWindowRow row;
    row.n = n;
    row.log_count = lambda_language_count(code, n).log_count;
    row.value = row.log_count / static_cast<double>(n);
    row.slack = base / static_cast<double>(n);
    row.lo = h - eps / 2 - row.slack;
    row.hi = h + eps / 2 + row.slack;
    row.pass = row.lo <= row.value && row.value <= row.hi;
    rep.rows.push_back(row);
  }
  return rep;
}

double mix_to_pressure(const MarkovMeasure& mu1, const MarkovMeasure& mu2, const Potential& f,
                       double alpha) {
  double p1 = measure_pressure(mu1, f);
  double p2 = measure_pressure(mu2, f);
  if (p1 == p2) {
    if (alpha == p1) return 1.0;
    throw DomainError("both measures have the same pressure and it differs from the target");
  }
  if (alpha < std::min(p1, p2) || alpha > std::max(p1, p2)) {
    throw DomainError("target pressure lies outside [P(mu1), P(mu2)]");
  }
  return (p2 - alpha) / (p2 - p1);
}

CodeMeasureSample code_measure_distance(const CodeSubshift& code, const MarkovMeasure& nu,
                                        std::size_t blocks, std::size_t depth, std::uint64_t seed) {
  code.validate();
  std::mt19937_64 rng(seed);
  Word x;
  x.reserve(blocks * code.m);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto& w = code.words[rng() % code.words.size()];
    x.insert(x.end(), w.begin(), w.end());
  }
  if (x.size() < depth) throw DomainError("sample shorter than the depth");
  std::size_t n = x.size() - depth + 1;
  auto emp = empirical_measure(PointPrefix(x), n, depth, code.alphabet_size);
  return {bl_distance(emp, nu.project(depth)).value, tail_error(code.alphabet_size, depth)};
}

}  // namespace symdyn
