#include "symdyn/edit.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace symdyn {

std::size_t edit_distance(const Word& u, const Word& v) {
  const Word& a = u.size() >= v.size() ? u : v;
  const Word& b = u.size() >= v.size() ? v : u;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1]);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    prev.swap(cur);
  }
  return prev[b.size()];
}

std::size_t edit_distance_bounded(const Word& u, const Word& v, std::size_t bound) {
  std::size_t lu = u.size(), lv = v.size();
  std::size_t diff = lu > lv ? lu - lv : lv - lu;
  if (diff > bound) return bound + 1;
  const std::size_t inf = std::numeric_limits<std::size_t>::max() / 2;
  // banded dynamic program over |i - j| <= bound
  std::vector<std::size_t> prev(lv + 1, inf), cur(lv + 1, inf);
  for (std::size_t j = 0; j <= std::min(lv, bound); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= lu; ++i) {
    std::size_t lo = i > bound ? i - bound : 0;
    std::size_t hi = std::min(lv, i + bound);
    std::fill(cur.begin(), cur.end(), inf);
    if (lo == 0) cur[0] = i;
    std::size_t row_min = lo == 0 ? cur[0] : inf;
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
      std::size_t best = prev[j - 1] + (u[i - 1] != v[j - 1]);
      best = std::min(best, prev[j] + 1);
      best = std::min(best, cur[j - 1] + 1);
      cur[j] = best;
      row_min = std::min(row_min, best);
    }
    if (row_min > bound) return bound + 1;
    prev.swap(cur);
  }
  return std::min(prev[lv], bound + 1);
}

// ------------------------------------------------------------ MistakeFn

MistakeFn MistakeFn::constant(std::size_t c) {
  MistakeFn m;
  m.fn_ = [c](std::size_t) { return c; };
  m.name_ = "const:" + std::to_string(c);
  return m;
}

MistakeFn MistakeFn::c_plus_log(double c) {
  if (c < 0) throw DomainError("mistake constant must be non-negative");
  MistakeFn m;
  m.fn_ = [c](std::size_t n) {
    double v = c + std::log(static_cast<double>(std::max<std::size_t>(n, 1)));
    return static_cast<std::size_t>(std::ceil(v - 1e-12));
  };
  std::ostringstream os;
  os << "log:" << c;
  m.name_ = os.str();
  return m;
}

MistakeFn MistakeFn::table(std::vector<std::size_t> values) {
  if (values.empty()) throw DomainError("empty mistake table");
  MistakeFn m;
  std::ostringstream os;
  os << "table:";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  m.name_ = os.str();
  m.fn_ = [values = std::move(values)](std::size_t n) {
    std::size_t i = n == 0 ? 0 : n - 1;
    return values[std::min(i, values.size() - 1)];
  };
  return m;
}

MistakeFn MistakeFn::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "const") return constant(std::stoull(arg));
    if (kind == "log") return c_plus_log(std::stod(arg));
    if (kind == "zero") return zero();
    if (kind == "table") {
      std::vector<std::size_t> v;
      std::stringstream ss(arg);
      std::string item;
      while (std::getline(ss, item, ',')) v.push_back(std::stoull(item));
      return table(v);
    }
  } catch (const std::logic_error&) {
    throw DomainError("invalid mistake function '" + spec + "'");
  }
  throw DomainError("unknown mistake function '" + spec + "'");
}

std::size_t MistakeFn::operator()(std::size_t n) const { return fn_(n); }

bool MistakeFn::non_decreasing_up_to(std::size_t n_max) const {
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (fn_(n) < fn_(n - 1)) return false;
  }
  return true;
}

// ------------------------------------------------------------ GoodFamily

struct GoodFamily::Cache {
  std::mutex mutex;
  std::map<std::size_t, std::vector<Word>> by_length;
};

GoodFamily::GoodFamily(std::string name, int alphabet_size, Predicate contains, Enumerator members,
                       std::size_t spec_gap, bool free_concat)
    : name_(std::move(name)),
      alphabet_(alphabet_size),
      contains_(std::move(contains)),
      enumerate_(std::move(members)),
      tau_(spec_gap),
      free_(free_concat),
      cache_(std::make_shared<Cache>()) {}

GoodFamily GoodFamily::language(const Subshift& shift, std::size_t spec_gap, bool free_concat) {
  return GoodFamily(
      "language(" + shift.describe() + ")", shift.alphabet_size(),
      [shift](const Word& w) { return shift.is_in_language(w); },
      [shift](std::size_t n) {
        return n == 0 ? std::vector<Word>{Word{}} : enumerate_language(shift, n);
      },
      spec_gap, free_concat);
}

GoodFamily GoodFamily::alternating() {
  auto contains = [](const Word& w) {
    if (w.empty() || w.size() % 2) return false;
    for (std::size_t i = 0; i < w.size(); i += 2) {
      if (w[i] != 0 || (w[i + 1] != 1 && w[i + 1] != 2)) return false;
    }
    return true;
  };
  auto members = [](std::size_t n) {
    std::vector<Word> out;
    if (n == 0 || n % 2) return out;
    std::size_t k = n / 2;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Word w(n, 0);
      for (std::size_t i = 0; i < k; ++i) w[2 * i + 1] = (mask >> (k - 1 - i)) & 1 ? 2 : 1;
      out.push_back(w);
    }
    return out;
  };
  return GoodFamily("alternating", 3, contains, members, 0, true);
}

GoodFamily GoodFamily::from_predicate(std::string name, int alphabet_size, Predicate contains,
                                      std::size_t spec_gap, bool free_concat) {
  auto members = [contains, alphabet_size](std::size_t n) {
    std::vector<Word> out;
    if (std::pow(static_cast<double>(alphabet_size), static_cast<double>(n)) > 4e6) {
      throw ResourceError("predicate family enumeration too large", std::pow(alphabet_size, n), 4e6);
    }
    Word w(n, 0);
    for (;;) {
      if (contains(w)) out.push_back(w);
      std::size_t i = n;
      while (i > 0 && w[i - 1] + 1 == alphabet_size) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    return out;
  };
  return GoodFamily(std::move(name), alphabet_size, contains, members, spec_gap, free_concat);
}

bool GoodFamily::contains(const Word& w) const { return contains_(w); }

const std::vector<Word>& GoodFamily::members(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->by_length.find(n);
  if (it != cache_->by_length.end()) return it->second;
  auto words = enumerate_(n);
  std::sort(words.begin(), words.end());
  return cache_->by_length.emplace(n, std::move(words)).first->second;
}

// ------------------------------------------------------------ nearest

std::optional<Nearest> nearest_in_family(const Word& u, const GoodFamily& g, std::size_t radius) {
  if (g.contains(u)) return Nearest{u, 0};
  if (radius == 0) return std::nullopt;
  std::optional<Nearest> best;
  // lengths outward from |u|; a length at offset d cannot beat distance < d
  for (std::size_t off = 0; off <= radius; ++off) {
    if (best && off > best->distance) break;
    std::vector<std::size_t> lengths;
    if (off <= u.size()) lengths.push_back(u.size() - off);
    if (off > 0) lengths.push_back(u.size() + off);
    for (std::size_t len : lengths) {
      std::size_t bound = best ? best->distance : radius;
      for (const auto& v : g.members(len)) {
        std::size_t d = edit_distance_bounded(u, v, bound);
        if (d > bound) continue;
        bool better = !best || d < best->distance ||
                      (d == best->distance &&
                       (v.size() < best->word.size() || (v.size() == best->word.size() && v < best->word)));
        if (better) {
          best = Nearest{v, d};
          bound = d;
        }
      }
    }
  }
  return best;
}

bool ApproachReport::any_flag() const {
  return std::any_of(rows.begin(), rows.end(), [](const ApproachRow& r) { return r.flag; });
}

std::string ApproachReport::to_csv() const {
  std::ostringstream os;
  os << "n,max_min_edit,g(n),flag\n";
  for (const auto& r : rows) {
    os << r.n << "," << r.max_min_edit << "," << r.g << "," << (r.flag ? 1 : 0) << "\n";
  }
  return os.str();
}

ApproachReport check_edit_approachable(const Subshift& shift, const GoodFamily& g,
                                       const MistakeFn& mistake, std::size_t n_max,
                                       double ratio_threshold, const EnumerationOptions& opts) {
  if (shift.alphabet_size() != g.alphabet_size()) throw DomainError("alphabet mismatch");
  ApproachReport rep;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto words = enumerate_language(shift, n, opts);
    std::vector<std::size_t> dist(words.size());
    std::size_t radius = 2 * n + 4;
    parallel_for(words.size(), opts.workers, [&](std::size_t i) {
      auto best = nearest_in_family(words[i], g, radius);
      dist[i] = best ? best->distance : radius + 1;
    });
    ApproachRow row;
    row.n = n;
    row.words = words.size();
    row.g = mistake(n);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i == 0 || dist[i] > row.max_min_edit) {
        row.max_min_edit = dist[i];
        row.worst = words[i];
      }
    }
    row.flag = row.max_min_edit > row.g;
    rep.rows.push_back(row);
  }
  rep.ratio_at_max = static_cast<double>(mistake(n_max)) / static_cast<double>(n_max);
  rep.ratio_ok = rep.ratio_at_max < ratio_threshold;
  return rep;
}

Word glue(const Word& u, const Word& v, const GoodFamily& g) {
  const int m = g.alphabet_size();
  for (std::size_t len = 0; len <= g.spec_gap(); ++len) {
    Word w(len, 0);
    for (;;) {
      Word candidate = concat(concat(u, w), v);
      if (g.contains(candidate)) return w;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == m) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  throw ConstructionError("no connector of length <= " + std::to_string(g.spec_gap()) + " joins " +
                          format_word(u, m) + " and " + format_word(v, m) + " in " + g.name());
}

Word phi_map(const Word& u, const GoodFamily& g, const MistakeFn& mistake) {
  auto best = nearest_in_family(u, g, mistake(u.size()));
  if (!best) {
    throw ApproachabilityError("no member of " + g.name() + " within " +
                               std::to_string(mistake(u.size())) + " edits of " +
                               format_word(u, g.alphabet_size()));
  }
  return best->word;
}

std::vector<Word> phi_images(const std::vector<Word>& domain, const GoodFamily& g,
                             const MistakeFn& mistake, unsigned workers) {
  std::vector<Word> out(domain.size());
  parallel_for(domain.size(), workers, [&](std::size_t i) { out[i] = phi_map(domain[i], g, mistake); });
  return out;
}

std::size_t fiber_count(const Word& v, const std::vector<Word>& domain,
                        const std::vector<Word>& images) {
  if (domain.size() != images.size()) throw DomainError("images do not match the domain");
  return static_cast<std::size_t>(std::count(images.begin(), images.end(), v));
}

EditWassersteinPair edit_to_wasserstein_check(const Word& u, const Word& v, std::size_t depth,
                                              int alphabet_size) {
  if (u.size() < depth || v.size() < depth) throw DomainError("words shorter than the depth");
  EditWassersteinPair out;
  out.edit = edit_distance(u, v);
  std::size_t n = u.size();
  auto mu = empirical_measure(PointPrefix::periodic(u), n, depth, alphabet_size);
  auto nu = empirical_measure(PointPrefix::periodic(v), n, depth, alphabet_size);
  out.w = bl_distance(mu, nu).value;
  out.tail = tail_error(alphabet_size, depth);
  return out;
}

}  // namespace symdyn
