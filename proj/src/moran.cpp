#include "symdyn/moran.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace symdyn {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw(const std::vector<double>& p, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  // rounding: last positive entry
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0) return i;
  }
  return 0;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Filter context shared across the candidates of one pool.
struct FilterContext {
  const MarkovMeasure& mu;
  const Potential& f;
  std::size_t depth;
  CylinderMeasure target;
  double integral;
  double entropy;

  FilterContext(const MarkovMeasure& m, const Potential& pot, std::size_t k)
      : mu(m), f(pot), depth(k), target(m.project(k)) {
    auto st = markov_stats(m, pot);
    integral = st.integral;
    entropy = st.entropy;
  }

  WordFilterValues values(const Word& w, bool need_ce = true) const {
    WordFilterValues v;
    const std::size_t n = w.size();
    const int m = mu.alphabet_size();
    v.log_mass = log_cylinder_mass(mu, w);
    const std::size_t kf = f.depth();
    std::size_t inner = n >= kf ? n - kf + 1 : 0;
    double s = inner ? birkhoff_sum_word(f, w, 0, inner) : 0.0;
    double b = static_cast<double>(n - inner);
    double dn = static_cast<double>(n);
    v.jifen_lo = (s + b * f.min_value()) / dn - integral;
    v.jifen_hi = (s + b * f.max_value()) / dn - integral;
    if (need_ce) {
      auto emp = empirical_measure(PointPrefix(w, Word{0}), n, depth, m);
      double boundary = static_cast<double>(std::min(depth - 1, n)) / dn *
                        std::min(2.0, static_cast<double>(m - 1));
      v.ce = bl_distance(emp, target).value + boundary;
    }
    return v;
  }
};

}  // namespace

double log_cylinder_mass(const MarkovMeasure& mu, const Word& w) {
  if (w.empty()) return 0.0;
  const auto& pi = mu.stationary();
  const auto& p = mu.transition();
  for (auto s : w) {
    if (static_cast<int>(s) >= mu.alphabet_size()) throw DomainError("symbol outside the alphabet");
  }
  double acc = std::log(pi[w[0]]);
  for (std::size_t i = 1; i < w.size() && std::isfinite(acc); ++i) acc += std::log(p[w[i - 1]][w[i]]);
  return acc;
}

WordFilterValues block_filter_values(const Word& w, const MarkovMeasure& mu, const Potential& f,
                                     std::size_t depth) {
  if (w.empty()) throw DomainError("empty block word");
  FilterContext ctx(mu, f, depth);
  return ctx.values(w);
}

bool BlockPool::meets_count_bound() const {
  if (words.empty()) return false;
  return std::log(static_cast<double>(passing)) >= log_bound - 1e-12;
}

nlohmann::json BlockPool::to_json(int alphabet_size) const {
  nlohmann::json j;
  j["n"] = n;
  j["eps"] = eps;
  j["exhaustive"] = exhaustive;
  j["passing"] = passing;
  j["log_bound"] = log_bound;
  auto arr = nlohmann::json::array();
  for (const auto& w : words) arr.push_back(format_word(w, alphabet_size));
  j["words"] = arr;
  j["stats"] = {{"tried", stats.tried},
                {"failed_family", stats.failed_family},
                {"failed_ce", stats.failed_ce},
                {"failed_jifen", stats.failed_jifen},
                {"failed_mass", stats.failed_mass}};
  return j;
}

BlockPool select_block_words(const Subshift& shift, const GoodFamily& family,
                             const MarkovMeasure& mu, const Potential& f, std::size_t n, double eps,
                             const PoolOptions& opts) {
  if (n == 0) throw DomainError("block length must be positive");
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (opts.depth == 0) throw DomainError("depth must be positive");
  if (opts.cap == 0) throw DomainError("pool cap must be positive");
  const int m = mu.alphabet_size();
  if (family.alphabet_size() != m || shift.alphabet_size() != m || f.alphabet_size() != m) {
    throw DomainError("alphabet mismatch between shift, family, measure and potential");
  }
  if (!family.free_concat()) throw DomainError("block words need a free-concatenation family");

  FilterContext ctx(mu, f, opts.depth);
  BlockPool pool;
  pool.n = n;
  pool.eps = eps;
  const double dn = static_cast<double>(n);
  pool.log_bound = dn * (ctx.entropy - 4.0 * eps);
  const double lo_mass = -dn * (ctx.entropy + eps) - 1e-9;
  const double hi_mass = -dn * (ctx.entropy - eps) + 1e-9;

  // cheap filters first; the first failure is the one recorded
  auto accept = [&](const Word& w) {
    ++pool.stats.tried;
    auto v = ctx.values(w, false);
    if (!(v.log_mass >= lo_mass && v.log_mass <= hi_mass)) {
      ++pool.stats.failed_mass;
      return false;
    }
    if (!(std::max(std::abs(v.jifen_lo), std::abs(v.jifen_hi)) < eps)) {
      ++pool.stats.failed_jifen;
      return false;
    }
    if (ctx.values(w, true).ce > eps + 1e-12) {
      ++pool.stats.failed_ce;
      return false;
    }
    return true;
  };

  double space = std::pow(static_cast<double>(m), dn);
  if (space <= static_cast<double>(opts.exhaustive_limit)) {
    pool.exhaustive = true;
    for (const auto& w : family.members(n)) {
      if (accept(w)) {
        ++pool.passing;
        if (pool.words.size() < opts.cap) pool.words.push_back(w);
      }
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::set<Word> seen;
    const std::size_t attempts = opts.cap * opts.attempts_per_word;
    const auto& pi = mu.stationary();
    const auto& p = mu.transition();
    Word w(n);
    for (std::size_t a = 0; a < attempts && pool.words.size() < opts.cap; ++a) {
      w[0] = static_cast<Symbol>(draw(pi, uniform01(rng)));
      for (std::size_t i = 1; i < n; ++i) w[i] = static_cast<Symbol>(draw(p[w[i - 1]], uniform01(rng)));
      if (!seen.insert(w).second) continue;
      if (!family.contains(w)) {
        ++pool.stats.tried;
        ++pool.stats.failed_family;
        continue;
      }
      if (accept(w)) pool.words.push_back(w);
    }
    std::sort(pool.words.begin(), pool.words.end());
    pool.passing = pool.words.size();
  }

  if (pool.words.empty()) {
    const auto& st = pool.stats;
    std::string worst = "ce";
    std::size_t most = st.failed_ce;
    if (st.failed_jifen > most) worst = "jifen", most = st.failed_jifen;
    if (st.failed_mass > most) worst = "cylinder mass", most = st.failed_mass;
    if (st.failed_family > most) worst = "family membership", most = st.failed_family;
    throw ConstructionError("empty block pool at n = " + std::to_string(n) + ", eps = " +
                            std::to_string(eps) + ": filter '" + worst + "' rejected " +
                            std::to_string(most) + " of " + std::to_string(st.tried) +
                            " candidates");
  }
  return pool;
}

// ------------------------------------------------------------ schedule

std::size_t ScheduleIndex::m() const {
  std::size_t s = 0;
  for (auto v : n) s += v;
  return s;
}

std::size_t ScheduleIndex::m_partial(std::size_t l) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i <= l && i < n.size(); ++i) s += n[i];
  return s;
}

SimplexPoint ScheduleIndex::tbar() const {
  std::vector<std::uint64_t> c(n.begin(), n.end());
  return normalized_counts(c);
}

double Schedule::eps_level(std::size_t L) const {
  return eps * std::pow(decay, static_cast<double>(L));
}

std::size_t Schedule::dim(std::size_t L) const { return std::min(L, L_max); }

std::optional<std::size_t> Schedule::find(std::size_t L, std::size_t j) const {
  for (std::size_t i = 0; i < built.size(); ++i) {
    if (built[i].L == L && built[i].j == j) return i;
  }
  return std::nullopt;
}

std::size_t Schedule::M(std::size_t L, std::size_t j, std::size_t p, std::size_t l) const {
  auto idx = find(L, j);
  if (!idx) throw DomainError("index (" + std::to_string(L) + "," + std::to_string(j) + ") not built");
  const auto& cur = built[*idx];
  if (p < 1 || p > cur.T) throw DomainError("p outside 1..T");
  if (l >= cur.n.size()) throw DomainError("l outside 0..d");
  std::size_t sum = 0;
  for (const auto& b : built) {
    if (b.L < L) sum += b.T * b.m();
  }
  for (const auto& b : built) {
    if (b.L == L && b.j < j) sum += b.T * b.m();
  }
  return sum + (p - 1) * cur.m() + cur.m_partial(l);
}

std::size_t Schedule::M(std::size_t L, std::size_t j, std::size_t p) const {
  auto idx = find(L, j);
  if (!idx) throw DomainError("index not built");
  return M(L, j, p, built[*idx].n.size() - 1);
}

std::size_t Schedule::M(std::size_t L, std::size_t j) const {
  auto idx = find(L, j);
  if (!idx) throw DomainError("index not built");
  return M(L, j, built[*idx].T);
}

std::size_t Schedule::total() const {
  if (built.empty()) return 0;
  return built.back().before + built.back().T * built.back().m();
}

nlohmann::json Schedule::to_json() const {
  nlohmann::json j;
  auto ms = nlohmann::json::array();
  for (const auto& mu : measures) ms.push_back(mu.to_json());
  j["measures"] = ms;
  j["L_max"] = L_max;
  j["eps"] = eps;
  j["decay"] = decay;
  j["budget"] = budget;
  j["thresholds"] = thresholds;
  j["net_sizes"] = net_sizes;
  j["complete"] = complete;
  auto arr = nlohmann::json::array();
  for (const auto& b : built) {
    arr.push_back({{"L", b.L},
                   {"j", b.j},
                   {"t", b.t},
                   {"n", b.n},
                   {"T", b.T},
                   {"eps", b.eps},
                   {"m", b.m()},
                   {"M", b.before + b.T * b.m()}});
  }
  j["indices"] = arr;
  return j;
}

Schedule Schedule::from_json(const nlohmann::json& j) {
  Schedule s;
  try {
    for (const auto& mj : j.at("measures")) s.measures.push_back(MarkovMeasure::from_json(mj));
    s.L_max = j.at("L_max").get<std::size_t>();
    s.eps = j.at("eps").get<double>();
    s.decay = j.value("decay", 0.9);
    s.budget = j.value("budget", std::size_t{0});
    s.thresholds = j.value("thresholds", std::vector<std::vector<std::size_t>>{});
    s.net_sizes = j.value("net_sizes", std::vector<std::size_t>{});
    s.complete = j.value("complete", false);
    std::size_t before = 0;
    for (const auto& bj : j.at("indices")) {
      ScheduleIndex b;
      b.L = bj.at("L").get<std::size_t>();
      b.j = bj.at("j").get<std::size_t>();
      b.t = bj.at("t").get<SimplexPoint>();
      b.n = bj.at("n").get<std::vector<std::size_t>>();
      b.T = bj.at("T").get<std::size_t>();
      b.eps = bj.value("eps", s.eps_level(b.L));
      if (b.n.empty() || b.n.size() != b.t.size()) throw DomainError("index arrays disagree in length");
      b.before = before;
      before += b.T * b.m();
      s.built.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed schedule: ") + e.what());
  }
  if (s.measures.empty()) throw DomainError("schedule without measures");
  return s;
}

namespace {

bool bijin_holds(const ScheduleIndex& b, std::size_t d) {
  double r = b.eps / static_cast<double>(d + 1);
  return max_norm_distance(b.tbar(), b.t) <= r + 1e-12;
}

// Smallest total m with n_l >= thr_l and |n_l/m - t_l| <= r.
std::optional<std::vector<std::size_t>> fit_block_lengths(const SimplexPoint& t,
                                                          const std::vector<std::size_t>& thr,
                                                          double r, std::size_t cap) {
  const std::size_t d = t.size();
  std::size_t start = 0;
  for (auto v : thr) start += v;
  for (std::size_t m = std::max<std::size_t>(start, 1); m <= cap; ++m) {
    double dm = static_cast<double>(m);
    std::vector<std::size_t> lo(d), hi(d);
    std::size_t slo = 0, shi = 0;
    bool ok = true;
    for (std::size_t l = 0; l < d && ok; ++l) {
      double a = std::ceil((t[l] - r) * dm - 1e-9);
      double b = std::floor((t[l] + r) * dm + 1e-9);
      lo[l] = std::max<std::size_t>(thr[l], a > 0 ? static_cast<std::size_t>(a) : 0);
      hi[l] = b > 0 ? static_cast<std::size_t>(b) : 0;
      if (lo[l] > hi[l]) ok = false;
      slo += lo[l];
      shi += hi[l];
    }
    if (!ok || slo > m || shi < m) continue;
    std::vector<std::size_t> n = lo;
    for (std::size_t left = m - slo; left > 0; --left) {
      std::size_t best = d;
      double gap = -std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < d; ++l) {
        if (n[l] >= hi[l]) continue;
        double g = t[l] * dm - static_cast<double>(n[l]);
        if (g > gap) gap = g, best = l;
      }
      n[best] += 1;
    }
    return n;
  }
  return std::nullopt;
}

}  // namespace

Schedule build_schedule(const MeasureSequence& measures, std::size_t L_max, double eps,
                        const std::vector<std::vector<std::size_t>>& thresholds,
                        const ScheduleOptions& opts) {
  if (measures.empty()) throw DomainError("schedule needs at least one measure");
  if (L_max + 1 > measures.size()) {
    throw DomainError("L_max = " + std::to_string(L_max) + " needs " + std::to_string(L_max + 1) +
                      " measures, got " + std::to_string(measures.size()));
  }
  if (!(eps > 0) || !(opts.decay > 0) || !(opts.decay <= 1)) throw DomainError("bad eps or decay");
  Schedule s;
  s.measures = measures;
  s.L_max = L_max;
  s.eps = eps;
  s.decay = opts.decay;
  s.budget = opts.budget;
  s.thresholds = thresholds;
  const std::size_t levels = std::max<std::size_t>(L_max, 1);
  if (thresholds.size() < levels) throw DomainError("missing block-length thresholds");

  std::vector<ScheduleIndex> all;
  for (std::size_t L = 1; L <= levels; ++L) {
    std::size_t d = s.dim(L);
    if (thresholds[L - 1].size() != d + 1) throw DomainError("threshold row has the wrong length");
    double eL = s.eps_level(L);
    auto net = simplex_net(d, eL);
    s.net_sizes.push_back(net.points.size());
    for (std::size_t j = 0; j < net.points.size(); ++j) {
      ScheduleIndex b;
      b.L = L;
      b.j = j + 1;
      b.t = net.points[j];
      b.eps = eL;
      auto n = fit_block_lengths(b.t, thresholds[L - 1], net.radius, opts.max_block_total);
      if (!n) {
        throw ConstructionError("(bijin) infeasible at index (" + std::to_string(L) + "," +
                                std::to_string(j + 1) + ") with block total up to " +
                                std::to_string(opts.max_block_total));
      }
      b.n = *n;
      all.push_back(std::move(b));
    }
  }

  std::size_t prev = 0;
  std::size_t prev_T = 0;
  s.complete = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto& b = all[i];
    const double m = static_cast<double>(b.m());
    std::size_t T = prev_T + 1;
    // (bizhong)
    double need = static_cast<double>(prev) / (b.eps * m);
    if (need >= static_cast<double>(T)) T = static_cast<std::size_t>(std::floor(need)) + 1;
    while (!(static_cast<double>(prev) < b.eps * static_cast<double>(T) * m)) ++T;
    // (shijian) of the next index
    if (i + 1 < all.size()) {
      std::size_t target = all[i + 1].L * all[i + 1].m();
      if (target >= prev) {
        std::size_t t2 = (target - prev) / b.m() + 1;
        T = std::max(T, t2);
      }
    }
    std::size_t after = prev + T * b.m();
    if (after > opts.budget) {
      s.complete = false;
      break;
    }
    b.T = T;
    b.before = prev;
    prev = after;
    prev_T = T;
    s.built.push_back(b);
  }
  return s;
}

std::vector<ConstraintCheck> check_schedule(const Schedule& s) {
  std::vector<ConstraintCheck> out;
  auto add = [&](std::string name, const ScheduleIndex& b, bool ok, std::string detail) {
    out.push_back({std::move(name), b.L, b.j, ok, std::move(detail)});
  };
  std::size_t running = 0;
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& b = s.built[i];
    const std::size_t d = s.dim(b.L);
    add("bijin", b, b.n.size() == d + 1 && bijin_holds(b, d),
        "max|tbar - t| = " + std::to_string(max_norm_distance(b.tbar(), b.t)));
    bool thr = true;
    if (b.L - 1 < s.thresholds.size()) {
      for (std::size_t l = 0; l < b.n.size() && l < s.thresholds[b.L - 1].size(); ++l) {
        thr = thr && b.n[l] >= s.thresholds[b.L - 1][l];
      }
    }
    add("threshold", b, thr, "n >= n-tilde");
    if (i > 0) {
      add("shijian", b, b.L * b.m() < running,
          std::to_string(b.L) + "*" + std::to_string(b.m()) + " < " + std::to_string(running));
      add("monotone T", b, b.T > s.built[i - 1].T,
          std::to_string(s.built[i - 1].T) + " < " + std::to_string(b.T));
    }
    add("bizhong", b,
        static_cast<double>(running) < b.eps * static_cast<double>(b.T) * static_cast<double>(b.m()),
        std::to_string(running) + " < " + std::to_string(b.eps) + "*" + std::to_string(b.T) + "*" +
            std::to_string(b.m()));

    // walk A3 in order and compare every closed-form M with its predecessor
    bool idx_ok = b.before == running;
    std::size_t pred = running;
    for (std::size_t p = 1; p <= b.T && idx_ok; ++p) {
      for (std::size_t l = 0; l < b.n.size() && idx_ok; ++l) {
        std::size_t cur = s.M(b.L, b.j, p, l);
        if (cur - pred != b.n[l]) idx_ok = false;
        pred = cur;
      }
      if (s.M(b.L, b.j, p) != s.M(b.L, b.j, p, b.n.size() - 1)) idx_ok = false;
    }
    idx_ok = idx_ok && s.M(b.L, b.j) == s.M(b.L, b.j, b.T) && s.M(b.L, b.j) == running + b.T * b.m();
    add("index arithmetic", b, idx_ok, "M_(L,j) = " + std::to_string(running + b.T * b.m()));
    running += b.T * b.m();
  }
  return out;
}

std::vector<std::vector<std::size_t>> block_thresholds(const Subshift& shift,
                                                       const GoodFamily& family,
                                                       const MeasureSequence& measures,
                                                       const Potential& f, std::size_t L_max,
                                                       double eps, std::size_t n0,
                                                       std::size_t min_pool,
                                                       const PoolOptions& pool,
                                                       const ScheduleOptions& opts) {
  if (measures.size() < L_max + 1) throw DomainError("not enough measures for L_max");
  const std::size_t levels = std::max<std::size_t>(L_max, 1);
  std::vector<std::vector<std::size_t>> out(levels);
  for (std::size_t L = 1; L <= levels; ++L) {
    std::size_t d = std::min(L, L_max);
    double eL = eps * std::pow(opts.decay, static_cast<double>(L));
    for (std::size_t l = 0; l <= d; ++l) {
      std::size_t n = std::max<std::size_t>(n0 + 1, pool.depth);
      for (;;) {
        if (n > opts.max_block_total) {
          throw ConstructionError("no block length up to " + std::to_string(opts.max_block_total) +
                                  " gives a pool for measure " + std::to_string(l) +
                                  " at level " + std::to_string(L));
        }
        PoolOptions po = pool;
        po.cap = min_pool;
        po.seed = mix_seed(pool.seed, L * 1000 + l, n);
        bool ok = false;
        try {
          ok = select_block_words(shift, family, measures[l], f, n, eL, po).words.size() >= min_pool;
        } catch (const ConstructionError&) {
          ok = false;
        }
        if (ok) break;
        n = std::max(n + 1, n + n / 4);
      }
      out[L - 1].push_back(n);
    }
  }
  return out;
}

PoolTable build_pools(const Subshift& shift, const GoodFamily& family, const Schedule& s,
                      const Potential& f, const PoolOptions& opts, unsigned workers) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    for (std::size_t l = 0; l < s.built[i].n.size(); ++l) slots.emplace_back(i, l);
  }
  std::vector<BlockPool> flat(slots.size());
  parallel_for(slots.size(), workers, [&](std::size_t k) {
    auto [i, l] = slots[k];
    PoolOptions po = opts;
    po.seed = mix_seed(opts.seed, i, l);
    flat[k] = select_block_words(shift, family, s.measures[l], f, s.built[i].n[l], s.built[i].eps, po);
  });
  PoolTable out(s.built.size());
  for (std::size_t k = 0; k < slots.size(); ++k) out[slots[k].first].push_back(std::move(flat[k]));
  return out;
}

ChoiceTable seeded_choices(const Schedule& s, const PoolTable& pools, std::uint64_t seed) {
  if (pools.size() != s.built.size()) throw DomainError("pool table does not match the schedule");
  std::mt19937_64 rng(seed);
  ChoiceTable c(s.built.size());
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& b = s.built[i];
    c[i].reserve(b.T * b.n.size());
    for (std::size_t p = 0; p < b.T; ++p) {
      for (std::size_t l = 0; l < b.n.size(); ++l) c[i].push_back(rng() % pools[i][l].words.size());
    }
  }
  return c;
}

PointPrefix MoranPoint::point() const { return PointPrefix(prefix, tail); }

MoranPoint assemble_moran_point(const Schedule& s, const PoolTable& pools,
                                const ChoiceTable& choices) {
  if (pools.size() != s.built.size() || choices.size() != s.built.size()) {
    throw DomainError("pool or choice table does not match the schedule");
  }
  MoranPoint x;
  x.choices = choices;
  x.prefix.reserve(s.total());
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& b = s.built[i];
    const std::size_t d1 = b.n.size();
    if (pools[i].size() != d1) throw DomainError("pool row has the wrong length");
    if (choices[i].size() != b.T * d1) {
      throw ConstructionError("choice table exhausted at index (" + std::to_string(b.L) + "," +
                              std::to_string(b.j) + ")");
    }
    for (std::size_t p = 0; p < b.T; ++p) {
      std::size_t group = x.prefix.size();
      for (std::size_t l = 0; l < d1; ++l) {
        const auto& pool = pools[i][l];
        std::size_t c = choices[i][p * d1 + l];
        if (c >= pool.words.size()) {
          throw ConstructionError("choice " + std::to_string(c) + " outside pool (" +
                                  std::to_string(b.L) + "," + std::to_string(b.j) + "," +
                                  std::to_string(l) + ") of size " +
                                  std::to_string(pool.words.size()));
        }
        if (pool.words[c].size() != b.n[l]) throw DomainError("pool word length disagrees with n");
        x.prefix.insert(x.prefix.end(), pool.words[c].begin(), pool.words[c].end());
      }
      if (i + 1 == s.built.size() && p + 1 == b.T) {
        x.tail.assign(x.prefix.begin() + static_cast<std::ptrdiff_t>(group), x.prefix.end());
      }
    }
  }
  return x;
}

MoranPoint assemble_moran_point(const Schedule& s, const PoolTable& pools, std::uint64_t seed) {
  return assemble_moran_point(s, pools, seeded_choices(s, pools, seed));
}

// ------------------------------------------------------------ checkpoints

bool CheckpointReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckpointRow& r) { return r.pass; });
}

std::string CheckpointReport::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "L,j,t0,t1,value,value_tbar,bound,pass\n";
  for (const auto& r : rows) {
    os << r.L << "," << r.j << "," << r.t0 << "," << r.t1 << "," << r.value << "," << r.value_tbar
       << "," << r.bound << "," << (r.pass ? 1 : 0) << "\n";
  }
  return os.str();
}

namespace {

MeasureSequence level_measures(const Schedule& s, std::size_t L) {
  return MeasureSequence(s.measures.begin(),
                         s.measures.begin() + static_cast<std::ptrdiff_t>(s.dim(L) + 1));
}

}  // namespace

CheckpointReport checkpoint_distances(const MoranPoint& x, const Schedule& s, std::size_t depth,
                                      unsigned workers) {
  if (s.measures.empty()) throw DomainError("schedule without measures");
  const int m = s.measures.front().alphabet_size();
  auto pt = x.point();
  CheckpointReport rep;
  rep.rows.resize(s.built.size());
  parallel_for(s.built.size(), workers, [&](std::size_t i) {
    const auto& b = s.built[i];
    auto& r = rep.rows[i];
    r.L = b.L;
    r.j = b.j;
    r.t1 = b.before + b.T * b.m();
    r.t0 = b.before;
    auto emp = empirical_measure(pt, r.t1, depth, m);
    auto seq = level_measures(s, b.L);
    r.value = bl_distance(emp, mix(seq, b.t, depth)).value;
    r.value_tbar = bl_distance(emp, mix(seq, b.tbar(), depth)).value;
    r.bound = 3.0 * b.eps + tail_error(m, depth);
    r.pass = r.value < r.bound;
  });
  return rep;
}

// ------------------------------------------------------------ counting

MoranCount moran_count(const Schedule& s, const PoolTable& pools, std::size_t L, std::size_t j,
                       std::size_t p, const Potential& f, const MoranPoint* x) {
  auto idx = s.find(L, j);
  if (!idx) throw DomainError("index not built");
  if (pools.size() != s.built.size()) throw DomainError("pool table does not match the schedule");
  auto log_size = [&](std::size_t i) {
    double acc = 0.0;
    for (const auto& pool : pools[i]) acc += std::log(static_cast<double>(pool.words.size()));
    return acc;
  };
  MoranCount c;
  c.L = L;
  c.j = j;
  c.p = p;
  c.M = s.M(L, j, p);
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& b = s.built[i];
    if (b.L < L || (b.L == L && b.j < j)) c.log_count += static_cast<double>(b.T) * log_size(i);
  }
  c.log_count += static_cast<double>(p) * log_size(*idx);
  auto st = markov_stats(s.measures.front(), f);
  c.rhs = static_cast<double>(c.M) * (st.entropy + st.integral - 5.0 * s.eps);
  if (x) c.birkhoff = birkhoff_sum(f, x->point(), c.M);
  c.local_pressure = (c.birkhoff + c.log_count) / static_cast<double>(c.M);
  return c;
}

std::vector<SuccessorRatio> successor_ratios(const Schedule& s) {
  std::vector<SuccessorRatio> out;
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& b = s.built[i];
    for (std::size_t p = 1; p <= b.T; ++p) {
      std::size_t next;
      if (p < b.T) {
        next = s.M(b.L, b.j, p + 1);
      } else if (i + 1 < s.built.size()) {
        next = s.M(s.built[i + 1].L, s.built[i + 1].j, 1);
      } else {
        break;
      }
      SuccessorRatio r{b.L, b.j, p, static_cast<double>(s.M(b.L, b.j, p)) / static_cast<double>(next), false};
      r.meets = r.ratio >= 1.0 - b.eps;
      out.push_back(r);
    }
  }
  return out;
}

// ------------------------------------------------------------ emergence

bool EmergenceReport::monotone() const {
  for (std::size_t a = 0; a < eps.size(); ++a) {
    for (std::size_t b = 0; b < eps.size(); ++b) {
      if (eps[a] < eps[b] && counts[a] < counts[b]) return false;
    }
  }
  return true;
}

nlohmann::json EmergenceReport::to_json() const {
  return {{"eps", eps}, {"counts", counts}, {"packing", packing}, {"samples", samples}, {"slope", slope}};
}

std::string EmergenceReport::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "eps,count,packing\n";
  for (std::size_t i = 0; i < eps.size(); ++i) os << eps[i] << "," << counts[i] << "," << packing[i] << "\n";
  return os.str();
}

EmergenceReport emergence_estimate(const PointPrefix& x, std::size_t n0, std::size_t n1,
                                   std::size_t stride, std::size_t depth,
                                   const std::vector<double>& eps_grid, int alphabet_size,
                                   const std::vector<std::size_t>& extra, unsigned workers) {
  if (n0 == 0 || n1 < n0 || stride == 0) throw DomainError("window needs 1 <= N0 <= N1 and stride >= 1");
  if (depth == 0) throw DomainError("depth must be positive");
  if (eps_grid.empty()) throw DomainError("empty eps grid");
  std::vector<std::size_t> times;
  for (std::size_t n = n0; n <= n1; n += stride) times.push_back(n);
  for (auto n : extra) {
    if (n >= n0 && n <= n1) times.push_back(n);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (x.available() < times.back() + depth - 1) throw DomainError("prefix shorter than the window");

  const std::size_t m = static_cast<std::size_t>(alphabet_size);
  double cells = std::pow(static_cast<double>(m), static_cast<double>(depth));
  if (cells > 1 << 24) throw ResourceError("depth too large for window counting", cells, 1 << 24);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(cells), 0);
  std::size_t top = static_cast<std::size_t>(cells) / m;
  std::size_t code = 0;
  for (std::size_t i = 0; i + 1 < depth; ++i) code = code * m + x.at(i);
  std::vector<CylinderMeasure> pts;
  std::size_t next = 0;
  for (std::size_t n = 1; next < times.size(); ++n) {
    code = (code % top) * m + x.at(n + depth - 2);
    ++counts[code];
    if (n != times[next]) continue;
    CylinderMeasure cm;
    cm.depth = depth;
    cm.alphabet_size = alphabet_size;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (!counts[c]) continue;
      Word w(depth);
      std::size_t v = c;
      for (std::size_t t = depth; t-- > 0;) {
        w[t] = static_cast<Symbol>(v % m);
        v /= m;
      }
      cm.weights[w] = static_cast<double>(counts[c]) / static_cast<double>(n);
    }
    pts.push_back(std::move(cm));
    ++next;
  }

  EmergenceReport rep;
  rep.eps = eps_grid;
  rep.samples = pts.size();
  auto cov = covering_numbers(pts, eps_grid, workers);
  for (const auto& c : cov) {
    rep.counts.push_back(c.greedy);
    rep.packing.push_back(c.packing);
  }
  if (eps_grid.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, k = static_cast<double>(eps_grid.size());
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
      double a = -std::log(eps_grid[i]);
      double b = std::log(static_cast<double>(rep.counts[i]));
      sx += a, sy += b, sxx += a * a, sxy += a * b;
    }
    double den = k * sxx - sx * sx;
    rep.slope = den > 0 ? (k * sxy - sx * sy) / den : 0.0;
  }
  return rep;
}

bool MoranEmergence::dominates() const {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (point.counts[i] < targets[i]) return false;
  }
  return true;
}

MoranEmergence moran_emergence(const MoranPoint& x, const Schedule& s, std::size_t depth,
                               const std::vector<double>& eps_grid, std::size_t samples,
                               unsigned workers) {
  if (s.built.empty()) throw DomainError("schedule has no built index");
  const int m = s.measures.front().alphabet_size();
  std::vector<std::size_t> checkpoints;
  std::vector<CylinderMeasure> targets;
  for (const auto& b : s.built) {
    checkpoints.push_back(b.before + b.T * b.m());
    targets.push_back(mix(level_measures(s, b.L), b.t, depth));
  }
  std::size_t n0 = checkpoints.front();
  std::size_t n1 = checkpoints.back();
  std::size_t stride = std::max<std::size_t>(1, (n1 - n0) / std::max<std::size_t>(samples, 1));
  MoranEmergence out;
  out.point = emergence_estimate(x.point(), n0, n1, stride, depth, eps_grid, m, checkpoints, workers);
  std::vector<double> doubled;
  for (double e : eps_grid) doubled.push_back(2.0 * e);
  for (const auto& c : covering_numbers(targets, doubled, workers)) out.targets.push_back(c.greedy);
  return out;
}

}  // namespace symdyn
