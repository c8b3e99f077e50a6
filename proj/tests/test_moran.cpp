#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/moran.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace symdyn;

namespace {

MarkovMeasure half() { return MarkovMeasure::bernoulli({0.5, 0.5}); }
MarkovMeasure ninety() { return MarkovMeasure::bernoulli({0.1, 0.9}); }

// word frequency, independent of the library's window counting
double ones(const Word& w, std::size_t from, std::size_t len) {
  double c = 0;
  for (std::size_t i = from; i < from + len; ++i) c += w[i];
  return c;
}

struct Shipped {
  Subshift shift = Subshift::full(2);
  GoodFamily family = GoodFamily::language(shift, 0, true);
  Potential f = Potential::constant(0.0, 2);
  Schedule schedule;
  PoolTable pools;
  MoranPoint x;
};

const Shipped& shipped() {
  static const Shipped s = [] {
    Shipped out;
    MeasureSequence ms{half(), ninety()};
    PoolOptions po;
    auto thr = block_thresholds(out.shift, out.family, ms, out.f, 1, 0.1, 8, 4, po);
    out.schedule = build_schedule(ms, 1, 0.1, thr);
    out.pools = build_pools(out.shift, out.family, out.schedule, out.f, po);
    out.x = assemble_moran_point(out.schedule, out.pools, 7);
    return out;
  }();
  return s;
}

Schedule manual(const MeasureSequence& ms, std::size_t L_max, std::vector<ScheduleIndex> idx) {
  Schedule s;
  s.measures = ms;
  s.L_max = L_max;
  s.eps = 0.1;
  std::size_t before = 0;
  for (auto& b : idx) {
    b.before = before;
    before += b.T * b.m();
  }
  s.built = std::move(idx);
  return s;
}

}  // namespace

TEST_CASE("block pools: filter examples") {
  auto full = Subshift::full(2);
  auto fam = GoodFamily::language(full, 0, true);
  auto zero = Potential::constant(0.0, 2);

  SUBCASE("eps >= 1 keeps every word") {
    PoolOptions po;
    po.depth = 3;
    po.cap = 1000;
    auto pool = select_block_words(full, fam, half(), zero, 8, 1.0, po);
    CHECK(pool.exhaustive);
    CHECK(pool.words == oracle::all_words(2, 8));
  }
  SUBCASE("point mass keeps only the fixed word") {
    MarkovMeasure dirac({{1.0, 0.0}, {1.0, 0.0}}, {1.0, 0.0});
    PoolOptions po;
    po.depth = 1;
    po.exhaustive_limit = 1u << 20;
    auto pool = select_block_words(full, fam, dirac, zero, 20, 0.01, po);
    REQUIRE(pool.words.size() == 1);
    CHECK(pool.words[0] == Word(20, 0));
    CHECK(pool.passing == 1);
  }
  SUBCASE("count bound at n = 20") {
    // the boundary term (k-1)/n must stay below eps
    PoolOptions po;
    po.depth = 2;
    po.cap = 1u << 20;
    po.exhaustive_limit = 1u << 20;
    auto pool = select_block_words(full, fam, half(), zero, 20, 0.2, po);
    CHECK(pool.exhaustive);
    CHECK(pool.meets_count_bound());
    CHECK(pool.log_bound == doctest::Approx(20 * (std::log(2.0) - 0.8)));
    // a word passes iff its pair frequencies in w0 sit close to uniform
    std::size_t expect = 0;
    for (const auto& w : oracle::all_words(2, 20)) {
      auto emp = empirical_measure(PointPrefix(w, Word{0}), 20, 2, 2);
      if (ot_distance(emp, half().project(2)) + 1.0 / 20 <= 0.2 + 1e-12) ++expect;
    }
    CHECK(pool.passing == expect);
  }
  SUBCASE("empty pool names a filter") {
    PoolOptions po;
    po.depth = 4;
    try {
      select_block_words(full, fam, half(), zero, 6, 0.01, po);
      FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
      CHECK(std::string(e.what()).find("ce") != std::string::npos);
    }
  }
}

TEST_CASE("block pools: every word is typical for every continuation") {
  auto full = Subshift::full(2);
  auto fam = GoodFamily::language(full, 0, true);
  auto f = Potential::indicator({1}, 2);
  const std::size_t k = 4;
  PoolOptions po;
  po.depth = k;
  po.cap = 12;
  std::mt19937_64 rng(3);
  for (const auto& mu : {half(), ninety()}) {
    const double eps = 0.12;
    const std::size_t n = 120;
    auto pool = select_block_words(full, fam, mu, f, n, eps, po);
    CHECK_FALSE(pool.exhaustive);
    CHECK(pool.words.size() == po.cap);
    double p1 = mu.stationary()[1];
    double h = -(p1 * std::log(p1) + (1 - p1) * std::log(1 - p1));
    for (const auto& w : pool.words) {
      double k1 = ones(w, 0, n);
      double log_mass = k1 * std::log(p1) + (n - k1) * std::log(1 - p1);
      CHECK(log_mass >= -double(n) * (h + eps) - 1e-9);
      CHECK(log_mass <= -double(n) * (h - eps) + 1e-9);
      CHECK(std::abs(k1 / n - p1) < eps);
      for (int trial = 0; trial < 3; ++trial) {
        Word y = w;
        for (std::size_t i = 0; i < k; ++i) y.push_back(static_cast<Symbol>(rng() & 1));
        auto emp = empirical_measure(PointPrefix(y), n, k, 2);
        CHECK(ot_distance(emp, mu.project(k)) <= eps + 1e-12);
      }
    }
  }
}

TEST_CASE("schedule: arithmetic examples") {
  SUBCASE("tbar against t") {
    ScheduleIndex b;
    b.n = {3, 1};
    b.t = {0.7, 0.3};
    auto tb = b.tbar();
    CHECK(tb[0] == doctest::Approx(0.75));
    CHECK(max_norm_distance(tb, b.t) == doctest::Approx(0.05));
    CHECK(max_norm_distance(tb, b.t) <= 0.1);
  }
  SUBCASE("degenerate single-measure schedule") {
    auto s = build_schedule({half()}, 0, 0.2, {{25}});
    REQUIRE(s.built.size() == 1);
    CHECK(s.complete);
    const auto& b = s.built[0];
    CHECK(b.n == std::vector<std::size_t>{25});
    for (std::size_t p = 1; p <= b.T; ++p) CHECK(s.M(1, 1, p) == p * 25);
    for (const auto& c : check_schedule(s)) CHECK_MESSAGE(c.holds, c.name);
  }
  SUBCASE("too few measures") {
    CHECK_THROWS_AS(build_schedule({half()}, 1, 0.1, {{10, 10}}), DomainError);
  }
}

TEST_CASE("schedule: built constraints and index arithmetic") {
  const auto& sh = shipped();
  const auto& s = sh.schedule;
  REQUIRE(s.built.size() >= 2);
  CHECK(s.total() <= 1'000'000);
  for (const auto& c : check_schedule(s)) CHECK_MESSAGE(c.holds, c.name << " at (" << c.L << "," << c.j << ") " << c.detail);

  // bizhong on the first two indices by direct sums
  const auto& a = s.built[0];
  const auto& b = s.built[1];
  double prior = double(a.T) * double(a.m());
  CHECK(prior < b.eps * double(b.T) * double(b.m()));
  CHECK(1 * b.m() < a.T * a.m());

  // block boundaries recomputed by walking the choice table
  std::size_t pos = 0;
  for (std::size_t i = 0; i < s.built.size(); ++i) {
    const auto& bi = s.built[i];
    for (std::size_t p = 1; p <= bi.T; ++p) {
      for (std::size_t l = 0; l < bi.n.size(); ++l) {
        const auto& w = sh.pools[i][l].words[sh.x.choices[i][(p - 1) * bi.n.size() + l]];
        pos += w.size();
        REQUIRE(s.M(bi.L, bi.j, p, l) == pos);
        REQUIRE(Word(sh.x.prefix.begin() + long(pos - w.size()), sh.x.prefix.begin() + long(pos)) == w);
      }
    }
  }
  CHECK(pos == sh.x.prefix.size());

  for (const auto& r : successor_ratios(s)) {
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio < 1.0);
  }

  auto back = Schedule::from_json(nlohmann::json::parse(s.to_json().dump()));
  CHECK(back.to_json() == s.to_json());
  CHECK(back.total() == s.total());
}

TEST_CASE("assembly") {
  auto full = Subshift::full(2);
  auto fam = GoodFamily::language(full, 0, true);
  auto zero = Potential::constant(0.0, 2);

  SUBCASE("single word pool gives w^inf") {
    Word w = parse_word("0110", 2);
    ScheduleIndex b;
    b.t = {1.0};
    b.n = {4};
    b.T = 5;
    auto s = manual({half()}, 0, {b});
    BlockPool pool;
    pool.n = 4;
    pool.words = {w};
    auto x = assemble_moran_point(s, {{pool}}, 11);
    CHECK(x.prefix == repeat(w, 5));
    auto pt = x.point();
    for (std::size_t i = 0; i < 100; ++i) CHECK(pt.at(i) == w[i % 4]);
  }
  SUBCASE("two pools interleave as scheduled") {
    ScheduleIndex b;
    b.t = {0.5, 0.5};
    b.n = {2, 3};
    b.T = 3;
    auto s = manual({half(), ninety()}, 1, {b});
    BlockPool p0, p1;
    p0.words = {parse_word("00", 2), parse_word("01", 2)};
    p1.words = {parse_word("111", 2), parse_word("101", 2)};
    ChoiceTable c{{0, 1, 1, 0, 1, 1}};
    auto x = assemble_moran_point(s, {{p0, p1}}, c);
    CHECK(format_word(x.prefix, 2) == "00101" "01111" "01101");
    c[0][2] = 5;
    CHECK_THROWS_AS(assemble_moran_point(s, {{p0, p1}}, c), ConstructionError);
    c[0].pop_back();
    CHECK_THROWS_AS(assemble_moran_point(s, {{p0, p1}}, c), ConstructionError);
  }
  SUBCASE("prefixes stay in the language") {
    auto golden = Subshift::sft(2, {parse_word("11", 2)});
    auto ends0 = GoodFamily::from_predicate(
        "no11-ending-0", 2,
        [&](const Word& w) { return !w.empty() && w.back() == 0 && golden.is_in_language(w); }, 0,
        true);
    MarkovMeasure mu({{0.5, 0.5}, {1.0, 0.0}});
    PoolOptions po;
    po.depth = 3;
    po.cap = 6;
    auto zero2 = Potential::constant(0.0, 2);
    auto thr = block_thresholds(golden, ends0, {mu}, zero2, 0, 0.3, 8, 2, po);
    ScheduleOptions so;
    so.budget = 20'000;
    auto s = build_schedule({mu}, 0, 0.3, thr, so);
    auto pools = build_pools(golden, ends0, s, zero2, po);
    auto x = assemble_moran_point(s, pools, 5);
    auto pt = x.point();
    CHECK(golden.is_in_language(pt.take(10'000)));
  }
  SUBCASE("shipped prefix") {
    const auto& sh = shipped();
    CHECK(sh.shift.is_in_language(Word(sh.x.prefix.begin(), sh.x.prefix.begin() + 10'000)));
    auto again = assemble_moran_point(sh.schedule, sh.pools, 7);
    CHECK(again.prefix == sh.x.prefix);
  }
}

TEST_CASE("checkpoints") {
  SUBCASE("shipped two-measure schedule") {
    const auto& sh = shipped();
    auto rep = checkpoint_distances(sh.x, sh.schedule, 5);
    REQUIRE(rep.rows.size() == sh.schedule.built.size());
    for (const auto& r : rep.rows) {
      CHECK(r.pass);
      CHECK(r.bound == doctest::Approx(3 * 0.09 + 0.0625));
      auto emp = empirical_measure(sh.x.point(), r.t1, 5, 2);
      SimplexPoint t = sh.schedule.built[*sh.schedule.find(r.L, r.j)].t;
      CHECK(ot_distance(emp, mix(sh.schedule.measures, t, 5)) == doctest::Approx(r.value).epsilon(1e-9));
    }
    CHECK(rep.to_csv().rfind("L,j,t0,t1,value,value_tbar,bound,pass\n", 0) == 0);
  }
  SUBCASE("corrupting one block of a long period is absorbed") {
    const auto& sh = shipped();
    MoranPoint x = sh.x;
    const auto& last = sh.schedule.built.back();
    std::size_t at = last.before;
    for (std::size_t i = 0; i < last.n[0]; ++i) x.prefix[at + i] = 1;
    auto rep = checkpoint_distances(x, sh.schedule, 5);
    CHECK(rep.pass());
    CHECK(rep.rows.back().value != doctest::Approx(checkpoint_distances(sh.x, sh.schedule, 5).rows.back().value));
  }
  SUBCASE("degenerate w^inf and a corrupted single period") {
    Word w = parse_word("0011010011", 2);
    ScheduleIndex b;
    b.t = {1.0};
    b.n = {10};
    b.T = 1;
    b.eps = 0.1;
    auto s = manual({half()}, 0, {b});
    BlockPool pool;
    pool.words = {w};
    auto x = assemble_moran_point(s, {{pool}}, 1);
    auto ok = checkpoint_distances(x, s, 5);
    CHECK(ok.pass());
    pool.words = {Word(10, 0)};
    auto bad = checkpoint_distances(assemble_moran_point(s, {{pool}}, 1), s, 5);
    CHECK_FALSE(bad.pass());
  }
}

TEST_CASE("counting") {
  ScheduleIndex b;
  b.t = {0.5, 0.5};
  b.n = {2, 3};
  b.T = 3;
  auto s = manual({half(), ninety()}, 1, {b});
  BlockPool p4, p2, p1;
  p4.words.assign(4, Word{0, 0});
  p2.words.assign(2, Word{0, 0, 0});
  p1.words = {Word{0, 0}};
  auto zero = Potential::constant(0.0, 2);
  auto c = moran_count(s, {{p4, p2}}, 1, 1, 3, zero);
  CHECK(c.log_count == doctest::Approx(3 * std::log(8.0)));
  CHECK(c.M == 15);
  auto single = moran_count(s, {{p1, p1}}, 1, 1, 2, zero);
  CHECK(single.log_count == 0.0);

  SUBCASE("earlier indices count fully, the current one up to p") {
    ScheduleIndex b2 = b;
    b2.j = 2;
    b2.T = 4;
    auto s2 = manual({half(), ninety()}, 1, {b, b2});
    auto c2 = moran_count(s2, {{p4, p2}, {p4, p4}}, 1, 2, 2, zero);
    CHECK(c2.log_count == doctest::Approx(3 * std::log(8.0) + 2 * std::log(16.0)));
  }
  SUBCASE("diagnostic on the shipped example at eps = 0.2") {
    const auto& sh = shipped();
    Schedule s2 = sh.schedule;
    s2.eps = 0.2;
    for (const auto& bi : s2.built) {
      for (std::size_t p = 1; p <= bi.T; p += std::max<std::size_t>(1, bi.T / 7)) {
        auto mc = moran_count(s2, sh.pools, bi.L, bi.j, p, sh.f, &sh.x);
        CHECK(mc.holds());
        CHECK(mc.local_pressure >= 0.0);
      }
    }
  }
}

TEST_CASE("emergence") {
  std::vector<double> grid{0.2, 0.1, 0.05, 0.025};
  SUBCASE("periodic point") {
    auto x = PointPrefix::periodic(parse_word("01", 2));
    auto rep = emergence_estimate(x, 1000, 5000, 2, 3, grid, 2);
    for (auto c : rep.counts) CHECK(c == 1);
    CHECK(rep.slope == doctest::Approx(0.0));
  }
  SUBCASE("two long regimes") {
    Word w;
    std::size_t len = 1000;
    for (int phase = 0; phase < 6; ++phase) {
      Word block = phase % 2 ? Word(len, 1) : repeat(parse_word("01", 2), len / 2);
      w.insert(w.end(), block.begin(), block.end());
      len *= 4;
    }
    auto x = PointPrefix(w, Word{0});
    auto rep = emergence_estimate(x, 1000, w.size() - 10, 997, 3, grid, 2);
    CHECK(rep.monotone());
    CHECK(rep.counts.back() >= 2);
    CHECK(rep.slope >= 0.0);
  }
  SUBCASE("window errors") {
    auto x = PointPrefix(Word(50, 0));
    CHECK_THROWS_AS(emergence_estimate(x, 10, 100, 1, 3, grid, 2), DomainError);
    CHECK_THROWS_AS(emergence_estimate(x, 10, 5, 1, 3, grid, 2), DomainError);
  }
  SUBCASE("Moran point covers its realized mixtures") {
    const auto& sh = shipped();
    auto e = moran_emergence(sh.x, sh.schedule, 5, grid);
    CHECK(e.point.monotone());
    CHECK(e.dominates());
    CHECK(e.point.slope >= 0.0);
    // the target cover, recomputed with the independent transport solver
    std::vector<CylinderMeasure> targets;
    for (const auto& b : sh.schedule.built) targets.push_back(mix(sh.schedule.measures, b.t, 5));
    for (std::size_t g = 0; g < grid.size(); ++g) {
      auto cov = covering_number(
          targets.size(), [&](std::size_t a, std::size_t b) { return ot_distance(targets[a], targets[b]); },
          2 * grid[g]);
      CHECK(cov.greedy == e.targets[g]);
    }
  }
}
