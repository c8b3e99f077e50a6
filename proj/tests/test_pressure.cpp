#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/pressure.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s, 10); }

const double kGolden = (1 + std::sqrt(5.0)) / 2;

Potential random_potential(std::mt19937_64& rng, int m, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.5);
  std::map<Word, double> table;
  for (const auto& c : oracle::all_words(m, k)) table[c] = u(rng);
  return Potential(k, m, table);
}

// brute force over all words filtered by an independent membership test
double brute_log_partition(const std::function<bool(const Word&)>& member, int m,
                           const Potential& f, std::size_t n) {
  double total = 0.0;
  for (const auto& u : oracle::all_words(m, n + f.depth() - 1)) {
    if (!member(u)) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(Word(u.begin() + static_cast<long>(i), u.begin() + static_cast<long>(i + f.depth())));
    total += std::exp(s);
  }
  return std::log(total);
}

}  // namespace

TEST_CASE("birkhoff sums") {
  auto c = Potential::constant(0.7, 2);
  CHECK(birkhoff_sum(c, PointPrefix::periodic(w("01")), 9) == doctest::Approx(6.3));
  auto ind = Potential::indicator(w("1"), 2);
  CHECK(birkhoff_sum(ind, PointPrefix::periodic(w("01")), 10) == doctest::Approx(5.0));
  Potential f2(2, 2, {{w("00"), 0.0}, {w("01"), 1.0}, {w("10"), 2.0}, {w("11"), 4.0}});
  // windows of (011)^inf: 01, 11, 10 repeated twice
  CHECK(birkhoff_sum(f2, PointPrefix::periodic(w("011")), 6) == doctest::Approx(2 * 7.0));
  CHECK_THROWS_AS(birkhoff_sum(f2, PointPrefix(w("0110")), 6), DomainError);
}

TEST_CASE("pressure closed forms") {
  auto full2 = Subshift::full(2);
  for (std::size_t n : {1u, 5u, 17u}) {
    CHECK(pressure_upper(full2, Potential::constant(0, 2), n).value == doctest::Approx(std::log(2.0)));
  }
  Potential f(1, 2, {{w("0"), 0.0}, {w("1"), std::log(3.0)}});
  for (std::size_t n : {1u, 4u, 30u}) {
    CHECK(pressure_upper(full2, f, n).value == doctest::Approx(std::log(4.0)));
  }
  auto golden = Subshift::parse("beta:golden");
  auto est = pressure_upper(golden, Potential::constant(0, 2), 30);
  CHECK(std::abs(est.value - std::log(kGolden)) < 0.05);
  CHECK(est.lower <= est.value);
  CHECK(est.upper >= est.value);
}

TEST_CASE("zero potential pressure is the counting entropy") {
  for (const char* d : {"sgap:1,2", "beta:golden", "beta:1.8", "sft:3:00,12", "xf:2"}) {
    auto shift = Subshift::parse(d);
    std::size_t n_max = shift.kind() == ShiftKind::Frequency ? 7 : 20;
    auto curve = pressure_curve(shift, Potential::constant(0, shift.alphabet_size()), n_max);
    for (const auto& e : curve) {
      auto c = count_language(shift, e.n);
      CHECK(e.value == doctest::Approx(c.log_count / static_cast<double>(e.n)));
    }
  }
}

TEST_CASE("transfer pass agrees with brute force for deeper potentials") {
  std::mt19937_64 rng(3);
  auto gap = Subshift::parse("sgap:1,2");
  std::set<std::size_t> s{1, 2};
  auto beta = Subshift::parse("beta:1.8");
  for (std::size_t k = 1; k <= 3; ++k) {
    auto f = random_potential(rng, 2, k);
    auto lz = log_partition(gap, f, 10);
    auto lzb = log_partition(beta, f, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
      CHECK(lz[n] == doctest::Approx(brute_log_partition(
                         [&](const Word& u) { return oracle::sgap_admissible(u, s); }, 2, f, n)));
      CHECK(lzb[n] == doctest::Approx(brute_log_partition(
                          [](const Word& u) { return oracle::beta_admissible(u, 1.8L); }, 2, f, n)));
    }
  }
}

TEST_CASE("log partition is subadditive") {
  std::mt19937_64 rng(8);
  for (const char* d : {"sgap:0,3,4+", "beta:quad:1,1,2,1", "full:3"}) {
    auto shift = Subshift::parse(d);
    auto f = random_potential(rng, shift.alphabet_size(), 2);
    auto lz = log_partition(shift, f, 24);
    for (std::size_t a = 1; a <= 12; ++a) {
      for (std::size_t b = 1; a + b <= 24; ++b) CHECK(lz[a + b] <= lz[a] + lz[b] + 1e-9);
    }
  }
}

TEST_CASE("measure pressure and the finite variational inequality") {
  auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
  CHECK(measure_pressure(fair, Potential::constant(0, 2)) == doctest::Approx(std::log(2.0)));
  auto fixed = MarkovMeasure::bernoulli({1.0, 0.0});
  Potential g(1, 2, {{w("0"), -0.4}, {w("1"), 3.0}});
  CHECK(measure_pressure(fixed, g) == doctest::Approx(-0.4));
  // f = log p_i makes P_mu vanish for Bernoulli(p)
  double p = 0.3;
  Potential lw(1, 2, {{w("0"), std::log(p)}, {w("1"), std::log(1 - p)}});
  CHECK(measure_pressure(MarkovMeasure::bernoulli({p, 1 - p}), lw) == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<std::pair<Subshift, MarkovMeasure>> pairs;
  pairs.emplace_back(Subshift::full(2), MarkovMeasure::bernoulli({0.9, 0.1}));
  pairs.emplace_back(Subshift::parse("beta:golden"),
                     MarkovMeasure({{1 / kGolden, 1 / (kGolden * kGolden)}, {1.0, 0.0}}));
  pairs.emplace_back(Subshift::parse("sft:3:00,12"),
                     MarkovMeasure({{0.0, 0.5, 0.5}, {0.3, 0.7, 0.0}, {0.2, 0.4, 0.4}}));
  std::mt19937_64 rng(21);
  for (auto& [shift, mu] : pairs) {
    REQUIRE(mu.compatible_with(shift));
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_potential(rng, shift.alphabet_size(), 2);
      CHECK(measure_pressure(mu, f) <= pressure_upper(shift, f, 30).value + 0.1);
    }
  }
}

TEST_CASE("periodic bounds on the infimum of measure pressures") {
  Potential f(1, 2, {{w("0"), 0.0}, {w("1"), 1.0}});
  auto b = p_inf_upper(Subshift::full(2), f, 6);
  REQUIRE(b.upper);
  CHECK(*b.upper == doctest::Approx(0.0));
  CHECK(b.orbit == w("0"));
  CHECK(*p_inf_upper(Subshift::full(3), Potential::constant(1.25, 3), 4).upper == doctest::Approx(1.25));
  auto golden = p_inf_upper(Subshift::parse("beta:golden"), Potential::indicator(w("1"), 2), 3);
  CHECK(*golden.upper == doctest::Approx(0.0));

  std::mt19937_64 rng(4);
  auto shift = Subshift::parse("sgap:1,2");
  auto g = random_potential(rng, 2, 2);
  auto pb = p_inf_upper(shift, g, 8);
  REQUIRE(pb.upper);
  CHECK(*pb.upper >= pb.lower);
  // the orbit measure of 01 has zero entropy and pressure equal to its average
  double avg01 = birkhoff_sum(g, PointPrefix::periodic(w("01")), 2) / 2;
  CHECK(*pb.upper <= avg01 + 1e-12);
}

TEST_CASE("local pressure") {
  auto x = PointPrefix::periodic(w("0110"));
  // uniform measure on L_n of the full shift
  auto lp = local_pressure(-12 * std::log(2.0), Potential::constant(0, 2), x, 12);
  CHECK(lp.value == doctest::Approx(std::log(2.0)));
  CylinderMeasure point;
  point.depth = 6;
  point.alphabet_size = 2;
  point.weights[x.take(6)] = 1.0;
  CHECK(local_pressure(point, Potential::constant(0, 2), x).value == doctest::Approx(0.0));
  CylinderMeasure other = point;
  other.weights.clear();
  other.weights[w("000000")] = 1.0;
  CHECK(local_pressure(other, Potential::constant(0, 2), x).infinite);
}

TEST_CASE("uniform cover bounds") {
  auto full2 = Subshift::full(2);
  auto zero = Potential::constant(0, 2);
  for (std::size_t n : {1u, 8u, 20u}) {
    CHECK(pesin_pitskel_upper(full2, zero, std::log(2.0), n).log_bound == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(pesin_pitskel_upper(full2, zero, 1.0, 20).log_bound <
        pesin_pitskel_upper(full2, zero, 1.0, 10).log_bound);
  CHECK(pesin_pitskel_upper(full2, zero, 0.5, 20).log_bound >
        pesin_pitskel_upper(full2, zero, 0.5, 10).log_bound);

  std::mt19937_64 rng(9);
  auto gap = Subshift::parse("sgap:1,2,3");
  for (std::size_t k = 1; k <= 3; ++k) {
    auto f = random_potential(rng, 2, k);
    for (std::size_t n = 3; n <= 10; ++n) {
      auto dp = pesin_pitskel_upper(gap, f, 0.3, n);
      auto words = enumerate_language(gap, n + k - 1);
      auto direct = pesin_pitskel_upper(words, f, 0.3, n);
      CHECK(dp.log_bound == doctest::Approx(direct.log_bound));
    }
  }
}

TEST_CASE("Bowen roots") {
  auto log2 = Potential::constant(std::log(2.0), 2);
  CHECK(bowen_root(Subshift::full(2), log2, 10).s == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(bowen_root(Subshift::full(4), Potential::constant(std::log(2.0), 4), 10).s ==
        doctest::Approx(2.0).epsilon(1e-5));
  auto golden = Subshift::parse("beta:golden");
  auto phi = Potential::constant(std::log(kGolden), 2);
  double prev = 10;
  for (std::size_t n : {10u, 40u, 160u}) {
    auto r = bowen_root(golden, phi, n);
    CHECK(r.lo <= r.s);
    CHECK(r.s <= r.hi);
    CHECK(std::abs(r.s - 1.0) < prev);
    prev = std::abs(r.s - 1.0);
  }
  CHECK(prev < 0.01);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  Potential pos(2, 2, {{w("00"), u(rng)}, {w("01"), u(rng)}, {w("10"), u(rng)}, {w("11"), u(rng)}});
  auto gap = Subshift::parse("sgap:1,2");
  double base = bowen_root(gap, pos, 20, 1e-9).s;
  for (double c : {1.5, 3.0}) {
    CHECK(bowen_root(gap, pos.scaled(c), 20, 1e-9).s == doctest::Approx(base / c).epsilon(1e-7));
  }
  CHECK_THROWS_AS(bowen_root(gap, Potential::indicator(w("1"), 2), 10), DomainError);
}
