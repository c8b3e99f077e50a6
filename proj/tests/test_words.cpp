#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/subshift.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace symdyn;

namespace {

Word w(const char* s, int m = 10) { return parse_word(s, m); }

std::vector<Subshift> families() {
  return {Subshift::full(2),
          Subshift::full(3),
          Subshift::sft(2, {w("11")}),
          Subshift::sft(3, {w("12"), w("21"), w("000")}),
          Subshift::sgap(GapSet::finite({1, 2})),
          Subshift::sgap(GapSet::cofinite({1}, 3)),
          Subshift::beta(QuadraticNumber::parse("golden")),
          Subshift::beta(QuadraticNumber::parse("1.8")),
          Subshift::beta(QuadraticNumber::parse("quad:1,1,2,1")),
          Subshift::frequency(FrequencyShiftSpec::shipped(2.0))};
}

}  // namespace

TEST_CASE("word text format round-trips") {
  CHECK(format_word(parse_word("0120", 3), 3) == "0120");
  Word big{3, 11, 0};
  CHECK(format_word(big, 12) == "3,11,0");
  CHECK(parse_word("3,11,0", 12) == big);
  CHECK_THROWS_AS(parse_word("012", 2), DomainError);
  CHECK_THROWS_AS(parse_word("0a", 3), DomainError);
}

TEST_CASE("s-gap membership follows internal gaps only") {
  auto s = Subshift::sgap(GapSet::finite({1, 2}));
  CHECK(s.is_in_language(w("10101")));
  CHECK_FALSE(s.is_in_language(w("10001")));
  CHECK(s.is_in_language(w("0000100")));
  CHECK(s.is_in_language(w("000000")));
  CHECK_FALSE(s.is_in_language(w("11")));
  CHECK_THROWS_AS(s.is_in_language(w("102")), DomainError);
}

TEST_CASE("golden beta shift forbids 11") {
  auto s = Subshift::beta(QuadraticNumber::parse("golden"));
  CHECK(s.alphabet_size() == 2);
  CHECK_FALSE(s.is_in_language(w("0110")));
  CHECK(s.is_in_language(w("0101001")));
  auto [digits, finite] = s.beta_data().greedy_expansion_of_one(5);
  CHECK(finite);
  CHECK(digits == w("11"));
  CHECK(enumerate_language(s, 3).size() == 5);
  CHECK(*count_language(s, 5).exact == 13);
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate_language(Subshift::full(2), 3).size() == 8);
  auto sg = enumerate_language(Subshift::sgap(GapSet::finite({1, 2})), 1);
  REQUIRE(sg.size() == 2);
  CHECK(sg[0] == w("0"));
  CHECK(sg[1] == w("1"));
  CHECK(*count_language(Subshift::full(3), 4).exact == 81);
  CHECK_THROWS_AS(enumerate_language(Subshift::full(2), 0), DomainError);
}

TEST_CASE("enumeration cap raises a resource error with an estimate") {
  EnumerationOptions opts;
  opts.cap = 100;
  try {
    enumerate_language(Subshift::full(2), 10, opts);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.estimate() == doctest::Approx(1024));
    CHECK(e.cap() == 100);
  }
}

TEST_CASE("s-gap counts agree with exhaustive membership") {
  std::set<std::size_t> s{1, 2};
  auto shift = Subshift::sgap(GapSet::finite({1, 2}));
  for (std::size_t n = 1; n <= 14; ++n) {
    std::size_t brute = 0;
    for (const auto& u : oracle::all_words(2, n)) brute += oracle::sgap_admissible(u, s);
    CHECK(*count_language(shift, n).exact == brute);
    CHECK(enumerate_language(shift, n).size() == brute);
  }
  CHECK(*count_language(shift, 5).exact == 12);
}

TEST_CASE("cofinite gap sets") {
  auto shift = Subshift::sgap(GapSet::cofinite({1}, 3));
  CHECK(shift.is_in_language(w("10100001")));
  CHECK_FALSE(shift.is_in_language(w("1001")));
  std::set<std::size_t> s{1};
  for (std::size_t g = 3; g < 40; ++g) s.insert(g);
  for (std::size_t n = 1; n <= 13; ++n) {
    std::size_t brute = 0;
    for (const auto& u : oracle::all_words(2, n)) brute += oracle::sgap_admissible(u, s);
    CHECK(*count_language(shift, n).exact == brute);
  }
}

TEST_CASE("predicate gap sets respect their bound") {
  auto shift = Subshift::sgap(GapSet::predicate([](std::size_t g) { return g % 2 == 1; }, 50, "odd"));
  CHECK(shift.is_in_language(w("1010001")));
  CHECK_FALSE(shift.is_in_language(w("1001")));
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(*count_language(shift, n).exact == enumerate_language(shift, n).size());
  }
  std::vector<Word> long_gap{Word(60, 0)};
  long_gap[0].front() = 1;
  long_gap[0].back() = 1;
  CHECK_THROWS_AS(shift.is_in_language(long_gap[0]), DomainError);
}

TEST_CASE("beta membership agrees with the floating greedy oracle") {
  for (const char* b : {"golden", "1.8", "quad:1,1,2,1", "2.5", "quad:3,1,5,2"}) {
    auto q = QuadraticNumber::parse(b);
    auto shift = Subshift::beta(q);
    long double beta = q.to_double();
    for (std::size_t n = 1; n <= 10; ++n) {
      std::size_t brute = 0;
      for (const auto& u : oracle::all_words(shift.alphabet_size(), n)) {
        bool o = oracle::beta_admissible(u, beta);
        brute += o;
        REQUIRE_MESSAGE(shift.is_in_language(u) == o, b << " " << format_word(u, 10));
      }
      CHECK(*count_language(shift, n).exact == brute);
    }
  }
}

TEST_CASE("golden counts follow the Fibonacci recurrence") {
  auto shift = Subshift::beta(QuadraticNumber::parse("golden"));
  std::uint64_t a = 1, b = 2;  // F_2, F_3
  for (std::size_t n = 1; n <= 25; ++n) {
    std::uint64_t fib = b;  // F_{n+2}
    CHECK(*count_language(shift, n).exact == fib);
    if (n <= 20) CHECK(enumerate_language(shift, n).size() == fib);
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
}

TEST_CASE("sft with dead blocks drops words without an infinite future") {
  auto shift = Subshift::sft(2, {w("00"), w("01")});
  CHECK(shift.is_in_language(w("111")));
  CHECK_FALSE(shift.is_in_language(w("10")));
  CHECK_FALSE(shift.is_in_language(w("0")));
  CHECK(*count_language(shift, 6).exact == 1);
  auto golden = Subshift::sft(2, {w("11")});
  auto beta = Subshift::beta(QuadraticNumber::parse("golden"));
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(enumerate_language(golden, n) == enumerate_language(beta, n));
  }
}

TEST_CASE("languages are factorial and counts match enumeration") {
  for (const auto& shift : families()) {
    CAPTURE(shift.describe());
    std::size_t nmax = shift.alphabet_size() > 2 ? 8 : 12;
    for (std::size_t n = 1; n <= nmax; ++n) {
      auto words = enumerate_language(shift, n);
      CHECK(std::is_sorted(words.begin(), words.end()));
      CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
      CHECK(count_language(shift, n).exact.value_or(0) == words.size());
      if (n == nmax) {
        for (const auto& u : words) {
          for (std::size_t s = 0; s < u.size(); ++s) {
            for (std::size_t l = 1; s + l <= u.size(); ++l) {
              REQUIRE(shift.is_in_language(subword(u, s, l)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("counts are submultiplicative") {
  for (const auto& shift : families()) {
    CAPTURE(shift.describe());
    std::vector<std::uint64_t> c(13, 0);
    std::size_t nmax = shift.kind() == ShiftKind::Frequency ? 9 : 12;
    for (std::size_t n = 1; n <= nmax; ++n) c[n] = *count_language(shift, n).exact;
    for (std::size_t n = 1; n <= nmax; ++n) {
      for (std::size_t k = 1; n + k <= nmax; ++k) CHECK(c[n + k] <= c[n] * c[k]);
    }
  }
}

TEST_CASE("log-domain counting survives overflow") {
  auto lc = count_language(Subshift::full(4), 40);
  CHECK_FALSE(lc.exact.has_value());
  CHECK(lc.log_count == doctest::Approx(40 * std::log(4.0)));
}

TEST_CASE("shift metric") {
  auto zero = PointPrefix::periodic(w("0"));
  auto one0 = PointPrefix(w("1"), w("0"));
  auto m = shift_metric(zero, one0, 20, 2);
  CHECK(m.value == 0.5);
  CHECK(m.error_bound <= std::ldexp(1.0, -20));
  CHECK(shift_metric(zero, zero, 10, 2).value == 0.0);
  auto two = PointPrefix::periodic(w("2"));
  CHECK(shift_metric(two, zero, 10, 3).value == doctest::Approx(2 * (1 - std::ldexp(1.0, -10))));
  CHECK_THROWS_AS(shift_metric(PointPrefix(w("01")), zero, 5, 2), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> sym(0, 2);
  auto random_point = [&] {
    Word p(30);
    for (auto& s : p) s = static_cast<Symbol>(sym(rng));
    return PointPrefix(p);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_point(), y = random_point(), z = random_point();
    auto dxy = shift_metric(x, y, 25, 3), dyx = shift_metric(y, x, 25, 3);
    auto dyz = shift_metric(y, z, 25, 3), dxz = shift_metric(x, z, 25, 3);
    CHECK(dxy.value == dyx.value);
    CHECK(dxz.value <= dxy.value + dyz.value + 2 * dxy.error_bound);
    CHECK(shift_metric(x, x, 25, 3).value == 0.0);
  }
}

TEST_CASE("beta expansion digits") {
  auto two = QuadraticNumber::parse("2");
  auto golden = QuadraticNumber::parse("golden");
  CHECK(beta_expansion(QuadraticNumber::rational(0), golden, 6) == Word(6, 0));
  CHECK(beta_expansion(QuadraticNumber::parse("1/2"), two, 3) == w("100"));
  auto inv = QuadraticNumber::rational(1) / golden;
  CHECK(beta_expansion(inv, golden, 3) == w("100"));
  auto b = QuadraticNumber::parse("1.8");
  auto x = QuadraticNumber::parse("0.37");
  auto digits = beta_expansion(x, b, 20);
  auto ref = oracle::beta_digits(0.37L, 1.8L, 20);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    CHECK(digits[i] == ref[i]);
    CHECK(digits[i] < 2);
  }
  CHECK_THROWS_AS(beta_expansion(QuadraticNumber::rational(1), b, 3), DomainError);
}

TEST_CASE("periodic points") {
  auto golden = Subshift::beta(QuadraticNumber::parse("golden"));
  CHECK(golden.periodic_point_admissible(w("10")));
  CHECK(golden.periodic_point_admissible(w("0")));
  CHECK_FALSE(golden.periodic_point_admissible(w("1")));
  CHECK_FALSE(golden.periodic_point_admissible(w("110")));
  auto sg = Subshift::sgap(GapSet::finite({1, 2}));
  CHECK(sg.periodic_point_admissible(w("100")));
  CHECK_FALSE(sg.periodic_point_admissible(w("1000")));
  CHECK(sg.periodic_point_admissible(w("0")));
  auto xf = Subshift::frequency(FrequencyShiftSpec::shipped(2.0));
  CHECK(xf.periodic_point_admissible(w("01", 3)));
  CHECK_FALSE(xf.periodic_point_admissible(w("0", 3)));
}

TEST_CASE("shift descriptions parse") {
  CHECK(Subshift::parse("full:3").alphabet_size() == 3);
  CHECK(Subshift::parse("sgap:1,2,5+").gaps().contains(7));
  CHECK_FALSE(Subshift::parse("sgap:1,2,5+").gaps().contains(3));
  CHECK(Subshift::parse("sft:2:11,000").forbidden().size() == 2);
  CHECK(Subshift::parse("beta:quad:1,1,5,2").alphabet_size() == 2);
  CHECK(Subshift::parse("xf:2").alphabet_size() == 3);
  CHECK_THROWS_AS(Subshift::parse("circle:2"), DomainError);
  CHECK_THROWS_AS(Subshift::parse("beta:0.5"), DomainError);
}
