#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/intermediate.hpp"
#include "symdyn/pressure.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s, 10); }

// windows of length n of all concatenations of enough code words
std::set<Word> brute_lambda(const CodeSubshift& code, std::size_t n) {
  std::size_t blocks = n / code.m + 2;
  std::set<Word> out;
  std::vector<std::size_t> idx(blocks, 0);
  for (;;) {
    Word x;
    for (auto i : idx) x.insert(x.end(), code.words[i].begin(), code.words[i].end());
    for (std::size_t off = 0; off < code.m; ++off) out.insert(subword(x, off, n));
    std::size_t p = blocks;
    while (p > 0 && idx[p - 1] + 1 == code.words.size()) idx[--p] = 0;
    if (p == 0) break;
    ++idx[p - 1];
  }
  return out;
}

CodeSubshift make_code(std::size_t m, std::vector<const char*> ws) {
  CodeSubshift c;
  c.m = m;
  c.alphabet_size = 2;
  for (auto s : ws) c.words.push_back(w(s));
  return c;
}

}  // namespace

TEST_CASE("typical words") {
  auto full2 = Subshift::full(2);
  auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
  CHECK(typical_words(full2, fair, 3.0, 8).size() == 256);

  TypicalOptions deep;
  deep.depth = 8;
  auto zero = MarkovMeasure::bernoulli({1.0, 0.0});
  auto only = typical_words(full2, zero, 0.01, 10, deep);
  REQUIRE(only.size() == 1);
  CHECK(only.front() == Word(10, 0));

  // monotone in eta
  std::vector<Word> prev;
  for (double eta : {0.05, 0.1, 0.2, 0.3, 0.6}) {
    auto cur = typical_words(full2, fair, eta, 12);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }

  TypicalOptions par;
  par.workers = 3;
  auto t14 = typical_words(full2, fair, 0.2, 14, par);
  CHECK(t14 == typical_words(full2, fair, 0.2, 14));
  MESSAGE("#L_14 typical at eta 0.2: " << t14.size() << " vs e^7 = " << std::exp(7.0));
  CHECK(static_cast<double>(t14.size()) >= std::exp(7.0));
}

TEST_CASE("cardinality window") {
  auto win = cardinality_window(10, 0.5 * std::log(2.0), 0.2);
  CHECK(win.lower == 12);  // e^{10 (h - 0.1)} = 11.77
  CHECK(win.upper == 86);  // e^{10 (h + 0.1)} = 87.06
  CHECK(win.target == 32);
  auto w12 = cardinality_window(12, 0.5 * std::log(2.0), 0.2);
  CHECK(w12.target == 64);
}

TEST_CASE("build code on the full shift") {
  auto full2 = Subshift::full(2);
  auto fam = GoodFamily::language(full2, 0, true);
  auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
  double h = 0.5 * std::log(2.0);
  auto built = build_code(full2, fam, fair, h, 0.2, 0.3, 10);
  CHECK(built.code.m == 10);
  CHECK(built.code.words.size() == 32);
  CHECK(built.code.words.size() >= built.window.lower);
  CHECK(built.code.words.size() <= built.window.upper);
  CHECK(std::is_sorted(built.code.words.begin(), built.code.words.end()));
  for (const auto& c : built.code.words) CHECK(full2.is_in_language(c));

  auto rep = verify_entropy_window(built.code, 40, h, 0.2);
  CHECK(rep.pass());

  auto whole = build_code(full2, fam, fair, std::log(2.0), 0.5, 3.0, 8);
  CHECK(whole.code.words.size() == 256);
  CHECK(lambda_language_count(whole.code, 16).log_count == doctest::Approx(16 * std::log(2.0)));

  auto point = MarkovMeasure::bernoulli({1.0, 0.0});
  CHECK_THROWS_AS(build_code(full2, fam, point, h, 0.2, 0.01, 10), ConstructionError);
  CHECK_THROWS_AS(build_code(full2, GoodFamily::language(full2, 0, false), fair, h, 0.2, 0.3, 10),
                  DomainError);
}

TEST_CASE("code language count against window enumeration") {
  std::vector<CodeSubshift> codes{
      make_code(3, {"001", "010", "110"}),
      make_code(4, {"0110", "1011", "0001", "1111"}),
      make_code(2, {"01"}),
      make_code(5, {"00101", "11010"}),
  };
  for (const auto& code : codes) {
    for (std::size_t n = 1; n <= 11; ++n) {
      auto brute = brute_lambda(code, n);
      auto c = lambda_language_count(code, n);
      REQUIRE(c.exact);
      CHECK(*c.exact == brute.size());
      auto listed = lambda_language(code, n);
      CHECK(std::set<Word>(listed.begin(), listed.end()) == brute);
    }
  }
  auto single = make_code(4, {"0110"});
  for (std::size_t n = 1; n <= 20; ++n) CHECK(*lambda_language_count(single, n).exact <= 4);
}

TEST_CASE("code language bounds and entropy window") {
  auto full2 = Subshift::full(2);
  auto fam = GoodFamily::language(full2, 0, true);
  double h = 0.5 * std::log(2.0);
  auto code = build_code(full2, fam, MarkovMeasure::bernoulli({0.5, 0.5}), h, 0.2, 0.3, 10).code;
  double g = static_cast<double>(code.words.size());
  auto c40 = lambda_language_count(code, 40);
  CHECK(c40.log_count >= 4 * std::log(g));
  CHECK(c40.log_count <= std::log(10.0) + 5 * std::log(g));
  CHECK(*lambda_language_count(code, 10).exact >= code.words.size());

  // every word of L_n(Lambda) is in the ambient language
  auto sgap = Subshift::parse("sgap:1,2");
  auto gfam = GoodFamily::language(sgap, 0, false);
  CodeSubshift gc;
  gc.m = 6;
  gc.alphabet_size = 2;
  gc.words = {w("100100"), w("101010")};
  for (std::size_t n = 1; n <= 14; ++n) {
    for (const auto& u : lambda_language(gc, n)) CHECK(sgap.is_in_language(u));
  }

  // submultiplicative up to the factor #Gamma
  for (std::size_t a = 10; a <= 30; a += 10) {
    for (std::size_t b = 10; a + b <= 40; b += 10) {
      CHECK(lambda_language_count(code, a + b).log_count <=
            lambda_language_count(code, a).log_count + lambda_language_count(code, b).log_count +
                std::log(g) + 1e-9);
    }
  }

  CodeSubshift small = code;
  small.words.resize(2);
  CHECK_FALSE(verify_entropy_window(small, 40, h, 0.2).pass());

  // non-overlapping code: convergence to (1/M) log #Gamma
  auto prefix_code = make_code(4, {"1000", "1100", "1010", "1110"});
  auto rep = verify_entropy_window(prefix_code, 48, std::log(4.0) / 4, 0.0);
  CHECK(rep.pass());
  CHECK_THROWS_AS(verify_entropy_window(prefix_code, 10, 0.3, 0.1), DomainError);
}

TEST_CASE("code JSON round trip and measure check") {
  auto code = make_code(3, {"001", "010", "110"});
  auto back = CodeSubshift::from_json(code.to_json());
  CHECK(back.words == code.words);
  CHECK(back.m == 3);
  CHECK(code.to_json().dump() == back.to_json().dump());

  auto full2 = Subshift::full(2);
  auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
  auto built = build_code(full2, GoodFamily::language(full2, 0, true), fair, 0.5 * std::log(2.0), 0.2, 0.3, 10);
  auto s1 = code_measure_distance(built.code, fair, 2000, 4, 7);
  auto s2 = code_measure_distance(built.code, fair, 2000, 4, 7);
  CHECK(s1.distance == s2.distance);
  CHECK(s1.distance < 0.3 + s1.tail);
}

TEST_CASE("affine pressure mixing") {
  auto zero = Potential::constant(0, 2);
  auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
  auto point = MarkovMeasure::bernoulli({1.0, 0.0});
  double alpha = 0.3 * std::log(2.0);
  double t = mix_to_pressure(fair, point, zero, alpha);
  CHECK(t == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(t * measure_pressure(fair, zero) + (1 - t) * measure_pressure(point, zero) ==
        doctest::Approx(alpha).epsilon(1e-12));
  CHECK(mix_to_pressure(fair, point, zero, std::log(2.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(mix_to_pressure(fair, point, zero, 1.0), DomainError);
  CHECK_THROWS_AS(mix_to_pressure(fair, fair, zero, 0.1), DomainError);

  // P1 = 1, P2 = 3 with a constant potential and point masses
  Potential lin(1, 2, {{w("0"), 1.0}, {w("1"), 3.0}});
  auto one = MarkovMeasure::bernoulli({0.0, 1.0});
  CHECK(mix_to_pressure(point, one, lin, 2.0) == doctest::Approx(0.5));
}
