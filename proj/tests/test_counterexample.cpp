#include "oracles.hpp"
#include "symdyn/counterexample.hpp"
#include "symdyn/edit.hpp"
#include "symdyn/errors.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s, 10); }

std::size_t count_pair(const Word& u, Symbol a, Symbol b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) c += u[i] == a && u[i + 1] == b;
  return c;
}

// direct window scan of the defining inequality
bool xf_scan(const Word& u, double c) {
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    std::size_t f2 = 0;
    for (std::size_t j = 0; k + j + 1 < u.size(); ++j) {
      Symbol a = u[k + j], b = u[k + j + 1];
      if ((a == 1 && b == 2) || (a == 2 && b == 1)) return false;
      if (a == b) ++f2;
      if (static_cast<double>(f2) > c + std::log(static_cast<double>(j + 1))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("omega words") {
  CHECK(build_omega(2, 2, 1) == w("110101101010"));
  CHECK(count_pair(build_omega(2, 2, 1), 1, 1) == 2);
  CHECK(build_omega(4, 1, 0).size() == 9);
  for (std::size_t p = 1; p <= 6; ++p) {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::size_t r = 0; r <= 4; ++r) CHECK(build_omega(p, m, r).size() == (2 * p + 1) * m + 2 * r);
    }
  }
}

TEST_CASE("frequency membership against a direct scan") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  CHECK_FALSE(freq_membership(w("12"), spec));
  CHECK(freq_membership(w("0101010101"), spec));
  // smallest failing run of zeros: n - 1 pairs in n - 1 positions
  std::size_t first_fail = 0;
  for (std::size_t n = 1; n < 20 && !first_fail; ++n) {
    if (!freq_membership(Word(n, 0), spec)) first_fail = n;
  }
  CHECK(first_fail == 5);  // 4 > 2 + ln 4
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const auto& u : oracle::all_words(3, n)) CHECK(freq_membership(u, spec) == xf_scan(u, 2.0));
  }
}

TEST_CASE("membership is hereditary") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  std::mt19937_64 rng(17);
  std::size_t passing = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t len = 10 + rng() % 51;
    Word u;
    while (u.size() < len) {
      u.push_back(0);
      u.push_back(static_cast<Symbol>(1 + rng() % 2));
    }
    u.resize(len);
    for (int k = 0; k < 3; ++k) u[rng() % len] = static_cast<Symbol>(rng() % 3);
    if (!freq_membership(u, spec)) continue;
    ++passing;
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t l = 1; i + l <= len; ++l) REQUIRE(freq_membership(subword(u, i, l), spec));
    }
  }
  CHECK(passing > 50);
}

TEST_CASE("the alternating family lies in the language") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  auto g = GoodFamily::alternating();
  for (std::size_t n = 2; n <= 12; n += 2) {
    for (const auto& u : g.members(n)) CHECK(freq_membership(u, spec));
  }
  for (std::size_t a = 2; a <= 6; a += 2) {
    for (std::size_t b = 2; a + b <= 12; b += 2) {
      for (const auto& u : g.members(a)) {
        for (const auto& v : g.members(b)) CHECK(freq_membership(concat(u, v), spec));
      }
    }
  }
}

TEST_CASE("base conditions") {
  auto s = find_base_instance(2.0, 1.0);
  REQUIRE(s.instance);
  CHECK(s.min_m == 5);
  CHECK(s.instance->n == 149);
  CHECK(s.instance->m == 5);
  CHECK(s.instance->p == 14);
  CHECK(s.instance->r == 2);
  auto rep = check_base_conditions(*s.instance);
  CHECK(rep.primaries_hold());
  CHECK(rep.derived_hold());

  auto c100 = find_base_instance(100.0, 1.0);
  CHECK_FALSE(c100.instance);
  CHECK(c100.min_m == 103);
  CHECK(c100.log_n_lower >= 103);

  std::size_t feasible = 0;
  for (double c : {0.5, 1.0, 2.0, 3.0}) {
    for (double eta : {0.5, 1.0, 2.0}) {
      for (std::size_t n = 2; n <= 3000; ++n) {
        std::size_t m = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n))));
        for (std::size_t r = 0; 2 * r < 3 * m && 2 * r < n; ++r) {
          if ((n - 2 * r) % m || ((n - 2 * r) / m) % 2 == 0) continue;
          OmegaParams q{n, m, ((n - 2 * r) / m - 1) / 2, r, eta, c};
          auto b = check_base_conditions(q);
          if (!b.primaries_hold()) continue;
          ++feasible;
          CHECK(b.derived_hold());
        }
      }
    }
  }
  CHECK(feasible > 100);

  OmegaParams scaled{46, 6, 3, 2, 1.0, 2.0};
  CHECK_FALSE(check_base_conditions(scaled, BaseMode::Unscaled).primaries_hold());
  CHECK(check_base_conditions(scaled, BaseMode::Scaled).primaries_hold());
}

TEST_CASE("omega membership certificate") {
  auto params = *find_base_instance(2.0, 1.0).instance;
  auto spec = FrequencyShiftSpec::shipped(2.0);
  auto cert = omega_membership_certificate(params, spec);
  CHECK(cert.member);
  CHECK(cert.ratios_ok());
  CHECK(cert.certified());
  CHECK(cert.omega.size() == params.n);
  CHECK(xf_scan(cert.omega, 2.0));
  CHECK(cert.decreasing_from_one);
  // not decreasing from i = 0
  CHECK(cert.sequence[1] > cert.sequence[0]);
  CHECK(cert.ratios.size() == params.m);

  auto small = FrequencyShiftSpec::shipped(1.0);
  CHECK(freq_membership(cert.omega, small));
  Word bad = cert.omega;
  std::size_t mid = 29 * 2 + 10;  // inside the third block: ...1 0 1 0...
  REQUIRE(bad[mid] == 0);
  bad[mid] = 1;
  CHECK_FALSE(freq_membership(bad, small));
  CHECK(freq_membership(bad, FrequencyShiftSpec::shipped(2.0)) == xf_scan(bad, 2.0));
}

TEST_CASE("contradiction chain") {
  auto c = contradiction_chain(0.05, 0.05);
  CHECK(c.lhs == doctest::Approx(0.2625));
  CHECK(c.rhs == doctest::Approx(0.375));
  CHECK(c.holds());
  CHECK_FALSE(contradiction_chain(1.0, 0.125).holds());
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      double eta = i / 100.0, delta = j / 200.0;
      double margin = 1 - 3 * eta - 8 * delta;
      if (std::abs(margin) < 1e-9) continue;
      CHECK(contradiction_chain(eta, delta).holds() == (margin > 0));
    }
  }
}

TEST_CASE("block search defeats the product property budget") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  OmegaParams q{46, 6, 3, 2, 0.05, 2.0};
  auto rep = app_violation_check(spec, q, 0.05, 0.05);
  CHECK(rep.chain.holds());
  CHECK(rep.search.max_mismatch == 2);
  CHECK(rep.search.budget == doctest::Approx((2.0 + std::log(7.0 * 46)) / 4));
  CHECK(rep.search.structured_lower >= 4);
  CHECK(rep.search.exact_min_admissible >= rep.search.structured_lower);
  CHECK(rep.search.exact_min == 4);
  CHECK(rep.all_violate());
  auto j = rep.to_json();
  CHECK(j["all_violate"].get<bool>());

  OmegaParams tiny{21, 3, 3, 0, 0.05, 2.0};
  for (double delta : {0.05, 0.1, 0.15}) {
    auto t = app_violation_check(spec, tiny, delta, 0.05);
    REQUIRE(t.search.brute_min_admissible);
    CHECK(*t.search.brute_min_admissible == t.search.exact_min_admissible);
    CHECK(t.search.exact_min_admissible >= t.search.structured_lower);
  }
  CHECK_THROWS_AS(app_violation_check(spec, OmegaParams{40, 6, 3, 2, 1, 2}, 0.05, 0.05), DomainError);
}

TEST_CASE("mismatch-limited pair minimum against brute force") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Word target(8);
    for (auto& s : target) s = static_cast<Symbol>(rng() % 3);
    for (std::size_t mis = 0; mis <= 2; ++mis) {
      std::size_t best = 1000;
      for (const auto& u : oracle::all_words(3, 8)) {
        std::size_t d = 0;
        for (std::size_t i = 0; i < 8; ++i) d += u[i] != target[i];
        if (d > mis) continue;
        std::size_t f2 = count_pair(u, 0, 0) + count_pair(u, 1, 1) + count_pair(u, 2, 2);
        best = std::min(best, f2);
      }
      CHECK(min_class_pairs(target, spec, 1, -1, mis) == best);
    }
  }
}

TEST_CASE("approximate product probe") {
  auto full2 = Subshift::full(2);
  auto x1 = PointPrefix::periodic(w("0110"));
  CHECK(app_definition_probe(full2, 8, 0.5, 0.1, {x1}, x1, {0, 8}).ok);
  auto far = PointPrefix::periodic(w("1001"));
  auto res = app_definition_probe(full2, 8, 0.5, 0.1, {x1}, far, {0, 8});
  CHECK_FALSE(res.ok);
  CHECK(res.mismatches.front() == 8);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PointPrefix> targets;
    for (int k = 0; k < 4; ++k) {
      Word p(5);
      for (auto& s : p) s = static_cast<Symbol>(rng() % 2);
      targets.push_back(PointPrefix::periodic(p));
    }
    auto wit = concatenation_witness(targets, 12);
    CHECK(app_definition_probe(full2, 12, 0.1, 0.05, targets, wit.z, wit.t).ok);
  }
  CHECK_THROWS_AS(app_definition_probe(full2, 8, 0.5, 0.1, {x1}, x1, {0, 20}), DomainError);
  CHECK_THROWS_AS(app_definition_probe(full2, 8, 0.5, 0.1, {x1}, x1, {1, 9}), DomainError);

  auto xf = Subshift::frequency(FrequencyShiftSpec::shipped(2.0));
  auto zeros = PointPrefix::periodic(w("0"));
  auto probe = app_definition_probe(xf, 8, 0.5, 0.5, {zeros}, zeros, {0, 8});
  CHECK_FALSE(probe.ok);
  CHECK(probe.reason == "witness prefix is not in the language");
}

TEST_CASE("frequency spec JSON") {
  auto spec = FrequencyShiftSpec::shipped(2.0);
  auto j = spec.to_json();
  CHECK(j["classes"][1]["f"]["kind"] == "c_plus_log");
  auto back = FrequencyShiftSpec::from_json(j);
  CHECK(back.describe() == spec.describe());
  j["classes"][0]["words"].push_back("00");
  CHECK_THROWS_AS(FrequencyShiftSpec::from_json(j), DomainError);
}
