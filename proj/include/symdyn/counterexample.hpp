#pragma once

#include "symdyn/frequency_shift.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

struct OmegaParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t p = 0;
  std::size_t r = 0;
  double eta = 1.0;
  double c = 2.0;

  nlohmann::json to_json() const;
};

// (1 (10)^p)^m (10)^r
Word build_omega(std::size_t p, std::size_t m, std::size_t r);

// Unscaled ties m to floor(ln n); Scaled takes m as given.
enum class BaseMode { Unscaled, Scaled };

struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct BaseReport {
  OmegaParams params;
  BaseMode mode = BaseMode::Unscaled;
  std::vector<Inequality> primary;
  std::vector<Inequality> derived;  // p > 2, n < 4pm
  bool primaries_hold() const;
  bool derived_hold() const;
  nlohmann::json to_json() const;
};

BaseReport check_base_conditions(const OmegaParams& params, BaseMode mode = BaseMode::Unscaled);

struct BaseSearch {
  double c = 0.0;
  double eta = 0.0;
  std::size_t min_m = 0;  // smallest m with eta m - 1 > c + ln 7
  double log_n_lower = 0.0;  // unscaled: n >= e^{min_m}
  std::size_t n_max = 0;
  std::optional<OmegaParams> instance;  // smallest unscaled n <= n_max
  nlohmann::json to_json() const;
};

BaseSearch find_base_instance(double c, double eta, std::size_t n_max = 300);

struct RatioRow {
  std::size_t cls = 0;
  std::size_t occurrences = 0;
  std::size_t window = 0;  // fewest window positions holding that many
  double bound = 0.0;      // f(window)
  double ratio = 0.0;
};

struct OmegaCertificate {
  Word omega;
  bool member = false;
  std::vector<RatioRow> ratios;
  // ln(i(2p+1)+2)/(i+1) for i = 0..m
  std::vector<double> sequence;
  bool decreasing_from_one = false;
  bool ratios_ok() const;
  bool certified() const { return member && ratios_ok(); }
  nlohmann::json to_json(int alphabet_size) const;
};

OmegaCertificate omega_membership_certificate(const OmegaParams& params,
                                              const FrequencyShiftSpec& spec);

struct ChainCheck {
  double eta = 0.0;
  double delta = 0.0;
  double lhs = 0.0;  // (1 + eta)/4
  double rhs = 0.0;  // 1/2 - eta/2 - 2 delta
  bool holds() const { return lhs < rhs; }
};

ChainCheck contradiction_chain(double eta, double delta);

struct BlockSearch {
  std::size_t max_mismatch = 0;  // largest count below delta n
  double budget = 0.0;           // f(7n)/4 for the class of "11"
  std::size_t structured_lower = 0;
  std::vector<char> best_classification;  // 'W', 'V' (the primed family), 'O'
  std::size_t exact_min = 0;             // F1 pairs allowed
  std::size_t exact_min_admissible = 0;  // F1 pairs excluded
  std::optional<std::size_t> brute_min_admissible;
};

struct AppViolationReport {
  OmegaParams params;
  ChainCheck chain;
  BlockSearch search;
  // every admissible delta-copy of omega exceeds the budget
  bool all_violate() const;
  nlohmann::json to_json() const;
};

// Scaled parameters; n must equal (2p+1)m + 2r.
AppViolationReport app_violation_check(const FrequencyShiftSpec& spec, const OmegaParams& params,
                                       double delta, double eta);

// Minimum number of class-`cls` pairs over words within `max_mismatch` of
// `target`; words containing a pair of class `forbidden` are skipped when
// forbidden >= 0.
std::size_t min_class_pairs(const Word& target, const FrequencyShiftSpec& spec, int cls,
                            int forbidden, std::size_t max_mismatch);

struct ProbeResult {
  bool ok = false;
  std::vector<std::size_t> mismatches;
  std::string reason;
};

// Tracing condition with witness z: x_i is followed from t_{i-1} for n steps.
ProbeResult app_definition_probe(const Subshift& shift, std::size_t n, double delta1,
                                 double delta2, const std::vector<PointPrefix>& targets,
                                 const PointPrefix& z, const std::vector<std::size_t>& t);

struct Witness {
  PointPrefix z;
  std::vector<std::size_t> t;
};

// z = x_1[0,n) x_2[0,n) ... 0^inf with t_i = i n.
Witness concatenation_witness(const std::vector<PointPrefix>& targets, std::size_t n);

}  // namespace symdyn
