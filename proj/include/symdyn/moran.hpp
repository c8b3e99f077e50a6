#pragma once

#include "symdyn/edit.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

struct PoolOptions {
  std::size_t depth = 5;
  std::size_t cap = 16;
  // candidates drawn per requested word when sampling
  std::size_t attempts_per_word = 64;
  // exhaustive enumeration when #family words of length n is at most this
  std::size_t exhaustive_limit = 1u << 16;
  std::uint64_t seed = 1;
};

struct FilterStats {
  std::size_t tried = 0;
  std::size_t failed_family = 0;
  std::size_t failed_ce = 0;
  std::size_t failed_jifen = 0;
  std::size_t failed_mass = 0;
};

struct BlockPool {
  std::size_t n = 0;
  double eps = 0.0;
  std::vector<Word> words;
  bool exhaustive = false;
  std::size_t passing = 0;  // all passing words when exhaustive, else words.size()
  FilterStats stats;
  // n (h - 4 eps); compared against log #words only when exhaustive
  double log_bound = 0.0;

  bool meets_count_bound() const;
  nlohmann::json to_json(int alphabet_size) const;
};

struct WordFilterValues {
  double ce = 0.0;       // depth-k distance plus the boundary term
  double jifen_lo = 0.0; // range of S_n f / n - int f over continuations
  double jifen_hi = 0.0;
  double log_mass = 0.0;
};

WordFilterValues block_filter_values(const Word& w, const MarkovMeasure& mu, const Potential& f,
                                     std::size_t depth);
double log_cylinder_mass(const MarkovMeasure& mu, const Word& w);

// Words of length n in the family passing (ce), (jifen) and the cylinder-mass
// bounds e^{-n(h+eps)} <= mu[w] <= e^{-n(h-eps)}.
BlockPool select_block_words(const Subshift& shift, const GoodFamily& family,
                             const MarkovMeasure& mu, const Potential& f, std::size_t n, double eps,
                             const PoolOptions& opts = {});

struct ScheduleOptions {
  double decay = 0.9;         // eps_L = eps * decay^L
  std::size_t budget = 1'000'000;
  std::size_t max_block_total = 10'000'000;  // cap on m_(L,j)
};

struct ScheduleIndex {
  std::size_t L = 1;
  std::size_t j = 1;  // 1-based position in the net
  SimplexPoint t;
  std::vector<std::size_t> n;  // n_{L,j}(l), l = 0..d
  std::size_t T = 1;
  double eps = 0.0;            // eps_L
  std::size_t before = 0;      // sum of m T over earlier indices

  std::size_t m() const;                 // m_(L,j)
  std::size_t m_partial(std::size_t l) const;  // m_(L,j,l)
  SimplexPoint tbar() const;
};

struct Schedule {
  MeasureSequence measures;
  std::size_t L_max = 1;
  double eps = 0.1;
  double decay = 0.9;
  std::size_t budget = 0;
  // n-tilde thresholds by level and measure
  std::vector<std::vector<std::size_t>> thresholds;
  std::vector<std::size_t> net_sizes;  // J(L)
  std::vector<ScheduleIndex> built;
  bool complete = false;  // every index up to L_max fits the budget

  double eps_level(std::size_t L) const;
  // number of measures in use at level L, minus one
  std::size_t dim(std::size_t L) const;
  std::optional<std::size_t> find(std::size_t L, std::size_t j) const;

  // M_(L,j,p,l) from the closed-form sums; p in 1..T, l in 0..d
  std::size_t M(std::size_t L, std::size_t j, std::size_t p, std::size_t l) const;
  std::size_t M(std::size_t L, std::size_t j, std::size_t p) const;
  std::size_t M(std::size_t L, std::size_t j) const;
  std::size_t total() const;  // M of the last built index

  nlohmann::json to_json() const;
  static Schedule from_json(const nlohmann::json& j);
};

struct ConstraintCheck {
  std::string name;
  std::size_t L = 0;
  std::size_t j = 0;
  bool holds = false;
  std::string detail;
};

// Every (bijin), (shijian), (bizhong), monotonicity and index identity on the
// built part, recomputed from the integer arrays.
std::vector<ConstraintCheck> check_schedule(const Schedule& s);

// Smallest tried n for which a pool of at least min_pool words exists, per
// level and measure, scanning n geometrically from n0.
std::vector<std::vector<std::size_t>> block_thresholds(const Subshift& shift,
                                                       const GoodFamily& family,
                                                       const MeasureSequence& measures,
                                                       const Potential& f, std::size_t L_max,
                                                       double eps, std::size_t n0,
                                                       std::size_t min_pool,
                                                       const PoolOptions& pool,
                                                       const ScheduleOptions& opts = {});

Schedule build_schedule(const MeasureSequence& measures, std::size_t L_max, double eps,
                        const std::vector<std::vector<std::size_t>>& thresholds,
                        const ScheduleOptions& opts = {});

// pools[i][l] for built index i
using PoolTable = std::vector<std::vector<BlockPool>>;

PoolTable build_pools(const Subshift& shift, const GoodFamily& family, const Schedule& s,
                      const Potential& f, const PoolOptions& opts = {}, unsigned workers = 1);

// choices[i][(p-1)(d+1) + l] indexes pools[i][l]
using ChoiceTable = std::vector<std::vector<std::size_t>>;

ChoiceTable seeded_choices(const Schedule& s, const PoolTable& pools, std::uint64_t seed);

struct MoranPoint {
  Word prefix;  // x_1 .. x_{M_last}
  Word tail;    // last block group, repeated beyond the prefix
  ChoiceTable choices;

  PointPrefix point() const;
};

MoranPoint assemble_moran_point(const Schedule& s, const PoolTable& pools,
                                const ChoiceTable& choices);
MoranPoint assemble_moran_point(const Schedule& s, const PoolTable& pools, std::uint64_t seed);

struct CheckpointRow {
  std::size_t L = 0;
  std::size_t j = 0;
  std::size_t t0 = 0;
  std::size_t t1 = 0;
  double value = 0.0;        // against mix(t_{L,j})
  double value_tbar = 0.0;   // against mix(tbar(n_{L,j}))
  double bound = 0.0;        // 3 eps_L + tail
  bool pass = false;
};

struct CheckpointReport {
  std::vector<CheckpointRow> rows;
  bool pass() const;
  std::string to_csv() const;
};

CheckpointReport checkpoint_distances(const MoranPoint& x, const Schedule& s, std::size_t depth,
                                      unsigned workers = 1);

struct MoranCount {
  std::size_t L = 0;
  std::size_t j = 0;
  std::size_t p = 0;
  std::size_t M = 0;
  double log_count = 0.0;   // log #I_{L,j,p}
  double birkhoff = 0.0;    // S_M f(x)
  double rhs = 0.0;         // M (P_mu0 - 5 eps)
  double local_pressure = 0.0;  // (S_M f + log #I) / M
  bool holds() const { return log_count + birkhoff >= rhs - 1e-9; }
};

// log of prod_{k<L} prod_r prod_l #W(k,r,l)^{T_{k,r}}
//        * prod_{j'<j} prod_l #W(L,j',l)^{T_{L,j'}} * prod_l #W(L,j,l)^p
MoranCount moran_count(const Schedule& s, const PoolTable& pools, std::size_t L, std::size_t j,
                       std::size_t p, const Potential& f, const MoranPoint* x = nullptr);

struct SuccessorRatio {
  std::size_t L = 0;
  std::size_t j = 0;
  std::size_t p = 0;
  double ratio = 0.0;  // M_(L,j,p) / M of the successor
  bool meets = false;  // ratio >= 1 - eps_L
};

std::vector<SuccessorRatio> successor_ratios(const Schedule& s);

struct EmergenceReport {
  std::vector<double> eps;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> packing;
  std::size_t samples = 0;
  double slope = 0.0;

  bool monotone() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// V(x) surrogate {delta_x^n : n = n0, n0 + stride, ..., <= n1} plus `extra`.
EmergenceReport emergence_estimate(const PointPrefix& x, std::size_t n0, std::size_t n1,
                                   std::size_t stride, std::size_t depth,
                                   const std::vector<double>& eps_grid, int alphabet_size,
                                   const std::vector<std::size_t>& extra = {},
                                   unsigned workers = 1);

struct MoranEmergence {
  EmergenceReport point;
  std::vector<std::size_t> targets;  // covering counts of realized mixtures at 2 eps
  bool dominates() const;
};

// Window from the first checkpoint to the end of the prefix, checkpoints added.
MoranEmergence moran_emergence(const MoranPoint& x, const Schedule& s, std::size_t depth,
                               const std::vector<double>& eps_grid, std::size_t samples = 256,
                               unsigned workers = 1);

}  // namespace symdyn
