#pragma once

#include "symdyn/potential.hpp"
#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace symdyn {

class Subshift;

// Probability distribution on depth-k cylinders.
struct CylinderMeasure {
  std::size_t depth = 0;
  int alphabet_size = 2;
  std::map<Word, double> weights;

  double mass(const Word& w) const;
  // Non-negative weights summing to 1 within tol, words of length depth.
  void validate(double tol = 1e-12) const;
  nlohmann::json to_json() const;
  static CylinderMeasure from_json(const nlohmann::json& j, int alphabet_size);
};

// Exact window counts behind an empirical measure.
struct EmpiricalCounts {
  std::size_t n = 0;
  std::size_t depth = 0;
  int alphabet_size = 2;
  std::map<Word, std::uint64_t> counts;

  CylinderMeasure measure() const;
};

// Counts of x_{j+1} ... x_{j+k} for 0 <= j < n.
EmpiricalCounts empirical_counts(const PointPrefix& x, std::size_t n, std::size_t k,
                                 int alphabet_size);
CylinderMeasure empirical_measure(const PointPrefix& x, std::size_t n, std::size_t k,
                                  int alphabet_size);

// Shift-metric distance between the canonical points c0^inf and c'0^inf.
double cylinder_distance(const Word& a, const Word& b);
// Bound on the distance change from ignoring symbols beyond depth k.
double tail_error(int alphabet_size, std::size_t k);

struct DistanceResult {
  double value = 0.0;
  double tail_error = 0.0;
  // Optimal test function on the atoms where the measures differ.
  std::map<Word, double> witness;
  std::size_t pivots = 0;
};

// sup of sum f (mu - nu) over f with |f| <= 1 and |f(c) - f(c')| <= d(c,c').
DistanceResult bl_distance(const CylinderMeasure& mu, const CylinderMeasure& nu);
// Kantorovich W1 with the untruncated ground distance.
double ot_distance(const CylinderMeasure& mu, const CylinderMeasure& nu);

class MarkovMeasure {
 public:
  MarkovMeasure() = default;
  // Stationary vector solved from P when not supplied.
  explicit MarkovMeasure(std::vector<std::vector<double>> transition,
                         std::vector<double> stationary = {});
  static MarkovMeasure bernoulli(const std::vector<double>& p);
  static MarkovMeasure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int alphabet_size() const { return static_cast<int>(p_.size()); }
  const std::vector<std::vector<double>>& transition() const { return p_; }
  const std::vector<double>& stationary() const { return pi_; }
  double cylinder_mass(const Word& w) const;
  // Entropy rate -sum pi_i P_ij log P_ij.
  double entropy() const;
  CylinderMeasure project(std::size_t k) const;
  // Every positive transition ij is a word of L_2(shift).
  bool compatible_with(const Subshift& shift) const;

 private:
  std::vector<std::vector<double>> p_;
  std::vector<double> pi_;
};

struct MarkovStats {
  double entropy = 0.0;
  double integral = 0.0;
};

MarkovStats markov_stats(const MarkovMeasure& m, const Potential& f);

using SimplexPoint = std::vector<double>;
using MeasureSequence = std::vector<MarkovMeasure>;

// Depth-k projection of sum_l t_l mu^(l).
CylinderMeasure mix(const MeasureSequence& seq, const SimplexPoint& t, std::size_t k);
SimplexPoint normalized_counts(const std::vector<std::uint64_t>& n);
double max_norm_distance(const SimplexPoint& a, const SimplexPoint& b);

struct SimplexNet {
  std::vector<SimplexPoint> points;
  std::size_t grid = 1;  // points lie in (1/grid) Z^{L+1}
  double radius = 0.0;   // eps / (L+1)
};

// Net of the probability simplex A_L with max-norm radius eps/(L+1),
// ordered by farthest-point traversal from the first vertex.
SimplexNet simplex_net(std::size_t L, double eps);

struct CoverResult {
  std::size_t greedy = 0;   // farthest-point cover size
  std::size_t packing = 0;  // points pairwise farther than 2 eps
  std::vector<std::size_t> centers;
};

using DistanceFn = std::function<double(std::size_t, std::size_t)>;

// Farthest-point cover from point 0; the order does not depend on eps, so
// counts are non-increasing in eps.
CoverResult covering_number(std::size_t count, const DistanceFn& dist, double eps,
                            unsigned workers = 1);
CoverResult covering_number(const std::vector<CylinderMeasure>& points, double eps,
                            unsigned workers = 1);
// Covering counts for every eps in the grid, sharing distance evaluations.
std::vector<CoverResult> covering_numbers(const std::vector<CylinderMeasure>& points,
                                          const std::vector<double>& eps_grid, unsigned workers = 1);

std::vector<std::vector<double>> distance_matrix(const std::vector<CylinderMeasure>& points,
                                                 unsigned workers = 1);

struct TimeShiftCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs + 1e-12; }
};

// W(delta_x^{t1}, delta_{sigma^{t0} x}^{t1 - t0}) against 2 t0 / t1 + tail.
TimeShiftCheck time_shift_bound_check(const PointPrefix& x, std::size_t t0, std::size_t t1,
                                      std::size_t k, int alphabet_size);

}  // namespace symdyn
