#pragma once

#include "symdyn/measures.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

struct PressureEstimate {
  double value = 0.0;
  std::size_t n = 0;
  // lower: best periodic-orbit average; upper: the horizon-n value itself,
  // which bounds P_top from above because log Z_n is subadditive
  double lower = 0.0;
  double upper = 0.0;
};

// log Z_n for n = 0..n_max, Z_n = sum over w in L_{n+k-1} of exp(S_n f on [w]).
std::vector<double> log_partition(const Subshift& shift, const Potential& f, std::size_t n_max,
                                  const EnumerationOptions& opts = {});

PressureEstimate pressure_upper(const Subshift& shift, const Potential& f, std::size_t n,
                                const EnumerationOptions& opts = {});
// One estimate per horizon 1..n_max from a single pass.
std::vector<PressureEstimate> pressure_curve(const Subshift& shift, const Potential& f,
                                             std::size_t n_max, const EnumerationOptions& opts = {});
std::string pressure_csv(const std::vector<PressureEstimate>& curve);

struct EntropyEstimate {
  std::size_t n = 0;
  double log_count = 0.0;
  double per_symbol = 0.0;  // (1/n) log #L_n
  double growth = 0.0;      // log #L_{n+1} - log #L_n
};

EntropyEstimate entropy_estimate(const Subshift& shift, std::size_t n,
                                 const EnumerationOptions& opts = {});

double measure_pressure(const MarkovMeasure& mu, const Potential& f);

struct PeriodicBound {
  std::optional<double> upper;  // min orbit average over admissible periods
  Word orbit;                   // period attaining it
  double lower = 0.0;           // min f
};

PeriodicBound p_inf_upper(const Subshift& shift, const Potential& f, std::size_t max_period);
// Largest periodic-orbit average; a lower bound for P_top.
std::optional<double> periodic_sup(const Subshift& shift, const Potential& f,
                                   std::size_t max_period);

struct LocalPressure {
  double value = 0.0;
  bool infinite = false;
};

// (1/n)(S_n f(x) - log nu([x]_n)) given log nu([x]_n).
LocalPressure local_pressure(double log_mass, const Potential& f, const PointPrefix& x,
                             std::size_t n);
LocalPressure local_pressure(const CylinderMeasure& nu, const Potential& f, const PointPrefix& x);

struct CoverBound {
  std::size_t n = 0;
  double s = 0.0;
  double log_bound = 0.0;  // log of sum over the uniform cover
};

// Uniform cover of the shift by its N-cylinders.
CoverBound pesin_pitskel_upper(const Subshift& shift, const Potential& f, double s, std::size_t n,
                               const EnumerationOptions& opts = {});
// Same for a set Z given by its admissible words of length N + k - 1.
CoverBound pesin_pitskel_upper(const std::vector<Word>& words, const Potential& f, double s,
                               std::size_t n);

struct BowenRoot {
  double s = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
  double pressure_at_s = 0.0;
};

// Root of s -> P_n(-s phi) by bisection; phi must be positive.
BowenRoot bowen_root(const Subshift& shift, const Potential& phi, std::size_t n,
                     double tolerance = 1e-6, const EnumerationOptions& opts = {});

}  // namespace symdyn
