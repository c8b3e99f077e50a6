#include "symdyn/pressure.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace symdyn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kDenseLimit = 20'000'000;

double log_sum_exp(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  if (v.empty() || v.back() == kNegInf) return kNegInf;
  double mx = v.back(), s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Scaled forward pass over (automaton state, last k-1 symbols).
class WindowDp {
 public:
  WindowDp(const LanguageAutomaton& a, const Potential& f)
      : a_(a), f_(f), m_(static_cast<std::size_t>(a.alphabet_size)),
        width_(ipow(m_, f.depth() - 1)), w_(a.state_count() * width_, 0.0) {
    w_[static_cast<std::size_t>(a.start) * width_] = 1.0;
    for (double v : f.table()) {
      if (!std::isnan(v)) fmax_ = std::max(fmax_, v);
    }
    if (fmax_ == kNegInf) fmax_ = 0.0;
  }

  void step(bool weighted) {
    std::vector<double> next(w_.size(), 0.0);
    const auto& table = f_.table();
    for (std::size_t s = 0; s < a_.state_count(); ++s) {
      for (std::size_t c = 0; c < width_; ++c) {
        double cur = w_[s * width_ + c];
        if (cur == 0.0) continue;
        for (std::size_t sym = 0; sym < m_; ++sym) {
          int t = a_.next[s][sym];
          if (t < 0) continue;
          std::size_t code = c * m_ + sym;
          double mult = 1.0;
          if (weighted) {
            double v = table[code];
            if (std::isnan(v)) throw DomainError("potential undefined on an admissible window");
            mult = std::exp(v - fmax_);
          }
          next[static_cast<std::size_t>(t) * width_ + code % width_] += cur * mult;
        }
      }
    }
    if (weighted) log_scale_ += fmax_;
    double mx = *std::max_element(next.begin(), next.end());
    if (mx > 0) {
      for (auto& v : next) v /= mx;
      log_scale_ += std::log(mx);
    }
    w_.swap(next);
  }

  double log_total() const {
    double s = 0.0;
    for (double v : w_) s += v;
    return s > 0 ? std::log(s) + log_scale_ : kNegInf;
  }

  // sum over states of weight times exp(max over k-1 symbol continuations)
  double log_total_with_best_tail() const {
    std::vector<double> terms;
    for (std::size_t s = 0; s < a_.state_count(); ++s) {
      for (std::size_t c = 0; c < width_; ++c) {
        double cur = w_[s * width_ + c];
        if (cur == 0.0) continue;
        double best = best_tail(static_cast<int>(s), c, f_.depth() - 1);
        if (best == kNegInf) continue;
        terms.push_back(std::log(cur) + log_scale_ + best);
      }
    }
    return log_sum_exp(std::move(terms));
  }

 private:
  double best_tail(int s, std::size_t c, std::size_t left) const {
    if (left == 0) return 0.0;
    double best = kNegInf;
    for (std::size_t sym = 0; sym < m_; ++sym) {
      int t = a_.next[static_cast<std::size_t>(s)][sym];
      if (t < 0) continue;
      std::size_t code = c * m_ + sym;
      double v = f_.table()[code];
      if (std::isnan(v)) throw DomainError("potential undefined on an admissible window");
      best = std::max(best, v + best_tail(t, code % width_, left - 1));
    }
    return best;
  }

  const LanguageAutomaton& a_;
  const Potential& f_;
  std::size_t m_;
  std::size_t width_;
  std::vector<double> w_;
  double log_scale_ = 0.0;
  double fmax_ = kNegInf;
};

std::optional<LanguageAutomaton> dense_automaton(const Subshift& shift, const Potential& f,
                                                 std::size_t horizon) {
  auto a = shift.automaton(horizon);
  if (!a) return std::nullopt;
  double size = static_cast<double>(a->state_count()) *
                std::pow(static_cast<double>(shift.alphabet_size()), static_cast<double>(f.depth() - 1));
  if (size > static_cast<double>(kDenseLimit)) return std::nullopt;
  return a;
}

void check_alphabets(const Subshift& shift, const Potential& f) {
  if (shift.alphabet_size() != f.alphabet_size()) {
    throw DomainError("potential and shift use different alphabets");
  }
}

}  // namespace

std::vector<double> log_partition(const Subshift& shift, const Potential& f, std::size_t n_max,
                                  const EnumerationOptions& opts) {
  check_alphabets(shift, f);
  const std::size_t k = f.depth();
  std::vector<double> out;
  out.reserve(n_max + 1);
  if (auto a = dense_automaton(shift, f, n_max + k - 1)) {
    WindowDp dp(*a, f);
    for (std::size_t i = 0; i + 1 < k; ++i) dp.step(false);
    out.push_back(dp.log_total());
    for (std::size_t n = 1; n <= n_max; ++n) {
      dp.step(true);
      out.push_back(dp.log_total());
    }
    return out;
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<double> terms;
    if (n + k - 1 == 0) {
      out.push_back(0.0);
      continue;
    }
    for (const auto& w : enumerate_language(shift, n + k - 1, opts)) {
      terms.push_back(birkhoff_sum_word(f, w, 0, n));
    }
    out.push_back(log_sum_exp(std::move(terms)));
  }
  return out;
}

std::optional<double> periodic_sup(const Subshift& shift, const Potential& f,
                                   std::size_t max_period) {
  std::optional<double> best;
  for (std::size_t p = 1; p <= max_period; ++p) {
    if (std::pow(static_cast<double>(shift.alphabet_size()), static_cast<double>(p)) > 2e5) break;
    for (const auto& u : enumerate_language(shift, p)) {
      if (!shift.periodic_point_admissible(u)) continue;
      double avg = birkhoff_sum(f, PointPrefix::periodic(u), p) / static_cast<double>(p);
      if (!best || avg > *best) best = avg;
    }
  }
  return best;
}

std::vector<PressureEstimate> pressure_curve(const Subshift& shift, const Potential& f,
                                             std::size_t n_max, const EnumerationOptions& opts) {
  if (n_max == 0) throw DomainError("pressure horizon must be positive");
  auto logz = log_partition(shift, f, n_max, opts);
  auto per = periodic_sup(shift, f, std::min<std::size_t>(n_max, 8));
  std::vector<PressureEstimate> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    PressureEstimate e;
    e.n = n;
    e.value = logz[n] / static_cast<double>(n);
    e.upper = e.value;
    e.lower = per ? std::min(*per, e.value) : std::min(f.min_value(), e.value);
    out.push_back(e);
  }
  return out;
}

PressureEstimate pressure_upper(const Subshift& shift, const Potential& f, std::size_t n,
                                const EnumerationOptions& opts) {
  return pressure_curve(shift, f, n, opts).back();
}

std::string pressure_csv(const std::vector<PressureEstimate>& curve) {
  std::ostringstream os;
  os.precision(12);
  os << "n,value,lower,upper\n";
  for (const auto& e : curve) os << e.n << "," << e.value << "," << e.lower << "," << e.upper << "\n";
  return os.str();
}

EntropyEstimate entropy_estimate(const Subshift& shift, std::size_t n,
                                 const EnumerationOptions& opts) {
  if (n == 0) throw DomainError("entropy horizon must be positive");
  auto c = count_language(shift, n, opts);
  auto c1 = count_language(shift, n + 1, opts);
  EntropyEstimate e;
  e.n = n;
  e.log_count = c.log_count;
  e.per_symbol = c.log_count / static_cast<double>(n);
  e.growth = c1.log_count - c.log_count;
  return e;
}

double measure_pressure(const MarkovMeasure& mu, const Potential& f) {
  auto st = markov_stats(mu, f);
  return st.entropy + st.integral;
}

PeriodicBound p_inf_upper(const Subshift& shift, const Potential& f, std::size_t max_period) {
  check_alphabets(shift, f);
  PeriodicBound out;
  out.lower = f.min_value();
  for (std::size_t p = 1; p <= max_period; ++p) {
    if (std::pow(static_cast<double>(shift.alphabet_size()), static_cast<double>(p)) > 2e5) break;
    for (const auto& u : enumerate_language(shift, p)) {
      if (!shift.periodic_point_admissible(u)) continue;
      double avg = birkhoff_sum(f, PointPrefix::periodic(u), p) / static_cast<double>(p);
      if (!out.upper || avg < *out.upper) {
        out.upper = avg;
        out.orbit = u;
      }
    }
  }
  return out;
}

LocalPressure local_pressure(double log_mass, const Potential& f, const PointPrefix& x,
                             std::size_t n) {
  if (n == 0) throw DomainError("local pressure needs n >= 1");
  LocalPressure lp;
  if (!(log_mass > kNegInf)) {
    lp.infinite = true;
    lp.value = std::numeric_limits<double>::infinity();
    return lp;
  }
  lp.value = (birkhoff_sum(f, x, n) - log_mass) / static_cast<double>(n);
  return lp;
}

LocalPressure local_pressure(const CylinderMeasure& nu, const Potential& f, const PointPrefix& x) {
  double mass = nu.mass(x.take(nu.depth));
  return local_pressure(mass > 0 ? std::log(mass) : kNegInf, f, x, nu.depth);
}

CoverBound pesin_pitskel_upper(const Subshift& shift, const Potential& f, double s, std::size_t n,
                               const EnumerationOptions& opts) {
  check_alphabets(shift, f);
  if (n == 0) throw DomainError("cover length must be positive");
  const std::size_t k = f.depth();
  CoverBound out;
  out.n = n;
  out.s = s;
  if (n + 1 >= k) {
    if (auto a = dense_automaton(shift, f, n + k - 1)) {
      WindowDp dp(*a, f);
      for (std::size_t i = 0; i + 1 < k; ++i) dp.step(false);
      for (std::size_t i = 0; i + k <= n; ++i) dp.step(true);
      out.log_bound = dp.log_total_with_best_tail() - s * static_cast<double>(n);
      return out;
    }
  }
  return pesin_pitskel_upper(enumerate_language(shift, n + k - 1, opts), f, s, n);
}

CoverBound pesin_pitskel_upper(const std::vector<Word>& words, const Potential& f, double s,
                               std::size_t n) {
  std::map<Word, double> best;
  for (const auto& w : words) {
    if (w.size() != n + f.depth() - 1) throw DomainError("cover words must have length N + k - 1");
    double v = birkhoff_sum_word(f, w, 0, n);
    Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    auto it = best.find(head);
    if (it == best.end()) {
      best.emplace(std::move(head), v);
    } else {
      it->second = std::max(it->second, v);
    }
  }
  std::vector<double> terms;
  for (const auto& [w, v] : best) terms.push_back(v);
  CoverBound out;
  out.n = n;
  out.s = s;
  out.log_bound = log_sum_exp(std::move(terms)) - s * static_cast<double>(n);
  return out;
}

BowenRoot bowen_root(const Subshift& shift, const Potential& phi, std::size_t n, double tolerance,
                     const EnumerationOptions& opts) {
  if (!(phi.min_value() > 0)) throw DomainError("Bowen equation needs a positive potential");
  auto pressure = [&](double s) {
    return log_partition(shift, phi.scaled(-s), n, opts).back() / static_cast<double>(n);
  };
  BowenRoot r;
  r.n = n;
  double p0 = pressure(0.0);
  r.lo = 0.0;
  r.hi = std::max(p0, 0.0) / phi.min_value() + 1.0;
  while (r.hi - r.lo > tolerance) {
    double mid = 0.5 * (r.lo + r.hi);
    if (pressure(mid) > 0) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  r.s = 0.5 * (r.lo + r.hi);
  r.pressure_at_s = pressure(r.s);
  return r;
}

}  // namespace symdyn
