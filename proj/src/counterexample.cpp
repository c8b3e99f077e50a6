#include "symdyn/counterexample.hpp"

#include "symdyn/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace symdyn {

nlohmann::json OmegaParams::to_json() const {
  return {{"n", n}, {"m", m}, {"p", p}, {"r", r}, {"eta", eta}, {"c", c}};
}

Word build_omega(std::size_t p, std::size_t m, std::size_t r) {
  if (p == 0 || m == 0) throw DomainError("omega needs p, m >= 1");
  Word block{1};
  for (std::size_t i = 0; i < p; ++i) {
    block.push_back(1);
    block.push_back(0);
  }
  Word out = repeat(block, m);
  for (std::size_t i = 0; i < r; ++i) {
    out.push_back(1);
    out.push_back(0);
  }
  return out;
}

namespace {

std::size_t floor_log(std::size_t n) {
  return static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n))));
}

Inequality strict(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs < rhs};
}

nlohmann::json inequalities(const std::vector<Inequality>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& q : v) arr.push_back({{"name", q.name}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"holds", q.holds}});
  return arr;
}

}  // namespace

bool BaseReport::primaries_hold() const {
  return std::all_of(primary.begin(), primary.end(), [](const auto& q) { return q.holds; });
}

bool BaseReport::derived_hold() const {
  return std::all_of(derived.begin(), derived.end(), [](const auto& q) { return q.holds; });
}

nlohmann::json BaseReport::to_json() const {
  return {{"params", params.to_json()},
          {"mode", mode == BaseMode::Unscaled ? "paper" : "scaled"},
          {"primary", inequalities(primary)},
          {"derived", inequalities(derived)},
          {"primaries_hold", primaries_hold()},
          {"derived_hold", derived_hold()}};
}

BaseReport check_base_conditions(const OmegaParams& q, BaseMode mode) {
  BaseReport rep;
  rep.params = q;
  rep.mode = mode;
  auto md = static_cast<double>(q.m), pd = static_cast<double>(q.p), nd = static_cast<double>(q.n);
  if (mode == BaseMode::Unscaled) {
    double fl = q.n > 0 ? static_cast<double>(floor_log(q.n)) : 0.0;
    rep.primary.push_back({"m = floor(ln n)", md, fl, md == fl});
  }
  rep.primary.push_back(strict("c + ln 7 < eta m - 1", q.c + std::log(7.0), q.eta * md - 1));
  double shape = (2 * pd + 1) * md + 2 * static_cast<double>(q.r);
  rep.primary.push_back({"n = (2p+1)m + 2r", nd, shape, nd == shape});
  rep.primary.push_back(strict("2 < ln(2p+3)", 2.0, std::log(2 * pd + 3)));
  rep.primary.push_back(strict("2r < 3m", 2 * static_cast<double>(q.r), 3 * md));
  rep.derived.push_back(strict("2 < p", 2.0, pd));
  rep.derived.push_back(strict("n < 4pm", nd, 4 * pd * md));
  return rep;
}

nlohmann::json BaseSearch::to_json() const {
  nlohmann::json j{{"c", c},
                   {"eta", eta},
                   {"min_m", min_m},
                   {"log_n_lower", log_n_lower},
                   {"n_max", n_max},
                   {"feasible", instance.has_value()}};
  j["instance"] = instance ? instance->to_json() : nlohmann::json(nullptr);
  return j;
}

BaseSearch find_base_instance(double c, double eta, std::size_t n_max) {
  if (!(eta > 0)) throw DomainError("eta must be positive");
  BaseSearch s;
  s.c = c;
  s.eta = eta;
  s.n_max = n_max;
  s.min_m = static_cast<std::size_t>(std::floor((c + std::log(7.0) + 1) / eta)) + 1;
  s.log_n_lower = static_cast<double>(s.min_m);
  if (s.log_n_lower > std::log(static_cast<double>(std::max<std::size_t>(n_max, 1)))) return s;
  auto start = static_cast<std::size_t>(std::ceil(std::exp(s.log_n_lower)));
  for (std::size_t n = start; n <= n_max; ++n) {
    std::size_t m = floor_log(n);
    for (std::size_t r = 0; 2 * r < 3 * m && 2 * r < n; ++r) {
      std::size_t rest = n - 2 * r;
      if (rest % m || (rest / m) % 2 == 0 || rest / m < 3) continue;
      OmegaParams q{n, m, (rest / m - 1) / 2, r, eta, c};
      if (check_base_conditions(q, BaseMode::Unscaled).primaries_hold()) {
        s.instance = q;
        return s;
      }
    }
  }
  return s;
}

bool OmegaCertificate::ratios_ok() const {
  return std::all_of(ratios.begin(), ratios.end(), [](const auto& r) { return r.ratio <= 1.0; });
}

nlohmann::json OmegaCertificate::to_json(int alphabet_size) const {
  auto rows = nlohmann::json::array();
  for (const auto& r : ratios) {
    rows.push_back({{"class", r.cls}, {"occurrences", r.occurrences}, {"window", r.window},
                    {"bound", r.bound}, {"ratio", r.ratio}});
  }
  return {{"omega", format_word(omega, alphabet_size)},
          {"length", omega.size()},
          {"member", member},
          {"ratios", rows},
          {"ratios_ok", ratios_ok()},
          {"sequence", sequence},
          {"decreasing_from_one", decreasing_from_one},
          {"certified", certified()}};
}

OmegaCertificate omega_membership_certificate(const OmegaParams& params,
                                              const FrequencyShiftSpec& spec) {
  spec.validate();
  OmegaCertificate cert;
  cert.omega = build_omega(params.p, params.m, params.r);
  cert.member = freq_membership(cert.omega, spec);
  if (cert.omega.size() >= spec.window) {
    std::size_t positions = cert.omega.size() - spec.window + 1;
    std::vector<std::vector<std::size_t>> occ(spec.classes.size());
    for (std::size_t i = 0; i < positions; ++i) {
      int c = spec.class_of(cert.omega, i);
      if (c >= 0) occ[static_cast<std::size_t>(c)].push_back(i);
    }
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
      const auto& f = spec.classes[c].f;
      if (f.kind == FrequencyFn::Kind::Linear) continue;
      const auto& pos = occ[c];
      for (std::size_t k = 1; k <= pos.size(); ++k) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i + k <= pos.size(); ++i) best = std::min(best, pos[i + k - 1] - pos[i] + 1);
        RatioRow row{c, k, best, f(best), 0.0};
        row.ratio = row.bound > 0 ? static_cast<double>(k) / row.bound : std::numeric_limits<double>::infinity();
        cert.ratios.push_back(row);
      }
    }
  }
  double step = 2.0 * static_cast<double>(params.p) + 1;
  for (std::size_t i = 0; i <= params.m; ++i) {
    double id = static_cast<double>(i);
    cert.sequence.push_back(std::log(id * step + 2) / (id + 1));
  }
  cert.decreasing_from_one = true;
  for (std::size_t i = 2; i < cert.sequence.size(); ++i) {
    if (!(cert.sequence[i] < cert.sequence[i - 1])) cert.decreasing_from_one = false;
  }
  return cert;
}

ChainCheck contradiction_chain(double eta, double delta) {
  ChainCheck c;
  c.eta = eta;
  c.delta = delta;
  c.lhs = (1 + eta) / 4;
  c.rhs = 0.5 - eta / 2 - 2 * delta;
  return c;
}

std::size_t min_class_pairs(const Word& target, const FrequencyShiftSpec& spec, int cls,
                            int forbidden, std::size_t max_mismatch) {
  if (spec.window != 2) throw DomainError("pair counting needs window width 2");
  const auto m = static_cast<std::size_t>(spec.alphabet_size);
  std::vector<int> pair_class(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      pair_class[a * m + b] = spec.class_of(Word{static_cast<Symbol>(a), static_cast<Symbol>(b)}, 0);
    }
  }
  const std::size_t inf = std::numeric_limits<std::size_t>::max() / 2;
  const std::size_t width = max_mismatch + 1;
  std::vector<std::size_t> dp(m * width, inf);
  if (target.empty()) return 0;
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t used = a != target[0];
    if (used <= max_mismatch) dp[a * width + used] = 0;
  }
  for (std::size_t i = 1; i < target.size(); ++i) {
    std::vector<std::size_t> next(m * width, inf);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t u = 0; u < width; ++u) {
        std::size_t cur = dp[a * width + u];
        if (cur >= inf) continue;
        for (std::size_t b = 0; b < m; ++b) {
          int pc = pair_class[a * m + b];
          if (forbidden >= 0 && pc == forbidden) continue;
          std::size_t used = u + (b != target[i]);
          if (used > max_mismatch) continue;
          std::size_t val = cur + (pc == cls);
          auto& slot = next[b * width + used];
          slot = std::min(slot, val);
        }
      }
    }
    dp.swap(next);
  }
  std::size_t best = *std::min_element(dp.begin(), dp.end());
  if (best >= inf) throw DomainError("no word within the mismatch budget avoids the forbidden class");
  return best;
}

namespace {

std::size_t brute_min_pairs(const Word& target, const FrequencyShiftSpec& spec, int cls, int forbidden,
                            std::size_t max_mismatch) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  Word u = target;
  const auto m = static_cast<Symbol>(spec.alphabet_size);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    std::size_t count = 0;
    bool bad = false;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      int c = spec.class_of(u, i);
      if (c == cls) ++count;
      if (forbidden >= 0 && c == forbidden) bad = true;
    }
    if (!bad) best = std::min(best, count);
    if (left == 0) return;
    for (std::size_t i = from; i < u.size(); ++i) {
      Symbol keep = u[i];
      for (Symbol s = 0; s < m; ++s) {
        if (s == keep) continue;
        u[i] = s;
        rec(i + 1, left - 1);
      }
      u[i] = keep;
    }
  };
  rec(0, max_mismatch);
  return best;
}

}  // namespace

bool AppViolationReport::all_violate() const {
  double b = search.budget;
  return static_cast<double>(search.structured_lower) > b &&
         static_cast<double>(search.exact_min_admissible) > b;
}

nlohmann::json AppViolationReport::to_json() const {
  nlohmann::json j;
  j["params"] = params.to_json();
  j["chain"] = {{"eta", chain.eta}, {"delta", chain.delta}, {"lhs", chain.lhs}, {"rhs", chain.rhs},
                {"holds", chain.holds()}};
  j["search"] = {{"max_mismatch", search.max_mismatch},
                 {"budget", search.budget},
                 {"structured_lower", search.structured_lower},
                 {"classification", std::string(search.best_classification.begin(), search.best_classification.end())},
                 {"exact_min", search.exact_min},
                 {"exact_min_admissible", search.exact_min_admissible}};
  j["search"]["brute_min_admissible"] =
      search.brute_min_admissible ? nlohmann::json(*search.brute_min_admissible) : nlohmann::json(nullptr);
  j["all_violate"] = all_violate();
  return j;
}

AppViolationReport app_violation_check(const FrequencyShiftSpec& spec, const OmegaParams& params,
                                       double delta, double eta) {
  spec.validate();
  if (spec.alphabet_size != 3 || spec.window != 2) throw DomainError("block search needs the ternary pair shift");
  if (params.p == 0 || params.m == 0 || params.n != (2 * params.p + 1) * params.m + 2 * params.r) {
    throw DomainError("parameters are inconsistent; run check_base_conditions first");
  }
  if (!(delta > 0)) throw DomainError("delta must be positive");
  if (params.m > 14) throw ResourceError("block classification search too large", std::pow(3.0, params.m), std::pow(3.0, 14));
  AppViolationReport rep;
  rep.params = params;
  rep.chain = contradiction_chain(eta, delta);

  int cls = spec.class_of(Word{1, 1}, 0);
  int forbidden = spec.class_of(Word{1, 2}, 0);
  const auto& f = spec.classes[static_cast<std::size_t>(cls)].f;
  auto nd = static_cast<double>(params.n);
  rep.search.budget = f(7 * params.n) / 4;
  rep.search.max_mismatch = static_cast<std::size_t>(std::ceil(delta * nd)) - 1;

  // W = 0a0...a0 costs >= 1 mismatch, the primed family a0a...0a costs >= 2p,
  // anything else free of F1 pairs holds an F2 pair inside the block
  const std::size_t m = params.m;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<int> types(m), best_types;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code, mis = 0, pairs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      types[m - 1 - i] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (types[i] == 0) mis += 1;
      if (types[i] == 1) mis += 2 * params.p;
      if (types[i] == 2) pairs += 1;
      if (i > 0 && types[i] == types[i - 1] && types[i] != 2) pairs += 1;
    }
    if (mis > rep.search.max_mismatch) continue;
    if (pairs < best) {
      best = pairs;
      best_types = types;
    }
  }
  rep.search.structured_lower = best;
  for (int t : best_types) rep.search.best_classification.push_back(t == 0 ? 'W' : t == 1 ? 'V' : 'O');

  Word omega = build_omega(params.p, params.m, params.r);
  rep.search.exact_min = min_class_pairs(omega, spec, cls, -1, rep.search.max_mismatch);
  rep.search.exact_min_admissible = min_class_pairs(omega, spec, cls, forbidden, rep.search.max_mismatch);
  if (params.n <= 24) {
    rep.search.brute_min_admissible = brute_min_pairs(omega, spec, cls, forbidden, rep.search.max_mismatch);
  }
  return rep;
}

ProbeResult app_definition_probe(const Subshift& shift, std::size_t n, double delta1,
                                 double delta2, const std::vector<PointPrefix>& targets,
                                 const PointPrefix& z, const std::vector<std::size_t>& t) {
  if (n == 0 || targets.empty()) throw DomainError("probe needs n >= 1 and at least one target");
  if (t.size() != targets.size() + 1 || t.front() != 0) {
    throw DomainError("times must be t_0 = 0 < t_1 < ... < t_k, one more than the targets");
  }
  auto max_gap = static_cast<std::size_t>(std::floor((1 + delta1) * static_cast<double>(n) + 1e-9));
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t[i - 1] || t[i] - t[i - 1] < n || t[i] - t[i - 1] > max_gap) {
      throw DomainError("gap t_" + std::to_string(i) + " - t_" + std::to_string(i - 1) +
                        " outside [n, (1 + delta1) n]");
    }
  }
  ProbeResult res;
  std::size_t span = t[t.size() - 2] + n;
  if (z.available() < span) throw DomainError("witness shorter than the traced span");
  if (!shift.is_in_language(z.take(span))) {
    res.reason = "witness prefix is not in the language";
    return res;
  }
  res.ok = true;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::size_t mis = 0;
    for (std::size_t j = 0; j < n; ++j) mis += z.at(t[i] + j) != targets[i].at(j);
    res.mismatches.push_back(mis);
    if (!(static_cast<double>(mis) < delta2 * static_cast<double>(n))) {
      res.ok = false;
      if (res.reason.empty()) res.reason = "target " + std::to_string(i + 1) + " traced with " + std::to_string(mis) + " mismatches";
    }
  }
  return res;
}

Witness concatenation_witness(const std::vector<PointPrefix>& targets, std::size_t n) {
  Witness w;
  Word z;
  w.t.push_back(0);
  for (const auto& x : targets) {
    auto block = x.take(n);
    z.insert(z.end(), block.begin(), block.end());
    w.t.push_back(z.size());
  }
  w.z = PointPrefix(z, Word{0});
  return w;
}

}  // namespace symdyn
