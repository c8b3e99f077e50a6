#include "config.hpp"

#include "symdyn/counterexample.hpp"
#include "symdyn/edit.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/intermediate.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/moran.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/pressure.hpp"
#include "symdyn/subshift.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#ifndef SYMDYN_VERSION
#define SYMDYN_VERSION "0.0.0"
#endif

using namespace symdyn;
using namespace symdyn::cli;
using nlohmann::json;

namespace {

struct Opt {
  std::string name;
  std::string help;
  bool literal = false;
};

struct Context {
  const Config& cfg;
  Output& out;
  unsigned workers;
};

struct Command {
  std::vector<std::string> path;
  std::string help;
  std::vector<Opt> opts;
  std::function<void(Context&)> run;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

EnumerationOptions enum_opts(const Context& c) {
  EnumerationOptions o;
  o.cap = c.cfg.positive("cap", 10'000'000);
  o.workers = c.workers;
  return o;
}

Subshift shift_of(const Config& cfg, const char* key = "shift") {
  return Subshift::parse(cfg.text(key));
}

Potential potential_of(const Config& cfg, const std::string& key, int m,
                       std::optional<std::string> fallback = std::nullopt) {
  return Potential::parse(cfg.text(key, std::move(fallback)), m);
}

// ---------------------------------------------------------------- lang

void lang_count(Context& c) {
  auto shift = shift_of(c.cfg);
  std::size_t n = c.cfg.positive("n");
  std::ostringstream csv;
  csv << "n,count,log_count\n";
  LanguageCount last;
  for (std::size_t k = 1; k <= n; ++k) {
    last = count_language(shift, k, enum_opts(c));
    csv << k << "," << (last.exact ? std::to_string(*last.exact) : "") << "," << num(last.log_count) << "\n";
  }
  c.out.files["counts.csv"] = csv.str();
  c.out.result = {{"shift", shift.describe()},
                  {"n", n},
                  {"count", last.exact ? json(std::to_string(*last.exact)) : json(nullptr)},
                  {"log_count", last.log_count}};
}

void lang_enum(Context& c) {
  auto shift = shift_of(c.cfg);
  std::size_t n = c.cfg.positive("n");
  auto words = enumerate_language(shift, n, enum_opts(c));
  std::ostringstream csv;
  csv << "word\n";
  for (const auto& w : words) csv << format_word(w, shift.alphabet_size()) << "\n";
  c.out.files["words.csv"] = csv.str();
  c.out.result = {{"shift", shift.describe()}, {"n", n}, {"count", words.size()}};
}

// ---------------------------------------------------------------- entropy / pressure

void entropy(Context& c) {
  auto shift = shift_of(c.cfg);
  std::size_t n = c.cfg.positive("n");
  std::ostringstream csv;
  csv << "n,log_count,per_symbol,growth\n";
  EntropyEstimate e;
  for (std::size_t k = 1; k <= n; ++k) {
    e = entropy_estimate(shift, k, enum_opts(c));
    csv << k << "," << num(e.log_count) << "," << num(e.per_symbol) << "," << num(e.growth) << "\n";
  }
  c.out.files["entropy.csv"] = csv.str();
  c.out.result = {{"shift", shift.describe()},
                  {"n", n},
                  {"value", e.per_symbol},
                  {"growth", e.growth},
                  {"log_count", e.log_count}};
}

void pressure(Context& c) {
  auto shift = shift_of(c.cfg);
  auto f = potential_of(c.cfg, "potential", shift.alphabet_size(), "const:0");
  std::size_t n = c.cfg.positive("n");
  auto curve = pressure_curve(shift, f, n, enum_opts(c));
  c.out.files["pressure.csv"] = pressure_csv(curve);
  const auto& last = curve.back();
  c.out.result = {{"shift", shift.describe()},
                  {"potential", f.name()},
                  {"n", n},
                  {"value", last.value},
                  {"lower", last.lower},
                  {"upper", last.upper}};
}

void dim(Context& c) {
  auto shift = shift_of(c.cfg);
  auto phi = potential_of(c.cfg, "phi", shift.alphabet_size());
  std::size_t n = c.cfg.positive("n", 12);
  double tol = c.cfg.positive_real("tol", 1e-6);
  auto r = bowen_root(shift, phi, n, tol, enum_opts(c));
  c.out.files["root.csv"] = "n,s,lo,hi,pressure_at_s\n" + std::to_string(r.n) + "," + num(r.s) + "," +
                            num(r.lo) + "," + num(r.hi) + "," + num(r.pressure_at_s) + "\n";
  c.out.result = {{"shift", shift.describe()}, {"phi", phi.name()}, {"n", r.n},
                  {"s", r.s},  {"lo", r.lo},           {"hi", r.hi},
                  {"pressure_at_s", r.pressure_at_s}};
}

// ---------------------------------------------------------------- edit

void edit_dist(Context& c) {
  int m = static_cast<int>(c.cfg.positive("alphabet", 2));
  auto u = parse_word(c.cfg.text("u"), m);
  auto v = parse_word(c.cfg.text("v"), m);
  auto d = edit_distance(u, v);
  c.out.files["distance.csv"] =
      "u,v,distance\n" + format_word(u, m) + "," + format_word(v, m) + "," + std::to_string(d) + "\n";
  c.out.result = {{"u", format_word(u, m)}, {"v", format_word(v, m)}, {"distance", d}};
}

GoodFamily family_of(const Config& cfg, const Subshift& shift) {
  auto name = cfg.text("family", "language");
  if (name == "language") return GoodFamily::language(shift, cfg.count("tau", 0), true);
  if (name == "alternating") return GoodFamily::alternating();
  throw ConfigError("family", "expected 'language' or 'alternating', got '" + name + "'");
}

void edit_approach(Context& c) {
  auto shift = shift_of(c.cfg);
  auto fam = family_of(c.cfg, shift);
  auto g = MistakeFn::parse(c.cfg.text("mistake", "log:2"));
  std::size_t n_max = c.cfg.positive("n_max");
  double ratio = c.cfg.positive_real("ratio", 1.0);
  auto rep = check_edit_approachable(shift, fam, g, n_max, ratio, enum_opts(c));
  c.out.files["approach.csv"] = rep.to_csv();
  c.out.result = {{"shift", shift.describe()},   {"family", fam.name()},
                  {"mistake", g.describe()},      {"n_max", n_max},
                  {"any_flag", rep.any_flag()},   {"ratio_at_max", rep.ratio_at_max},
                  {"ratio_ok", rep.ratio_ok}};
}

// ---------------------------------------------------------------- measure

void measure_wasserstein(Context& c) {
  std::size_t k = c.cfg.positive("depth", 4);
  auto mu = parse_measure(c.cfg.text("mu")).project(k);
  auto nu = parse_measure(c.cfg.text("nu")).project(k);
  auto bl = bl_distance(mu, nu);
  double ot = ot_distance(mu, nu);
  c.out.files["distance.csv"] =
      "depth,bl,ot,tail\n" + std::to_string(k) + "," + num(bl.value) + "," + num(ot) + "," + num(bl.tail_error) + "\n";
  c.out.result = {{"depth", k}, {"bl", bl.value}, {"ot", ot}, {"tail", bl.tail_error}};
}

void measure_cover(Context& c) {
  std::size_t k = c.cfg.positive("depth", 4);
  auto specs = c.cfg.texts("measures");
  auto grid = c.cfg.reals("eps", std::vector<double>{0.2, 0.1, 0.05, 0.025});
  std::vector<CylinderMeasure> pts;
  for (const auto& s : specs) pts.push_back(parse_measure(s).project(k));
  auto cov = covering_numbers(pts, grid, c.workers);
  std::ostringstream csv;
  csv << "eps,greedy,packing\n";
  json rows = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << num(grid[i]) << "," << cov[i].greedy << "," << cov[i].packing << "\n";
    rows.push_back({{"eps", grid[i]}, {"greedy", cov[i].greedy}, {"packing", cov[i].packing}});
  }
  c.out.files["cover.csv"] = csv.str();
  c.out.result = {{"points", pts.size()}, {"depth", k}, {"covers", rows}};
}

// ---------------------------------------------------------------- intermediate

void intermediate_build(Context& c) {
  auto shift = shift_of(c.cfg);
  auto nu = parse_measure(c.cfg.text("nu", "bernoulli:0.5,0.5"));
  double h = c.cfg.positive_real("h_target");
  double eps = c.cfg.positive_real("eps");
  double eta = c.cfg.positive_real("eta", eps);
  std::size_t m = c.cfg.positive("M");
  CodeBuildOptions opts;
  opts.typical.depth = c.cfg.positive("depth", 4);
  opts.typical.workers = c.workers;
  opts.typical.cap = c.cfg.positive("cap", 10'000'000);
  opts.mistake = MistakeFn::parse(c.cfg.text("mistake", "const:0"));
  auto fam = GoodFamily::language(shift, 0, true);
  auto b = build_code(shift, fam, nu, h, eps, eta, m, opts);
  c.out.files["code.json"] = b.code.to_json().dump(2) + "\n";
  std::ostringstream csv;
  csv << "word\n";
  for (const auto& w : b.code.words) csv << format_word(w, b.code.alphabet_size) << "\n";
  c.out.files["code.csv"] = csv.str();
  c.out.result = {{"M", m},
                  {"words", b.code.words.size()},
                  {"window", {{"lower", b.window.lower}, {"upper", b.window.upper}, {"target", b.window.target}}},
                  {"typical", b.typical},
                  {"distinct_images", b.distinct_images},
                  {"class_size", b.class_size}};
}

void intermediate_verify(Context& c) {
  auto code = CodeSubshift::from_json(json::parse(read_file(c.cfg.text("code"))));
  double h = c.cfg.positive_real("h_target");
  double eps = c.cfg.positive_real("eps");
  std::size_t n_max = c.cfg.positive("n_max", 4 * code.m);
  auto rep = verify_entropy_window(code, n_max, h, eps);
  c.out.files["window.csv"] = rep.to_csv();
  const auto& last = rep.rows.back();
  c.out.result = {{"M", code.m},     {"n", last.n},   {"value", last.value},
                  {"slack", last.slack}, {"lo", last.lo}, {"hi", last.hi},
                  {"pass", rep.pass()}};
}

// ---------------------------------------------------------------- moran

struct MoranSetup {
  Subshift shift;
  GoodFamily family;
  Potential f;
  Schedule schedule;
  PoolOptions pool;
  std::size_t depth;
};

MoranSetup moran_setup(Context& c) {
  auto shift = Subshift::parse(c.cfg.text("shift", "full:2"));
  auto family = family_of(c.cfg, shift);
  auto f = potential_of(c.cfg, "potential", shift.alphabet_size(), "const:0");
  MeasureSequence ms;
  for (const auto& s : c.cfg.texts("measures", std::vector<std::string>{"bernoulli:0.5,0.5", "bernoulli:0.1,0.9"})) {
    ms.push_back(parse_measure(s));
  }
  std::size_t L_max = c.cfg.count("L_max", ms.size() - 1);
  double eps = c.cfg.positive_real("eps", 0.1);
  PoolOptions po;
  po.depth = c.cfg.positive("depth", 5);
  po.cap = c.cfg.positive("cap", 16);
  po.seed = c.cfg.seed();
  ScheduleOptions so;
  so.decay = c.cfg.positive_real("decay", 0.9);
  so.budget = c.cfg.positive("budget", 1'000'000);
  auto thr = block_thresholds(shift, family, ms, f, L_max, eps, c.cfg.count("n0", 8),
                              c.cfg.positive("min_pool", 4), po, so);
  auto s = build_schedule(ms, L_max, eps, thr, so);
  return {shift, family, f, std::move(s), po, po.depth};
}

std::string constraint_csv(const std::vector<ConstraintCheck>& checks, bool& all) {
  std::ostringstream csv;
  csv << "constraint,L,j,holds,detail\n";
  all = true;
  for (const auto& k : checks) {
    all = all && k.holds;
    csv << k.name << "," << k.L << "," << k.j << "," << (k.holds ? 1 : 0) << ",\"" << k.detail << "\"\n";
  }
  return csv.str();
}

void moran_schedule(Context& c) {
  auto st = moran_setup(c);
  bool all = false;
  c.out.files["constraints.csv"] = constraint_csv(check_schedule(st.schedule), all);
  c.out.files["schedule.json"] = st.schedule.to_json().dump(2) + "\n";
  c.out.result = {{"indices", st.schedule.built.size()},
                  {"total", st.schedule.total()},
                  {"complete", st.schedule.complete},
                  {"constraints_hold", all},
                  {"thresholds", st.schedule.thresholds}};
}

MoranPoint moran_point(Context& c, const MoranSetup& st, PoolTable& pools) {
  pools = build_pools(st.shift, st.family, st.schedule, st.f, st.pool, c.workers);
  return assemble_moran_point(st.schedule, pools, c.cfg.seed());
}

void moran_build(Context& c) {
  auto st = moran_setup(c);
  PoolTable pools;
  auto x = moran_point(c, st, pools);
  const int m = st.shift.alphabet_size();
  c.out.files["point.txt"] = format_word(x.prefix, m) + "\n";
  json pj = json::array();
  for (std::size_t i = 0; i < pools.size(); ++i) {
    json row = json::array();
    for (const auto& p : pools[i]) row.push_back(p.to_json(m));
    pj.push_back({{"L", st.schedule.built[i].L}, {"j", st.schedule.built[i].j}, {"pools", row}});
  }
  c.out.files["pools.json"] = pj.dump(2) + "\n";
  std::size_t check = std::min<std::size_t>(x.prefix.size(), 10'000);
  c.out.result = {{"length", x.prefix.size()},
                  {"in_language", st.shift.is_in_language(Word(x.prefix.begin(), x.prefix.begin() + static_cast<long>(check)))},
                  {"checked_prefix", check},
                  {"prefix_hash", fnv1a_hex(c.out.files["point.txt"])}};
}

void moran_checkpoints(Context& c) {
  auto st = moran_setup(c);
  PoolTable pools;
  auto x = moran_point(c, st, pools);
  auto rep = checkpoint_distances(x, st.schedule, st.depth, c.workers);
  c.out.files["checkpoints.csv"] = rep.to_csv();
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"L", r.L}, {"j", r.j}, {"t1", r.t1}, {"value", r.value}, {"bound", r.bound}, {"pass", r.pass}});
  }
  c.out.result = {{"checkpoints", rows}, {"pass", rep.pass()}};
}

void moran_emergence_cmd(Context& c) {
  auto st = moran_setup(c);
  PoolTable pools;
  auto x = moran_point(c, st, pools);
  auto grid = c.cfg.reals("grid", std::vector<double>{0.2, 0.1, 0.05, 0.025});
  auto e = moran_emergence(x, st.schedule, st.depth, grid, c.cfg.positive("samples", 256), c.workers);
  std::ostringstream csv;
  csv << "eps,count,packing,target_cover\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << num(grid[i]) << "," << e.point.counts[i] << "," << e.point.packing[i] << "," << e.targets[i] << "\n";
  }
  c.out.files["emergence.csv"] = csv.str();
  c.out.result = {{"emergence", e.point.to_json()},
                  {"target_cover", e.targets},
                  {"monotone", e.point.monotone()},
                  {"dominates", e.dominates()}};
}

void moran_count_cmd(Context& c) {
  auto st = moran_setup(c);
  PoolTable pools;
  auto x = moran_point(c, st, pools);
  std::ostringstream csv;
  csv << "L,j,p,M,log_count,birkhoff,rhs,local_pressure,holds\n";
  bool all = true;
  for (const auto& b : st.schedule.built) {
    for (std::size_t p : {std::size_t{1}, b.T}) {
      auto mc = moran_count(st.schedule, pools, b.L, b.j, p, st.f, &x);
      all = all && mc.holds();
      csv << mc.L << "," << mc.j << "," << mc.p << "," << mc.M << "," << num(mc.log_count) << ","
          << num(mc.birkhoff) << "," << num(mc.rhs) << "," << num(mc.local_pressure) << ","
          << (mc.holds() ? 1 : 0) << "\n";
      if (b.T == 1) break;
    }
  }
  c.out.files["count.csv"] = csv.str();
  c.out.result = {{"diagnostic_holds", all}, {"indices", st.schedule.built.size()}};
}

// ---------------------------------------------------------------- xf

FrequencyShiftSpec xf_spec(const Config& cfg) {
  auto src = cfg.text("spec", "shipped");
  if (src == "shipped") return FrequencyShiftSpec::shipped(cfg.real("c", 2.0));
  return FrequencyShiftSpec::from_json(json::parse(read_file(src)));
}

OmegaParams omega_params(const Config& cfg) {
  OmegaParams p;
  p.p = cfg.positive("p");
  p.m = cfg.positive("m");
  p.r = cfg.count("r", 0);
  p.n = (2 * p.p + 1) * p.m + 2 * p.r;
  p.c = cfg.real("c", 2.0);
  p.eta = cfg.positive_real("eta", 1.0);
  return p;
}

void xf_member(Context& c) {
  auto spec = xf_spec(c.cfg);
  auto w = parse_word(c.cfg.text("word"), spec.alphabet_size);
  bool member = freq_membership(w, spec);
  c.out.files["member.csv"] = "word,member\n" + format_word(w, spec.alphabet_size) + "," + (member ? "1" : "0") + "\n";
  c.out.result = {{"spec", spec.describe()}, {"length", w.size()}, {"member", member}};
}

void xf_omega(Context& c) {
  auto spec = xf_spec(c.cfg);
  auto params = omega_params(c.cfg);
  auto cert = omega_membership_certificate(params, spec);
  c.out.files["omega.txt"] = format_word(cert.omega, spec.alphabet_size) + "\n";
  std::ostringstream csv;
  csv << "class,occurrences,window,bound,ratio\n";
  for (const auto& r : cert.ratios) {
    csv << r.cls << "," << r.occurrences << "," << r.window << "," << num(r.bound) << "," << num(r.ratio) << "\n";
  }
  c.out.files["ratios.csv"] = csv.str();
  c.out.result = cert.to_json(spec.alphabet_size);
  c.out.result["params"] = params.to_json();
  c.out.result["certified"] = cert.certified();
}

void xf_base(Context& c) {
  double cc = c.cfg.real("c", 2.0);
  double eta = c.cfg.positive_real("eta", 1.0);
  auto search = find_base_instance(cc, eta, c.cfg.positive("n_max", 300));
  std::ostringstream csv;
  csv << "c,eta,min_m,feasible,n,m,p,r\n" << num(cc) << "," << num(eta) << "," << search.min_m << ",";
  if (search.instance) {
    const auto& i = *search.instance;
    csv << "1," << i.n << "," << i.m << "," << i.p << "," << i.r << "\n";
  } else {
    csv << "0,,,,\n";
  }
  c.out.files["base.csv"] = csv.str();
  c.out.result = search.to_json();
  if (search.instance) c.out.result["conditions"] = check_base_conditions(*search.instance).to_json();
}

void xf_app(Context& c) {
  auto spec = xf_spec(c.cfg);
  auto params = omega_params(c.cfg);
  double delta = c.cfg.positive_real("delta", 0.05);
  double eta = c.cfg.positive_real("chain_eta", 0.05);
  auto rep = app_violation_check(spec, params, delta, eta);
  const auto& s = rep.search;
  std::ostringstream csv;
  csv << "max_mismatch,budget,structured_lower,exact_min,exact_min_admissible,all_violate\n"
      << s.max_mismatch << "," << num(s.budget) << "," << s.structured_lower << "," << s.exact_min << ","
      << s.exact_min_admissible << "," << (rep.all_violate() ? 1 : 0) << "\n";
  c.out.files["app.csv"] = csv.str();
  c.out.result = rep.to_json();
}

std::vector<Command> commands() {
  const Opt shift{"shift", "shift description, e.g. full:2, sgap:1,2, beta:golden", true};
  const Opt n{"n", "word length / horizon"};
  const Opt cap{"cap", "enumeration cap"};
  std::vector<Opt> moran_opts{shift,
                              {"family", "language | alternating", true},
                              {"tau", "specification gap of the family"},
                              {"measures", "measure specs separated by ';'", true},
                              {"L_max", "last level"},
                              {"potential", "potential spec (const:0, ind:1, file:...)", true},
                              {"eps", "base eps"},
                              {"decay", "eps_L = eps * decay^L"},
                              {"budget", "symbol budget"},
                              {"depth", "cylinder depth"},
                              {"cap", "words per pool"},
                              {"n0", "smallest block length scanned is n0 + 1"},
                              {"min_pool", "pool size defining the length threshold"},
                              {"seed", "random seed"}};
  auto with = [](std::vector<Opt> base, std::vector<Opt> extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
  };
  std::vector<Opt> omega_opts{{"p", "p"}, {"m", "m"}, {"r", "r"}, {"c", "frequency constant c"},
                              {"eta", "eta"}, {"spec", "'shipped' or a spec JSON file", true}};
  return {
      {{"lang", "count"}, "count L_n for n = 1..N", {shift, n, cap}, lang_count},
      {{"lang", "enum"}, "list L_n", {shift, n, cap}, lang_enum},
      {{"entropy"}, "(1/n) log #L_n for n = 1..N", {shift, n, cap}, entropy},
      {{"pressure"}, "pressure curve with periodic lower bounds", {shift, {"potential", "potential spec", true}, n, cap}, pressure},
      {{"dim"}, "Bowen root of P(-s phi) = 0", {shift, {"phi", "positive potential spec", true}, n, {"tol", "bisection tolerance"}, cap}, dim},
      {{"edit", "dist"}, "edit distance of two words", {{"u", "word", true}, {"v", "word", true}, {"alphabet", "alphabet size"}}, edit_dist},
      {{"edit", "approach"}, "edit approachability table", {shift, {"family", "language | alternating", true}, {"tau", "gap"}, {"mistake", "const:C | log:C | table:...", true}, {"n_max", "largest length"}, {"ratio", "g(n)/n threshold"}, cap}, edit_approach},
      {{"measure", "wasserstein"}, "bl and optimal-transport distance", {{"mu", "measure spec", true}, {"nu", "measure spec", true}, {"depth", "cylinder depth"}}, measure_wasserstein},
      {{"measure", "cover"}, "covering numbers of a measure set", {{"measures", "measure specs separated by ';'", true}, {"eps", "eps grid"}, {"depth", "cylinder depth"}}, measure_cover},
      {{"intermediate", "build"}, "select the code Gamma_M", {shift, {"nu", "target measure spec", true}, {"h_target", "target entropy"}, {"eps", "eps"}, {"eta", "typicality radius"}, {"M", "block length"}, {"depth", "cylinder depth"}, {"mistake", "mistake function", true}, cap}, intermediate_build},
      {{"intermediate", "verify"}, "entropy window of a built code", {{"code", "code JSON file", true}, {"h_target", "target entropy"}, {"eps", "eps"}, {"n_max", "largest n (multiple of M)"}}, intermediate_verify},
      {{"moran", "schedule"}, "block lengths and repetition counts", moran_opts, moran_schedule},
      {{"moran", "build"}, "assemble the Moran point", moran_opts, moran_build},
      {{"moran", "checkpoints"}, "distances at the checkpoints", moran_opts, moran_checkpoints},
      {{"moran", "emergence"}, "covering numbers along the orbit", with(moran_opts, {{"grid", "eps grid"}, {"samples", "sample times"}}), moran_emergence_cmd},
      {{"moran", "count"}, "Moran counting bound", moran_opts, moran_count_cmd},
      {{"xf", "member"}, "frequency-shift membership", {{"word", "word over {0,1,2}", true}, {"spec", "'shipped' or a spec JSON file", true}, {"c", "c"}}, xf_member},
      {{"xf", "omega"}, "omega and its membership certificate", omega_opts, xf_omega},
      {{"xf", "base"}, "smallest unscaled instance", {{"c", "c"}, {"eta", "eta"}, {"n_max", "largest n"}}, xf_base},
      {{"xf", "app"}, "approximate-product violation search", with(omega_opts, {{"delta", "delta"}, {"chain_eta", "eta in the counting chain"}}), xf_app},
  };
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics workbench"};
  app.set_version_flag("--version", SYMDYN_VERSION);
  app.require_subcommand(1);

  auto cmds = commands();
  struct Leaf {
    const Command* cmd = nullptr;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<std::unique_ptr<Leaf>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& cmd : cmds) {
    CLI::App* parent = &app;
    std::string key;
    for (std::size_t i = 0; i + 1 < cmd.path.size(); ++i) {
      key += cmd.path[i] + "/";
      auto it = groups.find(key);
      if (it == groups.end()) {
        auto* g = parent->add_subcommand(cmd.path[i], cmd.path[i] + " commands");
        g->require_subcommand(1);
        it = groups.emplace(key, g).first;
      }
      parent = it->second;
    }
    auto leaf = std::make_unique<Leaf>();
    leaf->cmd = &cmd;
    leaf->app = parent->add_subcommand(cmd.path.back(), cmd.help);
    std::vector<Opt> opts = cmd.opts;
    opts.push_back({"config", "JSON config file; flags override its keys", true});
    opts.push_back({"out", "output directory (default .)", true});
    opts.push_back({"workers", "worker threads"});
    bool has_seed = false;
    for (const auto& o : opts) has_seed = has_seed || o.name == "seed";
    if (!has_seed) opts.push_back({"seed", "random seed"});
    for (const auto& o : opts) {
      std::string flag = "--" + o.name;
      std::replace(flag.begin(), flag.end(), '_', '-');
      leaf->options[o.name] = leaf->app->add_option(flag, leaf->values[o.name], o.help);
    }
    leaves.push_back(std::move(leaf));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves) {
    if (l->app->parsed()) chosen = l.get();
  }
  if (!chosen) return 2;
  const Command& cmd = *chosen->cmd;
  std::string name;
  for (const auto& p : cmd.path) name += (name.empty() ? "" : " ") + p;
  std::string stem;
  for (const auto& p : cmd.path) stem += (stem.empty() ? "" : "-") + p;

  json summary;
  summary["tool"] = "symdyn";
  summary["version"] = SYMDYN_VERSION;
  summary["command"] = name;
  int status = 0;
  Config cfg;
  Output out;
  std::string out_dir = ".";
  try {
    if (chosen->options.at("config")->count()) cfg = Config::load(chosen->values.at("config"));
    for (const auto& o : cmd.opts) {
      if (chosen->options.at(o.name)->count()) cfg.set_flag(o.name, chosen->values.at(o.name), o.literal);
    }
    for (const char* k : {"out", "workers", "seed"}) {
      if (chosen->options.at(k)->count()) cfg.set_flag(k, chosen->values.at(k), std::string(k) == "out");
    }
    out_dir = cfg.text("out", ".");
    unsigned workers = static_cast<unsigned>(cfg.positive("workers", 1));
    Context ctx{cfg, out, workers};
    cmd.run(ctx);
    summary["status"] = "ok";
    summary["result"] = out.result;
  } catch (const ConfigError& e) {
    status = 2;
    summary["error"] = error_json("validation", e.what());
    summary["error"]["field"] = e.field();
  } catch (const DomainError& e) {
    status = 2;
    summary["error"] = error_json("validation", e.what());
  } catch (const ResourceError& e) {
    status = 3;
    summary["error"] = error_json("resource", e.what());
    summary["error"]["estimate"] = e.estimate();
    summary["error"]["cap"] = e.cap();
  } catch (const PrecisionError& e) {
    status = 3;
    summary["error"] = error_json("precision", e.what());
  } catch (const ConstructionError& e) {
    status = 4;
    summary["error"] = error_json("construction", e.what());
  } catch (const ApproachabilityError& e) {
    status = 4;
    summary["error"] = error_json("construction", e.what());
  } catch (const nlohmann::json::exception& e) {
    status = 2;
    summary["error"] = error_json("validation", std::string("malformed JSON input: ") + e.what());
  }
  if (status != 0) {
    summary["status"] = "error";
    std::cerr << "symdyn " << name << ": " << summary["error"]["message"].get<std::string>() << "\n";
  }
  json config = cfg.tree();
  for (const char* k : {"out", "workers", "config"}) config.erase(k);
  summary["config"] = config;
  summary["config_hash"] = cfg.hash();
  json files = json::array();
  for (const auto& [fname, _] : out.files) files.push_back(stem + "-" + fname);
  summary["files"] = files;

  std::string text = summary.dump(2) + "\n";
  std::cout << text;
  try {
    std::filesystem::create_directories(out_dir);
    for (const auto& [fname, body] : out.files) {
      std::ofstream(std::filesystem::path(out_dir) / (stem + "-" + fname), std::ios::binary) << body;
    }
    std::ofstream(std::filesystem::path(out_dir) / (stem + "-summary.json"), std::ios::binary) << text;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "symdyn: cannot write to '" << out_dir << "': " << e.what() << "\n";
    return status ? status : 2;
  }
  return status;
}
