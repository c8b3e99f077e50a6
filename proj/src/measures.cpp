#include "symdyn/measures.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/parallel.hpp"
#include "symdyn/subshift.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace symdyn {

// ------------------------------------------------------ cylinder measures

double CylinderMeasure::mass(const Word& w) const {
  auto it = weights.find(w);
  return it == weights.end() ? 0.0 : it->second;
}

void CylinderMeasure::validate(double tol) const {
  double total = 0.0;
  for (const auto& [w, v] : weights) {
    if (w.size() != depth) throw DomainError("cylinder word length differs from the depth");
    check_alphabet(w, alphabet_size);
    if (!(v >= 0.0)) throw DomainError("negative cylinder weight");
    total += v;
  }
  if (std::abs(total - 1.0) > tol) {
    throw DomainError("cylinder weights sum to " + std::to_string(total));
  }
}

nlohmann::json CylinderMeasure::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [w, v] : weights) {
    entries.push_back({{"word", format_word(w, alphabet_size)}, {"weight", v}});
  }
  return {{"depth", depth}, {"entries", entries}};
}

CylinderMeasure CylinderMeasure::from_json(const nlohmann::json& j, int alphabet_size) {
  CylinderMeasure m;
  m.alphabet_size = alphabet_size;
  m.depth = j.at("depth").get<std::size_t>();
  for (const auto& e : j.at("entries")) {
    m.weights[parse_word(e.at("word").get<std::string>(), alphabet_size)] +=
        e.at("weight").get<double>();
  }
  m.validate(1e-9);
  return m;
}

CylinderMeasure EmpiricalCounts::measure() const {
  CylinderMeasure m;
  m.depth = depth;
  m.alphabet_size = alphabet_size;
  for (const auto& [w, c] : counts) {
    m.weights[w] = static_cast<double>(c) / static_cast<double>(n);
  }
  return m;
}

EmpiricalCounts empirical_counts(const PointPrefix& x, std::size_t n, std::size_t k,
                                 int alphabet_size) {
  if (n == 0) throw DomainError("empirical measure needs n >= 1");
  if (k == 0) throw DomainError("depth must be at least 1");
  Word symbols = x.take(n + k - 1);
  check_alphabet(symbols, alphabet_size);
  EmpiricalCounts ec;
  ec.n = n;
  ec.depth = k;
  ec.alphabet_size = alphabet_size;
  for (std::size_t j = 0; j < n; ++j) {
    Word w(symbols.begin() + static_cast<std::ptrdiff_t>(j),
           symbols.begin() + static_cast<std::ptrdiff_t>(j + k));
    ++ec.counts[w];
  }
  return ec;
}

CylinderMeasure empirical_measure(const PointPrefix& x, std::size_t n, std::size_t k,
                                  int alphabet_size) {
  return empirical_counts(x, n, k, alphabet_size).measure();
}

double cylinder_distance(const Word& a, const Word& b) {
  double d = 0.0;
  double scale = 0.5;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j, scale *= 0.5) {
    int x = j < a.size() ? a[j] : 0;
    int y = j < b.size() ? b[j] : 0;
    d += std::abs(x - y) * scale;
  }
  return d;
}

double tail_error(int alphabet_size, std::size_t k) {
  return (alphabet_size - 1) * std::ldexp(1.0, 1 - static_cast<int>(k));
}

namespace {

void check_pair(const CylinderMeasure& mu, const CylinderMeasure& nu) {
  if (mu.depth != nu.depth) {
    throw DomainError("depth mismatch: " + std::to_string(mu.depth) + " vs " +
                      std::to_string(nu.depth));
  }
  if (mu.alphabet_size != nu.alphabet_size) throw DomainError("alphabet mismatch");
}

struct Atoms {
  std::vector<Word> words;
  std::vector<double> delta;
};

// Atoms where mu and nu differ, with delta = mu - nu.
Atoms differing_atoms(const CylinderMeasure& mu, const CylinderMeasure& nu) {
  Atoms a;
  auto i = mu.weights.begin();
  auto j = nu.weights.begin();
  auto push = [&](const Word& w, double d) {
    if (d != 0.0) {
      a.words.push_back(w);
      a.delta.push_back(d);
    }
  };
  while (i != mu.weights.end() || j != nu.weights.end()) {
    if (j == nu.weights.end() || (i != mu.weights.end() && i->first < j->first)) {
      push(i->first, i->second);
      ++i;
    } else if (i == mu.weights.end() || j->first < i->first) {
      push(j->first, -j->second);
      ++j;
    } else {
      push(i->first, i->second - j->second);
      ++i;
      ++j;
    }
  }
  return a;
}

}  // namespace

DistanceResult bl_distance(const CylinderMeasure& mu, const CylinderMeasure& nu) {
  check_pair(mu, nu);
  DistanceResult res;
  res.tail_error = tail_error(mu.alphabet_size, mu.depth);
  Atoms atoms = differing_atoms(mu, nu);
  const std::size_t s = atoms.words.size();
  if (s == 0) return res;

  // Dual of the test-function program: rows are atoms, columns are
  // y_{cc'} (+1 at c, -1 at c', cost d), u_c (+1, cost 1), l_c (-1, cost 1).
  std::vector<std::vector<double>> d(s, std::vector<double>(s, 0.0));
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) d[a][b] = cylinder_distance(atoms.words[a], atoms.words[b]);
  }
  struct Column {
    int plus;
    int minus;
    double cost;
  };
  std::vector<Column> cols;
  for (std::size_t a = 0; a < s; ++a) {
    cols.push_back({static_cast<int>(a), -1, 1.0});
    cols.push_back({-1, static_cast<int>(a), 1.0});
  }
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      if (a != b && d[a][b] < 2.0) cols.push_back({static_cast<int>(a), static_cast<int>(b), d[a][b]});
    }
  }

  // B = diag(+-1) is primal feasible: u_c where delta >= 0, l_c otherwise.
  std::vector<std::size_t> basis(s);
  std::vector<double> xb(s);
  std::vector<std::vector<double>> binv(s, std::vector<double>(s, 0.0));
  for (std::size_t r = 0; r < s; ++r) {
    bool pos = atoms.delta[r] >= 0;
    basis[r] = 2 * r + (pos ? 0 : 1);
    binv[r][r] = pos ? 1.0 : -1.0;
    xb[r] = std::abs(atoms.delta[r]);
  }
  std::vector<char> in_basis(cols.size(), 0);
  for (auto c : basis) in_basis[c] = 1;

  const double tol = 1e-13;
  std::vector<double> pi(s), alpha(s);
  std::size_t degenerate_run = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > 100000) throw PrecisionError("simplex did not converge");
    // pi = c_B^T B^-1
    std::fill(pi.begin(), pi.end(), 0.0);
    for (std::size_t r = 0; r < s; ++r) {
      double cb = cols[basis[r]].cost;
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < s; ++c) pi[c] += cb * binv[r][c];
    }
    bool bland = degenerate_run > 50;
    std::size_t enter = cols.size();
    double best = -1e-12;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (in_basis[j]) continue;
      const auto& col = cols[j];
      double rc = col.cost;
      if (col.plus >= 0) rc -= pi[static_cast<std::size_t>(col.plus)];
      if (col.minus >= 0) rc += pi[static_cast<std::size_t>(col.minus)];
      if (rc < best) {
        enter = j;
        if (bland) break;
        best = rc;
      }
    }
    if (enter == cols.size()) break;
    const auto& ec = cols[enter];
    for (std::size_t r = 0; r < s; ++r) {
      double v = 0.0;
      if (ec.plus >= 0) v += binv[r][static_cast<std::size_t>(ec.plus)];
      if (ec.minus >= 0) v -= binv[r][static_cast<std::size_t>(ec.minus)];
      alpha[r] = v;
    }
    std::size_t leave = s;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < s; ++r) {
      if (alpha[r] > tol) {
        double q = xb[r] / alpha[r];
        if (q < ratio - 1e-15 || (q <= ratio + 1e-15 && leave < s && basis[r] < basis[leave])) {
          ratio = q;
          leave = r;
        }
      }
    }
    if (leave == s) throw PrecisionError("unbounded transport program");
    degenerate_run = ratio <= 1e-15 ? degenerate_run + 1 : 0;
    double piv = alpha[leave];
    for (std::size_t r = 0; r < s; ++r) {
      if (r == leave) continue;
      xb[r] -= alpha[r] * ratio;
      if (xb[r] < 0 && xb[r] > -1e-14) xb[r] = 0.0;
    }
    xb[leave] = ratio;
    for (std::size_t c = 0; c < s; ++c) binv[leave][c] /= piv;
    for (std::size_t r = 0; r < s; ++r) {
      if (r == leave || alpha[r] == 0.0) continue;
      double f = alpha[r];
      for (std::size_t c = 0; c < s; ++c) binv[r][c] -= f * binv[leave][c];
    }
    in_basis[basis[leave]] = 0;
    basis[leave] = enter;
    in_basis[enter] = 1;
    ++res.pivots;
  }
  double value = 0.0;
  for (std::size_t r = 0; r < s; ++r) value += cols[basis[r]].cost * xb[r];
  res.value = std::max(0.0, value);
  for (std::size_t a = 0; a < s; ++a) res.witness[atoms.words[a]] = pi[a];
  return res;
}

double ot_distance(const CylinderMeasure& mu, const CylinderMeasure& nu) {
  check_pair(mu, nu);
  Atoms atoms = differing_atoms(mu, nu);
  std::vector<std::size_t> sup, dem;
  for (std::size_t a = 0; a < atoms.words.size(); ++a) {
    (atoms.delta[a] > 0 ? sup : dem).push_back(a);
  }
  if (sup.empty() || dem.empty()) return 0.0;
  // successive shortest paths on source -> supply -> demand -> sink
  const std::size_t ns = sup.size(), nd = dem.size();
  const std::size_t nodes = ns + nd + 2, src = ns + nd, snk = ns + nd + 1;
  struct Edge {
    std::size_t to;
    double cap;
    double cost;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> g(nodes);
  auto add = [&](std::size_t a, std::size_t b, double cap, double cost) {
    g[a].push_back({b, cap, cost, g[b].size()});
    g[b].push_back({a, 0.0, -cost, g[a].size() - 1});
  };
  double total = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    add(src, i, atoms.delta[sup[i]], 0.0);
    total += atoms.delta[sup[i]];
  }
  double demand_total = 0.0;
  for (std::size_t j = 0; j < nd; ++j) {
    add(ns + j, snk, -atoms.delta[dem[j]], 0.0);
    demand_total -= atoms.delta[dem[j]];
  }
  total = std::min(total, demand_total);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      add(i, ns + j, std::numeric_limits<double>::infinity(),
          cylinder_distance(atoms.words[sup[i]], atoms.words[dem[j]]));
    }
  }
  std::vector<double> pot(nodes, 0.0), dist(nodes);
  std::vector<std::size_t> pv(nodes), pe(nodes);
  double flow = 0.0, cost = 0.0;
  const double eps = 1e-15;
  while (flow < total - 1e-14) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    dist[src] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (std::size_t e = 0; e < g[u].size(); ++e) {
        const Edge& ed = g[u][e];
        if (ed.cap <= eps) continue;
        double nd2 = du + ed.cost + pot[u] - pot[ed.to];
        if (nd2 < dist[ed.to] - 1e-15) {
          dist[ed.to] = nd2;
          pv[ed.to] = u;
          pe[ed.to] = e;
          pq.push({nd2, ed.to});
        }
      }
    }
    if (!std::isfinite(dist[snk])) break;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (std::isfinite(dist[v])) pot[v] += dist[v];
    }
    double push = total - flow;
    for (std::size_t v = snk; v != src; v = pv[v]) push = std::min(push, g[pv[v]][pe[v]].cap);
    for (std::size_t v = snk; v != src; v = pv[v]) {
      Edge& ed = g[pv[v]][pe[v]];
      ed.cap -= push;
      g[v][ed.rev].cap += push;
      cost += push * ed.cost;
    }
    flow += push;
  }
  return std::max(0.0, cost);
}

// ------------------------------------------------------------ Markov

MarkovMeasure::MarkovMeasure(std::vector<std::vector<double>> transition,
                             std::vector<double> stationary)
    : p_(std::move(transition)), pi_(std::move(stationary)) {
  const std::size_t m = p_.size();
  if (m == 0 || m > 255) throw DomainError("transition matrix must be non-empty");
  for (const auto& row : p_) {
    if (row.size() != m) throw DomainError("transition matrix must be square");
    double s = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw DomainError("negative transition probability");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw DomainError("transition rows must sum to 1");
  }
  if (pi_.empty()) {
    Eigen::MatrixXd a(m + 1, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p_[j][i] - (i == j ? 1.0 : 0.0);
      }
    }
    for (std::size_t j = 0; j < m; ++j) a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) = 1.0;
    b(static_cast<Eigen::Index>(m)) = 1.0;
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    pi_.resize(m);
    for (std::size_t i = 0; i < m; ++i) pi_[i] = std::max(0.0, x(static_cast<Eigen::Index>(i)));
    double s = std::accumulate(pi_.begin(), pi_.end(), 0.0);
    for (double& v : pi_) v /= s;
  }
  if (pi_.size() != m) throw DomainError("stationary vector has the wrong size");
  double s = 0.0;
  for (double v : pi_) {
    if (!(v >= 0.0)) throw DomainError("negative stationary probability");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-10) throw DomainError("stationary vector does not sum to 1");
  for (std::size_t j = 0; j < m; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i) v += pi_[i] * p_[i][j];
    if (std::abs(v - pi_[j]) > 1e-10) throw DomainError("stationary vector is not invariant");
  }
}

MarkovMeasure MarkovMeasure::bernoulli(const std::vector<double>& p) {
  std::vector<std::vector<double>> t(p.size(), p);
  return MarkovMeasure(t, p);
}

MarkovMeasure MarkovMeasure::from_json(const nlohmann::json& j) {
  if (j.contains("bernoulli")) return bernoulli(j.at("bernoulli").get<std::vector<double>>());
  auto t = j.at("transition").get<std::vector<std::vector<double>>>();
  std::vector<double> pi;
  if (j.contains("stationary")) pi = j.at("stationary").get<std::vector<double>>();
  return MarkovMeasure(t, pi);
}

nlohmann::json MarkovMeasure::to_json() const {
  return {{"transition", p_}, {"stationary", pi_}};
}

double MarkovMeasure::cylinder_mass(const Word& w) const {
  if (w.empty()) return 1.0;
  check_alphabet(w, alphabet_size());
  double m = pi_[w[0]];
  for (std::size_t i = 1; i < w.size() && m > 0; ++i) m *= p_[w[i - 1]][w[i]];
  return m;
}

double MarkovMeasure::entropy() const {
  double h = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    for (double v : p_[i]) {
      if (v > 0) h -= pi_[i] * v * std::log(v);
    }
  }
  return h;
}

CylinderMeasure MarkovMeasure::project(std::size_t k) const {
  if (k == 0) throw DomainError("depth must be at least 1");
  CylinderMeasure out;
  out.depth = k;
  out.alphabet_size = alphabet_size();
  Word cur;
  std::function<void(double)> dfs = [&](double mass) {
    if (cur.size() == k) {
      out.weights[cur] = mass;
      return;
    }
    for (int a = 0; a < alphabet_size(); ++a) {
      double next = cur.empty() ? pi_[static_cast<std::size_t>(a)]
                                : mass * p_[cur.back()][static_cast<std::size_t>(a)];
      if (next <= 0) continue;
      cur.push_back(static_cast<Symbol>(a));
      dfs(next);
      cur.pop_back();
    }
  };
  dfs(1.0);
  return out;
}

bool MarkovMeasure::compatible_with(const Subshift& shift) const {
  if (shift.alphabet_size() != alphabet_size()) return false;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (pi_[i] > 0 && !shift.is_in_language({static_cast<Symbol>(i)})) return false;
    for (std::size_t j = 0; j < p_.size(); ++j) {
      if (pi_[i] > 0 && p_[i][j] > 0 &&
          !shift.is_in_language({static_cast<Symbol>(i), static_cast<Symbol>(j)})) {
        return false;
      }
    }
  }
  return true;
}

MarkovStats markov_stats(const MarkovMeasure& m, const Potential& f) {
  if (f.alphabet_size() != m.alphabet_size()) throw DomainError("alphabet mismatch");
  MarkovStats st;
  st.entropy = m.entropy();
  for (const auto& [w, mass] : m.project(f.depth()).weights) st.integral += mass * f(w);
  return st;
}

// ------------------------------------------------------------ simplex

CylinderMeasure mix(const MeasureSequence& seq, const SimplexPoint& t, std::size_t k) {
  if (seq.size() != t.size()) {
    throw DomainError("simplex point has " + std::to_string(t.size()) + " coordinates for " +
                      std::to_string(seq.size()) + " measures");
  }
  CylinderMeasure out;
  out.depth = k;
  out.alphabet_size = seq.front().alphabet_size();
  for (std::size_t l = 0; l < seq.size(); ++l) {
    if (t[l] < 0) throw DomainError("negative simplex coordinate");
    if (t[l] == 0) continue;
    if (seq[l].alphabet_size() != out.alphabet_size) throw DomainError("alphabet mismatch");
    for (const auto& [w, v] : seq[l].project(k).weights) out.weights[w] += t[l] * v;
  }
  return out;
}

SimplexPoint normalized_counts(const std::vector<std::uint64_t>& n) {
  std::uint64_t total = 0;
  for (auto v : n) total += v;
  if (total == 0) throw DomainError("count vector is zero");
  SimplexPoint t(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) t[i] = static_cast<double>(n[i]) / static_cast<double>(total);
  return t;
}

double max_norm_distance(const SimplexPoint& a, const SimplexPoint& b) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SimplexNet simplex_net(std::size_t L, double eps) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  SimplexNet net;
  net.radius = eps / static_cast<double>(L + 1);
  if (L == 0) {
    net.points = {{1.0}};
    return net;
  }
  // largest-remainder rounding to (1/q) Z^{L+1} moves a point by at most
  // L / ((L+1) q) in max norm
  double need = static_cast<double>(L) / (static_cast<double>(L + 1) * net.radius);
  std::size_t q = static_cast<std::size_t>(std::ceil(need - 1e-12));
  net.grid = std::max<std::size_t>(q, 1);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> cur(L + 1, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == L) {
      cur[i] = left;
      comps.push_back(cur);
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, net.grid);
  std::vector<SimplexPoint> pts;
  for (const auto& c : comps) {
    SimplexPoint p(L + 1);
    for (std::size_t i = 0; i <= L; ++i) p[i] = static_cast<double>(c[i]) / static_cast<double>(net.grid);
    pts.push_back(p);
  }
  // farthest-point order, ties to the lower index
  std::vector<double> gap(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<char> used(pts.size(), 0);
  std::size_t next = 0;
  for (std::size_t step = 0; step < pts.size(); ++step) {
    used[next] = 1;
    net.points.push_back(pts[next]);
    std::size_t best = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      gap[i] = std::min(gap[i], max_norm_distance(pts[i], pts[next]));
      if (best == pts.size() || gap[i] > gap[best]) best = i;
    }
    next = best;
  }
  return net;
}

// ------------------------------------------------------------ covering

namespace {

struct GonzalezOrder {
  std::vector<std::size_t> centers;
  std::vector<double> radius_after;  // covering radius using the first i+1 centers
};

GonzalezOrder gonzalez(std::size_t count, const DistanceFn& dist, double stop_radius,
                       unsigned workers) {
  GonzalezOrder g;
  if (count == 0) return g;
  std::vector<double> gap(count, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  for (;;) {
    g.centers.push_back(next);
    std::size_t c = next;
    std::vector<double> dnew(count, 0.0);
    parallel_for(count, workers, [&](std::size_t i) { dnew[i] = i == c ? 0.0 : dist(i, c); });
    std::size_t far = 0;
    double r = -1.0;
    for (std::size_t i = 0; i < count; ++i) {
      gap[i] = std::min(gap[i], dnew[i]);
      if (gap[i] > r) {
        r = gap[i];
        far = i;
      }
    }
    g.radius_after.push_back(r);
    if (r <= stop_radius || g.centers.size() == count) break;
    next = far;
  }
  return g;
}

std::size_t packing_count(std::size_t count, const DistanceFn& dist, double eps,
                          const std::vector<std::size_t>& order) {
  std::vector<std::size_t> chosen;
  std::vector<char> seen(count, 0);
  auto consider = [&](std::size_t i) {
    if (seen[i]) return;
    seen[i] = 1;
    for (auto c : chosen) {
      if (dist(i, c) <= 2 * eps) return;
    }
    chosen.push_back(i);
  };
  for (auto i : order) consider(i);
  for (std::size_t i = 0; i < count; ++i) consider(i);
  return chosen.size();
}

class CachedDistance {
 public:
  explicit CachedDistance(const std::vector<CylinderMeasure>& pts) : pts_(pts) {}
  double operator()(std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    double d = bl_distance(pts_[i], pts_[j]).value;
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[key] = d;
    return d;
  }

 private:
  const std::vector<CylinderMeasure>& pts_;
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace

CoverResult covering_number(std::size_t count, const DistanceFn& dist, double eps,
                            unsigned workers) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  CoverResult res;
  if (count == 0) return res;
  auto g = gonzalez(count, dist, eps, workers);
  res.greedy = g.centers.size();
  res.centers = g.centers;
  res.packing = packing_count(count, dist, eps, g.centers);
  return res;
}

CoverResult covering_number(const std::vector<CylinderMeasure>& points, double eps,
                            unsigned workers) {
  CachedDistance cache(points);
  return covering_number(points.size(), [&](std::size_t i, std::size_t j) { return cache(i, j); },
                         eps, workers);
}

std::vector<CoverResult> covering_numbers(const std::vector<CylinderMeasure>& points,
                                          const std::vector<double>& eps_grid, unsigned workers) {
  std::vector<CoverResult> out;
  if (eps_grid.empty()) return out;
  for (double e : eps_grid) {
    if (!(e > 0)) throw DomainError("eps must be positive");
  }
  if (points.empty()) return std::vector<CoverResult>(eps_grid.size());
  CachedDistance cache(points);
  DistanceFn dist = [&](std::size_t i, std::size_t j) { return cache(i, j); };
  double smallest = *std::min_element(eps_grid.begin(), eps_grid.end());
  auto g = gonzalez(points.size(), dist, smallest, workers);
  for (double e : eps_grid) {
    CoverResult r;
    std::size_t k = 0;
    while (g.radius_after[k] > e) ++k;
    r.greedy = k + 1;
    r.centers.assign(g.centers.begin(), g.centers.begin() + static_cast<std::ptrdiff_t>(k + 1));
    r.packing = packing_count(points.size(), dist, e, g.centers);
    out.push_back(r);
  }
  return out;
}

std::vector<std::vector<double>> distance_matrix(const std::vector<CylinderMeasure>& points,
                                                 unsigned workers) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> vals(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t p) {
    vals[p] = bl_distance(points[pairs[p].first], points[pairs[p].second]).value;
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    d[pairs[p].first][pairs[p].second] = d[pairs[p].second][pairs[p].first] = vals[p];
  }
  return d;
}

TimeShiftCheck time_shift_bound_check(const PointPrefix& x, std::size_t t0, std::size_t t1,
                                      std::size_t k, int alphabet_size) {
  if (t0 >= t1) throw DomainError("time shift needs t0 < t1");
  auto whole = empirical_measure(x, t1, k, alphabet_size);
  auto late = empirical_measure(x.shifted(t0), t1 - t0, k, alphabet_size);
  TimeShiftCheck c;
  c.lhs = bl_distance(whole, late).value;
  c.rhs = 2.0 * static_cast<double>(t0) / static_cast<double>(t1) + tail_error(alphabet_size, k);
  return c;
}

}  // namespace symdyn
