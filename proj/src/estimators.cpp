// Copyright 2026 The qdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdisc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <boost/math/constants/constants.hpp>

#include "json.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/truth.hpp"

namespace qdisc {

namespace {

const Real kPi = boost::math::constants::pi<Real>();

Real real_pow(const Real& base, unsigned e) {
  Real r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

QueryLedger ledger_delta(const QueryLedger& after, const QueryLedger& before) {
  QueryLedger d;
  d.classical_out = after.classical_out - before.classical_out;
  d.classical_in = after.classical_in - before.classical_in;
  d.quantum_cost = after.quantum_cost - before.quantum_cost;
  return d;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.convert_to<double>());
  return out;
}

// Draws ell Grover samples, retrying an exhausted call up to `retries`
// budgets before giving up. Returns false on exhaustion.
bool draw_samples(const BooleanOracle& oracle, UnidirectionalOracle& g,
                  const CostModel& cost, Rng& rng, std::uint64_t ell,
                  unsigned retries, std::vector<std::uint64_t>* out,
                  std::uint64_t* exhausted) {
  for (std::uint64_t j = 0; j < ell; ++j) {
    std::optional<std::uint64_t> idx;
    for (unsigned attempt = 0; attempt < std::max(1u, retries) && !idx;
         ++attempt) {
      idx = grover_sample(oracle, g.ledger(), cost, rng);
      if (!idx) ++*exhausted;
    }
    if (!idx) return false;
    out->push_back(*idx);
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> level_sizes(std::size_t n, unsigned levels) {
  std::vector<std::uint64_t> t(levels + 1, 1);
  const long double denom = std::ldexp(1.0L, static_cast<int>(levels)) - 1.0L;
  for (unsigned i = 0; i <= levels; ++i) {
    const long double num =
        std::ldexp(1.0L, static_cast<int>(levels - i)) - 1.0L;
    const long double e = levels == 0 ? 1.0L : num / denom;
    const long double v = std::pow(static_cast<long double>(n), e);
    t[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(v)));
  }
  if (n > 0) t[0] = n;
  return t;
}

std::uint64_t sample_count(double v) {
  if (!(v > 0.0)) return 0;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(v)));
}

WarmupConfig make_warmup_config(std::size_t n, unsigned d, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorKind::kUsage, "delta must lie in (0,1)");
  }
  if (d < 1) fail(ErrorKind::kUsage, "d must be positive");
  WarmupConfig c;
  c.n = n;
  c.d = d;
  c.delta = delta;
  double fact = 1;
  for (unsigned i = 2; i <= d; ++i) fact *= i;
  c.delta_prime =
      delta / (fact * std::ldexp(1.0, static_cast<int>(d)) *
               std::pow(static_cast<double>(d), static_cast<double>(d + 1)));
  c.eps = c.delta_prime / (24.0 * d);
  c.eta = c.delta_prime / (16.0 * d);
  c.t = level_sizes(n, d);
  c.c_m.assign(d + 1, Real(0));
  const Real eps = c.eps, eta = c.eta, dp = c.delta_prime, dd = d;
  for (unsigned i = 1; i <= d; ++i) {
    Real num = 4 * kPi * sqrt(real_pow(dd, i + 1) * real_pow(1 + eps, i - 1));
    Real den = sqrt(dp * eps * real_pow(1 - eps, i - 1) * real_pow(1 - eta, i - 1));
    c.c_m[i] = num / den;
  }
  c.c_b = 500 * log(Real(200) * d);
  c.count_eta = 1.0 / (100.0 * d);
  return c;
}

DiscConstants make_disc_constants(const TypeCatalog& catalog) {
  const auto& mat = catalog.matrix();
  DiscConstants k;
  k.inverse_norm = mat.inverse_one_norm;
  const Real norm = to_real(mat.inverse_one_norm);
  const Real d = catalog.d();
  const unsigned m = catalog.m();
  const Real mm = m;
  const Real D = catalog.nonempty();
  const Real mfact = Real(factorial(m));
  k.eps_dq = 1 / (8 * d * norm * D * real_pow(2 * mm, m));
  k.eta_dq_printed = 1 / (2 * norm * (D * mfact) * (D * mfact) * mm);
  const Real repair = d * k.eps_dq / (2 * mm * D * mfact * mfact);
  k.eta_dq = k.eta_dq_printed < repair ? k.eta_dq_printed : repair;
  k.alpha = 4 * d * mm * k.eps_dq * real_pow(2 * mm, m - 1) / mfact +
            mm * D * mfact * k.eta_dq;
  k.beta = d * k.eps_dq / mfact - mm * D * mfact * k.eta_dq;
  return k;
}

Real delta_series(const DiscConstants& c, const Real& delta, std::uint64_t i) {
  if (i < 1) fail(ErrorKind::kUsage, "series index is 1-based");
  return pow(c.beta / c.alpha, Real(i - 1)) * delta;
}

DiscConfig make_disc_config(const TypeCatalog& catalog, std::size_t n,
                            const Real& delta) {
  if (!(delta > 0 && delta < 1)) fail(ErrorKind::kUsage, "delta must lie in (0,1)");
  DiscConfig c;
  c.n = n;
  c.d = catalog.d();
  c.q = catalog.q();
  c.m = catalog.m();
  c.types = catalog.size();
  c.delta = delta;
  c.constants = make_disc_constants(catalog);
  c.eps = c.constants.eps_dq * delta;
  c.eta = c.constants.eta_dq * delta;
  c.t = level_sizes(n, c.m);
  const Real d = c.d;
  const Real mfact = Real(factorial(c.m));
  const std::size_t size = catalog.size();
  c.c_upper.assign(size, Real(0));
  c.c_lower.assign(size, Real(0));
  c.c_m.assign(size, Real(0));
  c.alpha_type.assign(size, Real(0));
  c.beta_type.assign(size, Real(0));
  const Real& eps = c.eps;
  for (std::size_t id = 1; id < size; ++id) {
    const auto& t = catalog.type(static_cast<int>(id));
    const unsigned i = t.edge_count();
    if (i == 1) {
      c.c_upper[id] = d;
    } else {
      const int p = t.parent();
      c.c_upper[id] = Real(c.m) * (c.c_upper[p] + eps * c.c_lower[p]);
    }
    c.c_lower[id] = c.c_upper[id] * 4 * i * eps * (1 + eps) /
                    (real_pow(1 + 2 * eps, i) * mfact);
    const Real a = 4 * kPi * sqrt(c.c_upper[id] * d) / (eps * c.c_lower[id]);
    const Real b = sqrt(2 * kPi * kPi * d / (eps * c.c_lower[id]));
    c.c_m[id] = a > b ? a : b;
    const Real mu = Real(catalog.mu_total(static_cast<int>(id)));
    c.alpha_type[id] =
        c.c_lower[id] / real_pow(1 - eps, i - 1) + Real(i) * mu * c.eta;
    c.beta_type[id] = (1 - 2 * eps) * c.c_lower[id] / real_pow(1 + eps, i - 1) -
                      Real(i) * mu * c.eta;
  }
  c.c_b = 500 * log(Real(200) * Real(c.m) * Real(catalog.nonempty()));
  c.count_eta = 1.0 / (100.0 * c.m * static_cast<double>(catalog.nonempty()));
  return c;
}

void EstimateReport::add_flag(const std::string& f) {
  if (!has_flag(f)) flags.push_back(f);
}

bool EstimateReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

// ---------------------------------------------------------------------------
// Vertices of in-degree k

EstimateReport est_vertices(UnidirectionalOracle& g, double delta,
                            const EstimatorOptions& options) {
  return est_vertices(g, make_warmup_config(g.n(), g.d(), delta), options);
}

EstimateReport est_vertices(UnidirectionalOracle& g, const WarmupConfig& cfg,
                            const EstimatorOptions& options) {
  const std::size_t n = g.n();
  const unsigned d = g.d();
  if (cfg.n != n || cfg.d != d) {
    fail(ErrorKind::kUsage, "warm-up config does not match the oracle");
  }
  const QueryLedger before = g.ledger();
  Rng rng(options.seed);
  EstimateReport r;
  r.algorithm = "est-vertices";
  r.seed = options.seed;
  r.n = n;
  r.d = d;
  r.delta = cfg.delta;
  r.delta_used = format_real(Real(cfg.delta));
  r.regime_warning = n < options.regime_floor;
  if (r.regime_warning) r.add_flag("regime-warning");
  r.raw.assign(d + 1, 0.0);
  r.marked.assign(d + 1, 0);
  r.samples.assign(d + 1, 0);
  r.exhausted.assign(d + 1, 0);
  r.truncated.assign(d + 1, false);
  r.count_budget.assign(d + 1, Real(0));

  const std::uint64_t N = std::uint64_t{n} * d;
  std::vector<std::uint8_t> in_r(n, 1);
  std::unordered_set<std::uint64_t> used;
  for (unsigned i = 1; i <= d; ++i) {
    std::vector<std::uint64_t> marked;
    for (Vertex v = 0; v < n; ++v) {
      for (unsigned s = 1; s <= d; ++s) {
        const Vertex w = g.evaluate(v, s);
        if (w == kBottom || !in_r[w]) continue;
        const std::uint64_t idx = std::uint64_t{v} * d + (s - 1);
        if (!used.count(idx)) marked.push_back(idx);
      }
    }
    r.marked[i] = marked.size();
    const BooleanOracle oracle = BooleanOracle::from_marked(N, std::move(marked));
    const Real M = cfg.c_m[i] * sqrt(Real(n) / Real(cfg.t[i - 1]));
    r.count_budget[i] = M;
    const double xt = quantum_count(oracle, g.ledger(), options.cost, rng, M,
                                    cfg.count_eta);
    r.raw[i] = xt;
    const std::uint64_t ell = sample_count(static_cast<double>(cfg.t[i]) * xt /
                                           static_cast<double>(cfg.t[i - 1]));
    r.samples[i] = ell;
    std::vector<std::uint64_t> drawn;
    if (!draw_samples(oracle, g, options.cost, rng, ell, options.grover_retries,
                      &drawn, &r.exhausted[i])) {
      r.failure = true;
      r.add_flag("grover-exhausted");
    }
    std::vector<std::uint8_t> next(n, 0);
    for (std::uint64_t idx : drawn) {
      const Vertex v = static_cast<Vertex>(idx / d);
      const unsigned s = static_cast<unsigned>(idx % d) + 1;
      next[g.out_query(v, s)] = 1;
    }
    for (std::uint64_t idx : drawn) used.insert(idx);
    in_r = std::move(next);
  }

  r.scaled.assign(d + 1, Rational(0));
  for (unsigned i = 1; i <= d; ++i) {
    r.scaled[i] = Rational(BigInt(n), BigInt(cfg.t[i - 1])) * to_rational(r.raw[i]);
  }
  r.estimates_exact.assign(d + 1, Rational(0));
  Rational sum = 0;
  for (unsigned k = 1; k <= d; ++k) {
    Rational acc = 0;
    for (unsigned i = k; i <= d; ++i) {
      Rational term = Rational(binomial(i, k)) * r.scaled[i] / Rational(factorial(i));
      if ((i - k) % 2) acc -= term; else acc += term;
    }
    r.estimates_exact[k] = acc;
    sum += acc;
  }
  r.estimates_exact[0] = Rational(BigInt(n)) - sum;
  r.estimates = to_doubles(r.estimates_exact);
  r.ledger = ledger_delta(g.ledger(), before);
  return r;
}

// ---------------------------------------------------------------------------
// Disc types

namespace {

class DiscRun {
 public:
  DiscRun(UnidirectionalOracle& g, const TypeCatalog& catalog,
          const DiscConfig& cfg, const EstimatorOptions& options, Rng& rng)
      : g_(g), cat_(catalog), cfg_(cfg), opt_(options), rng_(rng) {}

  EstimateReport run();

 private:
  struct ParentView {
    // Distinct instances of the parent type and a vertex index over them.
    std::vector<Instance> distinct;
    std::unordered_map<Vertex, std::vector<std::uint32_t>> by_vertex;
    // Marked domain indices per child type.
    std::unordered_map<int, std::vector<std::uint64_t>> marks;
  };

  int extension_type(const Instance& h, Vertex v, Vertex w);
  void candidates(const ParentView& view, int parent, Vertex v, Vertex w,
                  std::vector<Instance>* scratch,
                  std::vector<const Instance*>* out) const;
  ParentView& view_of(int parent);

  UnidirectionalOracle& g_;
  const TypeCatalog& cat_;
  const DiscConfig& cfg_;
  const EstimatorOptions& opt_;
  Rng& rng_;
  EstimateReport r_;
  std::vector<std::vector<Instance>> h_;
  std::unordered_map<int, ParentView> views_;
  std::unordered_map<std::string, int> memo_;
};

int DiscRun::extension_type(const Instance& h, Vertex v, Vertex w) {
  int pv = -1, pw = -1;
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    if (h.vertices[i] == v) pv = static_cast<int>(i);
    if (h.vertices[i] == w) pw = static_cast<int>(i);
  }
  if (pv < 0 && pw < 0) return -1;
  if (pv >= 0 && pw >= 0) {
    for (const auto& e : h.edges) {
      if (e.first == v && e.second == w) return -1;
    }
  }
  unsigned nv = static_cast<unsigned>(h.vertices.size());
  if (pv < 0) pv = static_cast<int>(nv++);
  if (pw < 0) pw = static_cast<int>(nv++);
  if (nv > cat_.s() + 1 || nv > kMaxLocalVertices) return -1;
  auto local = [&](Vertex x) {
    for (std::size_t i = 0; i < h.vertices.size(); ++i) {
      if (h.vertices[i] == x) return static_cast<std::uint8_t>(i);
    }
    return static_cast<std::uint8_t>(0);
  };
  std::vector<LocalEdge> edges;
  edges.reserve(h.edges.size() + 1);
  for (const auto& [a, b] : h.edges) edges.emplace_back(local(a), local(b));
  edges.emplace_back(static_cast<std::uint8_t>(pv), static_cast<std::uint8_t>(pw));
  RootedGraph graph(nv, std::move(edges));
  std::string key = encode(graph);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const int id = cat_.classify(graph);
  memo_.emplace(std::move(key), id);
  return id;
}

void DiscRun::candidates(const ParentView& view, int parent, Vertex v, Vertex w,
                         std::vector<Instance>* scratch,
                         std::vector<const Instance*>* out) const {
  out->clear();
  if (parent == 0) {
    scratch->resize(2);
    (*scratch)[0] = Instance{{v}, {}};
    (*scratch)[1] = Instance{{w}, {}};
    out->push_back(&(*scratch)[0]);
    out->push_back(&(*scratch)[1]);
    return;
  }
  std::vector<std::uint32_t> ids;
  for (Vertex x : {v, w}) {
    auto it = view.by_vertex.find(x);
    if (it != view.by_vertex.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto id : ids) out->push_back(&view.distinct[id]);
}

DiscRun::ParentView& DiscRun::view_of(int parent) {
  auto it = views_.find(parent);
  if (it != views_.end()) return it->second;
  ParentView& view = views_[parent];
  if (parent != 0) {
    std::unordered_set<std::string> seen;
    for (const auto& inst : h_[parent]) {
      std::string key;
      for (const auto& [a, b] : inst.edges) {
        key.append(reinterpret_cast<const char*>(&a), sizeof a);
        key.append(reinterpret_cast<const char*>(&b), sizeof b);
      }
      key.append(reinterpret_cast<const char*>(&inst.vertices[0]), sizeof(Vertex));
      if (!seen.insert(key).second) continue;
      const auto id = static_cast<std::uint32_t>(view.distinct.size());
      view.distinct.push_back(inst);
      for (Vertex x : inst.vertices) view.by_vertex[x].push_back(id);
    }
    if (view.distinct.empty()) return view;
  }
  // One scan of V x [d] decides f for every child of this parent.
  const unsigned d = g_.d();
  std::vector<Instance> scratch;
  std::vector<const Instance*> cands;
  std::vector<int> hits;
  for (Vertex v = 0; v < g_.n(); ++v) {
    if (parent != 0 && view.by_vertex.empty()) break;
    for (unsigned s = 1; s <= d; ++s) {
      const Vertex w = g_.evaluate(v, s);
      if (w == kBottom) continue;
      if (parent != 0 && !view.by_vertex.count(v) && !view.by_vertex.count(w)) {
        continue;
      }
      candidates(view, parent, v, w, &scratch, &cands);
      hits.clear();
      for (const Instance* h : cands) {
        const int t = extension_type(*h, v, w);
        if (t > 0 && cat_.type(t).parent() == parent) hits.push_back(t);
      }
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
      const std::uint64_t idx = std::uint64_t{v} * d + (s - 1);
      for (int t : hits) view.marks[t].push_back(idx);
    }
  }
  return view;
}

EstimateReport DiscRun::run() {
  const std::size_t n = g_.n();
  const unsigned d = g_.d();
  const std::size_t size = cat_.size();
  const auto& mat = cat_.matrix();
  r_.algorithm = "est-disc";
  r_.n = n;
  r_.d = d;
  r_.q = cat_.q();
  r_.delta_used = format_real(cfg_.delta);
  r_.regime_warning = n < opt_.regime_floor;
  if (r_.regime_warning) r_.add_flag("regime-warning");
  r_.raw.assign(size, -1.0);
  r_.marked.assign(size, 0);
  r_.samples.assign(size, 0);
  r_.exhausted.assign(size, 0);
  r_.truncated.assign(size, false);
  r_.count_budget.assign(size, Real(0));
  h_.assign(size, {});

  const std::uint64_t N = std::uint64_t{n} * d;
  for (unsigned i = 1; i <= cat_.max_edges() && i <= cfg_.m; ++i) {
    for (int id : cat_.with_edges(i)) {
      if (r_.truncated[id]) continue;
      const int parent = cat_.type(id).parent();
      ParentView& view = view_of(parent);
      std::vector<std::uint64_t> marked;
      if (auto it = view.marks.find(id); it != view.marks.end()) marked = it->second;
      r_.marked[id] = marked.size();
      const BooleanOracle oracle = BooleanOracle::from_marked(N, std::move(marked));
      const Real M = cfg_.c_m[id] * sqrt(Real(n) / Real(cfg_.t[i - 1]));
      r_.count_budget[id] = M;
      const double xt = quantum_count(oracle, g_.ledger(), opt_.cost, rng_, M,
                                      cfg_.count_eta);
      r_.raw[id] = xt;
      const Real threshold = (1 - cfg_.eps) * cfg_.c_lower[id] * Real(cfg_.t[i - 1]);
      if (!(Real(xt) >= threshold)) {
        for (int above : mat.above[id]) {
          r_.truncated[above] = true;
          r_.raw[above] = 0.0;
        }
        r_.raw[id] = xt;
        continue;
      }
      const std::uint64_t ell = sample_count(static_cast<double>(cfg_.t[i]) * xt /
                                             static_cast<double>(cfg_.t[i - 1]));
      r_.samples[id] = ell;
      std::vector<std::uint64_t> drawn;
      if (!draw_samples(oracle, g_, opt_.cost, rng_, ell, opt_.grover_retries,
                        &drawn, &r_.exhausted[id])) {
        r_.failure = true;
        r_.add_flag("grover-exhausted");
      }
      std::vector<Instance> scratch;
      std::vector<const Instance*> cands;
      for (std::uint64_t idx : drawn) {
        const Vertex v = static_cast<Vertex>(idx / d);
        const unsigned s = static_cast<unsigned>(idx % d) + 1;
        const Vertex w = g_.out_query(v, s);
        candidates(view, parent, v, w, &scratch, &cands);
        for (const Instance* h : cands) {
          if (extension_type(*h, v, w) != id) continue;
          Instance inst = *h;
          for (Vertex x : {v, w}) {
            if (std::find(inst.vertices.begin(), inst.vertices.end(), x) ==
                inst.vertices.end()) {
              inst.vertices.push_back(x);
            }
          }
          inst.edges.emplace_back(v, w);
          h_[id].push_back(std::move(inst));
        }
      }
    }
  }

  // x = (n / t_{i-1}) X~ for surviving types, then M cnt = x.
  const std::size_t D = cat_.nonempty();
  r_.scaled.assign(size, Rational(0));
  std::vector<Rational> x(D, Rational(0));
  for (std::size_t id = 1; id < size; ++id) {
    if (r_.truncated[id]) continue;
    const unsigned i = cat_.type(static_cast<int>(id)).edge_count();
    r_.scaled[id] = Rational(BigInt(n), BigInt(cfg_.t[i - 1])) * to_rational(r_.raw[id]);
    x[id - 1] = r_.scaled[id];
  }
  const auto y = solve_upper(mat, x);
  r_.estimates_exact.assign(size, Rational(0));
  Rational sum = 0;
  for (std::size_t id = 1; id < size; ++id) {
    r_.estimates_exact[id] = y[id - 1];
    sum += y[id - 1];
  }
  r_.estimates_exact[0] = Rational(BigInt(n)) - sum;
  r_.estimates = to_doubles(r_.estimates_exact);
  if (opt_.keep_instances) r_.instances = std::move(h_);
  return std::move(r_);
}

}  // namespace

EstimateReport est_disc(UnidirectionalOracle& g, const TypeCatalog& catalog,
                        const DiscConfig& config,
                        const EstimatorOptions& options) {
  if (g.d() > catalog.d()) {
    fail(ErrorKind::kDomain, "oracle degree bound exceeds the catalog's");
  }
  if (config.n != g.n() || config.types != catalog.size()) {
    fail(ErrorKind::kUsage, "disc config does not match the oracle or catalog");
  }
  const QueryLedger before = g.ledger();
  Rng rng(options.seed);
  EstimateReport r = DiscRun(g, catalog, config, options, rng).run();
  r.seed = options.seed;
  r.delta = config.delta.convert_to<double>();
  r.ledger = ledger_delta(g.ledger(), before);
  return r;
}

EstimateReport est_disc(UnidirectionalOracle& g, const TypeCatalog& catalog,
                        double delta, const EstimatorOptions& options) {
  return est_disc(g, catalog, make_disc_config(catalog, g.n(), Real(delta)),
                  options);
}

EstimateReport est_disc_star(UnidirectionalOracle& g,
                             const TypeCatalog& catalog, const Real& delta,
                             const EstimatorOptions& options) {
  if (g.d() > catalog.d()) {
    fail(ErrorKind::kDomain, "oracle degree bound exceeds the catalog's");
  }
  const QueryLedger before = g.ledger();
  Rng rng(options.seed);
  const DiscConstants k = make_disc_constants(catalog);
  const std::uint64_t count = 100 * static_cast<std::uint64_t>(catalog.nonempty());
  const std::uint64_t index = 1 + rng.below(count);
  const Real delta_i = delta_series(k, delta, index);
  const DiscConfig config = make_disc_config(catalog, g.n(), delta_i);
  EstimateReport r = DiscRun(g, catalog, config, options, rng).run();
  r.algorithm = "est-disc-star";
  r.seed = options.seed;
  r.delta = delta.convert_to<double>();
  r.delta_index = index;
  r.ledger = ledger_delta(g.ledger(), before);
  return r;
}

SubgraphEstimate est_subgraph(UnidirectionalOracle& g,
                              const TypeCatalog& catalog, double delta,
                              const RootedGraph& h,
                              const EstimatorOptions& options) {
  SubgraphEstimate out;
  out.rooting = root_pattern(catalog, h);
  const Real scaled = Real(delta) / Real(factorial(catalog.m()));
  out.discs = est_disc_star(g, catalog, scaled, options);
  out.discs.algorithm = "est-subgraph";
  out.estimate_exact =
      pattern_count_from_discs(catalog, out.rooting, out.discs.estimates_exact);
  out.estimate = out.estimate_exact.convert_to<double>();
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

std::vector<TypeClass> classify_type_vector(const std::vector<std::uint64_t>& cnt,
                                            const TypeCatalog& catalog,
                                            const DiscConfig& config) {
  const auto& mat = catalog.matrix();
  std::vector<TypeClass> out(catalog.size(), TypeClass::kAbundant);
  const Real n = Real(config.n);
  for (std::size_t a = 1; a < catalog.size(); ++a) {
    BigInt s = 0;
    for (int b : mat.above[a]) s += mat.m[a - 1][b - 1] * BigInt(cnt.at(b));
    const Real sr = Real(s);
    if (sr >= config.alpha_type[a] * n) {
      out[a] = TypeClass::kAbundant;
    } else if (sr <= config.beta_type[a] * n) {
      out[a] = TypeClass::kRare;
    } else {
      out[a] = TypeClass::kGray;
    }
  }
  return out;
}

std::vector<TypeClass> classify_type_vector(const Digraph& g,
                                            const TypeCatalog& catalog,
                                            const DiscConfig& config) {
  return classify_type_vector(count_disc_types(g, catalog),
                              catalog, config);
}

std::string to_string(const std::vector<TypeClass>& v) {
  std::string s;
  for (std::size_t i = 1; i < v.size(); ++i) s.push_back(static_cast<char>(v[i]));
  return s;
}

bool instance_respects_order(const TypeCatalog& catalog, int type_id,
                             const Instance& instance) {
  const auto& t = catalog.type(type_id);
  if (instance.edges.size() != t.edge_count() || instance.vertices.empty()) {
    return false;
  }
  for (std::size_t j = 0; j <= instance.edges.size(); ++j) {
    RootedSubgraph sub;
    sub.root = instance.vertices[0];
    sub.vertices.push_back(sub.root);
    for (std::size_t e = 0; e < j; ++e) {
      for (Vertex x : {instance.edges[e].first, instance.edges[e].second}) {
        if (std::find(sub.vertices.begin(), sub.vertices.end(), x) == sub.vertices.end()) {
          sub.vertices.push_back(x);
        }
      }
      sub.edges.push_back(instance.edges[e]);
    }
    if (catalog.classify(to_rooted(sub)) != t.prefix_ids[j]) return false;
  }
  return true;
}

SqueezeBounds squeeze_bounds(const TypeCatalog& catalog,
                             const DiscConfig& config,
                             const EstimateReport& report,
                             const std::vector<TypeClass>& gamma) {
  const std::size_t size = catalog.size();
  SqueezeBounds b;
  b.upper.assign(size, Real(0));
  b.lower.assign(size, Real(0));
  b.x.assign(size, Real(0));
  const Real t0 = Real(config.t[0]);
  const Real mfact = Real(factorial(config.m));
  for (std::size_t id = 1; id < size; ++id) {
    const auto& t = catalog.type(static_cast<int>(id));
    const unsigned i = t.edge_count();
    unsigned first_rare = 0;
    for (unsigned j = 1; j <= i; ++j) {
      if (gamma[t.prefix_ids[j]] != TypeClass::kAbundant) {
        first_rare = j;
        break;
      }
    }
    if (first_rare == 0) {
      const Real mu = Real(catalog.mu_total(static_cast<int>(id)));
      const Real x = t0 / Real(config.t[i - 1]) * Real(report.raw[id] < 0 ? 0.0 : report.raw[id]);
      b.x[id] = x;
      b.upper[id] = x / real_pow(1 - config.eps, i) + Real(i) * mu * config.eta * t0;
      b.lower[id] = x / real_pow(1 + config.eps, i) - Real(i) * mu * config.eta * t0;
    } else {
      const int rare = t.prefix_ids[first_rare];
      const Real mu = Real(catalog.mu_total(rare));
      b.upper[id] = mfact * ((1 + 2 * config.eps) / real_pow(1 - config.eps, first_rare - 1) *
                                 config.c_lower[rare] * t0 +
                             Real(first_rare) * mu * config.eta * t0);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Serialization

void write_report_csv(std::ostream& os, const EstimateReport& r,
                      const std::string& config_hash) {
  os << "config_hash,seed,algorithm,index,estimate,raw,marked,samples,"
        "truncated\n";
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    os << config_hash << ',' << r.seed << ',' << r.algorithm << ',' << i << ','
       << r.estimates[i] << ',';
    if (i > 0 && i < r.raw.size()) {
      os << r.raw[i] << ',' << r.marked[i] << ',' << r.samples[i] << ','
         << (r.truncated[i] ? 1 : 0);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

void write_report_json(std::ostream& os, const EstimateReport& r,
                       const std::string& config_hash) {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["seed"] = r.seed;
  j["algorithm"] = r.algorithm;
  j["n"] = r.n;
  j["d"] = r.d;
  j["q"] = r.q;
  j["delta"] = r.delta;
  j["delta_used"] = r.delta_used;
  j["delta_index"] = r.delta_index;
  j["estimates"] = r.estimates;
  j["raw"] = r.raw;
  j["marked"] = r.marked;
  j["samples"] = r.samples;
  std::vector<int> trunc(r.truncated.begin(), r.truncated.end());
  j["truncated"] = trunc;
  j["ledger"] = {{"classical_out", r.ledger.classical_out},
                 {"classical_in", r.ledger.classical_in},
                 {"quantum_cost", ceil_string(r.ledger.quantum_cost)}};
  j["failure"] = r.failure;
  j["regime_warning"] = r.regime_warning;
  j["flags"] = r.flags;
  os << j.dump(2) << '\n';
}

}  // namespace qdisc
