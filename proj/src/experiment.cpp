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

#include "qdisc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qdisc/catalog.hpp"
#include "qdisc/digraph.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/estimators.hpp"
#include "qdisc/rng.hpp"
#include "qdisc/testers.hpp"
#include "qdisc/truth.hpp"

namespace qdisc {

namespace {

const char* const kHeader =
    "row,config_hash,seed,trial,n,method,estimate,truth,error,success,"
    "classical_out,classical_in,quantum_cost,flags,cost_mean,cost_p50,"
    "cost_p90\n";

const std::vector<std::string> kTasks = {
    "est-vertices", "est-disc",      "est-disc-star", "est-subgraph",
    "test-star-free", "scaling-sweep", "catalog-dump", "truth-dump",
    "fit-exponent"};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos, 0);
    if (pos != v.size() || (!v.empty() && v[0] == '-')) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    fail(ErrorKind::kUsage, "bad value for " + key + ": '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::kUsage, "bad value for " + key + ": '" + v + "'");
  }
}

// "1024,4096" or "2^10..2^20" (even exponents step by 2).
std::vector<std::size_t> parse_n_values(const std::string& v) {
  std::vector<std::size_t> out;
  auto range = v.find("..");
  if (range != std::string::npos) {
    auto exp_of = [&](const std::string& s) {
      if (s.rfind("2^", 0) != 0) fail(ErrorKind::kUsage, "n range must use 2^a..2^b");
      return to_size("n-values", s.substr(2));
    };
    std::size_t a = exp_of(v.substr(0, range));
    std::size_t b = exp_of(v.substr(range + 2));
    if (a > b || b > 40) fail(ErrorKind::kUsage, "bad n range '" + v + "'");
    for (std::size_t e = a; e <= b; e += 2) out.push_back(std::size_t{1} << e);
    return out;
  }
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(to_size("n-values", item));
  }
  return out;
}

RootedGraph parse_pattern(const std::string& text, unsigned k) {
  if (text.empty()) return star_pattern(k);
  std::vector<LocalEdge> edges;
  unsigned nv = 1;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto gt = item.find('>');
    if (gt == std::string::npos) fail(ErrorKind::kUsage, "pattern edges look like 0>1");
    std::size_t a = to_size("pattern", item.substr(0, gt));
    std::size_t b = to_size("pattern", item.substr(gt + 1));
    if (a >= kMaxPatternVertices || b >= kMaxPatternVertices) {
      fail(ErrorKind::kUsage, "pattern has too many vertices");
    }
    nv = std::max<unsigned>(nv, static_cast<unsigned>(std::max(a, b) + 1));
    edges.emplace_back(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
  }
  return RootedGraph(nv, std::move(edges));
}

bool is_reduction(const std::string& instance) {
  return instance.rfind("reduction", 0) == 0;
}

struct TrialRow {
  std::size_t n = 0;
  std::string method;
  std::string estimate;
  std::string truth;
  double error = 0;
  bool success = false;
  QueryLedger ledger;
  std::vector<std::string> flags;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

struct Context {
  const ExperimentSpec& spec;
  std::string hash;
  std::optional<Digraph> file_graph;
  std::optional<TypeCatalog> catalog;
  std::optional<DiscFamily> family;
  std::optional<RootedGraph> pattern;
};

std::string join(const std::vector<double>& v, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) s += ';';
    s += short_fmt(v[i]);
  }
  return s;
}

std::string join(const std::vector<std::uint64_t>& v, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

Digraph make_instance(const Context& ctx, std::size_t n, std::uint64_t seed) {
  if (ctx.file_graph) return *ctx.file_graph;
  return generate(GeneratorSpec::parse(ctx.spec.instance), n, ctx.spec.d, seed);
}

EstimatorOptions options_for(const ExperimentSpec& spec, std::uint64_t seed) {
  EstimatorOptions o;
  o.seed = seed;
  o.keep_instances = false;
  o.cost.constant_scale = spec.constant_scale;
  o.cost.mode = spec.mode;
  return o;
}

std::vector<TrialRow> run_trial(const Context& ctx, const std::string& task,
                                std::size_t n, std::size_t trial) {
  const ExperimentSpec& spec = ctx.spec;
  const std::uint64_t base = task == spec.task ? spec.seed : derive_seed(spec.seed, n);
  const std::uint64_t inst_seed = derive_seed(base, 2 * trial);
  const std::uint64_t run_seed = derive_seed(base, 2 * trial + 1);
  Digraph g = make_instance(ctx, n, inst_seed);
  n = g.n();
  const double budget = spec.delta * static_cast<double>(n);
  TrialRow row;
  row.n = n;
  row.seed = run_seed;
  row.trial = trial;
  row.method = "quantum";
  auto finish = [&](const EstimateReport& r) {
    row.ledger = r.ledger;
    row.flags = r.flags;
    if (r.failure) row.flags.push_back("failure");
  };

  if (task == "est-vertices") {
    GraphOutOracle o(g);
    auto r = est_vertices(o, spec.delta, options_for(spec, run_seed));
    auto truth = count_indegree(g);
    for (std::size_t k = 1; k < r.estimates.size(); ++k) {
      row.error += std::abs(r.estimates[k] - static_cast<double>(truth.at(k)));
    }
    row.estimate = join(r.estimates, 1);
    row.truth = join(truth, 1);
    row.success = row.error <= budget;
    finish(r);
    return {row};
  }
  if (task == "est-disc" || task == "est-disc-star") {
    GraphOutOracle o(g);
    const auto& cat = *ctx.catalog;
    auto r = task == "est-disc"
                 ? est_disc(o, cat, spec.delta, options_for(spec, run_seed))
                 : est_disc_star(o, cat, Real(spec.delta), options_for(spec, run_seed));
    auto truth = count_disc_types(g, cat);
    for (std::size_t id = 1; id < cat.size(); ++id) {
      row.error += std::abs(r.estimates[id] - static_cast<double>(truth[id]));
    }
    row.estimate = join(r.estimates, 1);
    row.truth = join(truth, 1);
    row.success = row.error <= budget;
    finish(r);
    return {row};
  }
  if (task == "est-subgraph") {
    GraphOutOracle o(g);
    auto r = est_subgraph(o, *ctx.catalog, spec.delta, *ctx.pattern,
                          options_for(spec, run_seed));
    const auto truth = count_subgraph(g, *ctx.pattern);
    row.error = std::abs(r.estimate - static_cast<double>(truth));
    row.estimate = short_fmt(r.estimate);
    row.truth = std::to_string(truth);
    row.success = row.error <= budget;
    finish(r.discs);
    return {row};
  }
  if (task == "test-star-free") {
    const bool has_star = count_subgraph(g, star_pattern(spec.k)) > 0;
    GraphOutOracle o(g);
    auto v = test_property(o, *ctx.catalog, *ctx.family, options_for(spec, run_seed));
    row.estimate = v.reject ? "reject" : "accept";
    row.truth = has_star ? "has-star" : "star-free";
    row.error = v.score.convert_to<double>();
    row.success = v.reject == has_star;
    finish(v.report);
    BidirectionalOracle b(g);
    auto bv = classical_bidirectional_star_test(b, spec.k, spec.epsilon,
                                                derive_seed(run_seed, 1),
                                                spec.baseline_constant);
    TrialRow base_row = row;
    base_row.method = "baseline";
    base_row.estimate = bv.reject ? "reject" : "accept";
    base_row.error = 0;
    base_row.success = bv.reject == has_star;
    base_row.ledger = bv.ledger;
    base_row.flags.clear();
    return {row, base_row};
  }
  fail(ErrorKind::kUsage, "task '" + task + "' has no trials");
}

std::string flags_text(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) {
    if (!s.empty()) s += ';';
    s += f;
  }
  return s;
}

void write_trial_row(std::ostream& os, const std::string& hash, const TrialRow& r) {
  os << "trial," << hash << ',' << r.seed << ',' << r.trial << ',' << r.n << ','
     << r.method << ',' << r.estimate << ',' << r.truth << ',' << short_fmt(r.error)
     << ',' << (r.success ? 1 : 0) << ',' << r.ledger.classical_out << ','
     << r.ledger.classical_in << ',' << ceil_string(r.ledger.quantum_cost) << ','
     << flags_text(r.flags) << ",,,\n";
}

struct GroupSummary {
  std::size_t n = 0;
  std::string method;
  std::size_t count = 0;
  double success_rate = 0;
  Real mean, p50, p90;
};

GroupSummary summarize(const std::vector<const TrialRow*>& rows) {
  GroupSummary s;
  s.count = rows.size();
  if (rows.empty()) return s;
  s.n = rows[0]->n;
  s.method = rows[0]->method;
  std::vector<Real> costs;
  std::size_t ok = 0;
  Real total = 0;
  for (const auto* r : rows) {
    ok += r->success;
    costs.push_back(r->ledger.quantum_cost);
    total += r->ledger.quantum_cost;
  }
  std::sort(costs.begin(), costs.end());
  s.success_rate = static_cast<double>(ok) / static_cast<double>(rows.size());
  s.mean = total / Real(rows.size());
  auto pct = [&](double p) {
    return costs[static_cast<std::size_t>(std::floor(p * (costs.size() - 1)))];
  };
  s.p50 = pct(0.5);
  s.p90 = pct(0.9);
  return s;
}

void write_summary_row(std::ostream& os, const std::string& hash,
                       std::uint64_t seed, const GroupSummary& s) {
  os << "summary," << hash << ',' << seed << ',' << s.count << ',' << s.n << ','
     << s.method << ",,,," << short_fmt(s.success_rate) << ",,,,,"
     << ceil_string(s.mean) << ',' << ceil_string(s.p50) << ','
     << ceil_string(s.p90) << '\n';
}

nlohmann::json spec_json(const ExperimentSpec& spec, const std::string& hash) {
  nlohmann::json j;
  j["config_hash"] = hash;
  j["task"] = spec.task;
  j["instance"] = spec.instance;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["q"] = spec.q;
  j["k"] = spec.k;
  j["delta"] = spec.delta;
  j["epsilon"] = spec.epsilon;
  j["constant_scale"] = spec.constant_scale;
  j["count_mode"] = to_string(spec.mode);
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["pattern"] = spec.pattern;
  j["sweep_task"] = spec.sweep_task;
  j["n_values"] = spec.n_values;
  j["sample_constant"] = spec.sample_constant;
  j["baseline_constant"] = spec.baseline_constant;
  return j;
}

// Tracks artifacts so a failed run leaves nothing behind.
class ArtifactSet {
 public:
  std::ofstream open(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::kIo, "cannot write '" + path + "'");
    paths_.push_back(path);
    return os;
  }
  void close(std::ofstream& os, const std::string& path) {
    os.close();
    if (!os) fail(ErrorKind::kIo, "write failed for '" + path + "'");
  }
  void discard() {
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
    paths_.clear();
  }
  const std::vector<std::string>& paths() const { return paths_; }

 private:
  std::vector<std::string> paths_;
};

unsigned worker_count(const ExperimentSpec& spec, std::size_t jobs) {
  unsigned t = spec.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, jobs)));
}

// Runs jobs on a pool; results land in job order.
std::vector<std::vector<TrialRow>> run_pool(
    const Context& ctx, const std::vector<std::pair<std::string, std::size_t>>& jobs,
    const std::vector<std::size_t>& trial_ids) {
  std::vector<std::vector<TrialRow>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_trial(ctx, jobs[i].first, jobs[i].second, trial_ids[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = worker_count(ctx.spec, jobs.size());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void prepare(Context& ctx, const std::string& task) {
  const ExperimentSpec& spec = ctx.spec;
  if (spec.instance.rfind("file:", 0) == 0) {
    ctx.file_graph = load_graph(spec.instance.substr(5));
  }
  unsigned d = spec.d;
  if (ctx.file_graph) d = ctx.file_graph->d();
  if (is_reduction(spec.instance)) {
    d = std::max(1u, GeneratorSpec::parse(spec.instance).k);
  }
  if (task == "est-disc" || task == "est-disc-star" || task == "est-subgraph" ||
      task == "test-star-free" || task == "truth-dump") {
    ctx.catalog.emplace(enumerate_catalog(d, spec.q));
    ctx.catalog->matrix();
  }
  if (task == "est-subgraph") ctx.pattern = parse_pattern(spec.pattern, spec.k);
  if (task == "test-star-free") {
    ctx.family = star_family(spec.k, *ctx.catalog, spec.epsilon, spec.sample_constant);
  }
}

}  // namespace

void ExperimentSpec::set(const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "task") {
    task = value;
  } else if (key == "instance") {
    instance = value;
  } else if (key == "n") {
    n = to_size(key, value);
  } else if (key == "d") {
    d = static_cast<unsigned>(to_size(key, value));
  } else if (key == "q") {
    q = static_cast<unsigned>(to_size(key, value));
  } else if (key == "k") {
    k = static_cast<unsigned>(to_size(key, value));
  } else if (key == "delta") {
    delta = to_double(key, value);
  } else if (key == "epsilon" || key == "eps") {
    epsilon = to_double(key, value);
  } else if (key == "constant-scale") {
    constant_scale = to_double(key, value);
  } else if (key == "count-mode" || key == "mode") {
    mode = parse_count_mode(value);
  } else if (key == "trials") {
    trials = to_size(key, value);
  } else if (key == "seed") {
    seed = to_size(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "pattern") {
    pattern = value;
  } else if (key == "sweep-task") {
    sweep_task = value;
  } else if (key == "n-values") {
    n_values = parse_n_values(value);
  } else if (key == "input") {
    input = value;
  } else if (key == "sample-constant") {
    sample_constant = to_double(key, value);
  } else if (key == "baseline-constant") {
    baseline_constant = to_double(key, value);
  } else if (key == "threads") {
    threads = static_cast<unsigned>(to_size(key, value));
  } else {
    fail(ErrorKind::kUsage, "unknown experiment key '" + raw_key + "'");
  }
}

void ExperimentSpec::validate() const {
  if (std::find(kTasks.begin(), kTasks.end(), task) == kTasks.end()) {
    fail(ErrorKind::kUsage, "unknown task '" + task + "'");
  }
  if (out.empty()) fail(ErrorKind::kUsage, "an output path is required");
  if (task == "fit-exponent") {
    if (input.empty()) fail(ErrorKind::kUsage, "fit-exponent needs an input CSV");
    return;
  }
  if (d < 1 || d > 64) fail(ErrorKind::kUsage, "d must lie in [1, 64]");
  if (q < 1) fail(ErrorKind::kUsage, "q must be positive");
  if (task == "catalog-dump") return;
  if (n < 1) fail(ErrorKind::kUsage, "n must be positive");
  if (trials < 1) fail(ErrorKind::kUsage, "trials must be positive");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::kUsage, "delta must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorKind::kUsage, "epsilon must lie in (0,1]");
  }
  if (!(constant_scale > 0.0)) fail(ErrorKind::kUsage, "constant-scale must be positive");
  if (k < 1) fail(ErrorKind::kUsage, "k must be positive");
  if (instance.rfind("file:", 0) != 0) GeneratorSpec::parse(instance);
  if (task == "est-subgraph") {
    RootedGraph h = parse_pattern(pattern, k);
    const int r = h.radius();
    if (r < 0) fail(ErrorKind::kUsage, "pattern must be connected");
    if (static_cast<unsigned>(r) > q) {
      fail(ErrorKind::kUsage, "pattern radius exceeds q");
    }
  }
  if (task == "scaling-sweep") {
    if (sweep_task != "est-vertices" && sweep_task != "est-disc" &&
        sweep_task != "est-disc-star") {
      fail(ErrorKind::kUsage, "sweep-task must be an estimator task");
    }
  }
}

std::string ExperimentSpec::canonical() const {
  std::ostringstream os;
  os << "task=" << task << ";instance=" << instance << ";n=" << n << ";d=" << d
     << ";q=" << q << ";k=" << k << ";delta=" << fmt(delta)
     << ";epsilon=" << fmt(epsilon) << ";constant_scale=" << fmt(constant_scale)
     << ";mode=" << to_string(mode) << ";trials=" << trials << ";seed=" << seed
     << ";pattern=" << pattern << ";sweep_task=" << sweep_task << ";n_values=";
  for (auto v : n_values) os << v << ' ';
  os << ";input=" << input << ";sample_constant=" << fmt(sample_constant)
     << ";baseline_constant=" << fmt(baseline_constant);
  return os.str();
}

std::string config_hash(const ExperimentSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : spec.canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

ExponentFit fit_exponent(const std::vector<std::size_t>& n,
                         const std::vector<Real>& cost, std::uint64_t seed,
                         unsigned resamples) {
  if (n.size() != cost.size()) fail(ErrorKind::kUsage, "n and cost differ in length");
  std::map<std::size_t, std::vector<Real>> groups;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(cost[i] > 0)) {
      fail(ErrorKind::kInsufficientData, "cost values must be positive");
    }
    groups[n[i]].push_back(cost[i]);
  }
  if (groups.size() < 5) {
    fail(ErrorKind::kInsufficientData, "need at least 5 distinct n values");
  }
  for (const auto& [nv, c] : groups) {
    if (c.size() < 10) {
      fail(ErrorKind::kInsufficientData,
           "need at least 10 trials at n=" + std::to_string(nv));
    }
  }
  auto fit = [&](const std::vector<double>& ys) {
    std::vector<double> xs;
    for (const auto& [nv, c] : groups) xs.push_back(std::log(static_cast<double>(nv)));
    const double k = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    return std::pair<double, double>(slope, my - slope * mx);
  };
  auto log_mean = [](const std::vector<Real>& c) {
    Real s = 0;
    for (const auto& x : c) s += x;
    return log(s / Real(c.size())).convert_to<double>();
  };
  std::vector<double> ys;
  for (const auto& [nv, c] : groups) ys.push_back(log_mean(c));
  ExponentFit out;
  std::tie(out.slope, out.intercept) = fit(ys);
  out.points = groups.size();
  Rng rng(seed);
  std::vector<double> slopes;
  slopes.reserve(resamples);
  for (unsigned r = 0; r < resamples; ++r) {
    std::vector<double> boot;
    for (const auto& [nv, c] : groups) {
      std::vector<Real> pick;
      pick.reserve(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) pick.push_back(c[rng.below(c.size())]);
      boot.push_back(log_mean(pick));
    }
    slopes.push_back(fit(boot).first);
  }
  if (slopes.empty()) {
    out.ci_low = out.ci_high = out.slope;
  } else {
    std::sort(slopes.begin(), slopes.end());
    auto at = [&](double p) {
      return slopes[static_cast<std::size_t>(std::floor(p * (slopes.size() - 1)))];
    };
    out.ci_low = at(0.025);
    out.ci_high = at(0.975);
  }
  return out;
}

ExponentFit fit_exponent_csv(const std::string& path, std::uint64_t seed) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::kIo, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::kInsufficientData, "empty sweep CSV");
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  auto col = [&](const std::string& name) {
    auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) fail(ErrorKind::kInsufficientData, "CSV lacks column " + name);
    return static_cast<std::size_t>(it - cols.begin());
  };
  const std::size_t row_c = col("row"), n_c = col("n"), cost_c = col("quantum_cost");
  const std::size_t method_c = col("method");
  std::vector<std::size_t> ns;
  std::vector<Real> costs;
  while (std::getline(is, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) f.push_back(c);
    if (f.size() <= std::max({row_c, n_c, cost_c, method_c})) continue;
    if (f[row_c] != "trial" || f[method_c] == "baseline") continue;
    ns.push_back(to_size("n", f[n_c]));
    costs.push_back(Real(f[cost_c]));
  }
  return fit_exponent(ns, costs, seed);
}

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentSummary summary;
  summary.config_hash = config_hash(spec);
  const std::string& hash = summary.config_hash;
  ArtifactSet artifacts;
  try {
    nlohmann::json side = spec_json(spec, hash);
    if (spec.task == "fit-exponent") {
      const ExponentFit f = fit_exponent_csv(spec.input, spec.seed);
      auto os = artifacts.open(spec.out);
      os << "config_hash,seed,slope,intercept,ci_low,ci_high,points\n"
         << hash << ',' << spec.seed << ',' << fmt(f.slope) << ','
         << fmt(f.intercept) << ',' << fmt(f.ci_low) << ',' << fmt(f.ci_high)
         << ',' << f.points << '\n';
      artifacts.close(os, spec.out);
      summary.rows = 1;
    } else if (spec.task == "catalog-dump") {
      const TypeCatalog cat = enumerate_catalog(spec.d, spec.q);
      auto os = artifacts.open(spec.out);
      dump_catalog(os, cat);
      artifacts.close(os, spec.out);
      const std::string mpath = spec.out + ".matrix.csv";
      auto ms = artifacts.open(mpath);
      dump_matrix(ms, cat.matrix());
      artifacts.close(ms, mpath);
      side["catalog_size"] = cat.size();
      side["max_edges"] = cat.max_edges();
      side["m"] = cat.m();
      summary.rows = cat.size();
    } else if (spec.task == "truth-dump") {
      Context ctx{spec, hash, {}, {}, {}, {}};
      prepare(ctx, spec.task);
      const Digraph g = make_instance(ctx, spec.n, derive_seed(spec.seed, 0));
      const auto cnt = count_disc_types(g, *ctx.catalog);
      auto os = artifacts.open(spec.out);
      write_truth_csv(os, *ctx.catalog, cnt);
      artifacts.close(os, spec.out);
      side["indegree"] = count_indegree(g);
      summary.rows = cnt.size();
    } else {
      const bool sweep = spec.task == "scaling-sweep";
      const std::string task = sweep ? spec.sweep_task : spec.task;
      Context ctx{spec, hash, {}, {}, {}, {}};
      prepare(ctx, task);
      std::vector<std::size_t> grid = {spec.n};
      if (sweep) {
        grid = spec.n_values;
        if (grid.empty()) grid = parse_n_values("2^10..2^20");
      }
      std::vector<std::pair<std::string, std::size_t>> jobs;
      std::vector<std::size_t> ids;
      for (std::size_t nv : grid) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
          jobs.emplace_back(task, nv);
          ids.push_back(t);
        }
      }
      const auto results = run_pool(ctx, jobs, ids);
      auto os = artifacts.open(spec.out);
      os << kHeader;
      std::map<std::pair<std::size_t, std::string>, std::vector<const TrialRow*>> groups;
      std::vector<std::pair<std::size_t, std::string>> order;
      std::vector<std::size_t> fit_n;
      std::vector<Real> fit_cost;
      for (const auto& rows : results) {
        for (const auto& r : rows) {
          write_trial_row(os, hash, r);
          ++summary.rows;
          const auto key = std::make_pair(sweep ? r.n : std::size_t{0}, r.method);
          if (!groups.count(key)) order.push_back(key);
          groups[key].push_back(&r);
          if (r.method == "quantum") {
            fit_n.push_back(r.n);
            fit_cost.push_back(r.ledger.quantum_cost);
          }
        }
      }
      nlohmann::json sums = nlohmann::json::array();
      std::size_t ok = 0, total = 0;
      for (const auto& key : order) {
        GroupSummary s = summarize(groups[key]);
        if (!sweep) s.n = results.front().front().n;
        write_summary_row(os, hash, spec.seed, s);
        sums.push_back({{"n", s.n},
                        {"method", s.method},
                        {"trials", s.count},
                        {"success_rate", s.success_rate},
                        {"cost_mean", ceil_string(s.mean)},
                        {"cost_p50", ceil_string(s.p50)},
                        {"cost_p90", ceil_string(s.p90)}});
        if (s.method == "quantum") {
          ok += static_cast<std::size_t>(std::llround(s.success_rate * s.count));
          total += s.count;
        }
      }
      artifacts.close(os, spec.out);
      side["summary"] = sums;
      summary.success_rate = total ? static_cast<double>(ok) / total : 0.0;
      side["success_rate"] = summary.success_rate;
      if (sweep) {
        try {
          const ExponentFit f = fit_exponent(fit_n, fit_cost, spec.seed);
          side["fit"] = {{"slope", f.slope},
                         {"intercept", f.intercept},
                         {"ci_low", f.ci_low},
                         {"ci_high", f.ci_high},
                         {"points", f.points}};
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kInsufficientData) throw;
          side["fit"] = {{"error", e.what()}};
        }
      }
    }
    const std::string jpath = spec.out + ".json";
    auto js = artifacts.open(jpath);
    js << side.dump(2) << '\n';
    artifacts.close(js, jpath);
  } catch (...) {
    artifacts.discard();
    throw;
  }
  summary.artifacts = artifacts.paths();
  return summary;
}

}  // namespace qdisc
