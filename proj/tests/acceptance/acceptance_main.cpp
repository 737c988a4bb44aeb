// Acceptance suite: one checkable criterion per entry, printed as a
// pass/fail line. Run with no arguments for the full battery or with
// criterion numbers to select.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gcds/collectors.hpp"
#include "gcds/immediate.hpp"
#include "gcds/metrics.hpp"
#include "gcds/reductions.hpp"
#include "gcds/registry.hpp"
#include "gcds/workloads.hpp"

namespace gcds {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double fit_loglog_slope(const std::vector<double>& n,
                        const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = n.size();
  for (std::size_t i = 0; i < m; ++i) {
    double lx = std::log2(n[i]);
    double ly = std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------- 1
// Soundness fuzz across every backend: no freed-while-reachable, ever.
Outcome criterion_soundness() {
  FuzzOptions opts;
  opts.backends = {"rc", "ms", "ett", "drds"};
  opts.cls = TraceClass::general();
  opts.trials = 1000;
  opts.seed = 42;
  opts.max_nodes = 300;
  opts.max_ops = 2000;
  // Pure soundness here; exact-match checking is the next criterion.
  FuzzReport rep = [&] {
    FuzzOptions pure = opts;
    FuzzReport out;
    out.trials = pure.trials;
    for (const auto& name : pure.backends)
      out.backends.push_back(FuzzBackendStats{name});
    std::mt19937_64 rng(pure.seed);
    for (std::uint32_t t = 0; t < pure.trials; ++t) {
      std::uint32_t nodes = 2 + static_cast<std::uint32_t>(
                                    rng() % (pure.max_nodes - 1));
      std::uint32_t span = std::min(pure.max_ops, nodes * 10);
      std::uint32_t len =
          nodes + static_cast<std::uint32_t>(
                      rng() % std::max(1u, span - nodes + 1));
      auto trace = gen_trace(pure.cls, nodes, len, rng());
      TraceOracle oracle = TraceOracle::compute(trace);
      for (std::size_t i = 0; i < pure.backends.size(); ++i) {
        auto backend = make_backend(pure.backends[i]);
        RunOptions ro;
        ro.oracle = &oracle;
        ro.check_soundness = true;
        try {
          run_trace(*backend, trace, ro);
        } catch (const SoundnessViolation&) {
          ++out.backends[i].violations;
          ++out.violations;
        }
      }
    }
    return out;
  }();
  std::ostringstream d;
  d << rep.trials << " traces x " << opts.backends.size() << " backends, "
    << rep.violations << " violations";
  return {rep.violations == 0, d.str()};
}

// ---------------------------------------------------------------------- 2
// Immediate collection: cumulative free set equals the oracle's after every
// single op, exactly; same corpus as criterion 1.
Outcome criterion_immediate() {
  FuzzOptions opts;
  opts.backends = {"ms", "ett", "drds"};
  opts.cls = TraceClass::general();
  opts.trials = 1000;
  opts.seed = 42;
  opts.max_nodes = 300;
  opts.max_ops = 2000;
  FuzzReport rep = run_fuzz(opts);
  std::uint64_t max_delay = 0;
  for (const auto& b : rep.backends)
    max_delay = std::max(max_delay, b.max_bounded_delay);
  std::ostringstream d;
  d << rep.trials << " traces, violations=" << rep.violations
    << ", worst delay=" << max_delay;
  return {rep.violations == 0 && max_delay <= 1, d.str()};
}

// ---------------------------------------------------------------------- 3
// A detached cycle is never freed by reference counting, even after 10^4
// extra steps: measured delay is unbounded.
Outcome criterion_rc_cycle_leak() {
  std::vector<MutOp> trace = {MutOp::alloc(),       MutOp::alloc(),
                              MutOp::ins(1, 2),     MutOp::ins(2, 1),
                              MutOp::del(kRoot, 2), MutOp::del(kRoot, 1)};
  for (int i = 0; i < 10000; ++i) trace.push_back(MutOp::step());
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, trace);
  bool never_freed = rec.frees.empty();
  Delay delay = measure_delay(rec);
  std::ostringstream d;
  d << "frees=" << rec.frees.size() << ", delay=" << to_string(delay);
  return {never_freed && delay == Delay::never(), d.str()};
}

// ---------------------------------------------------------------------- 4
// Refcount all-reachable pause is constant: max per-op steps flat in n.
Outcome criterion_rc_flat_pause() {
  std::vector<std::uint64_t> maxima;
  for (std::uint32_t n : {256u, 1024u, 4096u}) {
    auto trace = workload_sparse_allreach(n, 4, 1234);
    RefCountBackend rc;
    MetricsRecord rec = run_trace(rc, trace);
    maxima.push_back(rec.max_pause_steps());
  }
  double ratio = static_cast<double>(
                     *std::max_element(maxima.begin(), maxima.end())) /
                 static_cast<double>(
                     *std::min_element(maxima.begin(), maxima.end()));
  std::ostringstream d;
  d << "max per-op steps " << maxima[0] << "/" << maxima[1] << "/"
    << maxima[2] << ", ratio " << ratio;
  return {ratio <= 1.5, d.str()};
}

// ---------------------------------------------------------------------- 5
// The immediate collector's acyclic delete cost: steps fit C*(dead+1)*log n
// with a stable constant, and all-reachable sparse traces stay within
// C'*log n per op.
Outcome criterion_ett_acyclic_cost() {
  const std::vector<std::uint32_t> sizes = {256, 1024, 4096, 16384};
  std::vector<double> churn_consts;
  std::vector<double> allreach_consts;
  for (std::uint32_t n : sizes) {
    {
      auto trace = workload_sparse_churn(n, 2, 77);
      TraceOracle oracle = TraceOracle::compute(trace);
      EttBackend b;
      RunOptions ro;
      ro.oracle = &oracle;
      ro.require_immediate = true;
      MetricsRecord rec = run_trace(b, trace, ro);
      double steps = 0, weight = 0;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].kind != OpKind::kDelete) continue;
        steps += static_cast<double>(rec.op_steps[i]);
        weight += (oracle.dead_edges[i] + 1.0) * std::log2(double(n));
      }
      churn_consts.push_back(steps / weight);
    }
    {
      auto trace = workload_sparse_allreach(n, 3, 99);
      EttBackend b;
      MetricsRecord rec = run_trace(b, trace);
      allreach_consts.push_back(double(rec.max_pause_steps()) /
                                std::log2(double(n)));
    }
  }
  double mean = 0;
  for (double c : churn_consts) mean += c;
  mean /= churn_consts.size();
  bool stable = true;
  for (double c : churn_consts)
    stable = stable && c >= 0.5 * mean && c <= 1.5 * mean;
  // Pin C' from the two smallest sizes; larger sizes must stay under it.
  double cprime = 1.5 * std::max(allreach_consts[0], allreach_consts[1]);
  bool bounded = true;
  for (std::size_t i = 2; i < allreach_consts.size(); ++i)
    bounded = bounded && allreach_consts[i] <= cprime;
  std::ostringstream d;
  d << "churn C = {";
  for (double c : churn_consts) d << " " << c;
  d << " }, all-reachable C' = {";
  for (double c : allreach_consts) d << " " << c;
  d << " } vs pinned " << cprime;
  return {stable && bounded, d.str()};
}

// ---------------------------------------------------------------------- 6
// Scan-everything vs immediate separation on the linked-list benchmark.
Outcome criterion_list_separation() {
  auto trace = workload_list(4096);
  MarkSweepBackend ms;
  EttBackend ett;
  MetricsRecord rms = run_trace(ms, trace);
  MetricsRecord rett = run_trace(ett, trace);
  double ratio = static_cast<double>(rms.total_steps()) /
                 static_cast<double>(rett.total_steps());
  std::ostringstream d;
  d << "ms=" << rms.total_steps() << " ett=" << rett.total_steps()
    << " ratio=" << ratio;
  return {ratio >= 100.0, d.str()};
}

// ---------------------------------------------------------------------- 7
// Acyclic deletes settle in at most two sweeps, across 10^4 fuzz deletes.
Outcome criterion_two_sweeps() {
  std::uint64_t deletes = 0, over = 0;
  for (std::uint64_t seed = 0; deletes < 10000; ++seed) {
    auto trace = workload_sparse_churn(512, 3, seed);
    EttBackend b;
    for (const MutOp& op : trace) {
      b.apply(op);
      if (op.kind == OpKind::kDelete) {
        ++deletes;
        if (b.last_delete_stats().sweeps > 2) ++over;
      }
    }
  }
  std::ostringstream d;
  d << deletes << " acyclic deletes, " << over << " needed a third sweep";
  return {over == 0, d.str()};
}

// ---------------------------------------------------------------------- 8
// Dense-heap memoization: with the cursor, per-delete incoming-edge
// examinations track the dead-edge count; without it they balloon.
Outcome criterion_dense_memoization() {
  const std::uint32_t n = 512, outdeg = 64;
  auto trace = workload_dense_teardown(n, outdeg, 11);
  TraceOracle oracle = TraceOracle::compute(trace);
  double dead = oracle.dead_edges.back() + 1.0;

  EttBackend with_cursor(ImmediateOptions{true});
  for (const MutOp& op : trace) with_cursor.apply(op);
  double exams_on =
      static_cast<double>(with_cursor.last_delete_stats().edge_examinations);

  EttBackend without(ImmediateOptions{false});
  for (const MutOp& op : trace) without.apply(op);
  double exams_off =
      static_cast<double>(without.last_delete_stats().edge_examinations);

  const double kC = 4.0;  // examinations per dead edge, cursor on
  std::ostringstream d;
  d << "dead+1=" << dead << " exams on=" << exams_on
    << " off=" << exams_off << " (off/on=" << exams_off / exams_on << ")";
  return {exams_on <= kC * dead && exams_off >= 4.0 * exams_on, d.str()};
}

// ---------------------------------------------------------------------- 9
// Reachability built from each immediate collector answers exactly like the
// naive oracle, and queries never perturb the collector.
Outcome criterion_drds_reduction() {
  const VertexId n = 40;
  std::uint64_t total_queries = 0, disagreements = 0, hash_breaks = 0;
  for (const char* name : {"ett", "ms", "drds"}) {
    auto factory = [&]() { return make_backend(name); };
    std::uint64_t budget = calibrate_drds_pause_budget(factory, n);
    std::mt19937_64 rng(4242);
    const int graphs = 167;
    for (int g = 0; g < graphs; ++g) {
      DrdsFromGcds reduced(factory(), budget, 1);
      NaiveDrds naive;
      std::vector<std::pair<VertexId, VertexId>> edges;
      for (int i = 0; i < 200; ++i) {
        std::uint32_t pick = rng() % 10;
        VertexId a = rng() % n;
        VertexId b = rng() % n;
        if (pick < 4) {
          reduced.dc_insert(a, b);
          naive.dc_insert(a, b);
          edges.push_back({a, b});
        } else if (pick < 6 && !edges.empty()) {
          std::size_t k = rng() % edges.size();
          auto [x, y] = edges[k];
          edges[k] = edges.back();
          edges.pop_back();
          reduced.dc_delete(x, y);
          naive.dc_delete(x, y);
        } else {
          if (a == b) continue;
          ++total_queries;
          std::uint64_t h0 = reduced.inner().state_hash();
          bool got = reduced.dc_connected(a, b);
          if (reduced.inner().state_hash() != h0) ++hash_breaks;
          if (got != naive.dc_connected(a, b)) ++disagreements;
        }
      }
    }
  }
  std::ostringstream d;
  d << total_queries << " queries, " << disagreements << " disagreements, "
    << hash_breaks << " state perturbations";
  return {total_queries >= 10000 && disagreements == 0 && hash_breaks == 0,
          d.str()};
}

// --------------------------------------------------------------------- 10
// Layered permutation reachability through the collector: exhaustive
// agreement under permutation churn, including the worked 3x3 answers.
Outcome criterion_lprds_reduction() {
  // Worked example first.
  {
    std::vector<std::uint32_t> layers = {0, 0, 0, 1, 1, 1, 2, 2, 2};
    auto factory = [&]() { return make_backend("ett"); };
    std::uint64_t budget = calibrate_lprds_pause_budget(factory, layers);
    LprdsFromGcds lp(factory(), layers, budget, 1);
    lp.lp_insert(0, 3);
    lp.lp_insert(3, 7);
    lp.lp_insert(1, 5);
    lp.lp_insert(5, 8);
    lp.lp_insert(2, 4);
    lp.lp_insert(4, 6);
    if (!lp.lp_connected(0, 7) || lp.lp_connected(0, 6))
      return {false, "worked 3x3 answers wrong"};
  }

  const std::uint32_t layers_n = 8, width = 8;
  std::vector<std::uint32_t> layer_of(layers_n * width);
  for (std::uint32_t l = 0; l < layers_n; ++l)
    for (std::uint32_t w = 0; w < width; ++w)
      layer_of[l * width + w] = l;
  auto factory = [&]() { return make_backend("ett"); };
  std::uint64_t budget = calibrate_lprds_pause_budget(factory, layer_of);
  LprdsFromGcds lp(factory(), layer_of, budget, 1);
  NaiveDrds naive;
  std::vector<std::vector<VertexId>> perm(layers_n - 1);
  for (std::uint32_t l = 0; l + 1 < layers_n; ++l) {
    perm[l].resize(width);
    for (std::uint32_t w = 0; w < width; ++w) {
      perm[l][w] = w;
      lp.lp_insert(l * width + w, (l + 1) * width + w);
      naive.dc_insert(l * width + w, (l + 1) * width + w);
    }
  }
  std::mt19937_64 rng(31337);
  std::uint64_t queries = 0, disagreements = 0;
  auto exhaustive = [&]() {
    for (std::uint32_t w = 0; w < width; ++w) {
      for (VertexId t = width; t < layers_n * width; ++t) {
        ++queries;
        if (lp.lp_connected(w, t) != naive.dc_connected(w, t))
          ++disagreements;
      }
    }
  };
  exhaustive();
  for (int update = 0; update < 200; ++update) {
    std::uint32_t l = rng() % (layers_n - 1);
    std::uint32_t i = rng() % width;
    std::uint32_t j = rng() % width;
    if (i == j) continue;
    VertexId si = l * width + i, sj = l * width + j;
    VertexId ti = (l + 1) * width + perm[l][i];
    VertexId tj = (l + 1) * width + perm[l][j];
    lp.lp_delete(si, ti);
    naive.dc_delete(si, ti);
    lp.lp_delete(sj, tj);
    naive.dc_delete(sj, tj);
    std::swap(perm[l][i], perm[l][j]);
    lp.lp_insert(si, (l + 1) * width + perm[l][i]);
    naive.dc_insert(si, (l + 1) * width + perm[l][i]);
    lp.lp_insert(sj, (l + 1) * width + perm[l][j]);
    naive.dc_insert(sj, (l + 1) * width + perm[l][j]);
    exhaustive();
  }
  std::ostringstream d;
  d << queries << " exhaustive queries over 200 updates, " << disagreements
    << " disagreements";
  return {disagreements == 0, d.str()};
}

// --------------------------------------------------------------------- 11
// The six-node worked example: deleting Root->b frees exactly {b, n1} and
// leaves n3 under the root with n2 and n4 below it.
Outcome criterion_worked_example() {
  EttBackend b;
  std::vector<MutOp> setup = {
      MutOp::alloc(),   MutOp::alloc(),       MutOp::alloc(),
      MutOp::alloc(),   MutOp::alloc(),
      MutOp::ins(1, 2), MutOp::del(kRoot, 2),
      MutOp::ins(1, 3), MutOp::del(kRoot, 3),
      MutOp::ins(1, 4), MutOp::del(kRoot, 4),
      MutOp::ins(3, 5), MutOp::del(kRoot, 5),
      MutOp::ins(5, 3), MutOp::ins(4, 3),     MutOp::ins(kRoot, 4),
  };
  for (const MutOp& op : setup) b.apply(op);
  b.drain_free_list();
  b.remove(kRoot, 1);
  auto freed = b.drain_free_list();
  std::sort(freed.begin(), freed.end());
  bool frees_ok = freed == std::vector<NodeId>{1, 2};
  bool parents_ok = b.tree_parent(4) == std::optional<NodeId>(kRoot) &&
                    b.tree_parent(3) == std::optional<NodeId>(4) &&
                    b.tree_parent(5) == std::optional<NodeId>(3);
  std::ostringstream d;
  d << "freed {";
  for (NodeId v : freed) d << " " << v;
  d << " }, parents n3<-root:" << (parents_ok ? "yes" : "no");
  return {frees_ok && parents_ok, d.str()};
}

// --------------------------------------------------------------------- 12
// Thrashing at the cap: the scan-everything collector pays pauses at least
// fifty times the immediate collector's.
Outcome criterion_thrashing() {
  ThrashingParams p;
  p.n = 8192;
  auto ms = make_backend("ms");
  auto ett = make_backend("ett");
  CapRunReport rms = run_thrashing(*ms, p);
  CapRunReport rett = run_thrashing(*ett, p);
  double ratio = static_cast<double>(rms.stage2_max_pause) /
                 static_cast<double>(rett.stage2_max_pause);
  std::ostringstream d;
  d << "ms pause=" << rms.stage2_max_pause
    << " ett pause=" << rett.stage2_max_pause << " ratio=" << ratio;
  return {!rms.out_of_memory && !rett.out_of_memory && ratio >= 50.0,
          d.str()};
}

// --------------------------------------------------------------------- 13
// The stranded-tail scenario: the immediate collector services the
// allocation within a logarithmic pause; the scan-everything collector's
// pause grows linearly.
Outcome criterion_baker() {
  const std::vector<std::uint32_t> sizes = {256, 512, 1024, 2048, 4096};
  std::vector<double> ns, ms_pauses;
  std::vector<double> ett_consts;
  bool all_serviced = true;
  for (std::uint32_t n : sizes) {
    auto ms = make_backend("ms");
    auto ett = make_backend("ett");
    BakerReport rms = run_baker(*ms, n);
    BakerReport rett = run_baker(*ett, n);
    all_serviced = all_serviced && rms.serviced && rett.serviced;
    ns.push_back(n);
    ms_pauses.push_back(static_cast<double>(rms.service_pause));
    ett_consts.push_back(static_cast<double>(rett.service_pause) /
                         std::log2(double(n)));
  }
  double slope = fit_loglog_slope(ns, ms_pauses);
  double cprime = 1.5 * std::max(ett_consts[0], ett_consts[1]);
  bool ett_log = true;
  for (std::size_t i = 2; i < ett_consts.size(); ++i)
    ett_log = ett_log && ett_consts[i] <= cprime;
  std::ostringstream d;
  d << "ms slope=" << slope << ", ett pause/log2n = {";
  for (double c : ett_consts) d << " " << c;
  d << " } vs pinned " << cprime;
  return {all_serviced && std::abs(slope - 1.0) <= 0.15 && ett_log, d.str()};
}

// --------------------------------------------------------------------- 14
// The tour forest against a reference forest over 10^5 random ops.
class ReferenceForest {
 public:
  void make_singleton(NodeId id) { nodes_.resize(std::max<std::size_t>(nodes_.size(), id + 1)); }
  void join(NodeId a, NodeId b) {
    nodes_[b].parent = a;
    nodes_[b].has_parent = true;
    auto& kids = nodes_[a].children;
    kids.insert(kids.begin(), b);
  }
  void cut(NodeId b) {
    NodeId p = nodes_[b].parent;
    auto& kids = nodes_[p].children;
    kids.erase(std::find(kids.begin(), kids.end(), b));
    nodes_[b].has_parent = false;
  }
  bool has_parent(NodeId v) const { return nodes_[v].has_parent; }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  NodeId root_of(NodeId v) const {
    while (nodes_[v].has_parent) v = nodes_[v].parent;
    return v;
  }
  bool path(NodeId a, NodeId b) const {
    for (NodeId cur = b;;) {
      if (cur == a) return true;
      if (!nodes_[cur].has_parent) return false;
      cur = nodes_[cur].parent;
    }
  }
  std::optional<NodeId> next(NodeId v) const {
    if (!nodes_[v].children.empty()) return nodes_[v].children.front();
    for (NodeId cur = v; nodes_[cur].has_parent;) {
      NodeId p = nodes_[cur].parent;
      const auto& kids = nodes_[p].children;
      auto it = std::find(kids.begin(), kids.end(), cur);
      if (it + 1 != kids.end()) return *(it + 1);
      cur = p;
    }
    return std::nullopt;
  }

 private:
  struct Node {
    NodeId parent = 0;
    bool has_parent = false;
    std::vector<NodeId> children;
  };
  std::vector<Node> nodes_;
};

bool tour_is_valid(EttForest& f, NodeId member, std::string* why) {
  auto tour = f.tour_of(member);
  std::size_t k = f.tree_size(member);
  if (tour.size() != 2 * k - 1) {
    *why = "tour length mismatch";
    return false;
  }
  if (!tour[0].second) {
    *why = "tour must open with an enter";
    return false;
  }
  std::vector<NodeId> stack{tour[0].first};
  std::size_t enters = 1;
  for (std::size_t i = 1; i < tour.size(); ++i) {
    auto [node, is_enter] = tour[i];
    if (is_enter) {
      ++enters;
      stack.push_back(node);
    } else {
      if (stack.size() < 2) {
        *why = "ascend below the root";
        return false;
      }
      stack.pop_back();
      if (stack.back() != node) {
        *why = "unbalanced ascend";
        return false;
      }
    }
  }
  if (stack.size() != 1 || enters != k) {
    *why = "unbalanced tour";
    return false;
  }
  return true;
}

Outcome criterion_forest_oracle() {
  const NodeId kNodes = 200;
  EttForest f;
  ReferenceForest ref;
  for (NodeId v = 0; v < kNodes; ++v) {
    f.make_singleton(v);
    ref.make_singleton(v);
  }
  std::mt19937_64 rng(606);
  std::uint64_t ops = 0, checks = 0, mismatches = 0;
  std::string why;
  while (ops < 100000) {
    NodeId a = rng() % kNodes;
    NodeId b = rng() % kNodes;
    if (rng() % 2) {
      if (!ref.has_parent(b) && ref.root_of(a) != ref.root_of(b)) {
        f.join(a, b);
        ref.join(a, b);
        ++ops;
      }
    } else if (ref.has_parent(b)) {
      f.cut(b);
      ref.cut(b);
      ++ops;
    } else {
      continue;
    }
    for (int q = 0; q < 8; ++q) {
      NodeId x = rng() % kNodes;
      NodeId y = rng() % kNodes;
      ++checks;
      if (f.path(x, y) != ref.path(x, y)) ++mismatches;
      ++checks;
      auto fp = f.parent(y);
      bool ref_has = ref.has_parent(y);
      if (fp.has_value() != ref_has ||
          (ref_has && *fp != ref.parent(y)))
        ++mismatches;
      ++checks;
      if (f.next(x) != ref.next(x)) ++mismatches;
    }
    if (!tour_is_valid(f, a, &why)) {
      return {false, "tour invariant broke at op " + std::to_string(ops) +
                         ": " + why};
    }
  }
  std::ostringstream d;
  d << ops << " ops, " << checks << " checks, " << mismatches
    << " mismatches";
  return {mismatches == 0, d.str()};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "soundness fuzz across backends", criterion_soundness},
      {2, "immediate collection matches the oracle exactly",
       criterion_immediate},
      {3, "reference counting never frees a detached cycle",
       criterion_rc_cycle_leak},
      {4, "refcount all-reachable pause is flat in heap size",
       criterion_rc_flat_pause},
      {5, "immediate collector acyclic delete cost is (dead+1) log n",
       criterion_ett_acyclic_cost},
      {6, "mark-sweep vs immediate separation on list-4096",
       criterion_list_separation},
      {7, "acyclic deletes settle in at most two sweeps",
       criterion_two_sweeps},
      {8, "dense-heap scan memoization pays off", criterion_dense_memoization},
      {9, "reachability reduction agrees with the naive oracle",
       criterion_drds_reduction},
      {10, "layered permutation reduction agrees exhaustively",
       criterion_lprds_reduction},
      {11, "worked six-node delete frees exactly the stranded pair",
       criterion_worked_example},
      {12, "thrashing pause separation at the memory cap",
       criterion_thrashing},
      {13, "stranded-tail allocation pause: log vs linear", criterion_baker},
      {14, "tour forest matches the reference forest", criterion_forest_oracle},
  };
  return all;
}

}  // namespace
}  // namespace gcds

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : gcds::criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    gcds::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s (%s)\n", out.pass ? "PASS" : "FAIL",
                c.id, c.title, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
