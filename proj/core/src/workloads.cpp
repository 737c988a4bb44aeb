#include "gcds/workloads.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace gcds {

std::vector<MutOp> workload_list(std::uint32_t n) {
  if (n < 2) throw Infeasible("list workload needs n >= 2");
  std::vector<MutOp> ops;
  ops.reserve(3 * n + 2);
  for (std::uint32_t k = 0; k < n; ++k) ops.push_back(MutOp::alloc());
  // Hang the chain: node 1 keeps its root edge, the rest link behind it.
  for (NodeId k = 2; k <= n; ++k) {
    ops.push_back(MutOp::ins(k - 1, k));
    ops.push_back(MutOp::del(kRoot, k));
  }
  for (std::uint32_t k = 0; k < n; ++k) ops.push_back(MutOp::step());
  ops.push_back(MutOp::del(kRoot, 1));  // drop the head; the chain dies
  return ops;
}

std::vector<MutOp> workload_dbllist(std::uint32_t n) {
  if (n < 2) throw Infeasible("dbllist workload needs n >= 2");
  std::vector<MutOp> ops;
  ops.reserve(4 * n + 2);
  for (std::uint32_t k = 0; k < n; ++k) ops.push_back(MutOp::alloc());
  for (NodeId k = 2; k <= n; ++k) {
    ops.push_back(MutOp::ins(k - 1, k));
    ops.push_back(MutOp::ins(k, k - 1));  // neighbors form two-cycles
    ops.push_back(MutOp::del(kRoot, k));
  }
  for (std::uint32_t k = 0; k < n; ++k) ops.push_back(MutOp::step());
  ops.push_back(MutOp::del(kRoot, 1));
  return ops;
}

std::vector<MutOp> workload_baker(std::uint32_t n) {
  if (n < 3) throw Infeasible("baker workload needs n >= 3");
  std::vector<MutOp> ops;
  for (std::uint32_t k = 0; k < n; ++k) ops.push_back(MutOp::alloc());
  for (NodeId k = 2; k <= n; ++k) {
    ops.push_back(MutOp::ins(k - 1, k));
    ops.push_back(MutOp::del(kRoot, k));
  }
  ops.push_back(MutOp::ins(kRoot, n - 1));  // the saved interior pointer
  ops.push_back(MutOp::del(n - 1, n));      // strand the tail node
  ops.push_back(MutOp::alloc());            // the allocation request
  return ops;
}

std::vector<MutOp> workload_sparse_churn(std::uint32_t n, std::uint32_t outdeg,
                                         std::uint64_t seed) {
  if (n < 4) throw Infeasible("sparse churn needs n >= 4");
  if (outdeg < 1) throw Infeasible("outdegree bound must be positive");
  std::mt19937_64 rng(seed);
  std::vector<MutOp> ops;
  HeapGraph eta;
  // Reachability is maintained here instead of recomputed per candidate:
  // builds only add reachable nodes, and only the emitted deletes can kill.
  std::vector<char> reach{1};

  auto apply = [&](const MutOp& op) {
    eta.apply(op);
    ops.push_back(op);
    if (op.kind == OpKind::kAllocate)
      reach.push_back(1);
    else if (op.kind == OpKind::kDelete)
      reach = eta.reachable_flags();
  };
  // For ops that provably keep everything reachable.
  auto apply_safe = [&](const MutOp& op) {
    eta.apply(op);
    ops.push_back(op);
    if (op.kind == OpKind::kAllocate) reach.push_back(1);
  };

  // Random forest with bounded outdegree, everything hung below node 1.
  apply_safe(MutOp::alloc());
  for (NodeId k = 2; k <= n; ++k) {
    apply_safe(MutOp::alloc());
    for (int t = 0; t < 16; ++t) {
      NodeId p = 1 + static_cast<NodeId>(rng() % (k - 1));
      if (eta.outdegree_with_multiplicity(p) >= outdeg) continue;
      apply_safe(MutOp::ins(p, k));
      apply_safe(MutOp::del(kRoot, k));  // k stays reachable through p
      break;
    }
  }
  // Churn: delete in-edges of random nodes, orphaning subtrees now and then.
  std::uint32_t churn = n / 2;
  for (std::uint32_t i = 0; i < churn; ++i) {
    for (int t = 0; t < 16; ++t) {
      NodeId b = 1 + static_cast<NodeId>(rng() % n);
      if (!reach[b] || eta.incoming(b).empty()) continue;
      NodeId a = eta.incoming(b).begin()->first;
      if (!reach[a]) continue;
      apply(MutOp::del(a, b));
      break;
    }
  }
  return ops;
}

std::vector<MutOp> workload_dense_teardown(std::uint32_t n,
                                           std::uint32_t outdeg,
                                           std::uint64_t seed) {
  if (n < 4) throw Infeasible("dense teardown needs n >= 4");
  std::mt19937_64 rng(seed);
  std::vector<MutOp> ops;
  // Gateway node 1, members 2..n+1. Hanging in index order makes the tour
  // visit high indices first, so the dense forward edges below all point at
  // earlier preorder positions and the final sweep keeps relinking within
  // the dying region.
  ops.push_back(MutOp::alloc());  // gateway = 1
  for (std::uint32_t i = 0; i < n; ++i) ops.push_back(MutOp::alloc());
  for (NodeId v = 2; v <= n + 1; ++v) {
    ops.push_back(MutOp::ins(1, v));
    ops.push_back(MutOp::del(kRoot, v));
  }
  std::vector<std::uint32_t> out_used(n + 2, 0);
  for (NodeId v = 2; v <= n; ++v) {
    std::uint32_t budget = std::min<std::uint32_t>(outdeg, n + 1 - v);
    for (std::uint32_t e = 0; e < budget; ++e) {
      NodeId t = v + 1 + static_cast<NodeId>(rng() % (n + 1 - v));
      if (out_used[v] >= outdeg) break;
      ops.push_back(MutOp::ins(v, t));
      ++out_used[v];
    }
  }
  ops.push_back(MutOp::del(kRoot, 1));  // the dense region dies at once
  return ops;
}

std::vector<MutOp> workload_sparse_allreach(std::uint32_t n,
                                            std::uint32_t outdeg,
                                            std::uint64_t seed) {
  if (n < 4) throw Infeasible("sparse all-reachable mix needs n >= 4");
  if (outdeg < 2) throw Infeasible("reparenting churn needs outdegree >= 2");
  std::mt19937_64 rng(seed);
  std::vector<MutOp> ops;
  // Edges always run from a lower id to a higher one, so the heap can never
  // cycle, and every node keeps exactly one in-edge, so nothing ever dies.
  std::vector<NodeId> in_source(n + 1, kRoot);
  std::vector<std::uint32_t> out_used(n + 1, 0);

  ops.push_back(MutOp::alloc());  // node 1 stays a root child
  for (NodeId k = 2; k <= n; ++k) {
    ops.push_back(MutOp::alloc());
    for (int t = 0; t < 24; ++t) {
      NodeId p = 1 + static_cast<NodeId>(rng() % (k - 1));
      if (out_used[p] >= outdeg) continue;
      ops.push_back(MutOp::ins(p, k));
      ops.push_back(MutOp::del(kRoot, k));
      in_source[k] = p;
      ++out_used[p];
      break;
    }
  }
  std::uint32_t churn = 2 * n;
  for (std::uint32_t i = 0; i < churn; ++i) {
    if (rng() % 8 == 0) {
      ops.push_back(MutOp::step());
      continue;
    }
    for (int t = 0; t < 24; ++t) {
      NodeId k = 2 + static_cast<NodeId>(rng() % (n - 1));
      NodeId q = 1 + static_cast<NodeId>(rng() % (k - 1));
      if (q == in_source[k] || out_used[q] >= outdeg) continue;
      NodeId s = in_source[k];
      ops.push_back(MutOp::ins(q, k));
      ops.push_back(MutOp::del(s, k));
      if (s != kRoot) --out_used[s];
      in_source[k] = q;
      ++out_used[q];
      break;
    }
  }
  return ops;
}

// ----------------------------------------------------------------- runners

namespace {

// Issues ops against a live backend while replaying the heap model, so the
// cap-driven runners still get oracle-checked emissions and honest delay
// numbers in their records.
class OpDriver {
 public:
  OpDriver(GcdsBackend& backend, MetricsRecord* rec)
      : backend_(backend), rec_(rec), dead_(1, 0) {
    counter_ = backend.counter();
    if (!counter_) {
      backend_.attach_counter(&scratch_);
      counter_ = &scratch_;
    }
  }
  ~OpDriver() {
    if (counter_ == &scratch_) backend_.attach_counter(nullptr);
  }

  std::uint64_t issue(const MutOp& op) {
    std::uint64_t before = counter_->count();
    backend_.apply(op);
    std::uint64_t steps = counter_->count() - before;
    rec_->op_kinds.push_back(op.kind);
    rec_->op_steps.push_back(steps);
    std::uint32_t idx = static_cast<std::uint32_t>(rec_->op_kinds.size() - 1);

    eta_.apply(op);
    if (op.kind == OpKind::kAllocate) {
      ++live_;
      dead_.push_back(0);
    } else if (op.kind == OpKind::kDelete) {
      auto now = eta_.reachable_flags();
      for (NodeId v = 0; v < now.size(); ++v) {
        if (!dead_[v] && !now[v]) {
          dead_[v] = 1;
          rec_->unreachable_events.push_back({idx, v});
        }
      }
    }
    for (NodeId v : backend_.drain_free_list()) {
      if (!dead_[v]) {
        throw SoundnessViolation(std::string(backend_.name()) +
                                 " freed reachable node " +
                                 std::to_string(v) + " in a workload run");
      }
      rec_->frees.push_back({idx, v});
      --live_;
    }
    return steps;
  }

  std::uint64_t live() const { return live_; }

 private:
  GcdsBackend& backend_;
  MetricsRecord* rec_;
  StepCounter* counter_;
  StepCounter scratch_;
  HeapGraph eta_;
  std::vector<char> dead_;
  std::uint64_t live_ = 0;
};

}  // namespace

CapRunReport run_thrashing(GcdsBackend& backend, const ThrashingParams& p) {
  const std::uint32_t temp_size = p.cyclic ? 2 : 1;
  const std::uint32_t permanent = std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(p.n * p.permanent_fraction));
  const std::uint32_t cap = p.cap ? p.cap : permanent + 2 * temp_size;
  const std::uint64_t wait_limit =
      p.wait_step_limit ? p.wait_step_limit : 4ull * p.n + 64;
  if (cap < permanent + temp_size)
    throw Infeasible("cap leaves no room for a temporary");

  CapRunReport rep;
  rep.record.trace_class = TraceClass::general();
  OpDriver drv(backend, &rep.record);
  NodeId next_id = 0;

  auto alloc = [&]() {
    drv.issue(MutOp::alloc());
    return ++next_id;
  };

  // Stage 1: pin permanent allocations near the cap.
  for (std::uint32_t i = 0; i < permanent; ++i) alloc();

  auto stage2 = [&](std::uint64_t steps) {
    rep.stage2_max_pause = std::max(rep.stage2_max_pause, steps);
  };

  // Stage 2: unlink the previous temporary, then request a new one under
  // the cap, waiting on injected steps when the cap is hit.
  NodeId prev_temp = 0;
  for (std::uint32_t iter = 0; iter < p.n; ++iter) {
    if (prev_temp) stage2(drv.issue(MutOp::del(kRoot, prev_temp)));
    NodeId t1 = 0;
    for (std::uint32_t unit = 0; unit < temp_size; ++unit) {
      std::uint64_t waited = 0;
      while (drv.live() >= cap) {
        if (waited++ >= wait_limit) {
          rep.out_of_memory = true;
          return rep;
        }
        ++rep.injected_steps;
        stage2(drv.issue(MutOp::step()));
      }
      stage2(drv.issue(MutOp::alloc()));
      if (unit == 0) t1 = next_id + 1;
      ++next_id;
    }
    if (p.cyclic) {
      NodeId t2 = next_id;
      stage2(drv.issue(MutOp::ins(t1, t2)));
      stage2(drv.issue(MutOp::ins(t2, t1)));
      stage2(drv.issue(MutOp::del(kRoot, t2)));
    }
    rep.peak_live = std::max<std::size_t>(rep.peak_live, drv.live());
    prev_temp = t1;
  }
  return rep;
}

BakerReport run_baker(GcdsBackend& backend, std::uint32_t n) {
  if (n < 3) throw Infeasible("baker scenario needs n >= 3");
  BakerReport rep;
  rep.record.trace_class = TraceClass::general();
  OpDriver drv(backend, &rep.record);

  for (std::uint32_t k = 0; k < n; ++k) drv.issue(MutOp::alloc());
  for (NodeId k = 2; k <= n; ++k) {
    drv.issue(MutOp::ins(k - 1, k));
    drv.issue(MutOp::del(kRoot, k));
  }
  drv.issue(MutOp::ins(kRoot, n - 1));

  // The measured window: sever the tail, then request one allocation with
  // the cap equal to the number of live regions before the delete.
  const std::uint64_t cap = n;
  rep.delete_pause = drv.issue(MutOp::del(n - 1, n));
  rep.service_pause = rep.delete_pause;
  std::uint64_t waited = 0;
  const std::uint64_t wait_limit = 4ull * n + 64;
  while (drv.live() >= cap) {
    if (waited++ >= wait_limit) return rep;  // not serviced
    rep.service_pause =
        std::max(rep.service_pause, drv.issue(MutOp::step()));
  }
  rep.service_pause = std::max(rep.service_pause, drv.issue(MutOp::alloc()));
  rep.serviced = true;
  return rep;
}

// -------------------------------------------------------------------- fuzz

std::string FuzzReport::summary() const {
  std::ostringstream out;
  out << "trials=" << trials << " violations=" << violations << "\n";
  for (const FuzzBackendStats& b : backends) {
    out << "  " << b.name << ": max_pause=" << b.max_pause
        << " total_steps=" << b.total_steps
        << " max_delay=" << b.max_bounded_delay
        << " unbounded_delays=" << b.unbounded_delays
        << " violations=" << b.violations << "\n";
  }
  return out.str();
}

FuzzReport run_fuzz(const FuzzOptions& opts) {
  if (opts.backends.empty())
    throw Infeasible("fuzz needs at least one backend");
  FuzzReport rep;
  rep.trials = opts.trials;
  for (const std::string& name : opts.backends)
    rep.backends.push_back(FuzzBackendStats{name});

  std::mt19937_64 rng(opts.seed);
  for (std::uint32_t trial = 0; trial < opts.trials; ++trial) {
    std::uint32_t nodes =
        2 + static_cast<std::uint32_t>(rng() % std::max(1u, opts.max_nodes - 1));
    std::uint32_t span = std::min(opts.max_ops, nodes * 10);
    std::uint32_t len =
        nodes + static_cast<std::uint32_t>(
                    rng() % std::max(1u, span > nodes ? span - nodes + 1 : 1));
    std::uint64_t trace_seed = rng();
    auto trace = gen_trace(opts.cls, nodes, len, trace_seed);
    TraceOracle oracle = TraceOracle::compute(trace);

    for (std::size_t i = 0; i < opts.backends.size(); ++i) {
      FuzzBackendStats& stats = rep.backends[i];
      auto backend = make_backend(stats.name, {opts.cursor_memo});
      StepCounter counter;
      backend->attach_counter(&counter);
      RunOptions ro;
      ro.oracle = &oracle;
      ro.check_soundness = true;
      ro.require_immediate = backend_is_immediate(stats.name);
      try {
        MetricsRecord rec = run_trace(*backend, trace, ro);
        stats.max_pause = std::max(stats.max_pause, rec.max_pause_steps());
        stats.total_steps += rec.total_steps();
        Delay d = measure_delay(rec);
        if (d.unbounded)
          ++stats.unbounded_delays;
        else
          stats.max_bounded_delay = std::max(stats.max_bounded_delay, d.ops);
      } catch (const SoundnessViolation&) {
        ++stats.violations;
        ++rep.violations;
      }
    }
  }
  return rep;
}

}  // namespace gcds
