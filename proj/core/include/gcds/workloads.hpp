#pragma once

#include <string>
#include <vector>

#include "gcds/metrics.hpp"
#include "gcds/registry.hpp"
#include "gcds/trace.hpp"

namespace gcds {

// Builds a singly linked chain of n nodes hanging off the root, walks it
// (one step per node), then drops the head pointer. The dbllist variant adds
// back-edges, so every adjacent pair is a two-cycle.
std::vector<MutOp> workload_list(std::uint32_t n);
std::vector<MutOp> workload_dbllist(std::uint32_t n);

// Chain of n nodes with an extra root edge to node n-1, then the severing
// delete of (n-1)->n and one allocation request. run_baker() measures the
// request window against a live backend.
std::vector<MutOp> workload_baker(std::uint32_t n);

// Sparse acyclic build-then-churn trace used for the cost fits: a random
// forest with bounded outdegree, then deletes that orphan random subtrees.
std::vector<MutOp> workload_sparse_churn(std::uint32_t n, std::uint32_t outdeg,
                                         std::uint64_t seed);

// Dense acyclic trace: layered DAG with outdegree up to `outdeg`, then a
// full teardown, for exercising the incoming-edge scan memoization.
std::vector<MutOp> workload_dense_teardown(std::uint32_t n,
                                           std::uint32_t outdeg,
                                           std::uint64_t seed);

// All-reachable, acyclic, outdegree-bounded trace built structurally (no
// oracle checks, so it scales): a bounded-degree tree plus reparenting churn
// where a node gains a second in-edge and loses its old one.
std::vector<MutOp> workload_sparse_allreach(std::uint32_t n,
                                            std::uint32_t outdeg,
                                            std::uint64_t seed);

struct ThrashingParams {
  std::uint32_t n = 1024;            // stage-2 iterations; scales everything
  std::uint32_t cap = 0;             // 0: permanent + 2 * temp size
  double permanent_fraction = 0.5;   // share of n allocated as stage 1
  bool cyclic = false;               // temporaries are two-node cycles
  std::uint64_t wait_step_limit = 0; // 0: 4n + 64 injected waits before OOM
};

struct CapRunReport {
  MetricsRecord record;             // every op issued, including waits
  std::uint64_t stage2_max_pause = 0;
  std::uint64_t injected_steps = 0;
  std::size_t peak_live = 0;
  bool out_of_memory = false;
};

// Stage 1 pins permanent allocations near the cap; stage 2 repeatedly
// unlinks the previous temporary and requests a fresh one. An allocation is
// serviceable only while live-minus-freed stays under the cap; otherwise the
// harness injects step ops (counted as pause) until a free shows up or the
// wait limit declares the run out of memory.
CapRunReport run_thrashing(GcdsBackend& backend, const ThrashingParams& p);

struct BakerReport {
  MetricsRecord record;
  std::uint64_t delete_pause = 0;   // the severing delete alone
  std::uint64_t service_pause = 0;  // max op pause, delete through allocation
  bool serviced = false;
};

BakerReport run_baker(GcdsBackend& backend, std::uint32_t n);

struct FuzzOptions {
  std::vector<std::string> backends;
  TraceClass cls = TraceClass::general();
  std::uint32_t trials = 100;
  std::uint64_t seed = 0;
  std::uint32_t max_nodes = 300;
  std::uint32_t max_ops = 2000;
  bool cursor_memo = true;
};

struct FuzzBackendStats {
  std::string name;
  std::uint64_t max_pause = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t max_bounded_delay = 0;
  std::uint32_t unbounded_delays = 0;
  std::uint32_t violations = 0;
};

struct FuzzReport {
  std::vector<FuzzBackendStats> backends;
  std::uint32_t trials = 0;
  std::uint32_t violations = 0;
  std::string summary() const;
};

// Differential fuzz: every backend must stay sound against the oracle, and
// immediate backends must match it exactly after every op.
FuzzReport run_fuzz(const FuzzOptions& opts);

}  // namespace gcds
