#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gcds/backend.hpp"
#include "gcds/trace.hpp"

namespace gcds {

// A delay measurement: a bounded op count or "never matched by trace end".
struct Delay {
  bool unbounded = false;
  std::uint64_t ops = 0;

  static Delay bounded(std::uint64_t v) { return {false, v}; }
  static Delay never() { return {true, 0}; }

  bool operator==(const Delay&) const = default;
};

std::string to_string(const Delay& d);

struct MetricsRecord {
  std::vector<OpKind> op_kinds;
  std::vector<std::uint64_t> op_steps;
  // Free-list drains, one pair per emitted node, tagged with the index of
  // the op after which the drain happened.
  std::vector<std::pair<std::uint32_t, NodeId>> frees;
  // Oracle unreachability events, independent of the backend.
  std::vector<std::pair<std::uint32_t, NodeId>> unreachable_events;
  TraceClass trace_class;
  double wall_ms = 0.0;

  std::uint64_t total_steps() const;
  std::uint64_t max_pause_steps() const;
};

struct RunOptions {
  // Precomputed ground truth; computed from the trace when null.
  const TraceOracle* oracle = nullptr;
  bool check_soundness = true;
  // Assert that the cumulative free set equals the oracle's cumulative
  // unreachable set after every op (the immediate-collection contract).
  bool require_immediate = false;
};

// Drives the backend op by op, recording primitive steps per op and draining
// the free list after each op, while replaying the heap model alongside.
// Throws SoundnessViolation if the backend frees a reachable node.
MetricsRecord run_trace(GcdsBackend& backend, std::span<const MutOp> trace,
                        const RunOptions& opts = {});

// Worst delay over all unreachability events: free op index minus event op
// index plus one (the triggering op counts). Unbounded if some event has no
// matching free by trace end.
Delay measure_delay(const MetricsRecord& record);

// Gap between the first unreachability event after a fully-reachable state
// and the first emission of anything. Zero when nothing ever died.
Delay measure_first_delay(const MetricsRecord& record);

// One row per op: op_index,op_kind,steps,frees_emitted; then summary footer
// rows for max_pause_steps, delay, first_delay, trace_class (and wall-clock,
// informational).
void write_metrics_csv(std::ostream& out, const MetricsRecord& record);

}  // namespace gcds
