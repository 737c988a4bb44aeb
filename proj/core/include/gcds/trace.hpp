#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcds/heap_graph.hpp"
#include "gcds/types.hpp"

namespace gcds {

enum class TraceTag : std::uint8_t {
  kGeneral = 0,
  kAllReachable = 1,
  kAcyclicAllReachable = 2,
  kSparseAcyclicAllReachable = 3,
};

// Classification of a trace: the strongest guarantee every prefix satisfies.
// Sparsity carries the outdegree bound explicitly; the root is excluded from
// the outdegree measure since allocation necessarily fans out of the root.
struct TraceClass {
  TraceTag tag = TraceTag::kGeneral;
  std::uint32_t sparsity = 0;  // m, meaningful only for the sparse tag

  static TraceClass general() { return {TraceTag::kGeneral, 0}; }
  static TraceClass all_reachable() { return {TraceTag::kAllReachable, 0}; }
  static TraceClass acyclic() { return {TraceTag::kAcyclicAllReachable, 0}; }
  static TraceClass sparse(std::uint32_t m) {
    return {TraceTag::kSparseAcyclicAllReachable, m};
  }

  bool operator==(const TraceClass&) const = default;
};

// True when a trace classified as `have` meets the request `want`
// (higher tags are stronger; for the sparse tag a smaller bound is stronger).
bool at_least_as_strong(const TraceClass& have, const TraceClass& want);

std::string to_string(const TraceClass& cls);
// Accepts the canonical names plus the short forms g/ar/aar/saar:<m>.
TraceClass parse_trace_class(const std::string& text);

// Trace text format: one op per line. `A` allocates (the k-th A line defines
// node k), `I <src> <dst>`, `D <src> <dst>`, `S` steps. Lines beginning with
// `#` are comments. Ids are decimal; 0 is the root.
std::string format_trace(std::span<const MutOp> trace);
std::vector<MutOp> parse_trace(const std::string& text);
std::vector<MutOp> load_trace_file(const std::string& path);

// Validates the whole trace and returns the strongest class every prefix
// satisfies. Throws InvalidTrace if some prefix fails validation.
TraceClass classify_prefix(std::span<const MutOp> trace);

// Ground truth about a trace, computed once from the heap model and shared
// across backend runs: per-op unreachability events and the per-delete count
// of edges whose source died (the reference-counting work yardstick).
struct TraceOracle {
  std::vector<std::vector<NodeId>> newly_unreachable;  // per op, ascending ids
  std::vector<std::uint32_t> dead_edges;               // per op
  TraceClass cls;
  NodeId node_total = 0;            // nodes ever allocated, root excluded
  std::size_t unreachable_total = 0;
  bool stayed_acyclic = true;       // no prefix ever held a directed cycle

  static TraceOracle compute(std::span<const MutOp> trace);
};

// Pseudorandom valid trace with at most `nodes` Allocates and exactly `len`
// ops, every prefix satisfying `cls`; deterministic given the seed.
std::vector<MutOp> gen_trace(const TraceClass& cls, std::uint32_t nodes,
                             std::uint32_t len, std::uint64_t seed);

}  // namespace gcds
