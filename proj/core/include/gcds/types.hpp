#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcds {

// Heap regions are identified by dense non-negative ids. Id 0 is the root
// (stack/globals); allocation hands out strictly increasing ids and never
// reuses one within a run.
using NodeId = std::uint32_t;
inline constexpr NodeId kRoot = 0;

// Vertices of a fixed-universe reachability structure. Kept distinct from
// NodeId because the two live in different worlds (a reduction maps between
// them).
using VertexId = std::uint32_t;

enum class OpKind : std::uint8_t { kAllocate, kInsert, kDelete, kStep };

// One mutator event. Allocate and Step carry no endpoints.
struct MutOp {
  OpKind kind = OpKind::kStep;
  NodeId src = 0;
  NodeId dst = 0;

  static MutOp alloc() { return {OpKind::kAllocate, 0, 0}; }
  static MutOp ins(NodeId a, NodeId b) { return {OpKind::kInsert, a, b}; }
  static MutOp del(NodeId a, NodeId b) { return {OpKind::kDelete, a, b}; }
  static MutOp step() { return {OpKind::kStep, 0, 0}; }

  bool operator==(const MutOp&) const = default;
};

const char* op_kind_name(OpKind k);

struct InvalidOp : std::runtime_error {
  explicit InvalidOp(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidTrace : std::runtime_error {
  explicit InvalidTrace(const std::string& what) : std::runtime_error(what) {}
};

struct Infeasible : std::runtime_error {
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// A backend emitted a node the oracle still considers reachable. This is a
// test failure, never a recoverable state.
struct SoundnessViolation : std::runtime_error {
  explicit SoundnessViolation(const std::string& what)
      : std::runtime_error(what) {}
};

struct PromiseViolation : std::runtime_error {
  explicit PromiseViolation(const std::string& what)
      : std::runtime_error(what) {}
};

struct OutOfMemory : std::runtime_error {
  explicit OutOfMemory(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a, used for canonical state hashing.
class Hasher {
 public:
  void mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace gcds
