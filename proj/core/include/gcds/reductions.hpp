#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gcds/backend.hpp"

namespace gcds {

// Dynamic reachability over a vertex universe: insert/delete directed edges,
// ask whether a directed path exists. Multiplicity-aware so a GCDS can
// mirror multigraphs into it.
class DrdsBackend {
 public:
  virtual ~DrdsBackend() = default;
  virtual std::string_view name() const = 0;
  virtual void dc_insert(VertexId a, VertexId b) = 0;
  virtual void dc_delete(VertexId a, VertexId b) = 0;
  virtual bool dc_connected(VertexId a, VertexId b) = 0;
  virtual void attach_counter(StepCounter* counter) { counter_ = counter; }
  virtual std::unique_ptr<DrdsBackend> clone() const;

 protected:
  void tick(std::uint64_t n = 1) {
    if (counter_) counter_->tick(n);
  }
  StepCounter* counter_ = nullptr;
};

// Adjacency multimap plus graph search; dc_connected(a, a) is true by
// convention (the empty path).
class NaiveDrds : public DrdsBackend {
 public:
  explicit NaiveDrds(std::size_t size_hint = 0);
  std::string_view name() const override { return "naive-drds"; }
  void dc_insert(VertexId a, VertexId b) override;
  void dc_delete(VertexId a, VertexId b) override;
  bool dc_connected(VertexId a, VertexId b) override;
  std::unique_ptr<DrdsBackend> clone() const override;

 private:
  void grow(VertexId v);
  std::vector<std::map<VertexId, std::uint32_t>> adj_;
};

// A reachability structure built from any collector with bounded delay: the
// heap mirrors the graph below a hub node X that keeps everything alive, and
// a query rewires the root to the source, points the target at X, severs
// Root->X under a step budget, and reads the answer off whether anything
// became unreachable. Queries checkpoint and restore, so they leave the
// collector state untouched.
class DrdsFromGcds : public DrdsBackend {
 public:
  DrdsFromGcds(std::unique_ptr<GcdsBackend> gcds, std::uint64_t pause_budget,
               std::uint32_t delay_budget);

  std::string_view name() const override { return "drds-from-gcds"; }
  void dc_insert(VertexId a, VertexId b) override;
  void dc_delete(VertexId a, VertexId b) override;
  bool dc_connected(VertexId a, VertexId b) override;

  GcdsBackend& inner() { return *gcds_; }
  // Largest single timed call observed with the budget effectively
  // unlimited; calibration reads this.
  std::uint64_t max_observed_call_steps() const { return max_call_steps_; }

 private:
  NodeId handle(VertexId i);

  std::unique_ptr<GcdsBackend> gcds_;
  StepCounter counter_;
  std::uint64_t pause_budget_;
  std::uint32_t delay_budget_;
  std::optional<NodeId> hub_;
  std::unordered_map<VertexId, NodeId> map_;
  std::uint64_t max_call_steps_ = 0;
};

// Layered permutation reachability: vertices carry fixed layer numbers,
// edges go only one layer forward, per-side degree is at most one, queries
// start in the first layer.
class LprdsBackend {
 public:
  virtual ~LprdsBackend() = default;
  virtual void lp_insert(VertexId u, VertexId v) = 0;
  virtual void lp_delete(VertexId u, VertexId v) = 0;
  virtual bool lp_connected(VertexId u, VertexId v) = 0;
  virtual std::uint32_t layer_of(VertexId v) const = 0;
};

// The acyclic-heap variant of the reduction: every indegree-0 vertex hangs
// off the root; a query inserts target->source and severs Root->source, so a
// hit closes a cycle and strands the pair while a miss leaves everything
// reachable through the target's path.
class LprdsFromGcds : public LprdsBackend {
 public:
  LprdsFromGcds(std::unique_ptr<GcdsBackend> gcds,
                std::vector<std::uint32_t> layers, std::uint64_t pause_budget,
                std::uint32_t delay_budget);

  void lp_insert(VertexId u, VertexId v) override;
  void lp_delete(VertexId u, VertexId v) override;
  bool lp_connected(VertexId u, VertexId v) override;
  std::uint32_t layer_of(VertexId v) const override { return layers_.at(v); }

  GcdsBackend& inner() { return *gcds_; }
  std::uint64_t max_observed_call_steps() const { return max_call_steps_; }

 private:
  NodeId handle(VertexId v);

  std::unique_ptr<GcdsBackend> gcds_;
  StepCounter counter_;
  std::vector<std::uint32_t> layers_;
  std::uint32_t first_layer_ = 0;
  std::uint64_t pause_budget_;
  std::uint32_t delay_budget_;
  std::unordered_map<VertexId, NodeId> map_;
  std::unordered_map<VertexId, VertexId> succ_;
  std::unordered_map<VertexId, VertexId> pred_;
  std::uint64_t max_call_steps_ = 0;
};

// A collector built from a reachability oracle: deletes ask the oracle
// whether the target is still reachable and cascade over its out-edges when
// not. Immediate by construction.
class DrdsBackedGcds : public GcdsBackend {
 public:
  explicit DrdsBackedGcds(std::unique_ptr<DrdsBackend> drds);

  std::string_view name() const override { return "drds"; }
  NodeId allocate() override;
  void insert(NodeId a, NodeId b) override;
  void remove(NodeId a, NodeId b) override;
  void step() override;
  void attach_counter(StepCounter* counter) override;

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override;
  void apply_snapshot(const BackendSnapshot& snap) override;
  void hash_state(Hasher& h) const override;

 private:
  void cascade(NodeId start);

  std::unique_ptr<DrdsBackend> drds_;
  std::vector<std::map<NodeId, std::uint32_t>> out_;
  std::vector<char> live_;
  NodeId next_id_ = 1;
};

// Wraps a layered-permutation structure to answer general connectivity
// queries on graphs that happen to be disjoint layered paths: updates buffer
// into a naive graph until enough distinct query sources have been seen,
// then one shape-checking DFS either assigns layers and routes conforming
// queries to the LPRDS or falls back to plain search for good.
class UdcWrapper {
 public:
  using LprdsFactory = std::function<std::unique_ptr<LprdsBackend>(
      const std::unordered_map<VertexId, std::uint32_t>& layers)>;

  enum class Mode { kUndecided, kLprds, kNaive };

  UdcWrapper(LprdsFactory factory, std::size_t path_count);

  void insert(VertexId a, VertexId b);
  void remove(VertexId a, VertexId b);
  bool connected(VertexId a, VertexId b);
  Mode mode() const { return mode_; }

 private:
  void try_init();
  void fall_back() {
    mode_ = Mode::kNaive;
    lprds_.reset();
  }
  bool naive_connected(VertexId a, VertexId b) const;

  LprdsFactory factory_;
  std::size_t path_count_;
  Mode mode_ = Mode::kUndecided;
  std::unique_ptr<LprdsBackend> lprds_;
  std::map<VertexId, std::map<VertexId, std::uint32_t>> undirected_;
  std::set<VertexId> sources_;
  std::unordered_map<VertexId, std::uint32_t> layer_;
};

// Step budgets for the timed query calls, measured as the maximum observed
// cost over all-reachable calibration runs at the same size, times a safety
// factor of four. Correctness needs the budget to dominate the true
// all-reachable cost, not to be tight.
std::uint64_t calibrate_drds_pause_budget(
    const std::function<std::unique_ptr<GcdsBackend>()>& make_gcds,
    std::size_t vertex_count);
std::uint64_t calibrate_lprds_pause_budget(
    const std::function<std::unique_ptr<GcdsBackend>()>& make_gcds,
    const std::vector<std::uint32_t>& layers);

}  // namespace gcds
