#include "gcds/metrics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "gcds/collectors.hpp"
#include "gcds/heap_graph.hpp"
#include "gcds/registry.hpp"

namespace gcds {
namespace {

// Frees exactly one node, the first time anything dies, and nothing after:
// the lazy-reclamation shape that separates first delay from delay.
class LazyHeadBackend : public GcdsBackend {
 public:
  std::string_view name() const override { return "lazy-head"; }
  NodeId allocate() override {
    tick();
    return eta_.apply_allocate();
  }
  void insert(NodeId a, NodeId b) override {
    tick();
    eta_.apply(MutOp::ins(a, b));
  }
  void remove(NodeId a, NodeId b) override {
    tick();
    auto before = eta_.reachable_flags();
    eta_.apply(MutOp::del(a, b));
    if (fired_) return;
    auto after = eta_.reachable_flags();
    for (NodeId v = 0; v < after.size(); ++v) {
      if (before[v] && !after[v]) {
        emit_free(v);
        fired_ = true;
        break;
      }
    }
  }
  void step() override { tick(); }

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override {
    return std::make_unique<BackendSnapshot>();
  }
  void apply_snapshot(const BackendSnapshot&) override {}
  void hash_state(Hasher& h) const override { h.mix(eta_.content_hash()); }

 private:
  HeapGraph eta_;
  bool fired_ = false;
};

std::vector<MutOp> cycle_then_steps(std::size_t steps) {
  // root -> a -> b -> a, then sever root -> a.
  std::vector<MutOp> trace = {MutOp::alloc(),       MutOp::alloc(),
                              MutOp::ins(1, 2),     MutOp::ins(2, 1),
                              MutOp::del(kRoot, 2), MutOp::del(kRoot, 1)};
  for (std::size_t i = 0; i < steps; ++i) trace.push_back(MutOp::step());
  return trace;
}

TEST(RunTrace, RefcountFreesAtTheTriggeringOp) {
  // Node 2's only edge from the reachable region is its root edge; the
  // insert points the other way.
  std::vector<MutOp> trace = {MutOp::alloc(), MutOp::alloc(), MutOp::ins(2, 1),
                              MutOp::del(kRoot, 2)};
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, trace);
  ASSERT_EQ(rec.frees.size(), 1u);
  EXPECT_EQ(rec.frees[0], (std::pair<std::uint32_t, NodeId>{3u, 2u}));
  EXPECT_EQ(measure_delay(rec), Delay::bounded(1));
}

TEST(RunTrace, MarkSweepFreesAtTheTriggeringOp) {
  std::vector<MutOp> trace = {MutOp::alloc(), MutOp::alloc(), MutOp::ins(2, 1),
                              MutOp::del(kRoot, 2)};
  MarkSweepBackend ms;
  MetricsRecord rec = run_trace(ms, trace);
  ASSERT_EQ(rec.frees.size(), 1u);
  EXPECT_EQ(rec.frees[0], (std::pair<std::uint32_t, NodeId>{3u, 2u}));
}

TEST(RunTrace, AllocateOnlyTraceFreesNothing) {
  std::vector<MutOp> trace(64, MutOp::alloc());
  for (auto name : known_backends()) {
    auto backend = make_backend(name);
    MetricsRecord rec = run_trace(*backend, trace);
    EXPECT_TRUE(rec.frees.empty()) << name;
  }
}

TEST(RunTrace, BrokenBackendTripsSoundness) {
  std::vector<MutOp> trace = {MutOp::alloc(), MutOp::alloc(), MutOp::ins(1, 2),
                              MutOp::del(1, 2)};
  auto broken = make_backend("broken");
  EXPECT_THROW(run_trace(*broken, trace), SoundnessViolation);
}

TEST(MeasureDelay, RefcountCycleIsUnbounded) {
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, cycle_then_steps(100));
  EXPECT_EQ(measure_delay(rec), Delay::never());
}

TEST(MeasureDelay, MarkSweepCycleIsOne) {
  MarkSweepBackend ms;
  MetricsRecord rec = run_trace(ms, cycle_then_steps(100));
  EXPECT_EQ(measure_delay(rec), Delay::bounded(1));
}

TEST(MeasureFirstDelay, LazyVariantKeepsFirstDelayOne) {
  LazyHeadBackend lazy;
  MetricsRecord rec = run_trace(lazy, cycle_then_steps(10));
  EXPECT_EQ(measure_delay(rec), Delay::never());
  EXPECT_EQ(measure_first_delay(rec), Delay::bounded(1));
}

TEST(MeasureFirstDelay, NoEventsGivesZero) {
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, std::vector<MutOp>(8, MutOp::alloc()));
  EXPECT_EQ(measure_first_delay(rec), Delay::bounded(0));
}

TEST(MeasureFirstDelay, EventsWithoutFreesUnbounded) {
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, cycle_then_steps(3));
  EXPECT_EQ(measure_first_delay(rec), Delay::never());
}

TEST(Checkpoint, RestoreReturnsStateHash) {
  for (auto name : known_backends()) {
    auto backend = make_backend(name);
    backend->apply(MutOp::alloc());
    backend->apply(MutOp::alloc());
    backend->apply(MutOp::ins(1, 2));
    std::uint64_t h0 = backend->state_hash();
    backend->checkpoint();
    backend->apply(MutOp::ins(1, 2));
    backend->apply(MutOp::del(1, 2));
    backend->apply(MutOp::alloc());
    backend->restore();
    EXPECT_EQ(backend->state_hash(), h0) << name;
  }
}

TEST(Checkpoint, EmptyLogRestoreIsIdentity) {
  auto backend = make_backend("ett");
  backend->apply(MutOp::alloc());
  std::uint64_t h0 = backend->state_hash();
  backend->checkpoint();
  backend->restore();
  EXPECT_EQ(backend->state_hash(), h0);
}

TEST(Checkpoint, MisuseThrows) {
  auto backend = make_backend("rc");
  EXPECT_THROW(backend->restore(), std::logic_error);
  backend->checkpoint();
  EXPECT_THROW(backend->checkpoint(), std::logic_error);
  backend->restore();
  EXPECT_THROW(backend->restore(), std::logic_error);
}

TEST(Checkpoint, RestoreDiscardsFreeListEmissions) {
  auto backend = make_backend("ett");
  backend->apply(MutOp::alloc());
  backend->apply(MutOp::alloc());
  backend->checkpoint();
  backend->apply(MutOp::del(kRoot, 2));
  EXPECT_EQ(backend->pending_free_count(), 1u);
  backend->restore();
  EXPECT_EQ(backend->pending_free_count(), 0u);
  EXPECT_FALSE(backend->ever_freed(2));
}

TEST(Timeout, MarkSweepDeleteTimesOutOnLongChain) {
  MarkSweepBackend ms;
  StepCounter counter;
  ms.attach_counter(&counter);
  ms.apply(MutOp::alloc());
  for (NodeId k = 2; k <= 1000; ++k) {
    ms.apply(MutOp::alloc());
    ms.apply(MutOp::ins(k - 1, k));
    ms.apply(MutOp::del(kRoot, k));
  }
  ms.apply(MutOp::ins(kRoot, 999));
  ms.checkpoint();
  std::uint64_t h0 = ms.state_hash();
  EXPECT_EQ(call_with_timeout(ms, MutOp::del(kRoot, 999), 10),
            CallOutcome::kTimedOut);
  ms.restore();
  EXPECT_EQ(ms.state_hash(), h0);
}

TEST(Timeout, RefcountInsertCompletesWithinSmallBudget) {
  RefCountBackend rc;
  StepCounter counter;
  rc.attach_counter(&counter);
  rc.apply(MutOp::alloc());
  rc.apply(MutOp::alloc());
  EXPECT_EQ(call_with_timeout(rc, MutOp::ins(1, 2), 50),
            CallOutcome::kCompleted);
}

TEST(Timeout, TimedOutThenRestoreEqualsNeverCalling) {
  for (auto name : known_backends()) {
    auto backend = make_backend(name);
    StepCounter counter;
    backend->attach_counter(&counter);
    for (int i = 0; i < 40; ++i) backend->apply(MutOp::alloc());
    for (NodeId k = 2; k <= 40; ++k) {
      backend->apply(MutOp::ins(k - 1, k));
      backend->apply(MutOp::del(kRoot, k));
    }
    std::uint64_t h0 = backend->state_hash();
    backend->checkpoint();
    CallOutcome out = call_with_timeout(*backend, MutOp::del(kRoot, 1), 5);
    if (out == CallOutcome::kTimedOut) {
      backend->restore();
      EXPECT_EQ(backend->state_hash(), h0) << name;
    } else {
      backend->restore();
      EXPECT_EQ(backend->state_hash(), h0) << name;
    }
  }
}

// 1,000 random checkpoint/mutate/restore sandwiches per backend; restore
// must land exactly on the pre-checkpoint hash and the replay must be
// deterministic.
TEST(Checkpoint, JournalFidelitySandwiches) {
  for (auto name : known_backends()) {
    auto trace = gen_trace(TraceClass::general(), 40, 9000, 7001);
    auto backend = make_backend(name);
    std::mt19937_64 rng(42);
    std::size_t pos = 0;
    int sandwiches = 0;
    while (pos < trace.size() && sandwiches < 1000) {
      std::size_t chunk = 1 + rng() % 8;
      chunk = std::min(chunk, trace.size() - pos);
      std::uint64_t h0 = backend->state_hash();
      backend->checkpoint();
      for (std::size_t i = 0; i < chunk; ++i)
        backend->apply(trace[pos + i]);
      std::uint64_t h1 = backend->state_hash();
      backend->restore();
      ASSERT_EQ(backend->state_hash(), h0) << name << " at op " << pos;
      for (std::size_t i = 0; i < chunk; ++i)
        backend->apply(trace[pos + i]);
      ASSERT_EQ(backend->state_hash(), h1) << name << " replay at " << pos;
      backend->drain_free_list();
      pos += chunk;
      ++sandwiches;
    }
    EXPECT_EQ(sandwiches, 1000) << name;
  }
}

TEST(RunTrace, DeterministicRecords) {
  auto trace = gen_trace(TraceClass::general(), 60, 500, 321);
  for (auto name : known_backends()) {
    auto b1 = make_backend(name);
    auto b2 = make_backend(name);
    MetricsRecord r1 = run_trace(*b1, trace);
    MetricsRecord r2 = run_trace(*b2, trace);
    EXPECT_EQ(r1.op_steps, r2.op_steps) << name;
    EXPECT_EQ(r1.frees, r2.frees) << name;
  }
}

TEST(RunTrace, FreeListMonotoneWithinARun) {
  auto trace = gen_trace(TraceClass::general(), 80, 700, 11);
  auto backend = make_backend("ett");
  MetricsRecord rec = run_trace(*backend, trace);
  // Every emission is of a distinct node: the cumulative set only grows.
  std::set<NodeId> seen;
  for (auto [op, v] : rec.frees) {
    (void)op;
    EXPECT_TRUE(seen.insert(v).second) << "node " << v << " emitted twice";
  }
}

TEST(Csv, OneRowPerOpPlusSummaryFooter) {
  std::vector<MutOp> trace = {MutOp::alloc(), MutOp::alloc(), MutOp::ins(2, 1),
                              MutOp::del(kRoot, 2), MutOp::step()};
  RefCountBackend rc;
  MetricsRecord rec = run_trace(rc, trace);
  std::ostringstream out;
  write_metrics_csv(out, rec);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "op_index,op_kind,steps,frees_emitted");
  int data_rows = 0;
  std::vector<std::string> footers;
  while (std::getline(in, line)) {
    if (!line.empty() && (line[0] >= '0' && line[0] <= '9'))
      ++data_rows;
    else
      footers.push_back(line.substr(0, line.find(',')));
  }
  EXPECT_EQ(data_rows, 5);
  EXPECT_EQ(footers[0], "max_pause_steps");
  EXPECT_EQ(footers[1], "delay");
  EXPECT_EQ(footers[2], "first_delay");
  EXPECT_EQ(footers[3], "trace_class");
}

}  // namespace
}  // namespace gcds
