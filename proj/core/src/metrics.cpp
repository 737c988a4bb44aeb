#include "gcds/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <ostream>
#include <string>

namespace gcds {

std::string to_string(const Delay& d) {
  return d.unbounded ? "unbounded" : std::to_string(d.ops);
}

std::uint64_t MetricsRecord::total_steps() const {
  std::uint64_t sum = 0;
  for (auto s : op_steps) sum += s;
  return sum;
}

std::uint64_t MetricsRecord::max_pause_steps() const {
  std::uint64_t m = 0;
  for (auto s : op_steps) m = std::max(m, s);
  return m;
}

MetricsRecord run_trace(GcdsBackend& backend, std::span<const MutOp> trace,
                        const RunOptions& opts) {
  TraceOracle local;
  const TraceOracle* oracle = opts.oracle;
  if (!oracle) {
    local = TraceOracle::compute(trace);
    oracle = &local;
  } else if (oracle->newly_unreachable.size() != trace.size()) {
    throw std::logic_error("oracle does not belong to this trace");
  }

  MetricsRecord rec;
  rec.trace_class = oracle->cls;
  rec.op_kinds.reserve(trace.size());
  rec.op_steps.reserve(trace.size());

  StepCounter scratch;
  StepCounter* counter = backend.counter();
  if (!counter) {
    counter = &scratch;
    backend.attach_counter(counter);
  }

  // Running oracle view: flag per node, 1 = currently unreachable.
  std::vector<char> dead;
  std::size_t dead_count = 0;
  std::size_t freed_count = 0;

  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::uint64_t before = counter->count();
    backend.apply(trace[i]);
    rec.op_kinds.push_back(trace[i].kind);
    rec.op_steps.push_back(counter->count() - before);

    for (NodeId v : oracle->newly_unreachable[i]) {
      if (v >= dead.size()) dead.resize(v + 1, 0);
      dead[v] = 1;
      ++dead_count;
      rec.unreachable_events.push_back({static_cast<std::uint32_t>(i), v});
    }

    for (NodeId v : backend.drain_free_list()) {
      if (opts.check_soundness && (v >= dead.size() || !dead[v])) {
        throw SoundnessViolation(
            std::string(backend.name()) + " freed reachable node " +
            std::to_string(v) + " at op " + std::to_string(i));
      }
      ++freed_count;
      rec.frees.push_back({static_cast<std::uint32_t>(i), v});
    }

    if (opts.require_immediate && freed_count != dead_count) {
      throw SoundnessViolation(
          std::string(backend.name()) + " missed immediate collection at op " +
          std::to_string(i) + ": " + std::to_string(dead_count) +
          " unreachable vs " + std::to_string(freed_count) + " freed");
    }
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (counter == &scratch) backend.attach_counter(nullptr);
  return rec;
}

Delay measure_delay(const MetricsRecord& record) {
  std::uint64_t worst = 0;
  for (auto [event_op, node] : record.unreachable_events) {
    bool matched = false;
    for (auto [free_op, freed] : record.frees) {
      if (freed == node) {
        worst = std::max<std::uint64_t>(worst, free_op - event_op + 1);
        matched = true;
        break;
      }
    }
    if (!matched) return Delay::never();
  }
  return Delay::bounded(worst);
}

Delay measure_first_delay(const MetricsRecord& record) {
  if (record.unreachable_events.empty()) return Delay::bounded(0);
  std::uint32_t first_event = record.unreachable_events.front().first;
  if (record.frees.empty()) return Delay::never();
  std::uint32_t first_free = record.frees.front().first;
  return Delay::bounded(first_free - first_event + 1);
}

void write_metrics_csv(std::ostream& out, const MetricsRecord& record) {
  out << "op_index,op_kind,steps,frees_emitted\n";
  std::size_t free_idx = 0;
  for (std::size_t i = 0; i < record.op_kinds.size(); ++i) {
    std::size_t emitted = 0;
    while (free_idx < record.frees.size() &&
           record.frees[free_idx].first == i) {
      ++emitted;
      ++free_idx;
    }
    out << i << ',' << op_kind_name(record.op_kinds[i]) << ','
        << record.op_steps[i] << ',' << emitted << '\n';
  }
  out << "max_pause_steps," << record.max_pause_steps() << '\n';
  out << "delay," << to_string(measure_delay(record)) << '\n';
  out << "first_delay," << to_string(measure_first_delay(record)) << '\n';
  out << "trace_class," << to_string(record.trace_class) << '\n';
  out << "wall_clock_ms," << record.wall_ms << '\n';
}

}  // namespace gcds
