#include "gcds/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gcds {

std::unique_ptr<DrdsBackend> DrdsBackend::clone() const {
  throw std::logic_error("this reachability backend does not support clone");
}

// ------------------------------------------------------------- naive DRDS

NaiveDrds::NaiveDrds(std::size_t size_hint) { adj_.resize(size_hint); }

void NaiveDrds::grow(VertexId v) {
  if (v >= adj_.size()) adj_.resize(v + 1);
}

void NaiveDrds::dc_insert(VertexId a, VertexId b) {
  grow(std::max(a, b));
  tick();
  ++adj_[a][b];
}

void NaiveDrds::dc_delete(VertexId a, VertexId b) {
  tick();
  auto it = adj_[a].find(b);
  assert(it != adj_[a].end() && it->second > 0);
  if (--it->second == 0) adj_[a].erase(it);
}

bool NaiveDrds::dc_connected(VertexId a, VertexId b) {
  if (a == b) return true;
  grow(std::max(a, b));
  std::vector<char> seen(adj_.size(), 0);
  std::vector<VertexId> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    tick();
    if (v == b) return true;
    for (const auto& [to, mult] : adj_[v]) {
      (void)mult;
      tick();
      if (!seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  return false;
}

std::unique_ptr<DrdsBackend> NaiveDrds::clone() const {
  auto copy = std::make_unique<NaiveDrds>(0);
  copy->adj_ = adj_;
  return copy;
}

// --------------------------------------------------------- DRDS from GCDS

DrdsFromGcds::DrdsFromGcds(std::unique_ptr<GcdsBackend> gcds,
                           std::uint64_t pause_budget,
                           std::uint32_t delay_budget)
    : gcds_(std::move(gcds)),
      pause_budget_(pause_budget),
      delay_budget_(delay_budget) {
  gcds_->attach_counter(&counter_);
}

NodeId DrdsFromGcds::handle(VertexId i) {
  if (!hub_) hub_ = gcds_->allocate();
  auto it = map_.find(i);
  if (it != map_.end()) return it->second;
  // Fresh vertices hang off the hub so nothing the mirror does can strand
  // them; the root edge from allocation is dropped right away.
  NodeId n = gcds_->allocate();
  gcds_->insert(*hub_, n);
  gcds_->remove(kRoot, n);
  map_.emplace(i, n);
  return n;
}

void DrdsFromGcds::dc_insert(VertexId a, VertexId b) {
  NodeId va = handle(a);
  NodeId vb = handle(b);
  gcds_->insert(va, vb);
  assert(gcds_->pending_free_count() == 0);
}

void DrdsFromGcds::dc_delete(VertexId a, VertexId b) {
  NodeId va = handle(a);
  NodeId vb = handle(b);
  gcds_->remove(va, vb);
  assert(gcds_->pending_free_count() == 0);
}

bool DrdsFromGcds::dc_connected(VertexId a, VertexId b) {
  gcds_->checkpoint();
  auto saved_map = map_;
  auto saved_hub = hub_;

  NodeId va = handle(a);
  NodeId vb = handle(b);
  gcds_->insert(kRoot, va);
  gcds_->insert(vb, *hub_);

  // With the root now wired only through the query source, severing the hub
  // keeps everything reachable exactly when a path a ->+ b exists. A slow
  // call or any emission is the no-path signal.
  bool reaches = true;
  auto timed = [&](const MutOp& op) {
    std::uint64_t before = counter_.count();
    CallOutcome out = call_with_timeout(*gcds_, op, pause_budget_);
    max_call_steps_ = std::max(max_call_steps_, counter_.count() - before);
    return out;
  };
  if (timed(MutOp::del(kRoot, *hub_)) == CallOutcome::kTimedOut ||
      !gcds_->drain_free_list().empty()) {
    reaches = false;
  } else {
    for (std::uint32_t i = 0; i < delay_budget_ && reaches; ++i) {
      if (timed(MutOp::step()) == CallOutcome::kTimedOut ||
          !gcds_->drain_free_list().empty()) {
        reaches = false;
      }
    }
  }

  gcds_->restore();
  map_ = std::move(saved_map);
  hub_ = saved_hub;
  return reaches;
}

// -------------------------------------------------------- LPRDS from GCDS

LprdsFromGcds::LprdsFromGcds(std::unique_ptr<GcdsBackend> gcds,
                             std::vector<std::uint32_t> layers,
                             std::uint64_t pause_budget,
                             std::uint32_t delay_budget)
    : gcds_(std::move(gcds)),
      layers_(std::move(layers)),
      pause_budget_(pause_budget),
      delay_budget_(delay_budget) {
  if (layers_.empty()) throw PromiseViolation("empty layer assignment");
  first_layer_ = *std::min_element(layers_.begin(), layers_.end());
  gcds_->attach_counter(&counter_);
}

NodeId LprdsFromGcds::handle(VertexId v) {
  if (v >= layers_.size()) throw PromiseViolation("vertex outside universe");
  auto it = map_.find(v);
  if (it != map_.end()) return it->second;
  NodeId n = gcds_->allocate();  // the root edge is the indegree-0 tether
  map_.emplace(v, n);
  return n;
}

void LprdsFromGcds::lp_insert(VertexId u, VertexId v) {
  if (u >= layers_.size() || v >= layers_.size())
    throw PromiseViolation("vertex outside universe");
  if (layers_[v] != layers_[u] + 1)
    throw PromiseViolation("edge must advance exactly one layer");
  if (succ_.count(u)) throw PromiseViolation("outdegree above one");
  if (pred_.count(v)) throw PromiseViolation("indegree above one");
  NodeId nu = handle(u);
  NodeId nv = handle(v);
  gcds_->insert(nu, nv);
  gcds_->remove(kRoot, nv);
  succ_[u] = v;
  pred_[v] = u;
}

void LprdsFromGcds::lp_delete(VertexId u, VertexId v) {
  auto it = succ_.find(u);
  if (it == succ_.end() || it->second != v)
    throw PromiseViolation("deleting a missing edge");
  NodeId nu = map_.at(u);
  NodeId nv = map_.at(v);
  gcds_->insert(kRoot, nv);
  gcds_->remove(nu, nv);
  succ_.erase(u);
  pred_.erase(v);
}

bool LprdsFromGcds::lp_connected(VertexId u, VertexId v) {
  if (u >= layers_.size() || v >= layers_.size())
    throw PromiseViolation("vertex outside universe");
  if (layers_[u] != first_layer_)
    throw PromiseViolation("queries start at the first layer");

  gcds_->checkpoint();
  auto saved_map = map_;

  NodeId nu = handle(u);
  NodeId nv = handle(v);
  gcds_->insert(nv, nu);

  // A hit closes a cycle and strands the path head; a miss leaves the head
  // reachable through the target's own path. Timeout or emissions mean hit.
  bool reaches = false;
  auto timed = [&](const MutOp& op) {
    std::uint64_t before = counter_.count();
    CallOutcome out = call_with_timeout(*gcds_, op, pause_budget_);
    max_call_steps_ = std::max(max_call_steps_, counter_.count() - before);
    return out;
  };
  if (timed(MutOp::del(kRoot, nu)) == CallOutcome::kTimedOut ||
      !gcds_->drain_free_list().empty()) {
    reaches = true;
  } else {
    for (std::uint32_t i = 0; i < delay_budget_ && !reaches; ++i) {
      if (timed(MutOp::step()) == CallOutcome::kTimedOut ||
          !gcds_->drain_free_list().empty()) {
        reaches = true;
      }
    }
  }

  gcds_->restore();
  map_ = std::move(saved_map);
  return reaches;
}

// --------------------------------------------------------- GCDS from DRDS

namespace {
struct DrdsGcdsSnap : BackendSnapshot {
  std::unique_ptr<DrdsBackend> drds;
  std::vector<std::map<NodeId, std::uint32_t>> out;
  std::vector<char> live;
  NodeId next_id;
};
}  // namespace

DrdsBackedGcds::DrdsBackedGcds(std::unique_ptr<DrdsBackend> drds)
    : drds_(std::move(drds)) {
  out_.resize(1);
  live_.assign(1, 1);
}

void DrdsBackedGcds::attach_counter(StepCounter* counter) {
  GcdsBackend::attach_counter(counter);
  drds_->attach_counter(counter);
}

NodeId DrdsBackedGcds::allocate() {
  tick();
  NodeId id = next_id_++;
  out_.resize(next_id_);
  live_.resize(next_id_, 1);
  tick();
  ++out_[kRoot][id];
  drds_->dc_insert(kRoot, id);
  return id;
}

void DrdsBackedGcds::insert(NodeId a, NodeId b) {
  tick();
  ++out_[a][b];
  drds_->dc_insert(a, b);
}

void DrdsBackedGcds::remove(NodeId a, NodeId b) {
  tick();
  auto it = out_[a].find(b);
  assert(it != out_[a].end() && it->second > 0);
  if (--it->second == 0) out_[a].erase(it);
  drds_->dc_delete(a, b);
  if (!drds_->dc_connected(kRoot, b)) cascade(b);
}

void DrdsBackedGcds::cascade(NodeId start) {
  std::vector<NodeId> stack{start};
  live_[start] = 0;
  emit_free(start);
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    tick();
    // Delete every remaining out-edge of the dead node, re-asking the
    // oracle after each target loses an edge.
    for (const auto& [to, mult] : out_[v]) {
      for (std::uint32_t k = 0; k < mult; ++k) drds_->dc_delete(v, to);
      tick();
      if (live_[to] && !drds_->dc_connected(kRoot, to)) {
        live_[to] = 0;
        emit_free(to);
        stack.push_back(to);
      }
    }
    out_[v].clear();
  }
}

void DrdsBackedGcds::step() { tick(); }

std::unique_ptr<BackendSnapshot> DrdsBackedGcds::make_snapshot() const {
  auto snap = std::make_unique<DrdsGcdsSnap>();
  snap->drds = drds_->clone();
  snap->out = out_;
  snap->live = live_;
  snap->next_id = next_id_;
  return snap;
}

void DrdsBackedGcds::apply_snapshot(const BackendSnapshot& snap) {
  const auto& st = static_cast<const DrdsGcdsSnap&>(snap);
  drds_ = st.drds->clone();
  drds_->attach_counter(counter());
  out_ = st.out;
  live_ = st.live;
  next_id_ = st.next_id;
}

void DrdsBackedGcds::hash_state(Hasher& h) const {
  h.mix(next_id_);
  for (NodeId v = 0; v < next_id_; ++v) {
    if (!live_[v]) continue;
    h.mix(v);
    for (const auto& [to, mult] : out_[v]) {
      h.mix(v);
      h.mix(to);
      h.mix(mult);
    }
  }
}

// ------------------------------------------------------------ UDC wrapper

UdcWrapper::UdcWrapper(LprdsFactory factory, std::size_t path_count)
    : factory_(std::move(factory)), path_count_(path_count) {}

void UdcWrapper::insert(VertexId a, VertexId b) {
  ++undirected_[a][b];
  ++undirected_[b][a];
  if (mode_ != Mode::kLprds) return;
  if (!layer_.count(a) || !layer_.count(b)) {
    fall_back();
    return;
  }
  VertexId lo = a, hi = b;
  if (layer_.at(lo) > layer_.at(hi)) std::swap(lo, hi);
  if (layer_.at(hi) != layer_.at(lo) + 1) {
    fall_back();
    return;
  }
  try {
    lprds_->lp_insert(lo, hi);
  } catch (const PromiseViolation&) {
    fall_back();
  }
}

void UdcWrapper::remove(VertexId a, VertexId b) {
  auto ab = undirected_.find(a);
  if (ab == undirected_.end() || !ab->second.count(b)) return;
  if (--ab->second[b] == 0) ab->second.erase(b);
  if (--undirected_[b][a] == 0) undirected_[b].erase(a);
  if (mode_ != Mode::kLprds) return;
  if (!layer_.count(a) || !layer_.count(b)) {
    fall_back();
    return;
  }
  VertexId lo = a, hi = b;
  if (layer_.at(lo) > layer_.at(hi)) std::swap(lo, hi);
  try {
    lprds_->lp_delete(lo, hi);
  } catch (const PromiseViolation&) {
    fall_back();
  }
}

bool UdcWrapper::naive_connected(VertexId a, VertexId b) const {
  if (a == b) return true;
  std::set<VertexId> seen{a};
  std::vector<VertexId> stack{a};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (v == b) return true;
    auto it = undirected_.find(v);
    if (it == undirected_.end()) continue;
    for (const auto& [to, mult] : it->second) {
      (void)mult;
      if (seen.insert(to).second) stack.push_back(to);
    }
  }
  return false;
}

void UdcWrapper::try_init() {
  // One walk decides whether the buffered graph is path_count_ disjoint
  // simple paths starting at the seen sources; layers are path distances.
  layer_.clear();
  for (VertexId src : sources_) {
    if (layer_.count(src)) {
      fall_back();
      return;
    }
    auto adj_of = [&](VertexId v) -> const std::map<VertexId, std::uint32_t>* {
      auto it = undirected_.find(v);
      return it == undirected_.end() ? nullptr : &it->second;
    };
    if (const auto* a = adj_of(src); a && a->size() > 1) {
      fall_back();
      return;
    }
    layer_[src] = 0;
    VertexId prev = src;
    VertexId cur = src;
    std::uint32_t dist = 0;
    while (true) {
      const auto* adj = adj_of(cur);
      if (!adj) break;
      if (cur != src && adj->size() > 2) {
        fall_back();
        return;
      }
      VertexId step = cur;
      bool found = false;
      for (const auto& [to, mult] : *adj) {
        if (mult != 1) {
          fall_back();
          return;
        }
        if (cur != src && to == prev) continue;
        if (found) {
          fall_back();
          return;
        }
        step = to;
        found = true;
      }
      if (!found) break;
      if (layer_.count(step)) {
        fall_back();
        return;
      }
      layer_[step] = ++dist;
      prev = cur;
      cur = step;
    }
  }
  // Every vertex touching an edge must sit on one of the paths.
  for (const auto& [v, adj] : undirected_) {
    if (!adj.empty() && !layer_.count(v)) {
      fall_back();
      return;
    }
  }
  lprds_ = factory_(layer_);
  for (const auto& [v, adj] : undirected_) {
    for (const auto& [to, mult] : adj) {
      (void)mult;
      if (layer_.count(to) && layer_.count(v) &&
          layer_.at(to) == layer_.at(v) + 1) {
        lprds_->lp_insert(v, to);
      }
    }
  }
  mode_ = Mode::kLprds;
}

bool UdcWrapper::connected(VertexId a, VertexId b) {
  sources_.insert(a);
  if (mode_ == Mode::kUndecided && sources_.size() == path_count_) try_init();
  if (mode_ == Mode::kLprds && sources_.count(a) && layer_.count(a) &&
      layer_.count(b) && layer_.at(a) == 0) {
    return lprds_->lp_connected(a, b);
  }
  return naive_connected(a, b);
}

// ------------------------------------------------------------ calibration

std::uint64_t calibrate_drds_pause_budget(
    const std::function<std::unique_ptr<GcdsBackend>()>& make_gcds,
    std::size_t vertex_count) {
  if (vertex_count < 2) vertex_count = 2;
  DrdsFromGcds probe(make_gcds(), ~0ull >> 1, 1);
  // A long path plus chords: queries relink the entire suffix, which is the
  // expensive all-reachable pattern for a forest-based collector.
  for (VertexId i = 0; i + 1 < vertex_count; ++i)
    probe.dc_insert(i, static_cast<VertexId>(i + 1));
  for (VertexId i = 0; i + 2 < vertex_count; i += 2)
    probe.dc_insert(i, static_cast<VertexId>(i + 2));
  bool ok = true;
  ok &= probe.dc_connected(0, static_cast<VertexId>(vertex_count - 1));
  ok &= probe.dc_connected(0, 1);
  if (vertex_count >= 3)
    ok &= probe.dc_connected(1, static_cast<VertexId>(vertex_count - 1));
  if (!ok)
    throw std::logic_error("calibration queries must all be reachable");
  return 4 * std::max<std::uint64_t>(probe.max_observed_call_steps(), 8);
}

std::uint64_t calibrate_lprds_pause_budget(
    const std::function<std::unique_ptr<GcdsBackend>()>& make_gcds,
    const std::vector<std::uint32_t>& layers) {
  LprdsFromGcds probe(make_gcds(), layers, ~0ull >> 1, 1);
  // Identity permutation paths; cross-path queries complete cleanly, which
  // is the all-reachable cost the budget has to dominate.
  std::uint32_t max_layer = *std::max_element(layers.begin(), layers.end());
  std::vector<std::vector<VertexId>> by_layer(max_layer + 1);
  for (VertexId v = 0; v < layers.size(); ++v)
    by_layer[layers[v]].push_back(v);
  for (std::uint32_t l = 0; l < max_layer; ++l) {
    std::size_t width = std::min(by_layer[l].size(), by_layer[l + 1].size());
    for (std::size_t k = 0; k < width; ++k)
      probe.lp_insert(by_layer[l][k], by_layer[l + 1][k]);
  }
  const auto& first = by_layer[0];
  for (std::size_t k = 0; k < first.size(); ++k) {
    VertexId target = by_layer[max_layer][(k + 1) % by_layer[max_layer].size()];
    probe.lp_connected(first[k], target);
  }
  return 4 * std::max<std::uint64_t>(probe.max_observed_call_steps(), 8);
}

}  // namespace gcds
