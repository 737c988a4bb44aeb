#include "gcds/trace.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace gcds {

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::kAllocate:
      return "A";
    case OpKind::kInsert:
      return "I";
    case OpKind::kDelete:
      return "D";
    case OpKind::kStep:
      return "S";
  }
  return "?";
}

bool at_least_as_strong(const TraceClass& have, const TraceClass& want) {
  if (static_cast<int>(have.tag) < static_cast<int>(want.tag)) return false;
  if (static_cast<int>(have.tag) > static_cast<int>(want.tag)) return true;
  if (have.tag == TraceTag::kSparseAcyclicAllReachable)
    return have.sparsity <= want.sparsity;
  return true;
}

std::string to_string(const TraceClass& cls) {
  switch (cls.tag) {
    case TraceTag::kGeneral:
      return "general";
    case TraceTag::kAllReachable:
      return "all-reachable";
    case TraceTag::kAcyclicAllReachable:
      return "acyclic-all-reachable";
    case TraceTag::kSparseAcyclicAllReachable:
      return "sparse-acyclic-all-reachable:" + std::to_string(cls.sparsity);
  }
  return "general";
}

TraceClass parse_trace_class(const std::string& text) {
  if (text == "general" || text == "g") return TraceClass::general();
  if (text == "all-reachable" || text == "ar")
    return TraceClass::all_reachable();
  if (text == "acyclic-all-reachable" || text == "aar")
    return TraceClass::acyclic();
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (head == "sparse-acyclic-all-reachable" || head == "saar") {
    if (colon == std::string::npos)
      throw InvalidTrace("sparse class needs an outdegree bound, e.g. saar:2");
    return TraceClass::sparse(
        static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1))));
  }
  throw InvalidTrace("unknown trace class: " + text);
}

std::string format_trace(std::span<const MutOp> trace) {
  std::ostringstream out;
  for (const MutOp& op : trace) {
    switch (op.kind) {
      case OpKind::kAllocate:
        out << "A\n";
        break;
      case OpKind::kInsert:
        out << "I " << op.src << " " << op.dst << "\n";
        break;
      case OpKind::kDelete:
        out << "D " << op.src << " " << op.dst << "\n";
        break;
      case OpKind::kStep:
        out << "S\n";
        break;
    }
  }
  return out.str();
}

std::vector<MutOp> parse_trace(const std::string& text) {
  std::vector<MutOp> ops;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    auto need_pair = [&](OpKind kind) {
      unsigned long a, b;
      if (!(ls >> a >> b))
        throw InvalidTrace("line " + std::to_string(lineno) +
                           ": expected two node ids");
      ops.push_back({kind, static_cast<NodeId>(a), static_cast<NodeId>(b)});
    };
    if (tok == "A") {
      ops.push_back(MutOp::alloc());
    } else if (tok == "S") {
      ops.push_back(MutOp::step());
    } else if (tok == "I") {
      need_pair(OpKind::kInsert);
    } else if (tok == "D") {
      need_pair(OpKind::kDelete);
    } else {
      throw InvalidTrace("line " + std::to_string(lineno) +
                         ": unknown op '" + tok + "'");
    }
  }
  return ops;
}

std::vector<MutOp> load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidTrace("cannot open trace file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

namespace {

// Incremental replay shared by the classifier, the oracle, and the
// generator. Valid inserts never change reachability (both endpoints must
// already be reachable), so only allocates add to the set and only deletes
// can shrink it.
class Replay {
 public:
  Replay() : reachable_(1, 1), reach_count_(1) {}

  const HeapGraph& graph() const { return eta_; }
  bool is_reachable(NodeId v) const {
    return v < reachable_.size() && reachable_[v];
  }
  std::size_t reach_count() const { return reach_count_; }
  bool all_reachable_so_far() const { return all_reachable_; }
  bool acyclic_so_far() const { return acyclic_; }
  std::uint32_t max_outdeg() const { return max_outdeg_; }

  bool valid(const MutOp& op) const {
    switch (op.kind) {
      case OpKind::kAllocate:
      case OpKind::kStep:
        return true;
      case OpKind::kInsert:
        return op.dst != kRoot && is_reachable(op.src) && is_reachable(op.dst);
      case OpKind::kDelete:
        return is_reachable(op.src) && is_reachable(op.dst) &&
               eta_.multiplicity(op.src, op.dst) > 0;
    }
    return false;
  }

  // Applies a pre-validated op; fills `died` with nodes that just became
  // unreachable (ascending) and returns the count of edge units whose source
  // died.
  std::uint32_t apply(const MutOp& op, std::vector<NodeId>* died) {
    if (died) died->clear();
    switch (op.kind) {
      case OpKind::kAllocate: {
        eta_.apply_allocate();
        reachable_.push_back(1);
        ++reach_count_;
        return 0;
      }
      case OpKind::kInsert: {
        if (acyclic_ && eta_.would_cycle(op.src, op.dst)) acyclic_ = false;
        eta_.apply(op);
        if (op.src != kRoot)
          max_outdeg_ = std::max(
              max_outdeg_, eta_.outdegree_with_multiplicity(op.src));
        return 0;
      }
      case OpKind::kDelete: {
        eta_.apply(op);
        auto now = eta_.reachable_flags();
        std::uint32_t dead_edges = 0;
        for (NodeId v = 0; v < now.size(); ++v) {
          if (reachable_[v] && !now[v]) {
            if (died) died->push_back(v);
            dead_edges += eta_.outdegree_with_multiplicity(v);
            reachable_[v] = 0;
            --reach_count_;
            all_reachable_ = false;
          }
        }
        return dead_edges;
      }
      case OpKind::kStep:
        return 0;
    }
    return 0;
  }

 private:
  HeapGraph eta_;
  std::vector<char> reachable_;
  std::size_t reach_count_;
  bool all_reachable_ = true;
  bool acyclic_ = true;
  std::uint32_t max_outdeg_ = 0;
};

TraceClass classify_from(const Replay& r) {
  if (r.all_reachable_so_far() && r.acyclic_so_far())
    return TraceClass::sparse(std::max<std::uint32_t>(1, r.max_outdeg()));
  if (r.all_reachable_so_far()) return TraceClass::all_reachable();
  return TraceClass::general();
}

}  // namespace

TraceClass classify_prefix(std::span<const MutOp> trace) {
  Replay r;
  std::size_t i = 0;
  for (const MutOp& op : trace) {
    if (!r.valid(op))
      throw InvalidTrace("trace invalid at op " + std::to_string(i));
    r.apply(op, nullptr);
    ++i;
  }
  return classify_from(r);
}

TraceOracle TraceOracle::compute(std::span<const MutOp> trace) {
  TraceOracle oracle;
  oracle.newly_unreachable.resize(trace.size());
  oracle.dead_edges.resize(trace.size(), 0);
  Replay r;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!r.valid(trace[i]))
      throw InvalidTrace("trace invalid at op " + std::to_string(i));
    oracle.dead_edges[i] = r.apply(trace[i], &oracle.newly_unreachable[i]);
    oracle.unreachable_total += oracle.newly_unreachable[i].size();
    if (trace[i].kind == OpKind::kAllocate) ++oracle.node_total;
  }
  oracle.cls = classify_from(r);
  oracle.stayed_acyclic = r.acyclic_so_far();
  return oracle;
}

namespace {

class TraceGen {
 public:
  TraceGen(const TraceClass& cls, std::uint32_t nodes, std::uint32_t len,
           std::uint64_t seed)
      : cls_(cls), node_budget_(nodes), len_(len), rng_(seed) {
    reachable_list_.push_back(kRoot);
  }

  std::vector<MutOp> run() {
    std::vector<MutOp> out;
    out.reserve(len_);
    for (std::uint32_t i = 0; i < len_; ++i) out.push_back(next_op());
    return out;
  }

 private:
  std::uint64_t rnd(std::uint64_t bound) { return rng_() % bound; }

  bool restricted() const { return cls_.tag != TraceTag::kGeneral; }
  bool acyclic_only() const {
    return cls_.tag == TraceTag::kAcyclicAllReachable ||
           cls_.tag == TraceTag::kSparseAcyclicAllReachable;
  }
  bool sparse_only() const {
    return cls_.tag == TraceTag::kSparseAcyclicAllReachable;
  }

  bool insert_ok(NodeId a, NodeId b) const {
    if (b == kRoot) return false;
    if (acyclic_only() && replay_.graph().would_cycle(a, b)) return false;
    if (sparse_only() && a != kRoot &&
        replay_.graph().outdegree_with_multiplicity(a) >= cls_.sparsity)
      return false;
    return true;
  }

  bool delete_ok(NodeId a, NodeId b) const {
    if (!restricted()) return true;
    return replay_.graph().delete_keeps_all_reachable(a, b);
  }

  MutOp next_op() {
    // Allocation-heavy until the node budget is used, then a mixed diet.
    const bool can_alloc = allocs_ < node_budget_;
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::uint32_t w = static_cast<std::uint32_t>(rnd(10));
      if (can_alloc && (w < 4 || reachable_list_.size() < 2)) {
        return emit(MutOp::alloc());
      }
      if (w < 7 && reachable_list_.size() >= 2) {
        // Sample endpoint pairs rather than enumerate.
        for (int t = 0; t < 8; ++t) {
          NodeId a = reachable_list_[rnd(reachable_list_.size())];
          NodeId b = reachable_list_[rnd(reachable_list_.size())];
          if (insert_ok(a, b)) return emit(MutOp::ins(a, b));
        }
        continue;
      }
      if (w < 9 && !edge_units_.empty()) {
        for (int t = 0; t < 8; ++t) {
          std::size_t idx = rnd(edge_units_.size());
          auto [a, b] = edge_units_[idx];
          if (delete_ok(a, b)) {
            std::swap(edge_units_[idx], edge_units_.back());
            edge_units_.pop_back();
            return emit(MutOp::del(a, b));
          }
        }
        continue;
      }
      return emit(MutOp::step());
    }
    return emit(MutOp::step());
  }

  MutOp emit(const MutOp& op) {
    std::vector<NodeId> died;
    replay_.apply(op, &died);
    switch (op.kind) {
      case OpKind::kAllocate: {
        ++allocs_;
        NodeId fresh = static_cast<NodeId>(allocs_);
        reachable_list_.push_back(fresh);
        edge_units_.push_back({kRoot, fresh});
        break;
      }
      case OpKind::kInsert:
        edge_units_.push_back({op.src, op.dst});
        break;
      case OpKind::kDelete: {
        if (!died.empty()) rebuild_lists();
        break;
      }
      case OpKind::kStep:
        break;
    }
    return op;
  }

  void rebuild_lists() {
    reachable_list_.clear();
    for (NodeId v = 0; v < replay_.graph().next_id(); ++v)
      if (replay_.is_reachable(v)) reachable_list_.push_back(v);
    std::vector<std::pair<NodeId, NodeId>> live;
    live.reserve(edge_units_.size());
    for (auto [a, b] : edge_units_) {
      if (replay_.is_reachable(a) && replay_.graph().multiplicity(a, b) > 0)
        live.push_back({a, b});
    }
    // Deleted copies leave stale entries behind; trim only what died.
    edge_units_ = std::move(live);
  }

  TraceClass cls_;
  std::uint32_t node_budget_;
  std::uint32_t len_;
  std::mt19937_64 rng_;
  Replay replay_;
  std::uint32_t allocs_ = 0;
  std::vector<NodeId> reachable_list_;
  std::vector<std::pair<NodeId, NodeId>> edge_units_;
};

}  // namespace

std::vector<MutOp> gen_trace(const TraceClass& cls, std::uint32_t nodes,
                             std::uint32_t len, std::uint64_t seed) {
  if (nodes < 1) throw Infeasible("gen_trace needs at least one node");
  if (len < nodes)
    throw Infeasible("gen_trace needs len >= nodes to place the allocates");
  if (cls.tag == TraceTag::kSparseAcyclicAllReachable && cls.sparsity < 1)
    throw Infeasible("sparsity bound must be at least 1");
  return TraceGen(cls, nodes, len, seed).run();
}

}  // namespace gcds
