#include "gcds/ett.hpp"

#include <cassert>
#include <unordered_map>

namespace gcds {

void EttForest::update(Occ* x) {
  x->size = 1;
  x->enters = x->is_enter ? 1 : 0;
  if (x->left) {
    x->size += x->left->size;
    x->enters += x->left->enters;
  }
  if (x->right) {
    x->size += x->right->size;
    x->enters += x->right->enters;
  }
}

void EttForest::rotate(Occ* x) {
  tick();
  Occ* p = x->parent;
  Occ* g = p->parent;
  if (p->left == x) {
    p->left = x->right;
    if (x->right) x->right->parent = p;
    x->right = p;
  } else {
    p->right = x->left;
    if (x->left) x->left->parent = p;
    x->left = p;
  }
  p->parent = x;
  x->parent = g;
  if (g) {
    if (g->left == p)
      g->left = x;
    else
      g->right = x;
  }
  update(p);
  update(x);
}

void EttForest::splay(Occ* x) {
  while (x->parent) {
    Occ* p = x->parent;
    Occ* g = p->parent;
    if (!g) {
      rotate(x);
    } else if ((g->left == p) == (p->left == x)) {
      rotate(p);
      rotate(x);
    } else {
      rotate(x);
      rotate(x);
    }
  }
}

EttForest::Occ* EttForest::rightmost(Occ* x) {
  while (x->right) {
    tick();
    x = x->right;
  }
  splay(x);
  return x;
}

std::uint32_t EttForest::position(Occ* x) {
  splay(x);
  return x->left ? x->left->size : 0;
}

EttForest::Occ* EttForest::bst_root(Occ* x) const {
  while (x->parent) x = x->parent;
  return x;
}

EttForest::Occ* EttForest::concat(Occ* a, Occ* b) {
  if (!a) return b;
  if (!b) return a;
  a = rightmost(a);
  a->right = b;
  b->parent = a;
  update(a);
  return a;
}

void EttForest::make_singleton(NodeId id) {
  if (id >= recs_.size()) recs_.resize(id + 1);
  assert(!recs_[id].present);
  tick();
  Occ* e = new Occ;
  e->node = id;
  e->is_enter = true;
  e->enters = 1;
  recs_[id] = NodeRec{e, nullptr, 0, false, true};
  ++occ_count_;
  ++node_count_;
}

void EttForest::join(NodeId a, NodeId b) {
  assert(contains(a) && contains(b));
  if (recs_[b].has_parent) throw NotRoot{};
  if (same_tree(a, b)) throw SameTree{};
  tick();
  Occ* ea = recs_[a].enter;
  Occ* eb = recs_[b].enter;
  splay(ea);
  splay(eb);
  // Assemble [.. ea] [b-tour] asc [rest ..] without further splaying, so the
  // edit below is atomic with respect to step-budget aborts.
  Occ* rest = ea->right;
  if (rest) {
    rest->parent = nullptr;
    ea->right = nullptr;
  }
  ea->right = eb;
  eb->parent = ea;
  update(ea);
  Occ* asc = new Occ;
  asc->node = a;
  asc->is_enter = false;
  ++occ_count_;
  asc->left = ea;
  ea->parent = asc;
  asc->right = rest;
  if (rest) rest->parent = asc;
  update(asc);
  recs_[b].has_parent = true;
  recs_[b].parent = a;
  recs_[b].ascend = asc;
}

void EttForest::cut(NodeId b) {
  assert(contains(b));
  if (!recs_[b].has_parent) throw NoParent{};
  tick();
  Occ* eb = recs_[b].enter;
  Occ* asc = recs_[b].ascend;
  splay(eb);
  Occ* left = eb->left;
  assert(left && "a child's enter always follows its parent's");
  left->parent = nullptr;
  eb->left = nullptr;
  update(eb);
  splay(asc);  // asc trails b's interval, so it is in eb's remainder tree
  Occ* subtree = asc->left;
  assert(subtree);
  subtree->parent = nullptr;
  asc->left = nullptr;
  Occ* right = asc->right;
  if (right) {
    right->parent = nullptr;
    asc->right = nullptr;
  }
  recs_[b].has_parent = false;
  recs_[b].ascend = nullptr;
  delete asc;
  --occ_count_;
  concat(left, right);
}

void EttForest::cut_edge(NodeId a, NodeId b) {
  if (!recs_[b].has_parent || recs_[b].parent != a) throw NoParent{};
  cut(b);
}

bool EttForest::same_tree(NodeId a, NodeId b) {
  Occ* ea = recs_[a].enter;
  Occ* eb = recs_[b].enter;
  if (ea == eb) return true;
  splay(ea);
  splay(eb);
  return ea->parent != nullptr;
}

bool EttForest::path(NodeId a, NodeId b) {
  assert(contains(a) && contains(b));
  if (a == b) return true;
  tick();
  if (!same_tree(a, b)) return false;
  std::uint32_t pos_a = position(recs_[a].enter);
  std::uint32_t pos_b = position(recs_[b].enter);
  if (pos_b < pos_a) return false;
  if (!recs_[a].has_parent) return true;  // a is the tree root
  return pos_b < position(recs_[a].ascend);
}

std::optional<NodeId> EttForest::parent(NodeId a) const {
  assert(contains(a));
  if (!recs_[a].has_parent) return std::nullopt;
  return recs_[a].parent;
}

std::optional<NodeId> EttForest::next(NodeId a) {
  assert(contains(a));
  tick();
  Occ* e = recs_[a].enter;
  splay(e);
  Occ* cur = e->right;
  if (!cur || cur->enters == 0) return std::nullopt;
  // Descend to the first enter occurrence by position.
  while (true) {
    tick();
    if (cur->left && cur->left->enters > 0) {
      cur = cur->left;
    } else if (cur->is_enter) {
      break;
    } else {
      cur = cur->right;
    }
  }
  NodeId result = cur->node;
  splay(cur);
  return result;
}

NodeId EttForest::tree_root(NodeId member) {
  Occ* e = recs_[member].enter;
  splay(e);
  Occ* cur = e;
  while (cur->left) {
    tick();
    cur = cur->left;
  }
  splay(cur);
  assert(cur->is_enter);
  return cur->node;
}

std::size_t EttForest::tree_size(NodeId member) {
  Occ* e = recs_[member].enter;
  splay(e);
  return (e->size + 1) / 2;
}

void EttForest::collect_inorder(Occ* root, std::vector<Occ*>* out) const {
  std::vector<std::pair<Occ*, bool>> stack;
  stack.push_back({root, false});
  while (!stack.empty()) {
    auto [occ, expanded] = stack.back();
    stack.pop_back();
    if (!occ) continue;
    if (expanded) {
      out->push_back(occ);
    } else {
      stack.push_back({occ->right, false});
      stack.push_back({occ, true});
      stack.push_back({occ->left, false});
    }
  }
}

std::vector<NodeId> EttForest::tree_nodes(NodeId member) {
  Occ* e = recs_[member].enter;
  splay(e);
  std::vector<Occ*> seq;
  collect_inorder(e, &seq);
  std::vector<NodeId> out;
  for (Occ* o : seq)
    if (o->is_enter) out.push_back(o->node);
  return out;
}

std::vector<std::pair<NodeId, bool>> EttForest::tour_of(NodeId member) {
  Occ* e = recs_[member].enter;
  splay(e);
  std::vector<Occ*> seq;
  collect_inorder(e, &seq);
  std::vector<std::pair<NodeId, bool>> out;
  for (Occ* o : seq) out.push_back({o->node, o->is_enter});
  return out;
}

std::size_t EttForest::erase_tree(NodeId root) {
  assert(contains(root) && !recs_[root].has_parent);
  Occ* top = bst_root(recs_[root].enter);
  std::vector<Occ*> seq;
  collect_inorder(top, &seq);
  tick(seq.size());
  std::size_t erased = 0;
  for (Occ* o : seq) {
    if (o->is_enter) {
      recs_[o->node] = NodeRec{};
      --node_count_;
      ++erased;
    }
    delete o;
    --occ_count_;
  }
  return erased;
}

void EttForest::destroy_all() {
  std::vector<char> done(recs_.size(), 0);
  for (NodeId v = 0; v < recs_.size(); ++v) {
    if (!recs_[v].present || done[v]) continue;
    Occ* top = bst_root(recs_[v].enter);
    std::vector<Occ*> seq;
    collect_inorder(top, &seq);
    for (Occ* o : seq) {
      if (o->is_enter && o->node < done.size()) done[o->node] = 1;
      delete o;
    }
  }
  recs_.clear();
  occ_count_ = 0;
  node_count_ = 0;
}

EttForest::~EttForest() { destroy_all(); }

void EttForest::copy_from(const EttForest& other) {
  recs_.assign(other.recs_.size(), NodeRec{});
  occ_count_ = other.occ_count_;
  node_count_ = other.node_count_;
  counter_ = other.counter_;

  // Rebuild each tree's tour as a balanced tree over the same sequence; the
  // logical forest is identical, only the splay shape differs.
  std::vector<char> done(other.recs_.size(), 0);
  std::vector<Occ*> seq;
  std::vector<Occ*> fresh;
  for (NodeId v = 0; v < other.recs_.size(); ++v) {
    if (!other.recs_[v].present || done[v]) continue;
    seq.clear();
    fresh.clear();
    Occ* top = other.bst_root(other.recs_[v].enter);
    other.collect_inorder(top, &seq);
    fresh.reserve(seq.size());
    for (Occ* o : seq) {
      Occ* n = new Occ;
      n->node = o->node;
      n->is_enter = o->is_enter;
      fresh.push_back(n);
    }
    // Balanced build over fresh[lo..hi).
    struct Range {
      std::size_t lo, hi;
      Occ* parent;
      bool left_side;
    };
    std::vector<Range> stack{{0, fresh.size(), nullptr, false}};
    while (!stack.empty()) {
      auto [lo, hi, par, left_side] = stack.back();
      stack.pop_back();
      if (lo >= hi) continue;
      std::size_t mid = lo + (hi - lo) / 2;
      Occ* n = fresh[mid];
      n->parent = par;
      if (par) {
        if (left_side)
          par->left = n;
        else
          par->right = n;
      }
      stack.push_back({lo, mid, n, true});
      stack.push_back({mid + 1, hi, n, false});
    }
    // Recompute aggregates with an explicit post-order.
    std::vector<std::pair<Occ*, bool>> post;
    if (!fresh.empty()) {
      Occ* build_root = fresh[fresh.size() / 2];
      post.push_back({build_root, false});
      while (!post.empty()) {
        auto [o, expanded] = post.back();
        post.pop_back();
        if (!o) continue;
        if (expanded) {
          update(o);
        } else {
          post.push_back({o, true});
          post.push_back({o->left, false});
          post.push_back({o->right, false});
        }
      }
    }
    std::unordered_map<const Occ*, Occ*> remap;
    remap.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) remap[seq[i]] = fresh[i];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!seq[i]->is_enter) continue;
      NodeId id = seq[i]->node;
      const NodeRec& src = other.recs_[id];
      recs_[id].enter = fresh[i];
      recs_[id].parent = src.parent;
      recs_[id].has_parent = src.has_parent;
      recs_[id].present = true;
      recs_[id].ascend = src.ascend ? remap.at(src.ascend) : nullptr;
      done[id] = 1;
    }
  }
}

EttForest::EttForest(const EttForest& other) { copy_from(other); }

EttForest& EttForest::operator=(const EttForest& other) {
  if (this != &other) {
    destroy_all();
    copy_from(other);
  }
  return *this;
}

EttForest::EttForest(EttForest&& other) noexcept
    : recs_(std::move(other.recs_)),
      occ_count_(other.occ_count_),
      node_count_(other.node_count_),
      counter_(other.counter_) {
  other.recs_.clear();
  other.occ_count_ = 0;
  other.node_count_ = 0;
}

EttForest& EttForest::operator=(EttForest&& other) noexcept {
  if (this != &other) {
    destroy_all();
    recs_ = std::move(other.recs_);
    occ_count_ = other.occ_count_;
    node_count_ = other.node_count_;
    counter_ = other.counter_;
    other.recs_.clear();
    other.occ_count_ = 0;
    other.node_count_ = 0;
  }
  return *this;
}

}  // namespace gcds
