#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gcds/step_counter.hpp"
#include "gcds/types.hpp"

namespace gcds {

struct NoParent : std::logic_error {
  NoParent() : std::logic_error("cut: node is a tree root") {}
};
struct NotRoot : std::logic_error {
  NotRoot() : std::logic_error("join: target is not a tree root") {}
};
struct SameTree : std::logic_error {
  SameTree() : std::logic_error("join: endpoints already share a tree") {}
};

// A directed forest stored as Euler tours in splay trees keyed by implicit
// position. Each node contributes one enter occurrence; every tree edge adds
// a matching re-occurrence of the parent (the ascend marker), so a k-node
// tree has a tour of length 2k-1 and the preorder is the order of enter
// occurrences. parent() is an O(1) side map; cut/join/path/next are
// amortized logarithmic. Query methods splay, hence are non-const.
class EttForest {
 public:
  EttForest() = default;
  ~EttForest();
  EttForest(const EttForest& other);
  EttForest& operator=(const EttForest& other);
  EttForest(EttForest&& other) noexcept;
  EttForest& operator=(EttForest&& other) noexcept;

  void attach_counter(StepCounter* counter) { counter_ = counter; }

  // Adds `id` as a new one-node tree. Ids are dense handles chosen by the
  // caller.
  void make_singleton(NodeId id);

  // Detaches b's subtree into its own tree. Throws NoParent on tree roots.
  void cut(NodeId b);
  // Checked binary form: requires parent(b) == a.
  void cut_edge(NodeId a, NodeId b);

  // Makes the tree rooted at b a child subtree of a (b becomes a's first
  // child in tour order). Throws NotRoot / SameTree.
  void join(NodeId a, NodeId b);

  // True iff a is an ancestor of b (inclusive: path(a, a) is true).
  bool path(NodeId a, NodeId b);

  std::optional<NodeId> parent(NodeId a) const;
  // Preorder successor within a's tree; none at the last node.
  std::optional<NodeId> next(NodeId a);

  bool contains(NodeId id) const {
    return id < recs_.size() && recs_[id].present;
  }
  bool same_tree(NodeId a, NodeId b);
  NodeId tree_root(NodeId member);
  std::size_t tree_size(NodeId member);
  // Members of member's tree in preorder.
  std::vector<NodeId> tree_nodes(NodeId member);
  // Raw tour of member's tree as (node, is_enter) pairs, for validation.
  std::vector<std::pair<NodeId, bool>> tour_of(NodeId member);

  // Destroys an entire tree (given by its root) and all its metadata;
  // returns the number of nodes erased.
  std::size_t erase_tree(NodeId tree_root);

  std::size_t node_count() const { return node_count_; }
  std::size_t occurrence_count() const { return occ_count_; }

 private:
  struct Occ {
    Occ* left = nullptr;
    Occ* right = nullptr;
    Occ* parent = nullptr;
    std::uint32_t size = 1;
    std::uint32_t enters = 0;
    NodeId node = 0;
    bool is_enter = false;
  };

  struct NodeRec {
    Occ* enter = nullptr;
    Occ* ascend = nullptr;  // the parent re-occurrence closing our interval
    NodeId parent = 0;
    bool has_parent = false;
    bool present = false;
  };

  void tick(std::uint64_t n = 1) {
    if (counter_) counter_->tick(n);
  }
  static void update(Occ* x);
  void rotate(Occ* x);
  void splay(Occ* x);
  Occ* rightmost(Occ* x);
  std::uint32_t position(Occ* x);
  Occ* bst_root(Occ* x) const;
  Occ* concat(Occ* a, Occ* b);
  void collect_inorder(Occ* root, std::vector<Occ*>* out) const;
  void copy_from(const EttForest& other);
  void destroy_all();

  std::vector<NodeRec> recs_;
  std::size_t occ_count_ = 0;
  std::size_t node_count_ = 0;
  StepCounter* counter_ = nullptr;
};

}  // namespace gcds
