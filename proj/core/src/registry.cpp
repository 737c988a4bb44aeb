#include "gcds/registry.hpp"

#include <stdexcept>
#include <string>

#include "gcds/collectors.hpp"
#include "gcds/immediate.hpp"
#include "gcds/reductions.hpp"

namespace gcds {

namespace {

// Deliberately unsound fixture for harness self-tests: emits the root at the
// first delete, which every soundness check must flag.
class BrokenStubBackend : public GcdsBackend {
 public:
  std::string_view name() const override { return "broken"; }
  NodeId allocate() override {
    tick();
    return next_id_++;
  }
  void insert(NodeId, NodeId) override { tick(); }
  void remove(NodeId, NodeId) override {
    tick();
    if (!fired_) {
      fired_ = true;
      emit_free(kRoot);
    }
  }
  void step() override { tick(); }

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override {
    return std::make_unique<BackendSnapshot>();
  }
  void apply_snapshot(const BackendSnapshot&) override {}
  void hash_state(Hasher& h) const override { h.mix(next_id_); }

 private:
  NodeId next_id_ = 1;
  bool fired_ = false;
};

}  // namespace

std::unique_ptr<GcdsBackend> make_backend(std::string_view name,
                                          const BackendOptions& opts) {
  if (name == "broken") return std::make_unique<BrokenStubBackend>();
  if (name == "rc") return std::make_unique<RefCountBackend>();
  if (name == "ms") return std::make_unique<MarkSweepBackend>();
  if (name == "ett")
    return std::make_unique<EttBackend>(ImmediateOptions{opts.cursor_memo});
  if (name == "ett-nocursor")
    return std::make_unique<EttBackend>(ImmediateOptions{false});
  if (name == "drds")
    return std::make_unique<DrdsBackedGcds>(std::make_unique<NaiveDrds>());
  throw std::invalid_argument("unknown backend: " + std::string(name));
}

bool backend_is_immediate(std::string_view name) {
  return name == "ms" || name == "ett" || name == "ett-nocursor" ||
         name == "drds";
}

const std::vector<std::string_view>& known_backends() {
  static const std::vector<std::string_view> names = {"rc", "ms", "ett",
                                                      "ett-nocursor", "drds"};
  return names;
}

}  // namespace gcds
