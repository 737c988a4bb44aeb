#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "gcds/backend.hpp"

namespace gcds {

struct BackendOptions {
  bool cursor_memo = true;  // the ett scan-memoization toggle
};

// Names: rc, ms, ett, ett-nocursor, drds (reachability-oracle collector).
std::unique_ptr<GcdsBackend> make_backend(std::string_view name,
                                          const BackendOptions& opts = {});
// True for collectors contracting immediate collection (delay exactly one).
bool backend_is_immediate(std::string_view name);
const std::vector<std::string_view>& known_backends();

}  // namespace gcds
