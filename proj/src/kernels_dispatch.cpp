#include "htparse/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace htparse::kernels {

const Ops& ops() {
  static const Ops* active = [] {
    // HTPARSE_KERNELS=scalar forces the reference path (used by the
    // equivalence tests and as an escape hatch).
    const char* force = std::getenv("HTPARSE_KERNELS");
    if (force && std::strcmp(force, "scalar") == 0) return &scalar_ops();
    if (avx2_supported()) return &avx2_ops();
    return &scalar_ops();
  }();
  return *active;
}

}  // namespace htparse::kernels
