#include <cstdlib>
#include <cstring>

#include "derham/kernels.hpp"

namespace derham::kernels {
namespace {

const Ops* select() {
  const char* mode = std::getenv("DERHAM_NS_SIMD");
  if (mode && std::strcmp(mode, "scalar") == 0) return &scalar_ops();
  if (mode && std::strcmp(mode, "avx2") == 0) {
    if (const Ops* ops = avx2_ops()) return ops;
    return &scalar_ops();  // requested but unavailable; fall back
  }
  if (const Ops* ops = avx2_ops()) return ops;
  return &scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops* selected = select();
  return *selected;
}

}  // namespace derham::kernels
