#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace gpsparx::simd {
namespace {

const KernelTable*& active_slot() {
  static const KernelTable* slot = [] {
    const auto& tables = supported_kernels();
    if (const char* env = std::getenv("GPSPARX_SIMD")) {
      for (const KernelTable* t : tables) {
        if (t->name == std::string_view(env)) return t;
      }
      return tables.front();  // unknown or unsupported request: scalar
    }
    return tables.back();  // widest supported
  }();
  return slot;
}

}  // namespace

const std::vector<const KernelTable*>& supported_kernels() {
  static const std::vector<const KernelTable*> tables = [] {
    std::vector<const KernelTable*> v{&scalar_kernels()};
    if (const KernelTable* avx2 = avx2_kernels_or_null()) v.push_back(avx2);
    return v;
  }();
  return tables;
}

const KernelTable& active_kernels() { return *active_slot(); }

void set_active_kernels(const KernelTable& table) { active_slot() = &table; }

}  // namespace gpsparx::simd
