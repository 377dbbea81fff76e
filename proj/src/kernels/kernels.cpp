#include "relmux/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace relmux::kernels {
namespace {

const Backend& choose() {
  if (const char* env = std::getenv("RELMUX_KERNELS")) {
    const std::string want = env;
    if (want == "scalar") return scalar_backend();
    if (want == "avx2") {
      if (const Backend* b = avx2_backend()) return *b;
      throw std::runtime_error("RELMUX_KERNELS=avx2 but AVX2/FMA is unavailable");
    }
    if (!want.empty()) throw std::runtime_error("unknown RELMUX_KERNELS value: " + want);
  }
  if (const Backend* b = avx2_backend()) return *b;
  return scalar_backend();
}

}  // namespace

const Backend& backend() {
  static const Backend& b = choose();
  return b;
}

}  // namespace relmux::kernels
