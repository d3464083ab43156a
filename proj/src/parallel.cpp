#include "diachrona/parallel.hpp"

#include <atomic>
#include <cstdlib>

#include "diachrona/text.hpp"

namespace diachrona {

namespace {

std::atomic<unsigned> g_override{0};

unsigned default_workers() noexcept {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIACHRONA_THREADS")) {
    auto v = text::parse_int(env);
    if (v && *v > 0) return static_cast<unsigned>(std::min<long long>(*v, 1024));
  }
  return hw;
}

}  // namespace

void set_max_workers(unsigned n) noexcept { g_override.store(n); }

unsigned max_workers() noexcept {
  unsigned n = g_override.load();
  return n != 0 ? n : default_workers();
}

}  // namespace diachrona
