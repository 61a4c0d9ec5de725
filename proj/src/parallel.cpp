#include "n32/parallel.hpp"

#include <atomic>

namespace n32 {

namespace {
std::atomic<unsigned> g_budget{0};
}

void set_thread_budget(unsigned n) { g_budget = n; }

unsigned thread_budget()
{
  const unsigned n = g_budget.load();
  if (n != 0)
    return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace n32
