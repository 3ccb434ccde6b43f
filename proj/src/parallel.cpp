#include "holo/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace holo {

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_count(unsigned count) { g_workers.store(std::max(1u, count)); }

unsigned worker_count() { return g_workers.load(); }

} // namespace holo
