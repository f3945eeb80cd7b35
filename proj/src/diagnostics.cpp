#include "mathieu/diagnostics.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace mathieu::diag {
namespace {

std::mutex g_mutex;
std::ostream* g_stream = &std::cerr;
std::atomic<long> g_count{0};

}  // namespace

void warn(std::string_view message) {
  ++g_count;
  std::lock_guard lock(g_mutex);
  if (g_stream) *g_stream << "warning: " << message << '\n';
}

std::ostream* set_stream(std::ostream* os) {
  std::lock_guard lock(g_mutex);
  auto* prev = g_stream;
  g_stream = os;
  return prev;
}

long warning_count() { return g_count.load(); }
void reset_warning_count() { g_count = 0; }

}  // namespace mathieu::diag
