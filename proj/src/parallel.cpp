#include "convseq/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace convseq {

std::size_t resolve_thread_count(std::optional<std::size_t> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("CONVSEQ_THREADS")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

}  // namespace convseq
