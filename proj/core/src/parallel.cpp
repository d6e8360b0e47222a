#include "genecon/parallel.hpp"

#include <cstdlib>
#include <string>

#include "genecon/error.hpp"

namespace genecon {

unsigned thread_count_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* raw = std::getenv("GENECON_THREADS");
  if (raw == nullptr || *raw == '\0') return hw;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("GENECON_THREADS must be a non-negative integer, got '") + raw + "'");
  }
  return value == 0 ? hw : static_cast<unsigned>(value);
}

}  // namespace genecon
