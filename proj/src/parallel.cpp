#include "padicreg/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace padicreg {

int default_worker_count() {
  if (const char* env = std::getenv("PADIC_THREADS")) {
    try {
      const int requested = std::stoi(env);
      return requested <= 1 ? 1 : requested;
    } catch (...) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1) return 1;
  return static_cast<int>(hw > 8 ? 8 : hw);
}

int resolve_worker_count(int requested) {
  if (requested < 0) return default_worker_count();
  return requested <= 1 ? 1 : requested;
}

}  // namespace padicreg
