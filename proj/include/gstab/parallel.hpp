#pragma once

#include <exception>
#include <vector>

#include "gstab/matrix.hpp"

namespace gstab {

// Runs body(i) for i in [0, count) across the OpenMP team. Each body writes
// only its own slot, so callers reduce afterwards in index order. An
// exception from any iteration is rethrown after the loop; when several
// iterations fail, the lowest index wins so the reported error does not
// depend on scheduling.
template <class Body>
void parallel_for(Index count, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace gstab
