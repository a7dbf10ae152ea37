#pragma once

#include <cstddef>
#include <exception>

namespace crfae {

/// Calls fn(i) for every i in [0, n). With jobs <= 1 this is a plain loop
/// (the serial reference path); otherwise iterations are spread over an
/// OpenMP team. Callers write per-iteration results into distinct slots and
/// reduce them afterwards in index order, so the outcome does not depend on
/// `jobs`. The first exception thrown by any iteration is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(crfae_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace crfae
