#pragma once

#include <cstddef>
#include <functional>

namespace cliffcalc {

// Execution mode for the data-parallel kernels (quadrature node evaluation,
// det-scan grids, resolvent-bound sampling). The serial variant is the
// reference implementation; the OpenMP variant must produce bit-identical
// results because every kernel writes into a preallocated slot array and the
// reduction order is fixed.
enum class ExecMode { Serial, OpenMP };

// Default mode: OpenMP when compiled in, Serial otherwise.
ExecMode default_exec_mode();

// Worker cap from the CLIFFCALC_THREADS environment variable (0 = runtime default).
int configured_thread_count();

// fn(i) fills slot i of some caller-owned array. No return value, no reduction.
void for_each_index(std::size_t count, ExecMode mode, const std::function<void(std::size_t)>& fn);

void for_each_index_serial(std::size_t count, const std::function<void(std::size_t)>& fn);
void for_each_index_openmp(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace cliffcalc
