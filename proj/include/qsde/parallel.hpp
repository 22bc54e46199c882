#pragma once

#include <cstdint>
#include <functional>

namespace qsde {

// Worker cap: QSDE_SIM_THREADS when set (>= 1), otherwise the hardware
// concurrency.
int worker_thread_count();

int parallel_chunk_count(std::int64_t n);

// Partitions [0, n) into parallel_chunk_count(n) contiguous chunks and runs
// fn(chunk_index, begin, end) on a worker per chunk. Chunk boundaries depend
// only on n and the thread cap, so per-chunk accumulation plus an in-order
// (or commutative) merge stays deterministic.
void parallel_chunks(std::int64_t n,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

}  // namespace qsde
