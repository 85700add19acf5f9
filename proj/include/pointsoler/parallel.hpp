// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal fan-out helper for embarrassingly parallel sweeps. Work items are
// independent; callers write results into pre-sized slots so the output order
// never depends on the number of workers.

#pragma once

#include <cstddef>
#include <functional>

namespace pointsoler {

// Default worker count: $POINTSOLER_JOBS if set to a positive integer,
// otherwise the hardware concurrency (at least 1).
int default_jobs();

// Calls fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// thrown by any worker is rethrown after all workers have stopped.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace pointsoler
