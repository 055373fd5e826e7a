// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace symred {

/// Every sampling kernel has a serial reference path and an OpenMP path.
/// Both must produce bitwise-identical results.
enum class Execution { Serial, Parallel };

/// Caps OpenMP parallelism from SYMRED_THREADS (if set and positive).
void configure_threads_from_env();
void set_thread_count(int n);
int thread_count();

/// Counter-based stream: sample `index` of a run seeded with `seed` always
/// gets the same engine state, whatever thread draws it.
std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index);

}  // namespace symred
