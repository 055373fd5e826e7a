// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace symred {

void configure_threads_from_env() {
  if (const char* env = std::getenv("SYMRED_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) set_thread_count(n);
    } catch (const std::exception&) {
      // ignored: malformed value leaves the OpenMP default in place
    }
  }
}

void set_thread_count(int n) { omp_set_num_threads(n > 0 ? n : 1); }

int thread_count() { return omp_get_max_threads(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
}

}  // namespace symred
