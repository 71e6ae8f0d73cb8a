// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <cstdint>
#include <random>

namespace circmat {

// Substream rule for replicated sampling: replicate r of a run with master
// seed s draws from an engine seeded with derive_seed(s, r). Replicates are
// therefore independent of each other and of the replicate count, and may be
// generated concurrently. Deterministic for a fixed build of this library;
// not specified to be stable across standard library implementations.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate);

// Standard normal variates via Box-Muller on mt19937_64. Each pair of
// variates consumes exactly two engine draws.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed);

  double operator()();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace circmat
