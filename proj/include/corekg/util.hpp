#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace corekg {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;

// 64-bit FNV-1a over raw bytes; chainable through the seed argument. The
// byte form carries its own name so a string literal can never bind to the
// void* overload with its seed misread as a length.
std::uint64_t fnv1a64_bytes(const void* data, std::size_t len, std::uint64_t seed = kFnvOffset);
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = kFnvOffset);

// Derives independent rng streams from one master seed.
std::uint64_t splitmix64(std::uint64_t x);

std::string hex_u64(std::uint64_t v);

// Runs fn(begin, end, worker) over [0, n) split into contiguous chunks,
// one per worker. Runs inline when n_threads <= 1 or n is small. The
// chunking depends only on n and n_threads.
void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t, std::size_t, int)>& fn);

}  // namespace corekg
