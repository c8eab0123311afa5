#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qcrt {

/// Histogram of measured bitstrings. Keys hold one character per measured
/// qubit: position k is the outcome of the k-th distinct qubit measured
/// (so for the usual ascending measure loops, qubit 0 prints leftmost).
/// std::map keeps keys in lexicographic order for serialization.
using Counts = std::map<std::string, std::uint64_t>;

inline std::uint64_t total_shots(const Counts& counts) {
  std::uint64_t total = 0;
  for (const auto& [key, tally] : counts) total += tally;
  return total;
}

/// Adds `src` tallies into `dst` key by key.
inline void merge_counts(Counts& dst, const Counts& src) {
  for (const auto& [key, tally] : src) dst[key] += tally;
}

}  // namespace qcrt
