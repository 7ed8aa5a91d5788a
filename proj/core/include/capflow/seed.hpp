#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace capflow {

/// Mixes a master seed with an ordered tuple of labels into a stream seed.
///
/// The construction is frozen so published runs stay reproducible:
///   h0 = mix(master ^ 0x6a09e667f3bcc909)
///   h_{k+1} = mix(h_k ^ mix(label_k + 0x9e3779b97f4a7c15 * (k + 1)))
/// where mix is the SplitMix64 finalizer. Distinct label tuples, including
/// permutations of the same labels, give unrelated streams.
std::uint64_t derive_seed(std::uint64_t master, std::span<const std::int64_t> labels) noexcept;

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::int64_t> labels) noexcept {
    return derive_seed(master, std::span<const std::int64_t>(labels.begin(), labels.size()));
}

}  // namespace capflow
