#include "capflow/seed.hpp"

namespace capflow {

namespace {

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::span<const std::int64_t> labels) noexcept {
    std::uint64_t h = mix(master ^ 0x6a09e667f3bcc909ULL);
    std::uint64_t position = 1;
    for (std::int64_t label : labels) {
        h = mix(h ^ mix(static_cast<std::uint64_t>(label) + 0x9e3779b97f4a7c15ULL * position));
        ++position;
    }
    return h;
}

}  // namespace capflow
