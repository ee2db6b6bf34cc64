#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace eulaflag {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

/// FNV-1a over a byte range; the building block for all fingerprints.
inline std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = kFnvOffset) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = seed;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= kFnvPrime;
    }
    return hash;
}

inline std::uint64_t fnv1a_string(std::string_view s, std::uint64_t seed = kFnvOffset) {
    return fnv1a(s.data(), s.size(), seed);
}

inline std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t seed) {
    return fnv1a(&value, sizeof(value), seed);
}

std::string hex_fingerprint(std::uint64_t value);

}  // namespace eulaflag
