#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace locmin {

/// Dense vertex index, contiguous in [0, n) within a Graph. Subgraph views
/// keep speaking parent ids, so a VertexId is meaningful across the whole
/// recursion stack of a run.
using VertexId = std::uint32_t;

/// Sentinel for "no vertex": empty argmin, missing neighbor, absent parent.
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Violated precondition or malformed input. The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// ── Deterministic randomness ─────────────────────────────────────────
//
// All randomness in the project flows from a single per-run seed through
// splitmix64. Substreams are derived with mix_seed so that e.g. the RSD
// sampling stream and the error-injection stream never alias, and results
// replay bit-identically regardless of scheduling.

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        return next() % bound;
    }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Derive a substream seed from (seed, tag). Used for the documented
/// stream split: sampling, injection, instance generation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    rng.next();
    return rng.next();
}

inline constexpr std::uint64_t kStreamSampling  = 1;
inline constexpr std::uint64_t kStreamInjection = 2;
inline constexpr std::uint64_t kStreamInstance  = 3;

} // namespace locmin
