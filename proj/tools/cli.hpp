#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbc/core.hpp"
#include "cbc/hall.hpp"

namespace cbc::cli {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the output is mixed with
/// (z ^ z>>30) * 0xBF58476D1CE4E5B9, (z ^ z>>27) * 0x94D049BB133111EB, z ^ z>>31.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound): draws until the value is >= 2^64 mod bound,
    /// then reduces mod bound.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

private:
    std::uint64_t state_;
};

/// k distinct items out of n, uniformly: partial Fisher-Yates over 0..n-1
/// (restarted from the identity for every batch), swapping position i with
/// i + below(n - i) for i = 0..k-1. Items are returned in draw order.
std::vector<std::size_t> sample_batch(SplitMix64& rng, std::size_t n, std::size_t k);

struct LoadStats {
    std::vector<std::uint64_t> per_server_reads;
    std::uint64_t batches_served = 0;
    std::uint64_t max_reads_in_any_single_batch_per_server = 0;
};

struct Simulation {
    LoadStats stats;
    /// Set when a batch had no plan; stats cover the batches served before it.
    std::optional<Deficiency> failure;
};

/// Serves `batches` random k-item batches through plan_batch.
Simulation simulate_load(const SetSystem& sys, int k, std::uint64_t batches, std::uint64_t seed);

/// Exit codes: 0 ok, 1 invalid layout or no plan, 2 usage, parse or parameter
/// error, 3 search budget exhausted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace cbc::cli
