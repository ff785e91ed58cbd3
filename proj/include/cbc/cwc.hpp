#pragma once

// Binary constant-weight codes, viewed as families of w-subsets of {0..m-1}.
// The Hamming distance of two words is the size of the symmetric difference
// of the subsets, always even for words of equal weight.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

struct ConstantWeightCode {
    int length = 0;
    int weight = 0;
    /// Declared minimum distance; every pair of words is at least this far apart.
    int distance = 2;
    /// The constructors emit words in colexicographic order.
    std::vector<ServerSet> words;

    std::size_t size() const noexcept { return words.size(); }
    bool operator==(const ConstantWeightCode&) const = default;
};

constexpr int word_distance(ServerSet a, ServerSet b) noexcept { return cardinality(a ^ b); }

/// Largest class of w-subsets of Z_m with a fixed element sum mod m (smallest
/// residue on ties). Moving one element changes the sum by a nonzero residue,
/// so words within a class are at distance >= 4, and the largest class holds
/// at least C(m,w)/m words.
ConstantWeightCode graham_sloane_d4(int m, int w);

/// Size of graham_sloane_d4(m, w), counted without listing the words.
std::uint64_t graham_sloane_d4_size(int m, int w);

/// Greedy code: scans w-subsets in colex order and keeps a word when it is at
/// distance >= d2 from every word kept so far. Stops once `target` words are
/// kept and throws InsufficientCode if the scan ends first.
ConstantWeightCode greedy_code(int m, int d2, int w, std::size_t target);
/// Greedy code run to exhaustion.
ConstantWeightCode greedy_code(int m, int d2, int w);

/// Minimum pairwise distance. Throws ParamError with fewer than two words.
int min_distance(const ConstantWeightCode& code);

/// Largest number of subsets scanned by the greedy constructor when it is
/// used automatically as an alternative to the residue construction.
inline constexpr std::uint64_t kGreedyScanLimit = 200000;

/// The larger of graham_sloane_d4(m, w) and the exhaustive greedy distance-4
/// code (the residue code wins ties; greedy is only tried when C(m,w) is at
/// most kGreedyScanLimit). Used by the constant-weight-code CBC construction.
ConstantWeightCode distance4_code(int m, int w);
/// Size of distance4_code(m, w).
std::uint64_t distance4_code_size(int m, int w);

/// Text format:
///     cwc m=<m> w=<w> d=<d2> size=<n>
///     <index>: <element> <element> ...
std::string serialize(const ConstantWeightCode& code);
/// Checks weight and declared distance of every word.
ConstantWeightCode parse_code(std::string_view text);

}  // namespace cbc
