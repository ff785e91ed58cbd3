#pragma once

// Exhaustive search for the optimal storage N(n, k, m) on tiny instances.
//
// Candidate layouts are multisets of n replica sets of size 1..k, listed as
// non-decreasing mask sequences. Target storage grows from the lower bound, so
// the first valid layout found is optimal. A prefix is abandoned as soon as it
// violates HC2[k] (adding items never repairs a violation) or when swapping two
// server labels gives a lexicographically smaller sorted prefix (some
// relabeling of every completion is then smaller, and the lexicographically
// least layout of each relabeling class always survives).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cbc/core.hpp"
#include "cbc/hall.hpp"

namespace cbc {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;
/// Largest m the search accepts.
inline constexpr int kMaxSearchServers = 16;

struct SearchResult {
    std::size_t n = 0;
    int k = 0;
    int m = 0;
    std::uint64_t optimal_storage = 0;
    SetSystem witness{1, {}};
    std::uint64_t nodes_explored = 0;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t nodes, std::uint64_t best_upper)
        : Error("search budget of " + std::to_string(nodes) + " nodes exhausted; N <= " + std::to_string(best_upper)),
          nodes_(nodes),
          best_upper_(best_upper) {}

    std::uint64_t nodes() const noexcept { return nodes_; }
    /// Storage of the best valid layout known without finishing the search.
    std::uint64_t best_upper() const noexcept { return best_upper_; }

private:
    std::uint64_t nodes_;
    std::uint64_t best_upper_;
};

/// True N(n, k, m) with a witness layout. A node is one incremental HC2
/// check; the search throws BudgetExceeded after `budget` of them.
/// Requires 1 <= k <= m <= 16 and n >= 1.
SearchResult search_optimal(std::size_t n, int k, int m, std::uint64_t budget = kDefaultSearchBudget);

/// Same search restricted to target storages in [from, to]; nullopt when no
/// valid layout has storage in that interval.
std::optional<SearchResult> search_storage_range(std::size_t n, int k, int m, std::uint64_t from, std::uint64_t to,
                                                 std::uint64_t budget = kDefaultSearchBudget);

/// Calls `visit` for every layout of n sets of size 1..k over m servers with
/// total storage `storage` that survives the relabeling pruning, without any
/// validity pruning. Exposed to test the symmetry reduction.
void enumerate_layouts(std::size_t n, int k, int m, std::uint64_t storage,
                       const std::function<void(const std::vector<ServerSet>&)>& visit);

/// Exact N when known_n pins it; otherwise searches the interval between the
/// certified lower bound and the constructive upper bound. nullopt when the
/// budget runs out.
std::optional<std::uint64_t> settle_gap(std::size_t n, int k, int m, std::uint64_t budget = kDefaultSearchBudget);

}  // namespace cbc
