#pragma once

// Closed-form quantities for combinatorial batch codes: the counting
// inequalities every valid CBC satisfies, the lower bound on total storage
// derived from them, and the known exact values of the optimal storage
// N(n, k, m) in the regimes where constructions meet the bound.
//
// All arithmetic is exact. Floors are applied only where the bound itself
// takes them.

#include <optional>
#include <string_view>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

/// Regimes in which N(n, k, m) is known or bounded.
enum class Regime {
    Trivial,        ///< n <= m: one item per server, N = n
    SquareLayout,   ///< m = k: k singletons, the rest on every server, N = kn - k(k-1)
    OneExtraItem,   ///< n = m+1: N = m + k
    TwoExtraItems,  ///< n = m+2: closed form, no layout provided
    Saturated,      ///< n >= (k-1)C(m,k-1): N = kn - (k-1)C(m,k-1)
    DeletionRange,  ///< C(m,k-2) <= n <= (k-1)C(m,k-1), k >= 3
    CodeRange,      ///< k >= 5, below C(m,k-2) by at most (m-k+1)|distance-4 code|
    CountingBound,  ///< the general lower bound
};

std::string_view regime_name(Regime r);

struct BoundResult {
    /// Certified lower bound on N(n, k, m).
    BigInt lower;
    /// N(n, k, m) when a regime pins it.
    std::optional<BigInt> exact;
    /// Storage of a known construction.
    std::optional<BigInt> upper;
    /// Regimes that contributed, most specific first.
    std::vector<Regime> sources;
    /// The c at which the counting bound was evaluated, in [1, k-1].
    int chosen_c = 0;
};

/// U_{m,k,c} = (k-1) C(m,c) / C(k-1,c). Requires 1 <= c <= k-1 <= m-1.
Rational u_value(int m, int k, int c);

/// The i-th counting inequality for a cardinality profile:
///     sum_{j=1..i} C(m-j, i-j) A_j <= i C(m,i).
/// Requires 1 <= i <= p.k - 1.
bool check_inequality(const Profile& p, int m, int i);

/// b(n,k,m,c) = nc - (k-c)(U_{m,k,c} - n)/(m-k+1). Requires 1 <= c <= k-1 < m.
Rational b_value(const BigInt& n, int k, int m, int c);

/// b(n,k,m,c) + (k-c)(m-k)/(m-k+1) * A_k: the storage every valid CBC with
/// sets of size at most k and `full_sets` k-sets must reach, for any c.
Rational storage_bound_with_full_sets(const BigInt& n, int k, int m, int c, const BigInt& full_sets);

/// Counting lower bound nc - floor((k-c)(U_{m,k,c} - n)/(m-k+1)), c the least
/// value with n <= U_{m,k,c}. Requires 2 <= k <= m and 1 <= n; throws
/// RangeError when n > (k-1)C(m,k-1).
BoundResult lower_bound(const BigInt& n, int k, int m);

/// Every regime that applies to (n, k, m), cross-checked: when two regimes
/// pin N they must agree, and the counting bound must not exceed it.
/// Requires 2 <= k <= m and n >= 1.
BoundResult known_n(const Params& params);

/// Largest possible n of a c-uniform CBC: U_{m,k,c}. Requires 1 <= c <= k-1.
Rational uniform_n_ceiling(int m, int c, int k);

/// Guaranteed size of a length-m, weight-w code with minimum distance d2:
/// C(m,w)/m for d2 = 4, C(m,w)/q^(d2/2-1) otherwise, q the least prime power
/// >= m. d2 must be even and at least 2.
Rational cwc_lower_bound(int m, int d2, int w);

std::uint64_t least_prime_power_at_least(std::uint64_t x);

}  // namespace cbc
