#pragma once

// Slow reference implementations used to cross-check the library. None of
// these call into the library's algorithms; they only share the SetSystem type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cbc/core.hpp"

namespace oracle {

using cbc::ServerSet;
using cbc::SetSystem;
using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

inline Z choose(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    Z out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

inline std::int64_t choose64(int n, int r) { return choose(n, r).convert_to<std::int64_t>(); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline int popcount(ServerSet s) {
    int c = 0;
    for (; s; s &= s - 1) ++c;
    return c;
}

inline std::vector<int> members(ServerSet s) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i) {
        if ((s >> i) & 1U) out.push_back(i);
    }
    return out;
}

/// Does some choice of one server per set use every server at most once?
/// Tries every assignment function.
inline bool has_sdr_brute(const std::vector<ServerSet>& sets) {
    std::vector<std::vector<int>> options;
    for (ServerSet s : sets) options.push_back(members(s));
    std::vector<std::size_t> pick(sets.size(), 0);
    for (const auto& o : options) {
        if (o.empty()) return false;
    }
    while (true) {
        std::uint64_t used = 0;
        bool distinct = true;
        for (std::size_t i = 0; i < sets.size() && distinct; ++i) {
            const std::uint64_t bit = std::uint64_t{1} << options[i][pick[i]];
            distinct = (used & bit) == 0;
            used |= bit;
        }
        if (distinct) return true;
        std::size_t i = 0;
        while (i < sets.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == sets.size()) return false;
    }
}

/// Every min(k, n)-subset of items admits an SDR.
inline bool valid_brute(const SetSystem& sys, int k) {
    const std::size_t n = sys.size();
    const std::size_t r = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
        std::vector<ServerSet> sets;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) sets.push_back(sys[i]);
        }
        if (!has_sdr_brute(sets)) return false;
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    return true;
}

/// Direct HC2 count over every server subset below size k.
inline bool hc2_direct(const SetSystem& sys, int k) {
    const int m = sys.servers();
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
        const int size = popcount(t);
        if (size >= k) continue;
        int contained = 0;
        for (ServerSet s : sys.items()) contained += (s & ~t) == 0;
        if (contained > size) return false;
    }
    return true;
}

inline std::uint64_t storage(const SetSystem& sys) {
    std::uint64_t total = 0;
    for (ServerSet s : sys.items()) total += static_cast<std::uint64_t>(popcount(s));
    return total;
}

/// Items stored on exactly j servers.
inline std::uint64_t count_of_size(const SetSystem& sys, int j) {
    std::uint64_t c = 0;
    for (ServerSet s : sys.items()) c += popcount(s) == j;
    return c;
}

inline Q u_value(int m, int k, int c) { return Q(Z(k - 1) * choose(m, c)) / choose(k - 1, c); }

/// nc - (k-c)(U-n)/(m-k+1) + (k-c)(m-k)/(m-k+1) * A_k, the per-system storage floor.
inline Q storage_floor(std::int64_t n, int k, int m, int c, std::uint64_t full_sets) {
    const Q denom = m - k + 1;
    return Q(n * c) - Q(k - c) * (u_value(m, k, c) - n) / denom + Q(k - c) * Q(m - k) / denom * Q(full_sets);
}

/// Least c in [1, k-1] with n <= U_{m,k,c}, then nc - floor((k-c)(U-n)/(m-k+1)).
inline std::int64_t counting_bound(std::int64_t n, int k, int m) {
    for (int c = 1; c <= k - 1; ++c) {
        const Q u = u_value(m, k, c);
        if (Q(n) <= u) {
            const Q slack = Q(k - c) * (u - n) / Q(m - k + 1);
            Z fl = boost::multiprecision::numerator(slack) / boost::multiprecision::denominator(slack);
            return n * c - fl.convert_to<std::int64_t>();
        }
    }
    return -1;
}

inline std::int64_t deletion_formula(std::int64_t n, int k, int m) {
    const std::int64_t d = (k - 1) * choose64(m, k - 1) - n;
    return n * (k - 1) - floor_div(d, m - k + 1);
}

inline std::int64_t code_formula(std::int64_t n, int k, int m) {
    const std::int64_t d = choose64(m, k - 2) - n;
    return n * (k - 2) - 2 * floor_div(d, m - k + 1);
}

inline std::int64_t isqrt_ceil(std::int64_t x) {
    std::int64_t r = 0;
    while (r * r < x) ++r;
    return r;
}

/// Exact N for the small regimes, straight from their closed forms; -1 when
/// none applies.
inline std::int64_t small_regime_value(std::int64_t n, int k, int m) {
    if (n <= m) return n;
    if (m == k) return k * n - k * (k - 1);
    if (n == m + 1) return m + k;
    if (n == m + 2) {
        const std::int64_t spare = m + 1 - k;
        if (spare >= isqrt_ceil(k + 1)) return m + k - 2 + isqrt_ceil(4 * (k + 1));
        return 2 * m - 2 + 1 + (k + 1 + spare - 1) / spare;
    }
    return -1;
}

namespace detail {

struct Row {
    std::vector<int> servers;  // 1-based
    int copies;
};

inline SetSystem from_rows(int m, const std::vector<Row>& rows) {
    std::vector<ServerSet> items;
    for (const Row& r : rows) {
        ServerSet s = 0;
        for (int v : r.servers) s |= ServerSet{1} << (v - 1);
        for (int c = 0; c < r.copies; ++c) items.push_back(s);
    }
    return SetSystem(m, items);
}

}  // namespace detail

/// Layout for (n, k, m) = (43, 4, 6), servers written 1-based: three copies of
/// every 3-subset, full steps on {1,2} {2,3} {3,4} {4,5} {5,6}, then a partial
/// step on {1,6} removing {1,2,6} and {1,3,6}. Entered by hand.
inline SetSystem example_43_4_6() {
    return detail::from_rows(6, {
        {{1, 2, 3}, 1}, {{1, 2, 4}, 2}, {{1, 2, 5}, 2}, {{1, 2, 6}, 1}, {{1, 3, 4}, 2}, {{1, 3, 5}, 3},
        {{1, 3, 6}, 2}, {{1, 4, 5}, 2}, {{1, 4, 6}, 3}, {{1, 5, 6}, 2}, {{2, 3, 4}, 1}, {{2, 3, 5}, 2},
        {{2, 3, 6}, 2}, {{2, 4, 5}, 2}, {{2, 4, 6}, 3}, {{2, 5, 6}, 2}, {{3, 4, 5}, 1}, {{3, 4, 6}, 2},
        {{3, 5, 6}, 2}, {{4, 5, 6}, 1}, {{1, 2}, 1},    {{2, 3}, 1},    {{3, 4}, 1},    {{4, 5}, 1},
        {{5, 6}, 1},
    });
}

/// Same profile and storage as example_43_4_6 with {2,4,5} dropped and one
/// extra copy each of {1,2,6} and {2,5,6}. {2,5,6} then holds four items, so
/// it is invalid at k = 4.
inline SetSystem example_43_4_6_variant() {
    return detail::from_rows(6, {
        {{1, 2, 3}, 1}, {{1, 2, 4}, 2}, {{1, 2, 5}, 2}, {{1, 2, 6}, 2}, {{1, 3, 4}, 2}, {{1, 3, 5}, 3},
        {{1, 3, 6}, 2}, {{1, 4, 5}, 2}, {{1, 4, 6}, 3}, {{1, 5, 6}, 2}, {{2, 3, 4}, 1}, {{2, 3, 5}, 2},
        {{2, 3, 6}, 2}, {{2, 4, 6}, 3}, {{2, 5, 6}, 3}, {{3, 4, 5}, 1}, {{3, 4, 6}, 2}, {{3, 5, 6}, 2},
        {{4, 5, 6}, 1}, {{1, 2}, 1},    {{2, 3}, 1},    {{3, 4}, 1},    {{4, 5}, 1},    {{5, 6}, 1},
    });
}

/// n non-empty sets of size at most max_size over m servers.
inline SetSystem random_system(std::mt19937_64& rng, int m, std::size_t n, int max_size) {
    std::uniform_int_distribution<int> size_dist(1, std::min(max_size, m));
    std::vector<int> servers(static_cast<std::size_t>(m));
    std::iota(servers.begin(), servers.end(), 0);
    std::vector<ServerSet> items;
    for (std::size_t i = 0; i < n; ++i) {
        std::shuffle(servers.begin(), servers.end(), rng);
        ServerSet s = 0;
        const int size = size_dist(rng);
        for (int j = 0; j < size; ++j) s |= ServerSet{1} << servers[static_cast<std::size_t>(j)];
        items.push_back(s);
    }
    return SetSystem(m, items);
}

/// Least sorted image of a layout over all m! server relabelings.
inline std::vector<ServerSet> canonical_form(const std::vector<ServerSet>& layout, int m) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<ServerSet> best;
    do {
        std::vector<ServerSet> image;
        for (ServerSet s : layout) {
            ServerSet t = 0;
            for (int v : members(s)) t |= ServerSet{1} << perm[static_cast<std::size_t>(v)];
            image.push_back(t);
        }
        std::sort(image.begin(), image.end());
        if (best.empty() || image < best) best = image;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Relabeling classes of multisets of n non-empty subsets of size <= k over
/// m servers with total size `storage`, found by listing every multiset.
inline std::set<std::vector<ServerSet>> orbit_classes(std::size_t n, int k, int m, std::uint64_t storage) {
    std::vector<ServerSet> candidates;
    for (ServerSet s = 1; s < (ServerSet{1} << m); ++s) {
        if (popcount(s) <= k) candidates.push_back(s);
    }
    std::set<std::vector<ServerSet>> classes;
    std::vector<ServerSet> current;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t first, std::uint64_t used) {
        if (current.size() == n) {
            if (used == storage) classes.insert(canonical_form(current, m));
            return;
        }
        for (std::size_t c = first; c < candidates.size(); ++c) {
            current.push_back(candidates[c]);
            rec(c, used + static_cast<std::uint64_t>(popcount(candidates[c])));
            current.pop_back();
        }
    };
    rec(0, 0);
    return classes;
}

}  // namespace oracle
