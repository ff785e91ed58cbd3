#pragma once

// Set-system model of a combinatorial batch code.
//
// A CBC storing n items on m servers is represented by its dual set system:
// one server subset per item (the servers holding a replica of it). Subsets
// are bit masks over server indices 0..m-1, so m is limited to 64.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cbc/error.hpp"

namespace cbc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using ServerSet = std::uint64_t;
inline constexpr int kMaxServers = 64;

constexpr ServerSet all_servers(int m) noexcept {
    return m >= kMaxServers ? ~ServerSet{0} : (ServerSet{1} << m) - 1;
}
constexpr int cardinality(ServerSet s) noexcept { return std::popcount(s); }
constexpr bool is_subset(ServerSet a, ServerSet b) noexcept { return (a & ~b) == 0; }
constexpr bool contains(ServerSet s, int server) noexcept { return ((s >> server) & 1U) != 0; }

ServerSet make_set(std::initializer_list<int> servers);
std::vector<int> elements(ServerSet s);
/// "{0,2,5}"
std::string format_set(ServerSet s);

/// The r-subset of {0..m-1} that comes first in both lex and colex order.
constexpr ServerSet first_subset(int r) noexcept { return all_servers(r); }

/// Successor of s among subsets of equal cardinality in colexicographic order,
/// which is plain numeric order of the masks. Returns 0 past the last subset
/// of {0..m-1}.
ServerSet next_colex(ServerSet s, int m) noexcept;

namespace detail {
template <class F>
bool invoke_visit(F& f, ServerSet s) {
    if constexpr (std::is_same_v<decltype(f(s)), bool>) {
        return f(s);
    } else {
        f(s);
        return true;
    }
}
}  // namespace detail

/// Calls f(mask) for every r-subset of {0..m-1} in colexicographic order.
/// f may return false to stop early; the return value tells whether the scan
/// ran to completion.
template <class F>
bool for_each_subset_colex(int m, int r, F&& f) {
    if (r < 0 || r > m) return true;
    if (r == 0) return detail::invoke_visit(f, ServerSet{0});
    for (ServerSet s = first_subset(r); s != 0; s = next_colex(s, m)) {
        if (!detail::invoke_visit(f, s)) return false;
    }
    return true;
}

/// Same as for_each_subset_colex but in lexicographic order of the sorted
/// element lists: {0,1,2}, {0,1,3}, ..., {0,2,3}, ...
template <class F>
bool for_each_subset_lex(int m, int r, F&& f) {
    if (r < 0 || r > m) return true;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        ServerSet s = 0;
        for (int v : idx) s |= ServerSet{1} << v;
        if (!detail::invoke_visit(f, s)) return false;
        int i = r - 1;
        while (i >= 0 && idx[i] == m - r + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Exact binomial coefficient; zero when r < 0 or r > n.
BigInt binomial(int n, int r);
/// Binomial coefficient as a 64-bit value; throws RangeError on overflow.
std::uint64_t binomial_u64(int n, int r);

/// floor(q) and ceil(q) of an exact rational.
BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// The dual set system (S, X) of a CBC: m servers and an ordered list of
/// item replica sets. Duplicates are allowed. Immutable once built.
class SetSystem {
public:
    /// Throws ParamError unless 1 <= m <= 64 and every item is a non-empty
    /// subset of {0..m-1}.
    SetSystem(int servers, std::vector<ServerSet> items);

    int servers() const noexcept { return servers_; }
    std::size_t size() const noexcept { return items_.size(); }
    const std::vector<ServerSet>& items() const noexcept { return items_; }
    ServerSet operator[](std::size_t i) const { return items_.at(i); }

    bool operator==(const SetSystem&) const = default;

private:
    int servers_;
    std::vector<ServerSet> items_;
};

/// Cardinality profile A_1..A_k of a set system.
struct Profile {
    int k = 0;
    /// counts[j-1] is the number of items stored on exactly j servers.
    std::vector<std::uint64_t> counts;

    std::uint64_t count(int j) const { return (j >= 1 && j <= k) ? counts[j - 1] : 0; }
    std::uint64_t items() const noexcept;

    bool operator==(const Profile&) const = default;
};

/// Problem parameters: n items, batch size k, m servers.
struct Params {
    BigInt n;
    int k = 0;
    int m = 0;
};

/// Total storage N: the sum of replica-set sizes.
std::uint64_t total_storage(const SetSystem& sys) noexcept;

/// Throws OversizedSet if some item has more than k servers.
Profile profile(const SetSystem& sys, int k);

/// Replaces every replica set larger than k by its lexicographically least
/// k-subset (its k lowest servers). Preserves validity at batch size k.
SetSystem truncate_to_k(const SetSystem& sys, int k);

/// Line-oriented text format:
///     cbc m=<m> n=<n>
///     <item>: <server> <server> ...
/// servers ascending, zero-based, LF line endings.
std::string serialize(const SetSystem& sys);
SetSystem parse(std::string_view text);

}  // namespace cbc
