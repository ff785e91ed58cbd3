#pragma once

// Validity of a set system as a CBC via the restricted Hall conditions, and
// retrieval plans as systems of distinct representatives.
//
// HC1[k]: any r <= k item sets have a union of at least r servers.
// HC2[k]: any r <= k-1 servers contain at most r item sets.
// Both are equivalent to "every k items can be read with one read per server".

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

/// A server subset T with |T| <= k-1 that contains more than |T| item sets.
struct Hc2Violation {
    ServerSet servers = 0;
    std::size_t contained = 0;
    bool operator==(const Hc2Violation&) const = default;
};

/// Items whose replica sets jointly cover fewer servers than there are items.
struct Hc1Violation {
    std::vector<std::size_t> items;
    ServerSet servers = 0;  // union of the items' replica sets
    bool operator==(const Hc1Violation&) const = default;
};

using Witness = std::variant<Hc2Violation, Hc1Violation>;

struct ValidityReport {
    std::optional<Witness> witness;

    bool valid() const noexcept { return !witness.has_value(); }
};

/// "{0,1} contains 3 items" / "items {0,1} cover only 1 server(s) {0}"
std::string describe(const Witness& w);

struct Assignment {
    std::size_t item = 0;
    int server = 0;
    bool operator==(const Assignment&) const = default;
};

/// One read per server: every assigned server is distinct and holds its item.
struct RetrievalPlan {
    std::vector<Assignment> assignment;
};

/// A subcollection whose union is smaller than its size (Hall deficiency).
/// members index into the collection that was matched.
struct Deficiency {
    std::vector<std::size_t> members;
    ServerSet servers = 0;
};

/// Thrown by plan_batch when the requested items admit no plan. The witness
/// members are item indices of the set system.
class NoPlan : public Error {
public:
    explicit NoPlan(Deficiency witness);
    const Deficiency& witness() const noexcept { return witness_; }

private:
    Deficiency witness_;
};

/// Incremental bipartite matcher between a stack of replica sets and servers
/// (Kuhn's augmenting paths, servers scanned in ascending order).
class Matcher {
public:
    /// Adds a set and tries to extend the matching. On failure the set is not
    /// kept and the returned deficiency lists stack positions.
    std::optional<Deficiency> push(ServerSet set);
    /// Removes the most recently pushed set; the rest stay matched.
    void pop();

    std::size_t size() const noexcept { return sets_.size(); }
    int server_of(std::size_t pos) const { return server_of_.at(pos); }

private:
    bool augment(std::size_t pos, ServerSet& visited, std::vector<std::size_t>& reached);

    std::vector<ServerSet> sets_;
    std::vector<int> server_of_;
    std::array<int, kMaxServers> owner_ = filled_owner();

    static std::array<int, kMaxServers> filled_owner() {
        std::array<int, kMaxServers> a{};
        a.fill(-1);
        return a;
    }
};

/// Maximum matching of the sets to distinct servers. Returns a plan whose
/// item fields are positions in `sets`, or the deficient subcollection found
/// by the failing alternating-path search.
std::variant<RetrievalPlan, Deficiency> find_sdr(std::span<const ServerSet> sets);

/// Number of items whose replica set lies inside `servers`.
std::size_t count_contained(const SetSystem& sys, ServerSet servers);

/// Checks HC2[k] by enumerating server subsets of size 0..k-1. The witness is
/// the first violating subset in size-then-lexicographic order. Throws
/// ParamError unless 1 <= k <= m.
ValidityReport verify_hc2(const SetSystem& sys, int k);

/// Checks HC1[k] by growing every subcollection of at most k items (as
/// multisets of distinct replica sets) on an incremental matcher. Same verdict
/// as verify_hc2; the witness is a deficient item subcollection.
ValidityReport verify_hc1(const SetSystem& sys, int k);

/// Retrieval plan for the requested items. Throws ParamError on repeated or
/// out-of-range indices and NoPlan when no plan exists.
RetrievalPlan plan_batch(const SetSystem& sys, std::span<const std::size_t> request);

}  // namespace cbc
