#include "cbc/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbc/bounds.hpp"
#include "cbc/construct.hpp"

namespace cbc {

namespace {

ServerSet swap_servers(ServerSet s, int a, int b) {
    const bool has_a = contains(s, a);
    const bool has_b = contains(s, b);
    if (has_a == has_b) return s;
    return s ^ ((ServerSet{1} << a) | (ServerSet{1} << b));
}

class LayoutSearch {
public:
    LayoutSearch(std::size_t n, int k, int m, bool check_hall, std::uint64_t budget)
        : n_(n), k_(k), m_(m), check_hall_(check_hall), budget_(budget) {
        for (int size = 1; size <= k; ++size) {
            for_each_subset_colex(m, size, [&](ServerSet s) { candidates_.push_back(s); });
        }
        std::sort(candidates_.begin(), candidates_.end());
        if (check_hall_) contained_.assign(std::size_t{1} << m, 0);
        for (int a = 0; a < m; ++a) {
            for (int b = a + 1; b < m; ++b) swaps_.emplace_back(a, b);
        }
    }

    /// Runs the enumeration at one storage target. Returns true when `visit`
    /// asked to stop.
    bool run(std::uint64_t storage, const std::function<bool(const std::vector<ServerSet>&)>& visit) {
        visit_ = &visit;
        layout_.clear();
        return grow(0, n_, storage);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    bool grow(std::size_t first, std::size_t items_left, std::uint64_t storage_left) {
        if (items_left == 0) return storage_left == 0 && (*visit_)(layout_);
        if (storage_left < items_left || storage_left > items_left * static_cast<std::uint64_t>(k_)) return false;

        for (std::size_t c = first; c < candidates_.size(); ++c) {
            const ServerSet s = candidates_[c];
            const auto size = static_cast<std::uint64_t>(cardinality(s));
            if (size > storage_left) continue;
            const bool ok = push(s);
            if (ok && !smaller_relabeling() && grow(c, items_left - 1, storage_left - size)) return true;
            pop(s);
        }
        return false;
    }

    // Adds s and reports whether HC2 still holds.
    bool push(ServerSet s) {
        layout_.push_back(s);
        if (!check_hall_) return true;
        if (++nodes_ > budget_) throw BudgetExceeded(budget_, 0);
        bool ok = true;
        const ServerSet full = all_servers(m_);
        for (ServerSet t = s;; t = ((t + 1) | s) & full) {
            const int size = cardinality(t);
            const std::uint32_t count = ++contained_[t];
            if (size < k_ && count > static_cast<std::uint32_t>(size)) ok = false;
            if (t == full) break;
        }
        return ok;
    }

    void pop(ServerSet s) {
        layout_.pop_back();
        if (!check_hall_) return;
        const ServerSet full = all_servers(m_);
        for (ServerSet t = s;; t = ((t + 1) | s) & full) {
            --contained_[t];
            if (t == full) break;
        }
    }

    bool smaller_relabeling() {
        for (const auto& [a, b] : swaps_) {
            scratch_.clear();
            for (ServerSet s : layout_) scratch_.push_back(swap_servers(s, a, b));
            std::sort(scratch_.begin(), scratch_.end());
            if (std::lexicographical_compare(scratch_.begin(), scratch_.end(), layout_.begin(), layout_.end())) {
                return true;
            }
        }
        return false;
    }

    std::size_t n_;
    int k_;
    int m_;
    bool check_hall_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<ServerSet> candidates_;
    std::vector<std::pair<int, int>> swaps_;
    std::vector<std::uint32_t> contained_;
    std::vector<ServerSet> layout_;
    std::vector<ServerSet> scratch_;
    const std::function<bool(const std::vector<ServerSet>&)>* visit_ = nullptr;
};

void check_search_params(std::size_t n, int k, int m) {
    if (m < 1 || m > kMaxSearchServers) throw ParamError("search needs 1 <= m <= 16");
    if (k < 1 || k > m) throw ParamError("search needs 1 <= k <= m");
    if (n < 1) throw ParamError("search needs n >= 1");
}

// Storage of a valid layout known without searching: everything on k servers,
// or a construction when one applies.
std::uint64_t known_upper(std::size_t n, int k, int m) {
    std::uint64_t best = static_cast<std::uint64_t>(k) * n;
    if (k >= 2) {
        try {
            best = std::min(best, total_storage(construct_best(n, k, m).system));
        } catch (const Error&) {
        }
    }
    return best;
}

}  // namespace

std::optional<SearchResult> search_storage_range(std::size_t n, int k, int m, std::uint64_t from, std::uint64_t to,
                                                 std::uint64_t budget) {
    check_search_params(n, k, m);
    LayoutSearch search(n, k, m, true, budget);
    std::optional<SearchResult> found;
    try {
        for (std::uint64_t storage = from; storage <= to && !found; ++storage) {
            search.run(storage, [&](const std::vector<ServerSet>& layout) {
                found = SearchResult{n, k, m, storage, SetSystem(m, layout), 0};
                return true;
            });
        }
    } catch (const BudgetExceeded&) {
        throw BudgetExceeded(budget, known_upper(n, k, m));
    }
    if (found) {
        found->nodes_explored = search.nodes();
        if (!verify_hc2(found->witness, k).valid()) throw std::logic_error("search returned an invalid layout");
    }
    return found;
}

SearchResult search_optimal(std::size_t n, int k, int m, std::uint64_t budget) {
    check_search_params(n, k, m);
    std::uint64_t from = n;
    if (k >= 2) {
        const BigInt top = BigInt(k - 1) * binomial(m, k - 1);
        if (BigInt(n) <= top) from = std::max(BigInt(from), lower_bound(n, k, m).lower).convert_to<std::uint64_t>();
    }
    auto found = search_storage_range(n, k, m, from, static_cast<std::uint64_t>(k) * n, budget);
    // n copies of one k-set always work, so the range above is never empty.
    if (!found) throw std::logic_error("no valid layout up to storage kn");
    return *std::move(found);
}

void enumerate_layouts(std::size_t n, int k, int m, std::uint64_t storage,
                       const std::function<void(const std::vector<ServerSet>&)>& visit) {
    check_search_params(n, k, m);
    LayoutSearch search(n, k, m, false, 0);
    search.run(storage, [&](const std::vector<ServerSet>& layout) {
        visit(layout);
        return false;
    });
}

std::optional<std::uint64_t> settle_gap(std::size_t n, int k, int m, std::uint64_t budget) {
    const BoundResult bound = known_n(Params{BigInt(n), k, m});
    if (bound.exact) return bound.exact->convert_to<std::uint64_t>();
    const auto from = bound.lower.convert_to<std::uint64_t>();
    const std::uint64_t to = bound.upper ? bound.upper->convert_to<std::uint64_t>() : static_cast<std::uint64_t>(k) * n;
    try {
        auto found = search_storage_range(n, k, m, from, to, budget);
        if (found) return found->optimal_storage;
    } catch (const BudgetExceeded&) {
    }
    return std::nullopt;
}

}  // namespace cbc
