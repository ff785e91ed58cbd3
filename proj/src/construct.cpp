#include "cbc/construct.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace cbc {

namespace {

std::string params_text(std::size_t n, int k, int m) {
    return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")";
}

void check_servers(int m) {
    if (m < 1 || m > kMaxServers) throw RangeError("m must be in [1, 64]");
}

std::string comma_list(ServerSet s) {
    std::string out;
    for (int v : elements(s)) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

// Supersets of `base` with one extra server, extra index ascending.
std::vector<ServerSet> one_point_supersets(ServerSet base, int m, std::size_t limit) {
    std::vector<ServerSet> out;
    for (int e = 0; e < m && out.size() < limit; ++e) {
        if (!contains(base, e)) out.push_back(base | (ServerSet{1} << e));
    }
    return out;
}

// Multiset of sets being edited by a deletion construction.
class Collection {
public:
    Collection(int m, std::vector<ServerSet> initial) : m_(m), initial_(std::move(initial)) {
        for (ServerSet s : initial_) ++copies_[s];
        trace_.initial = SetSystem(m, initial_);
    }

    void remove(ServerSet aux, std::vector<ServerSet> sets) {
        for (ServerSet s : sets) {
            auto it = copies_.find(s);
            if (it == copies_.end() || it->second == 0) {
                throw std::logic_error("deletion of " + format_set(s) + " for " + format_set(aux) +
                                       " found no copy left");
            }
            --it->second;
        }
        trace_.deletions.push_back({aux, std::move(sets)});
    }

    void add(ServerSet s, std::size_t copies) { trace_.additions.push_back({s, copies}); }

    std::pair<SetSystem, ConstructionTrace> finish(int k) && {
        std::vector<ServerSet> items;
        for (const auto& [set, count] : copies_) items.insert(items.end(), count, set);
        for (const auto& a : trace_.additions) items.insert(items.end(), a.copies, a.set);
        SetSystem result(m_, std::move(items));
        trace_.initial_profile = profile(trace_.initial, k);
        trace_.final_system = result;
        return {std::move(result), std::move(trace_)};
    }

private:
    int m_;
    std::vector<ServerSet> initial_;
    std::map<ServerSet, std::size_t> copies_;  // numeric order of masks = colex
    ConstructionTrace trace_;
};

std::vector<ServerSet> all_subsets_colex(int m, int r, std::size_t copies) {
    std::vector<ServerSet> out;
    for_each_subset_colex(m, r, [&](ServerSet s) { out.insert(out.end(), copies, s); });
    return out;
}

}  // namespace

SetSystem replay(const ConstructionTrace& trace) {
    std::map<ServerSet, std::size_t> pending;
    std::map<ServerSet, std::size_t> available;
    for (ServerSet s : trace.initial.items()) ++available[s];
    for (const auto& d : trace.deletions) {
        for (ServerSet s : d.removed) {
            if (available[s] == pending[s]) throw std::logic_error("trace deletes a missing copy of " + format_set(s));
            ++pending[s];
        }
    }
    std::vector<ServerSet> items;
    for (ServerSet s : trace.initial.items()) {
        auto it = pending.find(s);
        if (it != pending.end() && it->second > 0) {
            --it->second;
            continue;
        }
        items.push_back(s);
    }
    for (const auto& a : trace.additions) items.insert(items.end(), a.copies, a.set);
    return SetSystem(trace.initial.servers(), std::move(items));
}

std::string serialize(const ConstructionTrace& trace) {
    std::string out;
    for (const auto& d : trace.deletions) {
        for (ServerSet s : d.removed) out += "del " + comma_list(d.auxiliary) + " " + comma_list(s) + "\n";
    }
    for (const auto& a : trace.additions) out += "add " + comma_list(a.set) + " x" + std::to_string(a.copies) + "\n";
    return out;
}

SetSystem construct_trivial(std::size_t n, int k, int m) {
    check_servers(m);
    if (k < 1 || k > m) throw RangeError("trivial layout needs 1 <= k <= m");
    if (n > static_cast<std::size_t>(m)) throw RangeError("trivial layout needs n <= m " + params_text(n, k, m));
    std::vector<ServerSet> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back(ServerSet{1} << i);
    return SetSystem(m, std::move(items));
}

SetSystem construct_m_equals_k(std::size_t n, int k) {
    check_servers(k);
    if (n < static_cast<std::size_t>(k)) throw RangeError("m = k layout needs n >= k");
    std::vector<ServerSet> items;
    for (int i = 0; i < k; ++i) items.push_back(ServerSet{1} << i);
    items.insert(items.end(), n - static_cast<std::size_t>(k), all_servers(k));
    return SetSystem(k, std::move(items));
}

SetSystem construct_m_plus_1(int k, int m) {
    check_servers(m);
    if (k < 2 || k > m) throw RangeError("n = m+1 layout needs 2 <= k <= m");
    std::vector<ServerSet> items;
    for (int i = 0; i < m; ++i) items.push_back(ServerSet{1} << i);
    items.push_back(all_servers(k));
    return SetSystem(m, std::move(items));
}

SetSystem construct_large_n(std::size_t n, int k, int m) {
    check_servers(m);
    if (k < 2 || k > m) throw RangeError("large-n layout needs 2 <= k <= m");
    const BigInt top = BigInt(k - 1) * binomial(m, k - 1);
    if (BigInt(n) < top) throw RangeError("large-n layout needs n >= (k-1)C(m,k-1) " + params_text(n, k, m));
    std::vector<ServerSet> items = all_subsets_colex(m, k - 1, static_cast<std::size_t>(k - 1));
    items.insert(items.end(), n - items.size(), all_servers(k));
    return SetSystem(m, std::move(items));
}

std::pair<SetSystem, ConstructionTrace> construct_range_a(std::size_t n, int k, int m) {
    check_servers(m);
    if (k < 3 || k > m) throw RangeError("deletion layout needs m >= k >= 3");
    const std::uint64_t top = static_cast<std::uint64_t>(k - 1) * binomial_u64(m, k - 1);
    if (n > top || BigInt(n) < binomial(m, k - 2)) {
        throw RangeError("deletion layout needs C(m,k-2) <= n <= (k-1)C(m,k-1) " + params_text(n, k, m));
    }
    const std::uint64_t deficit = top - n;
    const std::uint64_t step = static_cast<std::uint64_t>(m - k + 1);
    const std::uint64_t full_steps = deficit / step;
    const std::uint64_t partial = deficit % step;

    Collection collection(m, all_subsets_colex(m, k - 1, static_cast<std::size_t>(k - 1)));
    std::uint64_t done = 0;
    for_each_subset_colex(m, k - 2, [&](ServerSet aux) {
        if (done < full_steps) {
            collection.remove(aux, one_point_supersets(aux, m, static_cast<std::size_t>(m)));
            collection.add(aux, 1);
        } else if (partial > 0) {
            collection.remove(aux, one_point_supersets(aux, m, partial));
        }
        ++done;
        return done < full_steps + (partial > 0 ? 1 : 0);
    });
    return std::move(collection).finish(k);
}

std::pair<SetSystem, ConstructionTrace> construct_range_b(std::size_t n, int k, int m) {
    check_servers(m);
    if (k < 5 || k > m) throw RangeError("constant-weight layout needs m >= k >= 5");
    const std::uint64_t base = binomial_u64(m, k - 2);
    if (n > base || n < 1) throw RangeError("constant-weight layout needs 1 <= n <= C(m,k-2) " + params_text(n, k, m));
    const std::uint64_t deficit = base - n;
    const std::uint64_t step = static_cast<std::uint64_t>(m - k + 1);
    const std::uint64_t full_steps = deficit / step;
    const std::uint64_t partial = deficit % step;
    const std::uint64_t needed = full_steps + (partial > 0 ? 1 : 0);

    const ConstantWeightCode code = distance4_code(m, k - 3);
    if (code.size() < needed) throw InsufficientCode(code.size(), static_cast<std::size_t>(needed));

    Collection collection(m, all_subsets_colex(m, k - 2, 1));
    for (std::uint64_t i = 0; i < full_steps; ++i) {
        const ServerSet word = code.words[i];
        collection.remove(word, one_point_supersets(word, m, static_cast<std::size_t>(m)));
        collection.add(word, 2);
    }
    if (partial > 0) {
        const ServerSet word = code.words[full_steps];
        collection.remove(word, one_point_supersets(word, m, partial));
    }
    return std::move(collection).finish(k);
}

ConstantWeightCode uniform_code(int c, int k, int m) {
    check_servers(m);
    if (k / 2 < 1 || c < k / 2 || c >= k - 1 || k - 1 > m - 1) {
        throw ParamError("uniform layout needs 1 <= floor(k/2) <= c < k-1 <= m-1, got c=" + std::to_string(c) +
                         ", k=" + std::to_string(k) + ", m=" + std::to_string(m));
    }
    const int d2 = 2 * (k - c - 1);
    ConstantWeightCode code = greedy_code(m, d2, c);
    if (d2 == 4) {
        ConstantWeightCode residue = graham_sloane_d4(m, c);
        if (residue.size() > code.size()) code = std::move(residue);
    }
    return code;
}

SetSystem construct_uniform(int c, int k, int m) {
    const ConstantWeightCode code = uniform_code(c, k, m);
    const auto copies = static_cast<std::size_t>(k - c - 1);
    std::vector<ServerSet> items;
    items.reserve(code.size() * copies);
    for (ServerSet w : code.words) items.insert(items.end(), copies, w);
    return SetSystem(m, std::move(items));
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Trivial: return "trivial";
        case Method::MEqualsK: return "m_equals_k";
        case Method::MPlus1: return "m_plus_1";
        case Method::LargeN: return "large_n";
        case Method::RangeA: return "range_a";
        case Method::RangeB: return "range_b";
        case Method::Uniform: return "uniform";
    }
    return "unknown";
}

BestConstruction construct_best(std::size_t n, int k, int m) {
    check_servers(m);
    if (k < 2 || k > m) throw ParamError("need 2 <= k <= m");
    if (n < 1) throw ParamError("n must be positive");

    const BigInt big_n(n);
    const BigInt top = BigInt(k - 1) * binomial(m, k - 1);
    const auto nk = static_cast<std::uint64_t>(n);
    const auto kk = static_cast<std::uint64_t>(k);

    struct Candidate {
        Method method;
        SetSystem system;
        std::uint64_t formula;
    };
    std::vector<Candidate> candidates;

    if (n <= static_cast<std::size_t>(m)) {
        candidates.push_back({Method::Trivial, construct_trivial(n, k, m), nk});
    }
    if (m == k && n >= static_cast<std::size_t>(k)) {
        candidates.push_back({Method::MEqualsK, construct_m_equals_k(n, k), kk * nk - kk * (kk - 1)});
    }
    if (n == static_cast<std::size_t>(m) + 1) {
        candidates.push_back({Method::MPlus1, construct_m_plus_1(k, m), static_cast<std::uint64_t>(m + k)});
    }
    if (big_n >= top) {
        const auto t = top.convert_to<std::uint64_t>();
        candidates.push_back({Method::LargeN, construct_large_n(n, k, m), kk * nk - t});
    }
    if (k >= 3 && big_n >= binomial(m, k - 2) && big_n <= top) {
        const auto t = top.convert_to<std::uint64_t>();
        const std::uint64_t formula = nk * (kk - 1) - (t - nk) / static_cast<std::uint64_t>(m - k + 1);
        candidates.push_back({Method::RangeA, construct_range_a(n, k, m).first, formula});
    }
    if (k >= 5) {
        const BigInt base = binomial(m, k - 2);
        const BigInt step = m - k + 1;
        if (big_n <= base && big_n >= base - step * distance4_code_size(m, k - 3)) {
            const auto deficit = (base - big_n).convert_to<std::uint64_t>();
            const auto q = step.convert_to<std::uint64_t>();
            const std::uint64_t formula = nk * (kk - 2) - 2 * (deficit / q);
            candidates.push_back({Method::RangeB, construct_range_b(n, k, m).first, formula});
        }
    }
    for (int c = std::max(1, k / 2); c < k - 1 && k - 1 <= m - 1; ++c) {
        if (binomial(m, c) > kGreedyScanLimit) continue;
        const std::size_t copies = static_cast<std::size_t>(k - c - 1);
        if (uniform_code(c, k, m).size() * copies == n) {
            candidates.push_back({Method::Uniform, construct_uniform(c, k, m), static_cast<std::uint64_t>(c) * nk});
        }
    }

    if (candidates.empty()) {
        std::string gap = "no construction covers " + params_text(n, k, m);
        if (n == static_cast<std::size_t>(m) + 2) {
            gap += ": n = m+2 has a known optimum but no layout";
        } else if (k >= 3) {
            gap += ": m+1 < n < C(m,k-2) lies below the deletion range";
            if (k >= 5) gap += " and outside the constant-weight range";
        }
        throw Unsupported(gap);
    }

    const auto best = std::min_element(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return total_storage(a.system) < total_storage(b.system);
    });
    for (const auto& cand : candidates) {
        if (total_storage(cand.system) != cand.formula) {
            throw std::logic_error(std::string(method_name(cand.method)) + " storage " +
                                   std::to_string(total_storage(cand.system)) + " differs from its formula " +
                                   std::to_string(cand.formula));
        }
    }

    BoundResult bound = known_n(Params{big_n, k, m});
    const BigInt storage = total_storage(best->system);
    if (storage < bound.lower) throw std::logic_error("construction beats the lower bound " + params_text(n, k, m));
    if (bound.exact && best->method != Method::Uniform && storage != *bound.exact) {
        throw std::logic_error("construction misses the exact optimum " + params_text(n, k, m));
    }
    if (!bound.upper || storage < *bound.upper) bound.upper = storage;
    return {best->system, best->method, std::move(bound)};
}

}  // namespace cbc
