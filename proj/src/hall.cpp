#include "cbc/hall.hpp"

#include <algorithm>
#include <map>

namespace cbc {

namespace {

void check_batch_size(const SetSystem& sys, int k) {
    if (k < 1 || k > sys.servers()) {
        throw ParamError("batch size k=" + std::to_string(k) + " must be in [1, m=" + std::to_string(sys.servers()) +
                         "]");
    }
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string describe(const Witness& w) {
    if (const auto* h2 = std::get_if<Hc2Violation>(&w)) {
        return format_set(h2->servers) + " contains " + std::to_string(h2->contained) + " items";
    }
    const auto& h1 = std::get<Hc1Violation>(w);
    return "items {" + join_indices(h1.items) + "} are stored only on " + format_set(h1.servers);
}

NoPlan::NoPlan(Deficiency witness)
    : Error("no retrieval plan: items {" + join_indices(witness.members) + "} are stored only on " +
            format_set(witness.servers)),
      witness_(std::move(witness)) {}

std::optional<Deficiency> Matcher::push(ServerSet set) {
    const std::size_t pos = sets_.size();
    sets_.push_back(set);
    server_of_.push_back(-1);
    ServerSet visited = 0;
    std::vector<std::size_t> reached;
    if (augment(pos, visited, reached)) return std::nullopt;
    // A failed search leaves the matching untouched.
    sets_.pop_back();
    server_of_.pop_back();
    std::sort(reached.begin(), reached.end());
    return Deficiency{std::move(reached), visited};
}

void Matcher::pop() {
    if (sets_.empty()) return;
    const int server = server_of_.back();
    if (server >= 0) owner_[static_cast<std::size_t>(server)] = -1;
    sets_.pop_back();
    server_of_.pop_back();
}

bool Matcher::augment(std::size_t pos, ServerSet& visited, std::vector<std::size_t>& reached) {
    reached.push_back(pos);
    for (ServerSet rest = sets_[pos]; rest != 0; rest &= rest - 1) {
        const int server = std::countr_zero(rest);
        const ServerSet bit = ServerSet{1} << server;
        if ((visited & bit) != 0) continue;
        visited |= bit;
        const int owner = owner_[static_cast<std::size_t>(server)];
        if (owner < 0 || augment(static_cast<std::size_t>(owner), visited, reached)) {
            owner_[static_cast<std::size_t>(server)] = static_cast<int>(pos);
            server_of_[pos] = server;
            return true;
        }
    }
    return false;
}

std::variant<RetrievalPlan, Deficiency> find_sdr(std::span<const ServerSet> sets) {
    Matcher matcher;
    for (ServerSet s : sets) {
        if (auto deficiency = matcher.push(s)) return *std::move(deficiency);
    }
    RetrievalPlan plan;
    plan.assignment.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) plan.assignment.push_back({i, matcher.server_of(i)});
    return plan;
}

std::size_t count_contained(const SetSystem& sys, ServerSet servers) {
    return static_cast<std::size_t>(
        std::count_if(sys.items().begin(), sys.items().end(), [&](ServerSet s) { return is_subset(s, servers); }));
}

ValidityReport verify_hc2(const SetSystem& sys, int k) {
    check_batch_size(sys, k);
    const int m = sys.servers();

    // Up to 2^16 servers subsets, tabulate containment counts for all T at once
    // with a subset-sum transform; beyond that count per T.
    std::vector<std::uint32_t> table;
    if (m <= 16) {
        table.assign(std::size_t{1} << m, 0);
        for (ServerSet s : sys.items()) ++table[s];
        for (int b = 0; b < m; ++b) {
            const std::size_t bit = std::size_t{1} << b;
            for (std::size_t t = 0; t < table.size(); ++t) {
                if ((t & bit) != 0) table[t] += table[t ^ bit];
            }
        }
    }
    auto contained = [&](ServerSet t) -> std::size_t {
        return table.empty() ? count_contained(sys, t) : table[t];
    };

    ValidityReport report;
    for (int r = 0; r < k && !report.witness; ++r) {
        for_each_subset_lex(m, r, [&](ServerSet t) {
            const std::size_t c = contained(t);
            if (c > static_cast<std::size_t>(r)) {
                report.witness = Hc2Violation{t, c};
                return false;
            }
            return true;
        });
    }
    return report;
}

namespace {

class Hc1Search {
public:
    Hc1Search(const SetSystem& sys, int k) : limit_(static_cast<std::size_t>(k)) {
        std::map<ServerSet, std::size_t> index;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            auto [it, fresh] = index.try_emplace(sys[i], groups_.size());
            if (fresh) groups_.push_back({sys[i], {}});
            groups_[it->second].items.push_back(i);
        }
        used_.assign(groups_.size(), 0);
    }

    std::optional<Hc1Violation> run() {
        grow(0);
        return std::move(found_);
    }

private:
    struct Group {
        ServerSet set;
        std::vector<std::size_t> items;
    };

    // Every multiset of at most k replica sets is visited once, each one
    // extending its parent by a single augmenting-path search.
    void grow(std::size_t first) {
        if (matcher_.size() == limit_) return;
        for (std::size_t g = first; g < groups_.size(); ++g) {
            if (used_[g] == groups_[g].items.size()) continue;
            const std::size_t item = groups_[g].items[used_[g]];
            if (auto deficiency = matcher_.push(groups_[g].set)) {
                Hc1Violation v;
                v.servers = deficiency->servers;
                for (std::size_t pos : deficiency->members) v.items.push_back(pos < stack_.size() ? stack_[pos] : item);
                std::sort(v.items.begin(), v.items.end());
                found_ = std::move(v);
                return;
            }
            ++used_[g];
            stack_.push_back(item);
            grow(g);
            if (found_) return;
            stack_.pop_back();
            --used_[g];
            matcher_.pop();
        }
    }

    std::size_t limit_;
    std::vector<Group> groups_;
    std::vector<std::size_t> used_;
    std::vector<std::size_t> stack_;
    Matcher matcher_;
    std::optional<Hc1Violation> found_;
};

}  // namespace

ValidityReport verify_hc1(const SetSystem& sys, int k) {
    check_batch_size(sys, k);
    ValidityReport report;
    if (auto violation = Hc1Search(sys, k).run()) report.witness = std::move(*violation);
    return report;
}

RetrievalPlan plan_batch(const SetSystem& sys, std::span<const std::size_t> request) {
    std::vector<ServerSet> sets;
    sets.reserve(request.size());
    std::vector<bool> seen(sys.size(), false);
    for (std::size_t item : request) {
        if (item >= sys.size()) {
            throw ParamError("item " + std::to_string(item) + " out of range (n=" + std::to_string(sys.size()) + ")");
        }
        if (seen[item]) throw ParamError("item " + std::to_string(item) + " requested twice");
        seen[item] = true;
        sets.push_back(sys[item]);
    }
    auto result = find_sdr(sets);
    if (auto* deficiency = std::get_if<Deficiency>(&result)) {
        for (std::size_t& pos : deficiency->members) pos = request[pos];
        std::sort(deficiency->members.begin(), deficiency->members.end());
        throw NoPlan(std::move(*deficiency));
    }
    auto plan = std::get<RetrievalPlan>(std::move(result));
    for (Assignment& a : plan.assignment) a.item = request[a.item];
    return plan;
}

}  // namespace cbc
