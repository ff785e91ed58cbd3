#pragma once

// Explicit CBC layouts.
//
// Every construction is deterministic: auxiliary sets and codewords are taken
// in colexicographic order, and partial deletion steps remove the supersets
// whose extra server index is smallest first.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cbc/bounds.hpp"
#include "cbc/core.hpp"
#include "cbc/cwc.hpp"

namespace cbc {

/// Record of a deletion construction.
///
/// Replaying it means: start from `initial`, remove one copy of every set in
/// every deletion (in order), then append the additions in order. Surviving
/// initial sets keep their initial order.
struct ConstructionTrace {
    struct Deletion {
        ServerSet auxiliary = 0;
        std::vector<ServerSet> removed;
    };
    struct Addition {
        ServerSet set = 0;
        std::size_t copies = 0;
    };

    SetSystem initial{1, {}};
    Profile initial_profile;
    std::vector<Deletion> deletions;
    std::vector<Addition> additions;
    SetSystem final_system{1, {}};
};

/// Applies a trace to its initial collection. Throws std::logic_error if a
/// deletion hits a set with no copy left.
SetSystem replay(const ConstructionTrace& trace);

/// One step per line: "del <aux> <superset>" and "add <set> x<copies>", sets
/// written as comma-separated server lists.
std::string serialize(const ConstructionTrace& trace);

/// n <= m: n singletons.
SetSystem construct_trivial(std::size_t n, int k, int m);

/// m = k: k singletons, every further item on all k servers.
SetSystem construct_m_equals_k(std::size_t n, int k);

/// n = m+1: m singletons plus one item on servers 0..k-1.
SetSystem construct_m_plus_1(int k, int m);

/// n >= (k-1)C(m,k-1): k-1 items on each (k-1)-subset, the rest on 0..k-1.
SetSystem construct_large_n(std::size_t n, int k, int m);

/// C(m,k-2) <= n <= (k-1)C(m,k-1), m >= k >= 3. Starts from k-1 copies of
/// every (k-1)-subset; each full step trades one copy of each of the m-k+2
/// supersets of a (k-2)-subset for the (k-2)-subset itself.
/// N = n(k-1) - floor(D/(m-k+1)), D = (k-1)C(m,k-1) - n.
std::pair<SetSystem, ConstructionTrace> construct_range_a(std::size_t n, int k, int m);

/// k >= 5, m >= k, C(m,k-2) - (m-k+1)|code| <= n <= C(m,k-2), code the
/// distance-4 code of weight k-3. Starts from every (k-2)-subset; each full
/// step trades all m-k+3 supersets of a codeword for two copies of it.
/// N = n(k-2) - 2 floor(D/(m-k+1)), D = C(m,k-2) - n.
/// Throws InsufficientCode when the code is too small for n.
std::pair<SetSystem, ConstructionTrace> construct_range_b(std::size_t n, int k, int m);

/// c-uniform layout for floor(k/2) <= c < k-1 <= m-1: k-c-1 copies of every
/// word of a weight-c code with minimum distance 2(k-c-1).
SetSystem construct_uniform(int c, int k, int m);

/// The code construct_uniform(c, k, m) draws its words from: exhaustive
/// greedy, or the residue code when the distance is 4 and it is larger.
ConstantWeightCode uniform_code(int c, int k, int m);

enum class Method { Trivial, MEqualsK, MPlus1, LargeN, RangeA, RangeB, Uniform };
std::string_view method_name(Method method);

struct BestConstruction {
    SetSystem system;
    Method method;
    BoundResult bound;  // upper is filled with the storage of `system`
};

/// Applicable construction with the smallest storage (ties go to the earlier
/// Method). Throws Unsupported when none covers (n, k, m).
BestConstruction construct_best(std::size_t n, int k, int m);

}  // namespace cbc
