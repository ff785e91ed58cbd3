#include "cbc/cwc.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "text.hpp"

namespace cbc {

namespace {

void check_length_weight(int m, int w) {
    if (m < 1 || m > kMaxServers) throw ParamError("code length must be in [1, 64]");
    if (w < 1 || w > m) throw ParamError("weight must be in [1, m]");
}

void check_distance(int d2) {
    if (d2 < 2 || d2 % 2 != 0) throw ParamError("distance must be even and at least 2");
}

int element_sum_mod(ServerSet s, int m) {
    int sum = 0;
    for (; s != 0; s &= s - 1) sum = (sum + std::countr_zero(s)) % m;
    return sum;
}

// Residue with the most w-subsets of Z_m, smallest residue on ties, and the
// size of its class. Counts subsets by (weight, sum mod m) one element at a time.
std::pair<int, std::uint64_t> largest_residue_class(int m, int w) {
    std::vector<std::vector<std::uint64_t>> ways(static_cast<std::size_t>(w + 1),
                                                 std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0));
    ways[0][0] = 1;
    for (int e = 0; e < m; ++e) {
        for (int size = std::min(w, e + 1); size >= 1; --size) {
            for (int r = 0; r < m; ++r) {
                ways[size][(r + e) % m] += ways[size - 1][r];
            }
        }
    }
    const auto& row = ways[static_cast<std::size_t>(w)];
    const auto best = std::max_element(row.begin(), row.end());
    return {static_cast<int>(best - row.begin()), *best};
}

ConstantWeightCode greedy_scan(int m, int d2, int w, std::size_t target) {
    ConstantWeightCode code{m, w, d2, {}};
    if (target == 0) return code;
    for_each_subset_colex(m, w, [&](ServerSet s) {
        for (ServerSet kept : code.words) {
            if (word_distance(s, kept) < d2) return true;
        }
        code.words.push_back(s);
        return code.words.size() < target;
    });
    return code;
}

}  // namespace

ConstantWeightCode graham_sloane_d4(int m, int w) {
    check_length_weight(m, w);
    const int residue = largest_residue_class(m, w).first;
    ConstantWeightCode code{m, w, 4, {}};
    for_each_subset_colex(m, w, [&](ServerSet s) {
        if (element_sum_mod(s, m) == residue) code.words.push_back(s);
    });
    return code;
}

std::uint64_t graham_sloane_d4_size(int m, int w) {
    check_length_weight(m, w);
    return largest_residue_class(m, w).second;
}

ConstantWeightCode greedy_code(int m, int d2, int w, std::size_t target) {
    check_length_weight(m, w);
    check_distance(d2);
    ConstantWeightCode code = greedy_scan(m, d2, w, target);
    if (code.size() < target) throw InsufficientCode(code.size(), target);
    return code;
}

ConstantWeightCode greedy_code(int m, int d2, int w) {
    check_length_weight(m, w);
    check_distance(d2);
    return greedy_scan(m, d2, w, std::numeric_limits<std::size_t>::max());
}

int min_distance(const ConstantWeightCode& code) {
    if (code.words.size() < 2) throw ParamError("minimum distance needs at least two words");
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < code.words.size(); ++i) {
        for (std::size_t j = i + 1; j < code.words.size(); ++j) {
            best = std::min(best, word_distance(code.words[i], code.words[j]));
        }
    }
    return best;
}

namespace {

bool greedy_in_reach(int m, int w) { return binomial(m, w) <= kGreedyScanLimit; }

}  // namespace

ConstantWeightCode distance4_code(int m, int w) {
    ConstantWeightCode code = graham_sloane_d4(m, w);
    if (greedy_in_reach(m, w)) {
        ConstantWeightCode greedy = greedy_code(m, 4, w);
        if (greedy.size() > code.size()) code = std::move(greedy);
    }
    return code;
}

std::uint64_t distance4_code_size(int m, int w) {
    std::uint64_t size = graham_sloane_d4_size(m, w);
    if (greedy_in_reach(m, w)) size = std::max<std::uint64_t>(size, greedy_code(m, 4, w).size());
    return size;
}

std::string serialize(const ConstantWeightCode& code) {
    std::string out = "cwc m=" + std::to_string(code.length) + " w=" + std::to_string(code.weight) +
                      " d=" + std::to_string(code.distance) + " size=" + std::to_string(code.size()) + "\n";
    for (std::size_t i = 0; i < code.words.size(); ++i) {
        out += std::to_string(i);
        out += ':';
        for (int v : elements(code.words[i])) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

ConstantWeightCode parse_code(std::string_view input) {
    using Kind = ParseError::Kind;
    using text::parse_number;

    const auto lines = text::split_lines(input);
    if (lines.empty()) throw ParseError(Kind::MalformedHeader, 1, "missing header");
    const auto header = text::split_words(lines[0]);
    ConstantWeightCode code;
    std::size_t size = 0;
    const std::array<std::string_view, 4> keys{"m=", "w=", "d=", "size="};
    bool ok = header.size() == 5 && header[0] == "cwc";
    for (std::size_t i = 0; ok && i < keys.size(); ++i) {
        const std::string_view word = header[i + 1];
        ok = word.substr(0, keys[i].size()) == keys[i];
        if (!ok) break;
        const std::string_view value = word.substr(keys[i].size());
        switch (i) {
            case 0: ok = parse_number(value, code.length); break;
            case 1: ok = parse_number(value, code.weight); break;
            case 2: ok = parse_number(value, code.distance); break;
            default: ok = parse_number(value, size); break;
        }
    }
    if (!ok) throw ParseError(Kind::MalformedHeader, 1, "expected 'cwc m=<m> w=<w> d=<d2> size=<n>'");
    if (code.length < 1 || code.length > kMaxServers || code.weight < 1 || code.weight > code.length ||
        code.distance < 2 || code.distance % 2 != 0) {
        throw ParseError(Kind::MalformedHeader, 1, "code parameters out of range");
    }
    if (lines.size() - 1 != size) {
        throw ParseError(Kind::ItemCountMismatch, 1,
                         "header declares " + std::to_string(size) + " words, found " +
                             std::to_string(lines.size() - 1));
    }
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t lineno = i + 2;
        const std::string_view line = lines[i + 1];
        const auto colon = line.find(':');
        std::size_t index = 0;
        if (colon == std::string_view::npos || !parse_number(line.substr(0, colon), index) || index != i) {
            throw ParseError(Kind::MalformedLine, lineno, "expected '" + std::to_string(i) + ": <elements>'");
        }
        ServerSet word = 0;
        for (std::string_view token : text::split_words(line.substr(colon + 1))) {
            int e = 0;
            if (!parse_number(token, e)) throw ParseError(Kind::MalformedLine, lineno, "bad element");
            if (e < 0 || e >= code.length) throw ParseError(Kind::ServerIndexOutOfRange, lineno, "element out of range");
            word |= ServerSet{1} << e;
        }
        if (word == 0) throw ParseError(Kind::EmptyItemSet, lineno, "empty word");
        if (cardinality(word) != code.weight) throw ParseError(Kind::MalformedLine, lineno, "word has wrong weight");
        for (ServerSet other : code.words) {
            if (word_distance(word, other) < code.distance) {
                throw ParseError(Kind::MalformedLine, lineno, "word closer than the declared distance");
            }
        }
        code.words.push_back(word);
    }
    return code;
}

}  // namespace cbc
