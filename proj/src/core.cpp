#include "cbc/core.hpp"

#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace cbc {

ServerSet make_set(std::initializer_list<int> servers) {
    ServerSet s = 0;
    for (int v : servers) {
        if (v < 0 || v >= kMaxServers) throw ParamError("server index " + std::to_string(v) + " out of range");
        s |= ServerSet{1} << v;
    }
    return s;
}

std::vector<int> elements(ServerSet s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cardinality(s)));
    while (s != 0) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

std::string format_set(ServerSet s) {
    std::string out = "{";
    bool first = true;
    for (int v : elements(s)) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    }
    out += '}';
    return out;
}

ServerSet next_colex(ServerSet s, int m) noexcept {
    if (s == 0) return 0;
    const ServerSet low = s & (~s + 1);
    const ServerSet ripple = s + low;
    if (ripple == 0) return 0;  // wrapped past bit 63
    const ServerSet next = (((ripple ^ s) >> 2) / low) | ripple;
    return is_subset(next, all_servers(m)) ? next : 0;
}

BigInt binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc *= n - r + i;
        acc /= i;
    }
    return acc;
}

std::uint64_t binomial_u64(int n, int r) {
    const BigInt b = binomial(n, r);
    if (b > std::numeric_limits<std::uint64_t>::max()) {
        throw RangeError("C(" + std::to_string(n) + "," + std::to_string(r) + ") exceeds 64 bits");
    }
    return b.convert_to<std::uint64_t>();
}

BigInt floor_of(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;
    if (num % den != 0 && num < 0) quot -= 1;
    return quot;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

std::string to_string(const Rational& q) {
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

SetSystem::SetSystem(int servers, std::vector<ServerSet> items) : servers_(servers), items_(std::move(items)) {
    if (servers_ < 1 || servers_ > kMaxServers) {
        throw ParamError("server count must be in [1, 64], got " + std::to_string(servers_));
    }
    const ServerSet universe = all_servers(servers_);
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i] == 0) throw ParamError("item " + std::to_string(i) + " has an empty replica set");
        if (!is_subset(items_[i], universe)) {
            throw ParamError("item " + std::to_string(i) + " uses a server index >= " + std::to_string(servers_));
        }
    }
}

std::uint64_t Profile::items() const noexcept {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

std::uint64_t total_storage(const SetSystem& sys) noexcept {
    std::uint64_t total = 0;
    for (ServerSet s : sys.items()) total += static_cast<std::uint64_t>(cardinality(s));
    return total;
}

Profile profile(const SetSystem& sys, int k) {
    if (k < 1) throw ParamError("batch size must be positive");
    Profile p{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0)};
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const int size = cardinality(sys[i]);
        if (size > k) {
            throw OversizedSet("item " + std::to_string(i) + " is stored on " + std::to_string(size) +
                               " servers, more than k=" + std::to_string(k));
        }
        ++p.counts[static_cast<std::size_t>(size - 1)];
    }
    return p;
}

SetSystem truncate_to_k(const SetSystem& sys, int k) {
    if (k < 1) throw ParamError("batch size must be positive");
    std::vector<ServerSet> items = sys.items();
    for (ServerSet& s : items) {
        while (cardinality(s) > k) s &= ~(ServerSet{1} << (63 - std::countl_zero(s)));
    }
    return SetSystem(sys.servers(), std::move(items));
}

std::string serialize(const SetSystem& sys) {
    std::string out = "cbc m=" + std::to_string(sys.servers()) + " n=" + std::to_string(sys.size()) + "\n";
    for (std::size_t i = 0; i < sys.size(); ++i) {
        out += std::to_string(i);
        out += ':';
        for (int v : elements(sys[i])) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

namespace {

using Kind = ParseError::Kind;
using text::parse_number;
using text::split_lines;
using text::split_words;

}  // namespace

SetSystem parse(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(Kind::MalformedHeader, 1, "missing header");

    const auto header = split_words(lines[0]);
    int m = 0;
    std::size_t n = 0;
    if (header.size() != 3 || header[0] != "cbc" || header[1].substr(0, 2) != "m=" ||
        header[2].substr(0, 2) != "n=" || !parse_number(header[1].substr(2), m) ||
        !parse_number(header[2].substr(2), n)) {
        throw ParseError(Kind::MalformedHeader, 1, "expected 'cbc m=<m> n=<n>'");
    }
    if (m < 1 || m > kMaxServers) throw ParseError(Kind::MalformedHeader, 1, "m must be in [1, 64]");
    if (lines.size() - 1 != n) {
        throw ParseError(Kind::ItemCountMismatch, 1,
                         "header declares " + std::to_string(n) + " items, found " + std::to_string(lines.size() - 1));
    }

    std::vector<ServerSet> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lineno = i + 2;
        const std::string_view line = lines[i + 1];
        const auto colon = line.find(':');
        std::size_t index = 0;
        if (colon == std::string_view::npos || !parse_number(line.substr(0, colon), index) || index != i) {
            throw ParseError(Kind::MalformedLine, lineno, "expected '" + std::to_string(i) + ": <servers>'");
        }
        ServerSet s = 0;
        for (std::string_view word : split_words(line.substr(colon + 1))) {
            int server = 0;
            if (!parse_number(word, server)) {
                throw ParseError(Kind::MalformedLine, lineno, "bad server index '" + std::string(word) + "'");
            }
            if (server < 0 || server >= m) {
                throw ParseError(Kind::ServerIndexOutOfRange, lineno,
                                 "server " + std::to_string(server) + " >= m=" + std::to_string(m));
            }
            if (contains(s, server)) {
                throw ParseError(Kind::MalformedLine, lineno, "server " + std::to_string(server) + " repeated");
            }
            s |= ServerSet{1} << server;
        }
        if (s == 0) throw ParseError(Kind::EmptyItemSet, lineno, "item " + std::to_string(i) + " has no servers");
        items.push_back(s);
    }
    return SetSystem(m, std::move(items));
}

}  // namespace cbc
