#include "cbc/bounds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cbc/cwc.hpp"

namespace cbc {

namespace {

std::string params_text(const BigInt& n, int k, int m) {
    return "(n=" + n.str() + ", k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")";
}

void check_servers(int m) {
    if (m < 1 || m > kMaxServers) throw ParamError("m must be in [1, 64]");
}

void check_km(int k, int m) {
    check_servers(m);
    if (k < 2 || k > m) throw ParamError("need 2 <= k <= m, got k=" + std::to_string(k) + ", m=" + std::to_string(m));
}

// (k-1) C(m,c) / C(k-1,c) without range checks.
Rational u_raw(int m, int k, int c) { return Rational(BigInt(k - 1) * binomial(m, c), binomial(k - 1, c)); }

BigInt saturation_point(int k, int m) { return BigInt(k - 1) * binomial(m, k - 1); }

std::uint64_t ceil_sqrt(std::uint64_t x) {
    std::uint64_t s = 0;
    while (s * s < x) ++s;
    return s;
}

}  // namespace

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::Trivial: return "trivial";
        case Regime::SquareLayout: return "m=k";
        case Regime::OneExtraItem: return "n=m+1";
        case Regime::TwoExtraItems: return "n=m+2";
        case Regime::Saturated: return "saturated";
        case Regime::DeletionRange: return "deletion";
        case Regime::CodeRange: return "constant-weight";
        case Regime::CountingBound: return "counting";
    }
    return "unknown";
}

Rational u_value(int m, int k, int c) {
    check_servers(m);
    if (c < 1 || c > k - 1 || k - 1 > m - 1) {
        throw ParamError("U needs 1 <= c <= k-1 <= m-1, got m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                         ", c=" + std::to_string(c));
    }
    return u_raw(m, k, c);
}

bool check_inequality(const Profile& p, int m, int i) {
    check_servers(m);
    if (i < 1 || i > p.k - 1) throw ParamError("inequality index must be in [1, k-1]");
    BigInt lhs = 0;
    for (int j = 1; j <= i; ++j) lhs += binomial(m - j, i - j) * p.count(j);
    return lhs <= BigInt(i) * binomial(m, i);
}

Rational b_value(const BigInt& n, int k, int m, int c) {
    check_servers(m);
    if (c < 1 || c > k - 1 || m <= k - 1) throw ParamError("b needs 1 <= c <= k-1 < m");
    return Rational(n * c) - Rational(BigInt(k - c)) * (u_raw(m, k, c) - Rational(n)) / Rational(BigInt(m - k + 1));
}

Rational storage_bound_with_full_sets(const BigInt& n, int k, int m, int c, const BigInt& full_sets) {
    return b_value(n, k, m, c) + Rational(BigInt(k - c) * (m - k) * full_sets, BigInt(m - k + 1));
}

BoundResult lower_bound(const BigInt& n, int k, int m) {
    check_km(k, m);
    if (n < 1) throw ParamError("n must be positive");
    if (n > saturation_point(k, m)) {
        throw RangeError("counting bound needs n <= (k-1)C(m,k-1) " + params_text(n, k, m));
    }
    int c = 1;
    while (Rational(n) > u_raw(m, k, c)) ++c;

    const Rational excess = Rational(BigInt(k - c)) * (u_raw(m, k, c) - Rational(n)) / Rational(BigInt(m - k + 1));
    BoundResult r;
    r.lower = n * c - floor_of(excess);
    r.chosen_c = c;
    r.sources.push_back(Regime::CountingBound);

    // b(n,k,m,.) increases up to c and does not increase after it.
    const Rational peak = b_value(n, k, m, c);
    for (int i = 1; i <= k - 1; ++i) {
        if (b_value(n, k, m, i) > peak) {
            throw std::logic_error("b(n,k,m,i) not maximised at the least c with n <= U " + params_text(n, k, m));
        }
    }
    return r;
}

BoundResult known_n(const Params& params) {
    const BigInt& n = params.n;
    const int k = params.k;
    const int m = params.m;
    check_km(k, m);
    if (n < 1) throw ParamError("n must be positive");

    const BigInt top = saturation_point(k, m);
    std::vector<std::pair<Regime, BigInt>> exact;

    if (n <= m) exact.emplace_back(Regime::Trivial, n);
    if (m == k && n >= k) exact.emplace_back(Regime::SquareLayout, BigInt(k) * n - k * (k - 1));
    if (n == m + 1) exact.emplace_back(Regime::OneExtraItem, BigInt(m + k));
    if (n == m + 2) {
        const auto root = ceil_sqrt(static_cast<std::uint64_t>(k + 1));
        BigInt value;
        if (static_cast<std::uint64_t>(m + 1 - k) >= root) {
            value = m + k - 2 + ceil_sqrt(4 * static_cast<std::uint64_t>(k + 1));
        } else {
            const int slack = m + 1 - k;
            value = 2 * m - 2 + 1 + (k + 1 + slack - 1) / slack;
        }
        exact.emplace_back(Regime::TwoExtraItems, value);
    }
    if (n >= top) exact.emplace_back(Regime::Saturated, BigInt(k) * n - top);
    if (k >= 3 && n >= binomial(m, k - 2) && n <= top) {
        exact.emplace_back(Regime::DeletionRange, n * (k - 1) - (top - n) / (m - k + 1));
    }

    std::optional<std::pair<BigInt, BigInt>> code_gap;  // lower, upper
    bool code_applies = false;
    if (k >= 5) {
        const BigInt base = binomial(m, k - 2);
        const BigInt q = m - k + 1;
        const BigInt words = distance4_code_size(m, k - 3);
        if (n <= base && n >= base - q * words) {
            code_applies = true;
            const BigInt deficit = base - n;
            const BigInt rem = deficit % q;
            const BigInt lower = n * (k - 2) - (2 * deficit) / q;
            if (2 * rem < q) {
                exact.emplace_back(Regime::CodeRange, lower);
            } else {
                code_gap.emplace(lower, n * (k - 2) - 2 * (deficit / q));
            }
        }
    }

    BoundResult r;
    for (const auto& [regime, value] : exact) {
        if (r.exact && *r.exact != value) {
            throw std::logic_error("regimes disagree on N" + params_text(n, k, m) + ": " + r.exact->str() + " vs " +
                                   value.str() + " (" + std::string(regime_name(regime)) + ")");
        }
        r.exact = value;
        r.sources.push_back(regime);
        if (regime != Regime::TwoExtraItems) r.upper = value;
    }
    if (code_applies && !std::any_of(exact.begin(), exact.end(),
                                     [](const auto& e) { return e.first == Regime::CodeRange; })) {
        r.sources.push_back(Regime::CodeRange);
    }

    if (n <= top) {
        BoundResult counting = lower_bound(n, k, m);
        // Every item needs a server, so N >= n even where the count is weaker.
        r.lower = std::max(counting.lower, n);
        r.chosen_c = counting.chosen_c;
        r.sources.push_back(Regime::CountingBound);
    } else {
        r.lower = *r.exact;
        r.chosen_c = k - 1;
    }

    if (code_gap) {
        const auto& [gap_lower, gap_upper] = *code_gap;
        if (gap_lower > r.lower) r.lower = gap_lower;
        if (!r.upper || gap_upper < *r.upper) r.upper = gap_upper;
        if (r.exact && (*r.exact < gap_lower || *r.exact > gap_upper)) {
            throw std::logic_error("exact N outside the constant-weight interval " + params_text(n, k, m));
        }
    }
    if (r.exact && r.lower > *r.exact) {
        throw std::logic_error("counting bound exceeds exact N " + params_text(n, k, m));
    }
    if (r.upper && r.lower > *r.upper) {
        throw std::logic_error("counting bound exceeds constructive N " + params_text(n, k, m));
    }
    return r;
}

Rational uniform_n_ceiling(int m, int c, int k) {
    check_servers(m);
    if (c < 1 || c > k - 1) throw ParamError("uniform ceiling needs 1 <= c <= k-1");
    return u_raw(m, k, c);
}

std::uint64_t least_prime_power_at_least(std::uint64_t x) {
    auto is_prime_power = [](std::uint64_t v) {
        if (v < 2) return false;
        std::uint64_t p = 2;
        while (p * p <= v && v % p != 0) ++p;
        if (v % p != 0) return true;  // v is prime
        while (v % p == 0) v /= p;
        return v == 1;
    };
    std::uint64_t v = std::max<std::uint64_t>(x, 2);
    while (!is_prime_power(v)) ++v;
    return v;
}

Rational cwc_lower_bound(int m, int d2, int w) {
    check_servers(m);
    if (d2 < 2 || d2 % 2 != 0) throw ParamError("distance must be even and at least 2");
    if (w < 0 || w > m) throw ParamError("weight must be in [0, m]");
    if (d2 == 4) return Rational(binomial(m, w), BigInt(m));
    const auto q = least_prime_power_at_least(static_cast<std::uint64_t>(m));
    return Rational(binomial(m, w), boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(d2 / 2 - 1)));
}

}  // namespace cbc
