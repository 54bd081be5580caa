// Residue-restricted partition counting.
//
// A restriction forbids every part lying in a set of residue classes mod M.
// Counts are computed four independent ways: unbounded-knapsack DP,
// the pentagonal-number recurrence (unrestricted), a generating-function
// route through series inversion, and a brute-force enumeration oracle.
// The routes deliberately share no counting logic so they can check each
// other.

#pragma once

#include <algorithm>
#include <cstdint>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpent/series.hpp"

namespace qpent {

/// Part-size restriction: forbid every part p with p mod modulus in
/// `forbidden`. Residues are canonicalized into 0..modulus-1 at
/// construction (so a residue written as M means the class of multiples
/// of M and is stored as 0), sorted, and deduplicated.
struct residue_restriction {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> forbidden;  // canonical, sorted, unique

    /// No restriction at all: every positive part is allowed.
    residue_restriction() = default;

    residue_restriction(std::int64_t mod, std::span<const std::int64_t> residues)
        : modulus(mod) {
        if (mod < 1)
            throw std::invalid_argument("residue_restriction: modulus must be >= 1, got " +
                                        std::to_string(mod));
        forbidden.reserve(residues.size());
        for (std::int64_t r : residues) forbidden.push_back(((r % mod) + mod) % mod);
        std::sort(forbidden.begin(), forbidden.end());
        forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    }

    residue_restriction(std::int64_t mod, std::initializer_list<std::int64_t> residues)
        : residue_restriction(mod, std::span<const std::int64_t>(residues.begin(), residues.size())) {}

    bool allows(std::int64_t part) const {
        return !std::binary_search(forbidden.begin(), forbidden.end(), part % modulus);
    }

    bool unrestricted() const { return forbidden.empty(); }

    auto operator<=>(const residue_restriction&) const = default;
};

/// All allowed parts in 1..limit, ascending.
inline std::vector<std::int64_t> allowed_parts(const residue_restriction& r, std::int64_t limit) {
    std::vector<std::int64_t> parts;
    for (std::int64_t k = 1; k <= limit; ++k)
        if (r.allows(k)) parts.push_back(k);
    return parts;
}

/// Dense table of restricted partition counts for n = 0..max_n.
/// counts[0] == 1 (the empty partition) under every restriction.
struct count_table {
    residue_restriction restriction;
    std::vector<integer> counts;

    std::int64_t max_n() const { return static_cast<std::int64_t>(counts.size()) - 1; }

    const integer& at(std::int64_t n) const {
        if (n < 0 || n > max_n())
            throw std::out_of_range("count_table: index " + std::to_string(n) +
                                    " outside table of size " + std::to_string(counts.size()));
        return counts[static_cast<std::size_t>(n)];
    }
};

/// Restricted counts by the standard unbounded-knapsack DP: one in-place
/// pass per allowed part, parts ascending.
inline count_table count_restricted(const residue_restriction& r, std::int64_t max_n) {
    if (max_n < 0) throw std::invalid_argument("count_restricted: negative max_n");
    count_table t{r, std::vector<integer>(static_cast<std::size_t>(max_n) + 1)};
    t.counts[0] = 1;
    for (std::int64_t k : allowed_parts(r, max_n))
        for (std::int64_t n = k; n <= max_n; ++n)
            t.counts[static_cast<std::size_t>(n)] += t.counts[static_cast<std::size_t>(n - k)];
    return t;
}

/// Unrestricted p(n) for n = 0..max_n by the pentagonal-number recurrence
///   p(n) = p(n-1) + p(n-2) - p(n-5) - p(n-7) + p(n-12) + p(n-15) - ...
/// with p(j) = 0 for j < 0 handled by never indexing below zero.
inline count_table pentagonal_recurrence_table(std::int64_t max_n) {
    if (max_n < 0) throw std::invalid_argument("pentagonal_recurrence_table: negative max_n");
    count_table t{residue_restriction{}, std::vector<integer>(static_cast<std::size_t>(max_n) + 1)};
    auto& p = t.counts;
    p[0] = 1;
    for (std::int64_t n = 1; n <= max_n; ++n) {
        integer acc = 0;
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t g1 = k * (3 * k - 1) / 2;
            if (g1 > n) break;
            const bool plus = (k % 2) == 1;  // sign (-1)^(k+1)
            if (plus)
                acc += p[static_cast<std::size_t>(n - g1)];
            else
                acc -= p[static_cast<std::size_t>(n - g1)];
            const std::int64_t g2 = k * (3 * k + 1) / 2;
            if (g2 <= n) {
                if (plus)
                    acc += p[static_cast<std::size_t>(n - g2)];
                else
                    acc -= p[static_cast<std::size_t>(n - g2)];
            }
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    return t;
}

/// Exhaustive enumeration refuses inputs above this bound unless told
/// otherwise; the refusal is an explicit error, never a silent 0.
inline constexpr std::int64_t default_oracle_bound = 60;

struct oracle_bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void enumerate_rec(std::int64_t remaining, std::int64_t max_part,
                          const residue_restriction& r, integer& count) {
    if (remaining == 0) {
        ++count;
        return;
    }
    for (std::int64_t part = std::min(max_part, remaining); part >= 1; --part)
        if (r.allows(part)) enumerate_rec(remaining - part, part, r, count);
}
}  // namespace detail

/// Brute-force oracle: counts partitions of n into allowed parts by direct
/// recursion over nonincreasing parts. Shares nothing with the DP route.
/// Exponential; refuses n > bound with oracle_bound_error.
inline integer enumerate_restricted(std::int64_t n, const residue_restriction& r,
                                    std::int64_t bound = default_oracle_bound) {
    if (n < 0) throw std::invalid_argument("enumerate_restricted: negative n");
    if (n > bound)
        throw oracle_bound_error("enumerate_restricted: n = " + std::to_string(n) +
                                 " exceeds oracle bound " + std::to_string(bound));
    integer count = 0;
    detail::enumerate_rec(n, n, r, count);
    return count;
}

/// Generating function of the restricted counts: the inverse of the finite
/// product of (1 - q^k) over allowed parts k <= order. Built from the
/// series engine (one factor family per allowed residue class, then a
/// series inversion), a code path fully disjoint from the DP.
inline series restricted_gf(const residue_restriction& r, std::int64_t order) {
    std::vector<factor_progression> families;
    for (std::int64_t c = 0; c < r.modulus; ++c) {
        if (!r.allows(c == 0 ? r.modulus : c)) continue;
        families.push_back(factor_progression{c == 0 ? r.modulus : c, r.modulus, 0});
    }
    if (families.empty()) return series::one(order);  // empty alphabet: only n = 0
    return progression_product(families, order).inverse();
}

}  // namespace qpent
