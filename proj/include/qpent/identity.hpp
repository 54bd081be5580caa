// Truncated pentagonal recurrences for residue-restricted partitions.
//
// For every m >= 1 there is a (2m+1)-term schedule of shifted restricted
// counts, with all restrictions mod 3(2m+1)^2, whose signed sum vanishes
// for n >= 1:
//
//   0 = p(n | A_0) + sum_{i=1..m} (-1)^i [ p(n - i(3i-1)/2 | A_i')
//                                        + p(n - i(3i+1)/2 | A_i'') ]
//
// m = 1 is the Fibonacci-like three-term identity, m = 2 the five-term one.
// This header builds the schedules, evaluates residuals over count tables,
// and verifies the identity twice over: at the counting level and at the
// series level through the triple-product identity it follows from.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpent/partition.hpp"
#include "qpent/series.hpp"

namespace qpent {

/// Euler's pentagonal number theorem, sum side: (-1)^n at exponent
/// n(3n+1)/2 over all integers n, truncated.
inline series pentagonal_series(std::int64_t order) {
    if (order < 0) throw std::invalid_argument("pentagonal_series: negative order");
    std::vector<integer> c(static_cast<std::size_t>(order) + 1);
    auto place = [&](std::int64_t n) -> bool {
        const std::int64_t e = n * (3 * n + 1) / 2;
        if (e > order) return false;
        if (n % 2 != 0)
            c[static_cast<std::size_t>(e)] -= 1;
        else
            c[static_cast<std::size_t>(e)] += 1;
        return true;
    };
    for (std::int64_t n = 0; place(n); ++n) {}
    for (std::int64_t n = -1; place(n); --n) {}
    return series(std::move(c));
}

namespace detail {
inline void require_lemma_args(std::int64_t k, std::int64_t i) {
    if (k < 1) throw std::invalid_argument("triple product: k must be >= 1");
    if (i < 1 || i > 2 * k)
        throw std::invalid_argument("triple product: need 1 <= i <= 2k, got i = " +
                                    std::to_string(i) + " with k = " + std::to_string(k) +
                                    " (outside this range a product factor would have a"
                                    " nonpositive exponent)");
}
}  // namespace detail

/// Jacobi triple product specialization, sum side:
/// (-1)^n at exponent (2k+1) n(n+1)/2 - i n over all integers n.
/// Under 1 <= i <= 2k every exponent is nonnegative.
inline series triple_product_sum_side(std::int64_t k, std::int64_t i, std::int64_t order) {
    detail::require_lemma_args(k, i);
    if (order < 0) throw std::invalid_argument("triple_product_sum_side: negative order");
    std::vector<integer> c(static_cast<std::size_t>(order) + 1);
    auto place = [&](std::int64_t n) -> bool {
        const std::int64_t e = (2 * k + 1) * (n * (n + 1) / 2) - i * n;
        if (e > order) return false;
        if (n % 2 != 0)
            c[static_cast<std::size_t>(e)] -= 1;
        else
            c[static_cast<std::size_t>(e)] += 1;
        return true;
    };
    for (std::int64_t n = 0; place(n); ++n) {}
    for (std::int64_t n = -1; place(n); --n) {}
    return series(std::move(c));
}

/// Jacobi triple product specialization, product side: the three factor
/// families (2k+1)(n+1), (2k+1)n + i, (2k+1)(n+1) - i for n >= 0.
inline series triple_product_product_side(std::int64_t k, std::int64_t i, std::int64_t order) {
    detail::require_lemma_args(k, i);
    const std::int64_t step = 2 * k + 1;
    return progression_product({factor_progression{step, step, 0},
                                factor_progression{i, step, 0},
                                factor_progression{step - i, step, 0}},
                               order);
}

/// One summand of the identity: sign * p(n - shift | restriction).
struct identity_term {
    std::int64_t shift = 0;
    int sign = 1;  // +1 or -1
    residue_restriction restriction;
};

/// The full term list for a given m. Terms are ordered i = 0, then for each
/// i = 1..m the i(3i-1)/2 shift before the i(3i+1)/2 shift, matching the
/// shifts' natural order 0, 1, 2, 5, 7, ...
struct identity_schedule {
    std::int64_t m = 0;
    std::int64_t modulus = 0;  // 3(2m+1)^2
    std::vector<identity_term> terms;
};

inline identity_schedule schedule_for(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("schedule_for: m must be >= 1");
    const std::int64_t w = 2 * m + 1;
    const std::int64_t mod = 3 * w * w;
    identity_schedule s{m, mod, {}};
    s.terms.reserve(static_cast<std::size_t>(2 * m + 1));
    s.terms.push_back({0, +1, residue_restriction(mod, {0, w * (3 * m + 1), w * (3 * m + 2)})});
    for (std::int64_t i = 1; i <= m; ++i) {
        const int sign = (i % 2 == 0) ? +1 : -1;
        s.terms.push_back({i * (3 * i - 1) / 2, sign,
                           residue_restriction(mod, {0, w * (3 * m - 3 * i + 2), w * (3 * m + 3 * i + 1)})});
        s.terms.push_back({i * (3 * i + 1) / 2, sign,
                           residue_restriction(mod, {0, w * (3 * m - 3 * i + 1), w * (3 * m + 3 * i + 2)})});
    }
    return s;
}

/// Count tables backing a schedule, one per term, with tables shared
/// between terms that carry the same restriction.
class schedule_tables {
public:
    schedule_tables(const identity_schedule& s, std::int64_t max_n) {
        index_.reserve(s.terms.size());
        std::map<residue_restriction, std::size_t> seen;
        for (const auto& term : s.terms) {
            auto [it, inserted] = seen.try_emplace(term.restriction, tables_.size());
            if (inserted) tables_.push_back(count_restricted(term.restriction, max_n));
            index_.push_back(it->second);
        }
    }

    const count_table& for_term(std::size_t term_index) const {
        return tables_[index_.at(term_index)];
    }

    std::size_t term_count() const { return index_.size(); }
    std::size_t unique_count() const { return tables_.size(); }

private:
    std::vector<count_table> tables_;
    std::vector<std::size_t> index_;
};

/// Signed sum over the schedule at one n, using the p(j < 0) = 0
/// convention. Throws if a table does not reach n - shift.
inline integer residual(std::int64_t n, const identity_schedule& s, const schedule_tables& tables) {
    if (tables.term_count() != s.terms.size())
        throw std::invalid_argument("residual: tables built for a different schedule");
    integer acc = 0;
    for (std::size_t t = 0; t < s.terms.size(); ++t) {
        const auto& term = s.terms[t];
        const std::int64_t idx = n - term.shift;
        if (idx < 0) continue;
        const integer& v = tables.for_term(t).at(idx);
        if (term.sign > 0)
            acc += v;
        else
            acc -= v;
    }
    return acc;
}

enum class verify_method { counting, series };

/// Outcome of one verification sweep. `residuals` is sparse: it keeps only
/// nonzero values, keyed by n (counting sweeps), by exponent (series
/// sweeps), or by i (lemma sweeps, where the value is the number of
/// mismatched coefficients). Counting sweeps that start at n = 1 also
/// record the informational n = 0 entry, whose expected value is 1 (the
/// series both routes compare against is the constant 1); it never affects
/// `passed`, which covers exactly n_lo..n_hi.
struct verification_report {
    std::int64_t m = 0;  // m for schedule sweeps, k for lemma sweeps
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    std::map<std::int64_t, integer> residuals;
    bool passed = false;
    double elapsed_ms = 0.0;
    verify_method method = verify_method::counting;
};

namespace detail {
class stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};
}  // namespace detail

/// Counting-route sweep of an explicit schedule over n_lo..max_n.
inline verification_report verify_counting(const identity_schedule& s, std::int64_t n_lo,
                                           std::int64_t max_n) {
    if (max_n < 0) throw std::invalid_argument("verify_counting: negative max_n");
    detail::stopwatch timer;
    verification_report rep;
    rep.m = s.m;
    rep.n_lo = n_lo;
    rep.n_hi = max_n;
    rep.method = verify_method::counting;

    schedule_tables tables(s, max_n);
    if (n_lo <= 1) rep.residuals[0] = residual(0, s, tables);  // informational
    rep.passed = true;
    for (std::int64_t n = n_lo; n <= max_n; ++n) {
        integer r = residual(n, s, tables);
        if (r != 0) {
            rep.residuals[n] = std::move(r);
            rep.passed = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

/// Counting-route sweep for the canonical schedule of m, n = 1..max_n,
/// with residual(0) recorded informationally.
inline verification_report verify_counting(std::int64_t m, std::int64_t max_n) {
    return verify_counting(schedule_for(m), 1, max_n);
}

/// The m = 1 equality form p(n|A) = p(n-1|B) + p(n-2|C) for n = 2..max_n.
inline verification_report verify_theorem1_equality(std::int64_t max_n) {
    if (max_n < 2) throw std::invalid_argument("verify_theorem1_equality: max_n must be >= 2");
    return verify_counting(schedule_for(1), 2, max_n);
}

/// Series-route check of the identity the schedules arise from: the Euler
/// product equals the signed, shifted combination of triple products with
/// step 3(2m+1)^2,
///
///   prod (1-q^n) = P(w(3m+1))
///                + sum_{i=1..m} (-1)^i [ q^{i(3i-1)/2} P(w(3m-3i+2))
///                                      + q^{i(3i+1)/2} P(w(3m-3i+1)) ]
///
/// where w = 2m+1 and P(a) is the triple product with families
/// S(n+1), Sn + a, S(n+1) - a for S = 3w^2. Dividing by the Euler product
/// turns exactly this display into the counting identity, so the two
/// routes are independent checks of the same statement.
inline verification_report verify_product_identity(std::int64_t m, std::int64_t order) {
    if (m < 1) throw std::invalid_argument("verify_product_identity: m must be >= 1");
    if (order < 0) throw std::invalid_argument("verify_product_identity: negative order");
    detail::stopwatch timer;
    const std::int64_t w = 2 * m + 1;
    const std::int64_t step = 3 * w * w;  // = 2k+1 for k = (step-1)/2
    const std::int64_t k = (step - 1) / 2;

    series rhs = triple_product_product_side(k, w * (3 * m + 1), order);
    for (std::int64_t i = 1; i <= m; ++i) {
        const bool minus = (i % 2 != 0);
        for (const auto& [shift, offset] :
             {std::pair{i * (3 * i - 1) / 2, w * (3 * m - 3 * i + 2)},
              std::pair{i * (3 * i + 1) / 2, w * (3 * m - 3 * i + 1)}}) {
            if (shift > order) continue;  // contributes nothing below the truncation
            series part = triple_product_product_side(k, offset, order).shifted(shift);
            rhs = minus ? rhs - part : rhs + part;
        }
    }

    const series lhs = euler_product(order);
    verification_report rep;
    rep.m = m;
    rep.n_lo = 0;
    rep.n_hi = order;
    rep.method = verify_method::series;
    rep.passed = true;
    for (std::int64_t e = 0; e <= order; ++e) {
        if (lhs[e] != rhs[e]) {
            rep.residuals[e] = lhs[e] - rhs[e];
            rep.passed = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

/// Checks the triple-product identity sum side == product side for every
/// admissible i = 1..2k at the given order.
inline verification_report verify_lemma(std::int64_t k, std::int64_t order) {
    if (k < 1) throw std::invalid_argument("verify_lemma: k must be >= 1");
    if (order < 0) throw std::invalid_argument("verify_lemma: negative order");
    detail::stopwatch timer;
    verification_report rep;
    rep.m = k;
    rep.n_lo = 1;
    rep.n_hi = 2 * k;
    rep.method = verify_method::series;
    rep.passed = true;
    for (std::int64_t i = 1; i <= 2 * k; ++i) {
        const series sum = triple_product_sum_side(k, i, order);
        const series prod = triple_product_product_side(k, i, order);
        std::int64_t mismatches = 0;
        for (std::int64_t e = 0; e <= order; ++e)
            if (sum[e] != prod[e]) ++mismatches;
        if (mismatches > 0) {
            rep.residuals[i] = mismatches;
            rep.passed = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

}  // namespace qpent
