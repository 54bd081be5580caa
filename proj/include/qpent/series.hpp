// Exact truncated formal power series over arbitrary-precision integers.
//
// A series of order N stores the coefficients of q^0 .. q^N exactly and
// knows nothing beyond q^N. All operations are eager, exact, and pure;
// there is no floating point and no modular reduction anywhere.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpent {

/// Coefficient and count type. GMP-backed: p(n) leaves 64-bit range long
/// before the sweeps this library runs.
using integer = mpz_class;

/// Formal power series known exactly through exponent order().
/// Invariant: coeffs().size() == order() + 1.
class series {
public:
    /// Zero series of the given order.
    explicit series(std::int64_t order) : c_(checked_size(order)) {}

    /// Series taking ownership of a full coefficient vector; the order is
    /// coeffs.size() - 1. The vector must be non-empty.
    explicit series(std::vector<integer> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("series: empty coefficient vector");
    }

    /// Series with the given exponent -> coefficient entries, zero elsewhere.
    /// Duplicate exponents accumulate. Throws if an exponent is negative or
    /// exceeds the order.
    series(std::int64_t order, std::initializer_list<std::pair<std::int64_t, integer>> entries)
        : c_(checked_size(order)) {
        for (const auto& [e, v] : entries) {
            if (e < 0 || e > order)
                throw std::invalid_argument("series: exponent " + std::to_string(e) +
                                            " outside order " + std::to_string(order));
            c_[static_cast<std::size_t>(e)] += v;
        }
    }

    static series one(std::int64_t order) { return series(order, {{0, 1}}); }

    static series monomial(std::int64_t order, std::int64_t exponent, integer coeff = 1) {
        return series(order, {{exponent, std::move(coeff)}});
    }

    std::int64_t order() const { return static_cast<std::int64_t>(c_.size()) - 1; }

    /// Coefficient of q^e. Exponents beyond the order are unknown, not zero,
    /// so out-of-range access throws.
    const integer& operator[](std::int64_t e) const {
        if (e < 0 || e > order())
            throw std::out_of_range("series: coefficient q^" + std::to_string(e) +
                                    " outside order " + std::to_string(order()));
        return c_[static_cast<std::size_t>(e)];
    }

    const std::vector<integer>& coeffs() const { return c_; }

    bool operator==(const series&) const = default;

    friend series operator+(const series& a, const series& b) {
        require_same_order(a, b, "add");
        series r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend series operator-(const series& a, const series& b) {
        require_same_order(a, b, "subtract");
        series r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend series operator-(const series& a) {
        series r(a.order());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = -a.c_[i];
        return r;
    }

    /// Exact convolution truncated at the shared order.
    friend series operator*(const series& a, const series& b) {
        require_same_order(a, b, "multiply");
        series r(a.order());
        const std::size_t n = r.c_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j + i < n; ++j) {
                if (b.c_[j] == 0) continue;
                mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
            }
        }
        return r;
    }

    /// Multiplication by q^s at unchanged order; the top s coefficients
    /// fall off the truncation end.
    series shifted(std::int64_t s) const {
        if (s < 0 || s > order())
            throw std::invalid_argument("series: shift " + std::to_string(s) +
                                        " outside order " + std::to_string(order()));
        series r(order());
        for (std::size_t e = static_cast<std::size_t>(s); e < c_.size(); ++e)
            r.c_[e] = c_[e - static_cast<std::size_t>(s)];
        return r;
    }

    /// Multiplicative inverse as a formal series. The constant term must be
    /// a unit (+1 or -1), so every division in the standard recurrence stays
    /// integral.
    series inverse() const {
        const integer& a0 = c_[0];
        if (a0 != 1 && a0 != -1)
            throw std::domain_error("series: inverse requires constant term +1 or -1, got " +
                                    a0.get_str());
        series b(order());
        b.c_[0] = a0;  // 1/a0 == a0 for a0 = +-1
        integer acc;
        for (std::size_t e = 1; e < c_.size(); ++e) {
            acc = 0;
            for (std::size_t j = 1; j <= e; ++j) {
                if (c_[j] == 0) continue;
                mpz_addmul(acc.get_mpz_t(), c_[j].get_mpz_t(), b.c_[e - j].get_mpz_t());
            }
            // a0 * b[e] = -sum  =>  b[e] = -a0 * sum  (a0 is its own inverse)
            b.c_[e] = -acc * a0;
        }
        return b;
    }

    /// Debug rendering, e.g. "1 - q - q^2 + q^5 + q^7". The zero series
    /// renders as "0".
    std::string str() const {
        std::string out;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            const integer& c = c_[e];
            if (c == 0) continue;
            const bool neg = c < 0;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            integer mag = abs(c);
            if (mag != 1 || e == 0) out += mag.get_str();
            if (e >= 1) {
                out += "q";
                if (e >= 2) out += "^" + std::to_string(e);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    static std::size_t checked_size(std::int64_t order) {
        if (order < 0)
            throw std::invalid_argument("series: negative order " + std::to_string(order));
        return static_cast<std::size_t>(order) + 1;
    }

    static void require_same_order(const series& a, const series& b, const char* what) {
        if (a.order() != b.order())
            throw std::invalid_argument(std::string("series: ") + what + " with mismatched orders " +
                                        std::to_string(a.order()) + " and " +
                                        std::to_string(b.order()));
    }

    std::vector<integer> c_;
};

/// One factor family: (1 - q^(offset + step*n)) for n >= start_index.
/// Every generated exponent must be >= 1; a factor at exponent 0 would be
/// the zero factor (1 - q^0) and is rejected.
struct factor_progression {
    std::int64_t offset = 1;
    std::int64_t step = 1;
    int start_index = 0;  // 0 or 1

    std::int64_t first_exponent() const { return offset + step * start_index; }

    void validate() const {
        if (step < 1)
            throw std::invalid_argument("factor_progression: step must be >= 1");
        if (start_index != 0 && start_index != 1)
            throw std::invalid_argument("factor_progression: start_index must be 0 or 1");
        if (offset < 1 || first_exponent() < 1)
            throw std::invalid_argument("factor_progression: factor family reaches exponent " +
                                        std::to_string(first_exponent()) +
                                        " < 1 (zero or ill-formed factor)");
    }
};

/// Finite product of all binomials (1 - q^e) generated by the families,
/// truncated at the given order. Families whose exponents all exceed the
/// order contribute the empty product 1. Each binomial is applied sparsely
/// in place, which keeps products with thousands of factors cheap.
inline series progression_product(std::span<const factor_progression> families,
                                  std::int64_t order) {
    if (families.empty())
        throw std::invalid_argument("progression_product: empty factor list");
    for (const auto& f : families) f.validate();

    if (order < 0) throw std::invalid_argument("progression_product: negative order");
    std::vector<integer> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1;
    for (const auto& f : families) {
        for (std::int64_t e = f.first_exponent(); e <= order; e += f.step) {
            // multiply by (1 - q^e): c[d] -= c[d-e], descending
            for (std::int64_t d = order; d >= e; --d)
                c[static_cast<std::size_t>(d)] -= c[static_cast<std::size_t>(d - e)];
        }
    }
    return series(std::move(c));
}

inline series progression_product(std::initializer_list<factor_progression> families,
                                  std::int64_t order) {
    return progression_product(std::span<const factor_progression>(families.begin(), families.size()),
                               order);
}

/// Euler product: all binomials (1 - q^n) for n = 1, 2, 3, ... up to the order.
inline series euler_product(std::int64_t order) {
    return progression_product({factor_progression{1, 1, 0}}, order);
}

}  // namespace qpent
