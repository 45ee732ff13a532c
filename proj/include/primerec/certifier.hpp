#pragma once

/**
 * @file certifier.hpp
 * @brief Finite-s proof that a candidate m equals p_{n+1}.
 *
 * Every integer in [2, 2p_n - 1] is either smooth over p_1..p_n or has a
 * prime factor >= p_{n+1}. Expanding the inverted Euler factors over the
 * smooth integers gives
 *
 *   E4 = sum_{non-smooth j in [p_{n+1}, 2p_n-1]} j^-s  -  sum_{smooth j >= 2p_n} j^-s.
 *
 * Two monotone envelopes follow:
 *
 *   p_{n+1} >= m  =>  E4 <= ub_sum(m)  = sum_{j=m}^{2p_n-1} j^-s
 *   p_{n+1} <= m  =>  E4 >= lb_val(m)  = m^-s - tail_bound(s, 2p_n)
 *
 * so  b > ub_sum(m+1)  proves p_{n+1} <= m  and  b < lb_val(m-1)  proves
 * p_{n+1} >= m. The lower proof is skipped for m = p_n + 1.
 *
 * With interval values a check is only a proof when it holds at the
 * unfavorable endpoint; otherwise the scan reports itself indecisive and the
 * caller raises precision.
 */

#include "primerec/arith.hpp"
#include "primerec/bracket.hpp"
#include "primerec/primes.hpp"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace primerec {

struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

/// A log2 magnitude for reports, or the reason there is none.
struct Log2Field {
    enum class Kind { value, nonpositive, empty_sum, skipped };

    Kind kind = Kind::value;
    double value = 0.0;

    static Log2Field of(double v) { return {Kind::value, v}; }
    static Log2Field nonpositive() { return {Kind::nonpositive, 0.0}; }
    static Log2Field empty_sum() { return {Kind::empty_sum, 0.0}; }
    static Log2Field skipped() { return {Kind::skipped, 0.0}; }

    [[nodiscard]] bool has_value() const { return kind == Kind::value; }

    /// Decimal with 9 fractional digits, or the bare marker word.
    [[nodiscard]] std::string text() const {
        switch (kind) {
        case Kind::value: {
            char buf[64];
            // avoid "-0.000000000"
            const double v = value == 0.0 ? 0.0 : value;
            std::snprintf(buf, sizeof buf, "%.9f", v);
            std::string out(buf);
            return out == "-0.000000000" ? "0.000000000" : out;
        }
        case Kind::nonpositive: return "nonpositive";
        case Kind::empty_sum: return "empty-sum";
        case Kind::skipped: return "skipped";
        }
        return {};
    }

    /// JSON token: bare number for values, quoted marker otherwise.
    [[nodiscard]] std::string json() const {
        return kind == Kind::value ? text() : "\"" + text() + "\"";
    }

    friend bool operator==(const Log2Field&, const Log2Field&) = default;
};

inline Log2Field report_log2(const Rat& q) {
    return q.sign() > 0 ? Log2Field::of(approx_log2(q)) : Log2Field::nonpositive();
}

inline Log2Field report_log2(const DyadicInterval& iv) {
    const Rat mid(mpz_class(iv.lo_mant() + iv.hi_mant()), mpz_class(1) << (iv.prec() + 1));
    return report_log2(mid);
}

struct Certificate {
    std::uint64_t n = 0;
    unsigned s = 0;
    std::uint64_t m = 0;
    Log2Field b_log2;
    Log2Field ub_next_log2;
    Log2Field lb_prev_log2;
    bool passed_upper = false;
    bool passed_lower = false;
    bool passed = false;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// m^-s + m^(1-s)/(s-1): upper bound on sum_{j >= m} j^-s.
inline Rat tail_bound(unsigned s, std::uint64_t m_from) {
    if (s < 2) throw std::domain_error("tail_bound: s must be >= 2");
    if (m_from < 2) throw std::domain_error("tail_bound: m_from must be >= 2");
    return Rat::recip(ipow(m_from, s)) + Rat(mpz_class(1), ipow(m_from, s - 1) * (s - 1));
}

/// sum_{j=m}^{2p_n-1} j^-s; 0 when the range is empty.
inline Rat ub_sum(std::uint64_t m, unsigned s, const PrimeSeq& ps) {
    if (m < 2) throw std::domain_error("ub_sum: m must be >= 2");
    Rat acc;
    for (auto j = m; j <= 2 * ps.back() - 1; ++j) acc += Rat::recip(ipow(j, s));
    return acc;
}

/// m^-s - tail_bound(s, 2p_n).
inline Rat lb_val(std::uint64_t m, unsigned s, const PrimeSeq& ps) {
    if (m < 2) throw std::domain_error("lb_val: m must be >= 2");
    return Rat::recip(ipow(m, s)) - tail_bound(s, 2 * ps.back());
}

namespace detail {

// nullopt when the field cannot decide whether the candidate passes.
template <class Field>
std::optional<Certificate> check_candidate(const PrimeSeq& ps, unsigned s, std::uint64_t m,
                                           const typename Field::value_type& b,
                                           const typename Field::value_type& ub_next,
                                           const std::optional<typename Field::value_type>& lb_prev) {
    Certificate c;
    c.n = ps.size();
    c.s = s;
    c.m = m;
    c.b_log2 = report_log2(b);
    c.ub_next_log2 = m == 2 * ps.back() - 1 ? Log2Field::empty_sum() : report_log2(ub_next);
    c.lb_prev_log2 = lb_prev ? report_log2(*lb_prev) : Log2Field::skipped();

    const std::optional<bool> upper = Field::greater(b, ub_next);
    const std::optional<bool> lower = lb_prev ? Field::less(b, *lb_prev) : std::optional<bool>(true);

    // Kleene conjunction: one definite failure decides the candidate.
    if (upper == false || lower == false) {
        c.passed_upper = upper.value_or(false);
        c.passed_lower = lower.value_or(false);
        c.passed = false;
        return c;
    }
    if (!upper || !lower) return std::nullopt;
    c.passed_upper = true;
    c.passed_lower = true;
    c.passed = true;
    return c;
}

}  // namespace detail

/// Outcome of checking every candidate in the Bertrand window at one s.
struct ScanResult {
    std::optional<Certificate> hit;   // the unique passing candidate
    std::vector<Certificate> checked; // one per window candidate, ascending m
};

/// Scan the window with values from `f`. Returns nullopt when some candidate
/// is undecidable at this precision. Throws InternalInconsistency when two
/// candidates pass.
template <class Field>
std::optional<ScanResult> certify_scan_with(const Field& f, const PrimeSeq& ps, unsigned s,
                                            const typename Field::value_type& b) {
    using V = typename Field::value_type;
    const auto window = candidate_window(ps);
    const auto top = window.hi;  // 2p_n - 1

    // ub_next[m] = sum_{j=m+1}^{top} j^-s, built from the top down.
    std::vector<V> ub_next;
    ub_next.reserve(top - window.lo + 1);
    V acc = f.zero();
    for (auto m = top; m >= window.lo; --m) {
        ub_next.push_back(acc);
        acc = acc + f.recip_pow(m, s);
    }
    const V tail = f.from_rat(tail_bound(s, 2 * ps.back()));

    ScanResult out;
    for (auto m = window.lo; m <= top; ++m) {
        std::optional<V> lb_prev;
        if (m != window.lo) lb_prev = f.recip_pow(m - 1, s) - tail;
        auto cert = detail::check_candidate<Field>(ps, s, m, b, ub_next[top - m], lb_prev);
        if (!cert) return std::nullopt;
        if (cert->passed) {
            if (out.hit)
                throw InternalInconsistency("certify_scan: candidates " + std::to_string(out.hit->m) +
                                            " and " + std::to_string(m) + " both pass at s=" +
                                            std::to_string(s));
            out.hit = *cert;
        }
        out.checked.push_back(std::move(*cert));
    }
    return out;
}

/// Exact certificate for one candidate. b is the exact E4 value.
inline Certificate certify_candidate(const PrimeSeq& ps, unsigned s, std::uint64_t m, const Rat& b) {
    const auto window = candidate_window(ps);
    if (!window.contains(m)) throw std::domain_error("certify_candidate: m outside candidate window");
    std::optional<Rat> lb_prev;
    if (m != window.lo) lb_prev = lb_val(m - 1, s, ps);
    return *detail::check_candidate<ExactField>(ps, s, m, b, ub_sum(m + 1, s, ps), lb_prev);
}

/// The unique passing candidate for exact E4 value b, if any.
inline std::optional<Certificate> certify_scan(const PrimeSeq& ps, unsigned s, const Rat& b) {
    return certify_scan_with(ExactField{}, ps, s, b)->hit;
}

}  // namespace primerec
