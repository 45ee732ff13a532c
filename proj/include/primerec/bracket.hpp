#pragma once

/**
 * @file bracket.hpp
 * @brief The bracketed expressions of the prime recursion at integer s.
 *
 * With P = p_1..p_n and T = 2 p_n - 1:
 *
 *   E4(P, s)  = sum_{j=1}^{T} j^-s  -  prod_k (1 - p_k^-s)^-1
 *   E1T(P, s) = prod_k (1 - p_k^-s) * sum_{j=1}^{T} j^-s  -  1
 *
 * and E1T = E4 * prod_k (1 - p_k^-s) exactly. The untruncated-sum variant
 * with the product moved inside coincides with E4 term for term once the
 * sum stops at T, so it has no separate code path.
 *
 * Evaluation is written once against a "field": ExactField carries Rat,
 * DyadicField carries DyadicInterval at a fixed precision. Sums run over
 * ascending j.
 */

#include "primerec/arith.hpp"
#include "primerec/primes.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace primerec {

enum class BracketForm { E4, E1T };

inline std::string_view to_string(BracketForm f) { return f == BracketForm::E4 ? "e4" : "e1t"; }

inline std::optional<BracketForm> parse_form(std::string_view s) {
    if (s == "e4" || s == "E4") return BracketForm::E4;
    if (s == "e1t" || s == "E1T") return BracketForm::E1T;
    return std::nullopt;
}

struct ExactField {
    using value_type = Rat;

    [[nodiscard]] Rat zero() const { return Rat{}; }
    [[nodiscard]] Rat one() const { return Rat{1}; }
    [[nodiscard]] Rat recip_pow(std::uint64_t j, unsigned s) const { return Rat::recip(ipow(j, s)); }
    [[nodiscard]] Rat from_rat(const Rat& q) const { return q; }

    // Exact values always decide.
    static std::optional<bool> greater(const Rat& a, const Rat& b) { return a > b; }
    static std::optional<bool> less(const Rat& a, const Rat& b) { return a < b; }
    static std::optional<bool> positive(const Rat& a) { return a.sign() > 0; }
};

struct DyadicField {
    using value_type = DyadicInterval;

    unsigned prec;

    [[nodiscard]] DyadicInterval zero() const { return DyadicInterval::point(0, prec); }
    [[nodiscard]] DyadicInterval one() const { return DyadicInterval::point(1, prec); }
    [[nodiscard]] DyadicInterval recip_pow(std::uint64_t j, unsigned s) const {
        return dy_recip_pow(j, s, prec);
    }
    [[nodiscard]] DyadicInterval from_rat(const Rat& q) const { return DyadicInterval::enclose(q, prec); }

    // nullopt: the enclosures overlap and the answer depends on where the
    // exact values sit inside them.
    static std::optional<bool> greater(const DyadicInterval& a0, const DyadicInterval& b0) {
        auto [a, b] = detail::common_prec(a0, b0);
        if (a.lo_mant() > b.hi_mant()) return true;
        if (a.hi_mant() <= b.lo_mant()) return false;
        return std::nullopt;
    }
    static std::optional<bool> less(const DyadicInterval& a, const DyadicInterval& b) {
        return greater(b, a);
    }
    static std::optional<bool> positive(const DyadicInterval& a) {
        if (a.lo_mant() > 0) return true;
        if (a.hi_mant() <= 0) return false;
        return std::nullopt;
    }
};

template <class Field>
typename Field::value_type zeta_partial(const Field& f, std::uint64_t m_top, unsigned s) {
    auto acc = f.zero();
    for (std::uint64_t j = 1; j <= m_top; ++j) acc = acc + f.recip_pow(j, s);
    return acc;
}

template <class Field>
typename Field::value_type euler_factor_prod(const Field& f, const PrimeSeq& ps, unsigned s,
                                             bool inverted) {
    auto acc = f.one();
    for (auto p : ps) acc = acc * (f.one() - f.recip_pow(p, s));
    return inverted ? f.one() / acc : acc;
}

template <class Field>
typename Field::value_type eval_bracket(const Field& f, const PrimeSeq& ps, unsigned s,
                                        BracketForm form) {
    if (s < 2) throw std::domain_error("eval_bracket: s must be >= 2");
    const auto partial = zeta_partial(f, 2 * ps.back() - 1, s);
    if (form == BracketForm::E4) return partial - euler_factor_prod(f, ps, s, true);
    return euler_factor_prod(f, ps, s, false) * partial - f.one();
}

inline Rat zeta_partial_exact(std::uint64_t m_top, unsigned s) {
    return zeta_partial(ExactField{}, m_top, s);
}

inline Rat euler_factor_prod_exact(const PrimeSeq& ps, unsigned s, bool inverted) {
    return euler_factor_prod(ExactField{}, ps, s, inverted);
}

inline Rat eval_bracket_exact(const PrimeSeq& ps, unsigned s, BracketForm form) {
    return eval_bracket(ExactField{}, ps, s, form);
}

inline DyadicInterval eval_bracket_dyadic(const PrimeSeq& ps, unsigned s, BracketForm form,
                                          unsigned prec) {
    return eval_bracket(DyadicField{prec}, ps, s, form);
}

/// s * ceil(log2(2 p_n)) + 32 guard bits.
inline unsigned recommended_prec(const PrimeSeq& ps, unsigned s) {
    const auto bits = static_cast<unsigned>(bit_length(mpz_class(2 * ps.back() - 1)));
    return s * bits + 32;
}

/// Finite image of the Euler product: with p_1..p_N consecutive,
///   prod_{k<=n}(1-p_k^-s) * prod_{j<=N}(1-p_j^-s)^-1 == prod_{n<j<=N}(1-p_j^-s)^-1.
inline bool euler_truncation_identity(const PrimeSeq& ps_n, std::size_t big_n, unsigned s) {
    if (big_n < ps_n.size()) throw std::domain_error("euler_truncation_identity: big_n < n");
    const auto big = first_primes(big_n);
    for (std::size_t i = 0; i < ps_n.size(); ++i)
        if (big[i] != ps_n[i]) throw std::domain_error("euler_truncation_identity: seed mismatch");

    const auto factor = [s](std::uint64_t p) { return Rat{1} - Rat::recip(ipow(p, s)); };
    Rat lhs{1};
    for (auto p : ps_n) lhs *= factor(p);
    Rat full{1};
    for (auto p : big) full *= factor(p);
    lhs = lhs / full;

    Rat rest{1};
    for (std::size_t j = ps_n.size(); j < big.size(); ++j) rest *= factor(big[j]);
    Rat rhs = Rat{1} / rest;
#ifdef PRIMEREC_INJECT_IDENTITY_FAULT
    rhs += Rat::recip(ipow(big.back(), s + 1));
#endif
    return lhs == rhs;
}

/// E1T == E4 * prod_k (1 - p_k^-s), checked exactly.
inline bool form_identity_holds(const PrimeSeq& ps, unsigned s) {
    const Rat e1t = eval_bracket_exact(ps, s, BracketForm::E1T);
    Rat rhs = eval_bracket_exact(ps, s, BracketForm::E4) * euler_factor_prod_exact(ps, s, false);
#ifdef PRIMEREC_INJECT_IDENTITY_FAULT
    rhs += Rat::recip(ipow(ps.back(), s + 1));
#endif
    return e1t == rhs;
}

/// E4 minus its decomposition into non-smooth terms below 2 p_n and the
/// smooth tail up to cutoff. What remains is the smooth tail past cutoff,
/// so |R| <= tail_bound(s, cutoff + 1).
inline Rat smooth_decomposition_residual(const PrimeSeq& ps, unsigned s, std::uint64_t cutoff) {
    const auto pn = ps.back();
    if (cutoff < 2 * pn) throw std::domain_error("smooth_decomposition_residual: cutoff < 2 p_n");
    Rat r = eval_bracket_exact(ps, s, BracketForm::E4);
    for (std::uint64_t j = 2; j < 2 * pn; ++j)
        if (!is_smooth(j, ps)) r -= Rat::recip(ipow(j, s));
    for (std::uint64_t j = 2 * pn; j <= cutoff; ++j)
        if (is_smooth(j, ps)) r += Rat::recip(ipow(j, s));
    return r;
}

}  // namespace primerec
