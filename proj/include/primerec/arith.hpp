#pragma once

/**
 * @file arith.hpp
 * @brief Exact rationals and outward-rounded dyadic intervals.
 *
 * Every numeric decision in primerec reduces to one of two primitives:
 *
 *   - Rat: an exact rational kept in lowest terms with a positive
 *     denominator. Equality is structural.
 *   - DyadicInterval: [lo * 2^-prec, hi * 2^-prec] with integer mantissas.
 *     Each operation rounds lo toward -inf and hi toward +inf, so an
 *     interval that encloses x still encloses f(x) afterwards.
 *
 * Comparing b against m^-s never takes a root: b = num/den and
 * b <=> m^-s  iff  num * m^s <=> den.
 */

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace primerec {

class Rat {
public:
    Rat() = default;
    Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)

    Rat(mpz_class num, mpz_class den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        q_.get_num() = std::move(num);
        q_.get_den() = std::move(den);
        q_.canonicalize();
    }

    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rat recip(const mpz_class& d) { return Rat(mpz_class(1), d); }

    [[nodiscard]] const mpz_class& num() const { return q_.get_num(); }
    [[nodiscard]] const mpz_class& den() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& mpq() const { return q_; }

    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }

    // max(bitlen(|num|), bitlen(den)); used for operand-size statistics.
    [[nodiscard]] std::size_t bits() const {
        const std::size_t a = num() == 0 ? 0 : mpz_sizeinbase(num().get_mpz_t(), 2);
        const std::size_t b = mpz_sizeinbase(den().get_mpz_t(), 2);
        return a > b ? a : b;
    }

    // Always "num/den", including integers ("3/1").
    [[nodiscard]] std::string str() const { return num().get_str() + "/" + den().get_str(); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(a.q_ / b.q_));
    }
    Rat operator-() const { return Rat(mpq_class(-q_)); }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        return cmp(a.q_, b.q_) <=> 0;
    }

private:
    mpq_class q_{0};
};

inline mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class ipow(std::uint64_t base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline std::size_t bit_length(const mpz_class& z) {
    return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

/// Exact q^e. Zero base with a nonpositive exponent is a domain error.
inline Rat rat_pow(const Rat& q, long e) {
    if (q.is_zero()) {
        if (e <= 0) throw std::domain_error("rat_pow: zero base with nonpositive exponent");
        return Rat{};
    }
    const unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1u
                                  : static_cast<unsigned long>(e);
    // num/den coprime implies num^k/den^k coprime.
    mpz_class n = ipow(q.num(), k);
    mpz_class d = ipow(q.den(), k);
    if (e < 0) std::swap(n, d);
    return Rat(std::move(n), std::move(d));
}

/// Exact ordering of b against m^-s, via b * m^s <=> 1.
inline std::strong_ordering compare_to_recip_power(const Rat& b, std::uint64_t m, unsigned s) {
    if (b.sign() <= 0) throw std::domain_error("compare_to_recip_power: b must be positive");
    if (m == 0 || s == 0) throw std::domain_error("compare_to_recip_power: m and s must be positive");
    const mpz_class lhs = b.num() * ipow(m, s);
    return cmp(lhs, b.den()) <=> 0;
}

/// log2(q) for reporting only. Works from leading bits, so the magnitude of
/// q may be far outside double range.
inline double approx_log2(const Rat& q) {
    if (q.sign() <= 0) throw std::domain_error("approx_log2: q must be positive");
    auto log2z = [](const mpz_class& z) {
        long exp = 0;
        const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());  // in [0.5, 1)
        return std::log2(mant) + static_cast<double>(exp);
    };
    return log2z(q.num()) - log2z(q.den());
}

/// [lo * 2^-prec, hi * 2^-prec].
class DyadicInterval {
public:
    DyadicInterval(mpz_class lo, mpz_class hi, unsigned prec)
        : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
        if (prec_ == 0) throw std::domain_error("DyadicInterval: prec must be positive");
        if (lo_ > hi_) throw std::domain_error("DyadicInterval: lo > hi");
    }

    static DyadicInterval point(long v, unsigned prec) {
        mpz_class m = mpz_class(v) << prec;
        return {m, m, prec};
    }

    /// Tightest enclosure of an exact rational.
    static DyadicInterval enclose(const Rat& q, unsigned prec) {
        const mpz_class scaled = q.num() << prec;
        mpz_class lo;
        mpz_class hi;
        mpz_fdiv_q(lo.get_mpz_t(), scaled.get_mpz_t(), q.den().get_mpz_t());
        mpz_cdiv_q(hi.get_mpz_t(), scaled.get_mpz_t(), q.den().get_mpz_t());
        return {std::move(lo), std::move(hi), prec};
    }

    [[nodiscard]] const mpz_class& lo_mant() const { return lo_; }
    [[nodiscard]] const mpz_class& hi_mant() const { return hi_; }
    [[nodiscard]] unsigned prec() const { return prec_; }

    [[nodiscard]] Rat lo() const { return Rat(lo_, mpz_class(1) << prec_); }
    [[nodiscard]] Rat hi() const { return Rat(hi_, mpz_class(1) << prec_); }
    [[nodiscard]] Rat width() const { return Rat(mpz_class(hi_ - lo_), mpz_class(1) << prec_); }
    [[nodiscard]] bool is_point() const { return lo_ == hi_; }

    [[nodiscard]] bool contains(const Rat& q) const {
        const mpz_class scaled = q.num() << prec_;
        return lo_ * q.den() <= scaled && scaled <= hi_ * q.den();
    }

    [[nodiscard]] std::size_t bits() const {
        const std::size_t a = bit_length(lo_);
        const std::size_t b = bit_length(hi_);
        return a > b ? a : b;
    }

    /// Same interval expressed at a finer precision (exact).
    [[nodiscard]] DyadicInterval at_prec(unsigned p) const {
        if (p < prec_) throw std::domain_error("DyadicInterval::at_prec: cannot coarsen exactly");
        return {lo_ << (p - prec_), hi_ << (p - prec_), p};
    }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

private:
    mpz_class lo_;
    mpz_class hi_;
    unsigned prec_;
};

/// Enclosure of j^-s of width at most one ulp.
inline DyadicInterval dy_recip_pow(std::uint64_t j, unsigned s, unsigned prec) {
    if (j == 0) throw std::domain_error("dy_recip_pow: j must be positive");
    if (prec == 0) throw std::domain_error("dy_recip_pow: prec must be positive");
    const mpz_class one = mpz_class(1) << prec;
    const mpz_class d = ipow(j, s);
    mpz_class lo;
    mpz_class hi;
    mpz_fdiv_q(lo.get_mpz_t(), one.get_mpz_t(), d.get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), one.get_mpz_t(), d.get_mpz_t());
    return {std::move(lo), std::move(hi), prec};
}

enum class DyOp { add, sub, mul };

namespace detail {

inline std::pair<DyadicInterval, DyadicInterval> common_prec(const DyadicInterval& a,
                                                             const DyadicInterval& b) {
    const unsigned p = a.prec() > b.prec() ? a.prec() : b.prec();
    return {a.at_prec(p), b.at_prec(p)};
}

inline mpz_class floor_shift(const mpz_class& z, unsigned k) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), k);
    return r;
}

inline mpz_class ceil_shift(const mpz_class& z, unsigned k) {
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), k);
    return r;
}

}  // namespace detail

inline DyadicInterval dy_arith(const DyadicInterval& a0, const DyadicInterval& b0, DyOp op) {
    auto [a, b] = detail::common_prec(a0, b0);
    const unsigned p = a.prec();
    switch (op) {
    case DyOp::add:
        return {a.lo_mant() + b.lo_mant(), a.hi_mant() + b.hi_mant(), p};
    case DyOp::sub:
        return {a.lo_mant() - b.hi_mant(), a.hi_mant() - b.lo_mant(), p};
    case DyOp::mul: {
        mpz_class c[4] = {a.lo_mant() * b.lo_mant(), a.lo_mant() * b.hi_mant(),
                          a.hi_mant() * b.lo_mant(), a.hi_mant() * b.hi_mant()};
        const mpz_class* mn = &c[0];
        const mpz_class* mx = &c[0];
        for (const auto& v : c) {
            if (v < *mn) mn = &v;
            if (v > *mx) mx = &v;
        }
        return {detail::floor_shift(*mn, p), detail::ceil_shift(*mx, p), p};
    }
    }
    throw std::logic_error("dy_arith: unknown op");
}

/// a / b for an interval b that excludes zero.
inline DyadicInterval dy_div(const DyadicInterval& a0, const DyadicInterval& b0) {
    auto [a, b] = detail::common_prec(a0, b0);
    if (b.lo_mant() <= 0 && b.hi_mant() >= 0)
        throw std::domain_error("dy_div: divisor interval contains zero");
    const unsigned p = a.prec();
    const mpz_class al = a.lo_mant() << p;
    const mpz_class ah = a.hi_mant() << p;
    std::optional<mpz_class> lo;
    std::optional<mpz_class> hi;
    for (const mpz_class* x : {&al, &ah}) {
        for (const mpz_class* y : {&b.lo_mant(), &b.hi_mant()}) {
            mpz_class f;
            mpz_class c;
            mpz_fdiv_q(f.get_mpz_t(), x->get_mpz_t(), y->get_mpz_t());
            mpz_cdiv_q(c.get_mpz_t(), x->get_mpz_t(), y->get_mpz_t());
            if (!lo || f < *lo) lo = std::move(f);
            if (!hi || c > *hi) hi = std::move(c);
        }
    }
    return {std::move(*lo), std::move(*hi), p};
}

inline DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    return dy_arith(a, b, DyOp::add);
}
inline DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    return dy_arith(a, b, DyOp::sub);
}
inline DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
    return dy_arith(a, b, DyOp::mul);
}
inline DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b) {
    return dy_div(a, b);
}

/// Certain ordering of two enclosures, or nullopt when they overlap.
inline std::optional<std::strong_ordering> certain_order(const DyadicInterval& a0,
                                                         const DyadicInterval& b0) {
    auto [a, b] = detail::common_prec(a0, b0);
    if (a.lo_mant() > b.hi_mant()) return std::strong_ordering::greater;
    if (a.hi_mant() < b.lo_mant()) return std::strong_ordering::less;
    if (a.is_point() && b.is_point()) return std::strong_ordering::equal;
    return std::nullopt;
}

}  // namespace primerec
