#pragma once

// Integer part of b^(-1/s) by exact power comparison: the unique m >= 1 with
//   (m+1)^-s < b <= m^-s
// Ties (b == m^-s) resolve to m.

#include "primerec/arith.hpp"
#include "primerec/bracket.hpp"
#include "primerec/primes.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

namespace primerec {

struct NonpositiveBracket : std::domain_error {
    NonpositiveBracket() : std::domain_error("bracket value is not positive") {}
};

struct RawEstimate {
    std::uint64_t m_raw;
    bool in_window;

    friend bool operator==(const RawEstimate&, const RawEstimate&) = default;
};

namespace detail {

// b <= m^-s
inline bool within_recip_power(const Rat& b, std::uint64_t m, unsigned s) {
    return compare_to_recip_power(b, m, s) != std::strong_ordering::greater;
}

// Largest m in [lo, hi) with within(m), given within(lo) and !within(hi).
inline std::uint64_t bisect_root(const Rat& b, unsigned s, std::uint64_t lo, std::uint64_t hi) {
    while (hi - lo > 1) {
        const auto mid = lo + (hi - lo) / 2;
        if (within_recip_power(b, mid, s)) lo = mid;
        else hi = mid;
    }
    return lo;
}

}  // namespace detail

inline std::uint64_t bracket_root(const Rat& b, unsigned s) {
    if (b.sign() <= 0) throw NonpositiveBracket();
    if (b > Rat{1}) throw std::domain_error("bracket_root: b > 1");
    if (s == 0) throw std::domain_error("bracket_root: s must be positive");
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (detail::within_recip_power(b, hi, s)) {
        if (hi > std::numeric_limits<std::uint64_t>::max() / 4)
            throw std::overflow_error("bracket_root: root exceeds 64 bits");
        lo = hi;
        hi *= 2;
    }
    return detail::bisect_root(b, s, lo, hi);
}

/// Same result as bracket_root(b, s), searching the Bertrand window first.
inline std::uint64_t bracket_root(const Rat& b, unsigned s, IntRange window) {
    if (b.sign() <= 0) throw NonpositiveBracket();
    if (b > Rat{1}) throw std::domain_error("bracket_root: b > 1");
    if (detail::within_recip_power(b, window.lo, s) && !detail::within_recip_power(b, window.hi + 1, s))
        return detail::bisect_root(b, s, window.lo, window.hi + 1);
    return bracket_root(b, s);
}

/// Raw estimate for an already evaluated bracket value; nullopt when b <= 0.
inline std::optional<RawEstimate> raw_estimate_of(const Rat& b, const PrimeSeq& ps, unsigned s) {
    if (b.sign() <= 0) return std::nullopt;
    const auto window = candidate_window(ps);
    const auto m = bracket_root(b, s, window);
    return RawEstimate{m, window.contains(m)};
}

inline std::optional<RawEstimate> raw_estimate(const PrimeSeq& ps, unsigned s, BracketForm form) {
    return raw_estimate_of(eval_bracket_exact(ps, s, form), ps, s);
}

}  // namespace primerec
