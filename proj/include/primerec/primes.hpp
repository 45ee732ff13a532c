#pragma once

// Ground-truth primes, independent of the recursion. Trial division and a
// plain Eratosthenes sieve are enough at the sizes primerec runs at.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace primerec {

inline bool is_prime_trial(std::uint64_t v) {
    if (v < 2) return false;
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

/// All primes <= limit, ascending. Empty when limit < 2.
inline std::vector<std::uint64_t> sieve_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t k = i * i; k <= limit; k += i) composite[k] = true;
    }
    return out;
}

/// The first n primes.
inline std::vector<std::uint64_t> first_primes(std::size_t n) {
    if (n == 0) return {};
    std::uint64_t limit = 16;
    if (n >= 6) {
        const double x = static_cast<double>(n);
        limit = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
    }
    for (;;) {
        auto ps = sieve_upto(limit);
        if (ps.size() >= n) {
            ps.resize(n);
            return ps;
        }
        limit *= 2;
    }
}

/// p_1, ..., p_n: the consecutive primes starting at 2. Validated on
/// construction; every downstream guarantee assumes this.
class PrimeSeq {
public:
    explicit PrimeSeq(std::vector<std::uint64_t> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("PrimeSeq: empty seed");
        if (values_.front() != 2) throw std::invalid_argument("PrimeSeq: must start at 2");
        for (std::size_t i = 1; i < values_.size(); ++i) {
            const auto prev = values_[i - 1];
            const auto cur = values_[i];
            if (cur <= prev || !is_prime_trial(cur))
                throw std::invalid_argument("PrimeSeq: " + std::to_string(cur) + " is not prime or not increasing");
            for (auto v = prev + 1; v < cur; ++v)
                if (is_prime_trial(v))
                    throw std::invalid_argument("PrimeSeq: missing prime " + std::to_string(v));
        }
    }

    PrimeSeq(std::initializer_list<std::uint64_t> il) : PrimeSeq(std::vector<std::uint64_t>(il)) {}

    static PrimeSeq first(std::size_t n) { return PrimeSeq(first_primes(n)); }

    [[nodiscard]] const std::vector<std::uint64_t>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::uint64_t back() const { return values_.back(); }
    [[nodiscard]] std::uint64_t operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] auto begin() const { return values_.begin(); }
    [[nodiscard]] auto end() const { return values_.end(); }

    /// This sequence followed by p; p must be the next prime.
    [[nodiscard]] PrimeSeq extended(std::uint64_t p) const {
        auto v = values_;
        v.push_back(p);
        return PrimeSeq(std::move(v));
    }

    friend bool operator==(const PrimeSeq&, const PrimeSeq&) = default;

private:
    std::vector<std::uint64_t> values_;
};

/// Smallest prime above the last element, by incremental trial division.
inline std::uint64_t oracle_next_prime(const PrimeSeq& ps) {
    auto v = ps.back() + 1;
    while (!is_prime_trial(v)) ++v;
    return v;
}

/// True iff every prime factor of j is in ps (1 is smooth).
inline bool is_smooth(std::uint64_t j, const PrimeSeq& ps) {
    if (j == 0) throw std::domain_error("is_smooth: j must be positive");
    for (auto p : ps) {
        while (j % p == 0) j /= p;
        if (j == 1) return true;
    }
    return j == 1;
}

struct IntRange {
    std::uint64_t lo;
    std::uint64_t hi;  // inclusive

    [[nodiscard]] bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// [p_n + 1, 2 p_n - 1], which holds p_{n+1} by Bertrand's postulate.
inline IntRange candidate_window(const PrimeSeq& ps) {
    return {ps.back() + 1, 2 * ps.back() - 1};
}

}  // namespace primerec
