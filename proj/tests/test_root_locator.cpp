#include <catch2/catch_amalgamated.hpp>

#include "primerec/driver.hpp"
#include "primerec/root_locator.hpp"

#include <random>

using namespace primerec;

namespace {

Rat q(long n, long d) { return Rat(mpz_class(n), mpz_class(d)); }

// Linear scan: largest m with m^s * b <= 1.
std::uint64_t scan_root(const Rat& b, unsigned s) {
    std::uint64_t m = 1;
    while (mpq_class(b.mpq() * mpq_class(ipow(m + 1, s))) <= 1) ++m;
    return m;
}

}  // namespace

TEST_CASE("bracket_root examples", "[root]") {
    CHECK(bracket_root(q(1, 36), 2) == 6);
    CHECK(bracket_root(q(53, 6480), 4) == 3);
    CHECK(bracket_root(Rat{1}, 2) == 1);
    CHECK(bracket_root(Rat{1}, 17) == 1);
    CHECK_THROWS_AS(bracket_root(Rat{}, 2), NonpositiveBracket);
    CHECK_THROWS_AS(bracket_root(q(-1, 5), 2), NonpositiveBracket);
    CHECK_THROWS_AS(bracket_root(q(3, 2), 2), std::domain_error);
}

TEST_CASE("ties resolve to the left end of the bracket", "[root]") {
    for (std::uint64_t m = 1; m <= 40; ++m)
        for (unsigned s : {2u, 3u, 7u}) REQUIRE(bracket_root(Rat::recip(ipow(m, s)), s) == m);
}

TEST_CASE("bracket_root agrees with a linear scan", "[root][property]") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(1, 50);
    std::uniform_int_distribution<long> den(1, 200000);
    std::uniform_int_distribution<unsigned> sd(1, 32);
    for (int trial = 0; trial < 2000; ++trial) {
        long a = num(rng);
        long d = den(rng);
        if (a > d) std::swap(a, d);
        const Rat b = q(a, d);
        const unsigned s = sd(rng);
        REQUIRE(bracket_root(b, s) == scan_root(b, s));
        REQUIRE(bracket_root(b, s, IntRange{3, 9}) == scan_root(b, s));
    }
}

TEST_CASE("bracket_root is nonincreasing in b", "[root][property]") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(1, 1000);
    std::uniform_int_distribution<unsigned> sd(2, 16);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned s = sd(rng);
        const long d = 1000000;
        long a = num(rng);
        long c = num(rng);
        if (a > c) std::swap(a, c);
        REQUIRE(bracket_root(q(a, d), s) >= bracket_root(q(c, d), s));
    }
}

TEST_CASE("raw_estimate", "[root]") {
    const auto a = raw_estimate(PrimeSeq{2}, 2, BracketForm::E4);
    REQUIRE(a);
    CHECK(a->m_raw == 6);
    CHECK_FALSE(a->in_window);

    const auto b = raw_estimate(PrimeSeq{2}, 4, BracketForm::E4);
    REQUIRE(b);
    CHECK(b->m_raw == 3);
    CHECK(b->in_window);

    CHECK_FALSE(raw_estimate(PrimeSeq{2, 3}, 2, BracketForm::E4).has_value());
}

// floor(b^(-1/s)) tends to p_{n+1} only when b approaches p_{n+1}^-s from
// below; when the next non-smooth terms outweigh the smooth tail it settles on
// p_{n+1} - 1 instead. Either way the settled value is pinned by the sign of
// E4 * p^s - 1.
TEST_CASE("raw estimates settle next to the next prime", "[root][property]") {
    const auto schedule = doubling_schedule(8, 128);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto ps = PrimeSeq::first(n);
        const auto p = oracle_next_prime(ps);
        for (const unsigned s : doubling_schedule(16, 128)) {
            const Rat b = eval_bracket_exact(ps, s, BracketForm::E4);
            const auto est = raw_estimate_of(b, ps, s);
            INFO("n = " << n << ", s = " << s);
            REQUIRE(est);
            const bool from_below = b * Rat(ipow(p, s), mpz_class(1)) > Rat{1};
            REQUIRE(est->m_raw == (from_below ? p - 1 : p));
            REQUIRE(est->in_window);
        }
    }
    // The first three seeds converge onto the prime itself by s = 8.
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto ps = PrimeSeq::first(n);
        for (const unsigned s : schedule) REQUIRE(raw_estimate(ps, s, BracketForm::E4)->m_raw == oracle_next_prime(ps));
    }
    // n = 4 (p = 11) is the first seed that settles below.
    CHECK(raw_estimate(PrimeSeq::first(4), 128, BracketForm::E4)->m_raw == 10);
}
