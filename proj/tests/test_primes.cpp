#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "primerec/primes.hpp"

using namespace primerec;
using V = std::vector<std::uint64_t>;

TEST_CASE("sieve_upto", "[primes]") {
    CHECK(sieve_upto(10) == V{2, 3, 5, 7});
    CHECK(sieve_upto(2) == V{2});
    CHECK(sieve_upto(30) == V{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(sieve_upto(1).empty());
    CHECK(sieve_upto(0).empty());
}

TEST_CASE("sieve and first_primes agree with trial division", "[primes]") {
    CHECK(sieve_upto(5000) == [] {
        V out;
        for (std::uint64_t v = 2; v <= 5000; ++v)
            if (oracle::is_prime(v)) out.push_back(v);
        return out;
    }());
    for (std::size_t n : {1u, 2u, 5u, 6u, 26u, 100u, 1000u}) CHECK(first_primes(n) == oracle::first_primes(n));
}

TEST_CASE("PrimeSeq validates its seed", "[primes]") {
    CHECK_NOTHROW(PrimeSeq{2, 3, 5, 7});
    CHECK_THROWS_AS(PrimeSeq(V{}), std::invalid_argument);
    CHECK_THROWS_AS((PrimeSeq{3, 5}), std::invalid_argument);
    CHECK_THROWS_AS((PrimeSeq{2, 5}), std::invalid_argument);
    CHECK_THROWS_AS((PrimeSeq{2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS((PrimeSeq{2, 3, 3}), std::invalid_argument);
    CHECK(PrimeSeq::first(4) == PrimeSeq{2, 3, 5, 7});
    CHECK(PrimeSeq{2, 3}.extended(5) == PrimeSeq{2, 3, 5});
    CHECK_THROWS_AS((PrimeSeq{2, 3}.extended(7)), std::invalid_argument);
}

TEST_CASE("oracle_next_prime", "[primes]") {
    CHECK(oracle_next_prime(PrimeSeq{2}) == 3);
    CHECK(oracle_next_prime(PrimeSeq{2, 3, 5}) == 7);
    CHECK(oracle_next_prime(PrimeSeq::first(25)) == 101);
}

TEST_CASE("is_smooth", "[primes]") {
    CHECK(is_smooth(12, PrimeSeq{2, 3}));
    CHECK_FALSE(is_smooth(10, PrimeSeq{2, 3}));
    CHECK(is_smooth(1, PrimeSeq{2}));
    CHECK(is_smooth(1024, PrimeSeq{2}));
    CHECK_FALSE(is_smooth(3, PrimeSeq{2}));
}

TEST_CASE("candidate_window", "[primes]") {
    CHECK(candidate_window(PrimeSeq{2}) == IntRange{3, 3});
    CHECK(candidate_window(PrimeSeq{2, 3}) == IntRange{4, 5});
    CHECK(candidate_window(PrimeSeq{2, 3, 5, 7}) == IntRange{8, 13});
}

TEST_CASE("smallest non-smooth integer is the next prime", "[primes][property]") {
    for (std::size_t n = 1; n <= 15; ++n) {
        const auto ps = PrimeSeq::first(n);
        std::uint64_t j = 2;
        while (is_smooth(j, ps)) ++j;
        CHECK(j == oracle_next_prime(ps));
    }
}

TEST_CASE("the next prime lies in the Bertrand window", "[primes][property]") {
    const auto all = first_primes(1001);
    for (std::size_t n = 1; n <= 1000; ++n) {
        const IntRange w{all[n - 1] + 1, 2 * all[n - 1] - 1};
        REQUIRE(w.contains(all[n]));
    }
    // and through the public path for a few seeds
    for (std::size_t n : {1u, 10u, 100u}) {
        const auto ps = PrimeSeq::first(n);
        CHECK(candidate_window(ps).contains(oracle_next_prime(ps)));
    }
}
