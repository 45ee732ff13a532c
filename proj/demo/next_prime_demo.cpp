// Certify the primes after 2, 3, 5, 7 and print what each certificate says.

#include "primerec.hpp"

#include <iostream>

int main() {
    using namespace primerec;
    PrimeSeq ps{2};
    for (int i = 0; i < 4; ++i) {
        const auto r = next_prime(ps);
        std::cout << "after " << ps.back() << ": " << r.m << " (s=" << r.stats.s_used << ", "
                  << to_string(r.stats.backend_used) << ")\n  " << certificate_json(r.certificate) << '\n';
        ps = ps.extended(r.m);
    }

    // The bracket itself, exactly.
    std::cout << "E4([2], 4) = " << eval_bracket_exact(PrimeSeq{2}, 4, BracketForm::E4).str() << '\n';
}
