#pragma once

/**
 * @file cli.hpp
 * @brief The primerec command line, callable in-process.
 *
 * Subcommands: next, ladder, converge, identity-check, selftest, bench.
 * Exit codes: 0 ok, 1 not converged, 2 invalid input, 3 internal
 * inconsistency or identity failure.
 */

#include "primerec/bracket.hpp"
#include "primerec/certifier.hpp"
#include "primerec/driver.hpp"
#include "primerec/primes.hpp"
#include "primerec/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace primerec::cli {

enum ExitCode : int { kOk = 0, kNotConverged = 1, kInvalidInput = 2, kInconsistent = 3 };

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

inline std::uint64_t parse_uint(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("not a nonnegative integer: '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw InvalidInput("integer out of range: '" + s + "'");
    }
}

/// "A:B" (inclusive) or "A".
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) {
        const auto v = parse_uint(parts[0]);
        return {v, v};
    }
    if (parts.size() != 2) throw InvalidInput("expected A:B, got '" + s + "'");
    const auto a = parse_uint(parts[0]);
    const auto b = parse_uint(parts[1]);
    if (a > b) throw InvalidInput("empty range '" + s + "'");
    return {a, b};
}

/// "A:B:STEP", "A:B", or a comma list.
inline std::vector<unsigned> parse_s_list(const std::string& s) {
    std::vector<std::uint64_t> vals;
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 2 && parts.size() != 3) throw InvalidInput("expected A:B:STEP, got '" + s + "'");
        const auto a = parse_uint(parts[0]);
        const auto b = parse_uint(parts[1]);
        const auto step = parts.size() == 3 ? parse_uint(parts[2]) : 1;
        if (step == 0) throw InvalidInput("step must be positive");
        for (auto v = a; v <= b; v += step) vals.push_back(v);
    } else {
        for (const auto& p : split(s, ',')) vals.push_back(parse_uint(p));
    }
    std::vector<unsigned> out;
    for (auto v : vals) {
        if (v < 2 || v > 1u << 20) throw InvalidInput("s values must lie in [2, 2^20]");
        out.push_back(static_cast<unsigned>(v));
    }
    return out;
}

/// Seed from --primes (must be exactly the first k primes) or --n.
inline PrimeSeq parse_seed(const std::string& primes, std::optional<std::uint64_t> n) {
    if (!primes.empty() && n) throw InvalidInput("give either --primes or --n, not both");
    if (!primes.empty()) {
        std::vector<std::uint64_t> vals;
        for (const auto& p : split(primes, ',')) vals.push_back(parse_uint(p));
        if (vals.empty() || vals != first_primes(vals.size()))
            throw InvalidInput("--primes must list the consecutive primes starting at 2");
        return PrimeSeq(std::move(vals));
    }
    if (!n) throw InvalidInput("one of --primes or --n is required");
    if (*n < 1) throw InvalidInput("--n must be >= 1");
    return PrimeSeq::first(*n);
}

inline BracketForm parse_form_or_throw(const std::string& s) {
    const auto f = parse_form(s);
    if (!f) throw InvalidInput("unknown form '" + s + "'");
    return *f;
}

inline Backend parse_backend_or_throw(const std::string& s) {
    const auto b = parse_backend(s);
    if (!b) throw InvalidInput("unknown backend '" + s + "'");
    return *b;
}

struct DriverFlags {
    std::string form = "e4";
    std::string backend = "auto";
    unsigned s_start = 4;
    unsigned s_max = 4096;

    void attach(CLI::App& app) {
        app.add_option("--form", form, "e4 | e1t");
        app.add_option("--backend", backend, "exact | dyadic | auto");
        app.add_option("--s-start", s_start, "first s of the doubling schedule");
        app.add_option("--s-max", s_max, "last admissible s");
    }

    [[nodiscard]] DriverOptions options() const {
        DriverOptions o;
        o.form = parse_form_or_throw(form);
        o.backend = parse_backend_or_throw(backend);
        o.s_start = s_start;
        o.s_max = s_max;
        try {
            o.validate();
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(e.what());
        }
        return o;
    }
};

// Writes to --out when given, otherwise to the command's stdout.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
    if (path.empty()) {
        fn(out);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open --out " + path);
    fn(f);
}

inline bool run_selftest(std::size_t n, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    int failures = 0;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        if (!ok) ++failures;
    };

    DriverOptions auto_opts;
    const auto lad = ladder(n, auto_opts);
    report(lad.primes == first_primes(n), "ladder-fidelity",
           "ladder(" + std::to_string(n) + ") vs sieve, last prime " + std::to_string(lad.primes.back()));

    const std::size_t sweep_n = std::min<std::size_t>(n, 12);
    std::size_t passing = 0;
    bool sound = true;
    for (std::size_t k = 1; k <= sweep_n; ++k) {
        const auto ps = PrimeSeq::first(k);
        for (unsigned s : {2u, 4u, 8u, 16u, 32u, 64u}) {
            const auto hit = certify_scan(ps, s, eval_bracket_exact(ps, s, BracketForm::E4));
            if (!hit) continue;
            ++passing;
            sound = sound && hit->m == oracle_next_prime(ps);
        }
    }
    report(sound, "certificate-soundness",
           "n<=" + std::to_string(sweep_n) + ", s in {2..64}, " + std::to_string(passing) + " passing certificates");

    DriverOptions exact_opts;
    exact_opts.backend = Backend::exact;
    DriverOptions dyadic_opts;
    dyadic_opts.backend = Backend::dyadic;
    const auto le = ladder(n, exact_opts);
    const auto ld = ladder(n, dyadic_opts);
    bool agree = le.primes == ld.primes && le.steps.size() == ld.steps.size();
    for (std::size_t i = 0; agree && i < le.steps.size(); ++i) {
        const auto& st = le.steps[i];
        agree = st.s_used == ld.steps[i].s_used;
        const auto ps = PrimeSeq(std::vector<std::uint64_t>(le.primes.begin(), le.primes.begin() + st.n));
        const auto exact_b = eval_bracket_exact(ps, st.s_used, BracketForm::E4);
        const auto iv = eval_bracket_dyadic(ps, st.s_used, BracketForm::E4, recommended_prec(ps, st.s_used));
        agree = agree && iv.contains(exact_b);
    }
    report(agree, "backend-agreement", "exact vs dyadic ladders: primes, s_used, containment");

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    out << "selftest: " << (3 - failures) << "/3 checks passed in " << ms << " ms\n";
    return failures == 0;
}

}  // namespace detail

/// Run one invocation. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"primerec: next primes from the first n primes, with certificates"};
    app.require_subcommand(1);

    // next
    auto* next = app.add_subcommand("next", "certify the next prime after a seed");
    std::string next_primes;
    std::optional<std::uint64_t> next_n;
    bool next_json = false;
    detail::DriverFlags next_flags;
    next->add_option("--primes", next_primes, "comma list of the first k primes");
    next->add_option("--n", next_n, "use the first K primes as the seed");
    next->add_flag("--json", next_json, "emit JSON");
    next_flags.attach(*next);

    // ladder
    auto* lad = app.add_subcommand("ladder", "iterate from the seed [2]");
    std::uint64_t lad_n = 0;
    std::string lad_emit = "csv";
    std::string lad_out;
    detail::DriverFlags lad_flags;
    lad->add_option("--n", lad_n, "number of primes to reach")->required();
    lad->add_option("--emit", lad_emit, "csv | json");
    lad->add_option("--out", lad_out, "output path (default stdout)");
    lad_flags.attach(*lad);

    // converge
    auto* conv = app.add_subcommand("converge", "raw estimates and certificates over an s grid");
    std::string conv_primes;
    std::optional<std::uint64_t> conv_n;
    std::string conv_s = "2:64:2";
    std::string conv_forms = "e4";
    std::string conv_backend = "exact";
    std::string conv_emit = "csv";
    std::string conv_out;
    conv->add_option("--primes", conv_primes, "comma list of the first k primes");
    conv->add_option("--n", conv_n, "use the first K primes as the seed");
    conv->add_option("--s-list", conv_s, "A:B:STEP or comma list");
    conv->add_option("--forms", conv_forms, "comma list of e4, e1t");
    conv->add_option("--backend", conv_backend, "exact | dyadic | auto");
    conv->add_option("--emit", conv_emit, "csv");
    conv->add_option("--out", conv_out, "output path (default stdout)");

    // identity-check
    auto* ident = app.add_subcommand("identity-check", "exact Euler-truncation and form identities");
    std::string id_n = "1:5";
    std::string id_big_n = "1:8";
    std::string id_s = "2:6";
    ident->add_option("--n", id_n, "A:B");
    ident->add_option("--big-n", id_big_n, "A:B");
    ident->add_option("--s", id_s, "A:B");

    // selftest
    auto* self = app.add_subcommand("selftest", "ladder, soundness and backend-agreement checks");
    std::uint64_t self_n = 26;
    self->add_option("--n", self_n, "ladder length");

    // bench
    auto* bench = app.add_subcommand("bench", "per-backend ladder timings");
    std::uint64_t bench_n = 26;
    std::string bench_backends = "exact,dyadic";
    std::string bench_out;
    bench->add_option("--n", bench_n, "ladder length");
    bench->add_option("--backends", bench_backends, "comma list of exact, dyadic, auto");
    bench->add_option("--out", bench_out, "output path (default stdout)");

    std::vector<std::string> argv_store{"primerec"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (next->parsed()) {
            const auto ps = detail::parse_seed(next_primes, next_n);
            const auto r = next_prime(ps, next_flags.options());
            if (next_json) {
                out << next_prime_json(r) << '\n';
            } else {
                out << r.m << '\n' << "certificate " << certificate_json(r.certificate) << '\n';
            }
            return kOk;
        }
        if (lad->parsed()) {
            if (lad_n < 1) throw InvalidInput("--n must be >= 1");
            if (lad_emit != "csv" && lad_emit != "json") throw InvalidInput("--emit must be csv or json");
            const auto opts = lad_flags.options();
            try {
                const auto report = ladder(lad_n, opts);
                detail::emit(lad_out, out, [&](std::ostream& os) {
                    if (lad_emit == "csv") write_ladder_csv(os, report);
                    else write_ladder_json(os, report);
                });
            } catch (const LadderNotConverged& e) {
                detail::emit(lad_out, out, [&](std::ostream& os) {
                    if (lad_emit == "csv") write_ladder_csv(os, e.partial);
                    else write_ladder_json(os, e.partial);
                });
                throw;
            }
            return kOk;
        }
        if (conv->parsed()) {
            const auto ps = detail::parse_seed(conv_primes, conv_n);
            if (conv_emit != "csv") throw InvalidInput("--emit must be csv");
            std::vector<BracketForm> forms;
            for (const auto& f : detail::split(conv_forms, ',')) forms.push_back(detail::parse_form_or_throw(f));
            const auto records = converge_sweep(ps, detail::parse_s_list(conv_s), forms,
                                                detail::parse_backend_or_throw(conv_backend));
            detail::emit(conv_out, out, [&](std::ostream& os) { write_converge_csv(os, records); });
            return kOk;
        }
        if (ident->parsed()) {
            const auto [n_lo, n_hi] = detail::parse_range(id_n);
            const auto [bn_lo, bn_hi] = detail::parse_range(id_big_n);
            const auto [s_lo, s_hi] = detail::parse_range(id_s);
            if (n_lo < 1) throw InvalidInput("--n must start at >= 1");
            if (s_lo < 2) throw InvalidInput("--s must start at >= 2");
            std::size_t checked = 0;
            std::size_t failed = 0;
            for (auto n = n_lo; n <= n_hi; ++n) {
                const auto ps = PrimeSeq::first(n);
                for (auto s = s_lo; s <= s_hi; ++s) {
                    const auto su = static_cast<unsigned>(s);
                    ++checked;
                    if (!form_identity_holds(ps, su)) {
                        ++failed;
                        err << "form identity fails: n=" << n << " s=" << s << '\n';
                    }
                    for (auto big = std::max(bn_lo, n); big <= bn_hi; ++big) {
                        ++checked;
                        if (!euler_truncation_identity(ps, big, su)) {
                            ++failed;
                            err << "Euler truncation identity fails: n=" << n << " big_n=" << big << " s=" << s
                                << '\n';
                        }
                    }
                }
            }
            out << "identity-check: " << (checked - failed) << "/" << checked << " identities hold\n";
            return failed == 0 ? kOk : kInconsistent;
        }
        if (self->parsed()) {
            if (self_n < 1) throw InvalidInput("--n must be >= 1");
            return detail::run_selftest(self_n, out) ? kOk : kInconsistent;
        }
        if (bench->parsed()) {
            if (bench_n < 1) throw InvalidInput("--n must be >= 1");
            std::vector<std::pair<std::string, Backend>> backends;
            for (const auto& b : detail::split(bench_backends, ','))
                backends.emplace_back(b, detail::parse_backend_or_throw(b));
            std::vector<LadderReport> reports;
            for (const auto& [name, b] : backends) {
                DriverOptions o;
                o.backend = b;
                reports.push_back(ladder(bench_n, o));
            }
            std::vector<BenchRow> rows;
            for (std::size_t i = 0; i + 1 < bench_n; ++i)
                for (std::size_t k = 0; k < backends.size(); ++k) rows.push_back({backends[k].first, reports[k].steps[i]});
            detail::emit(bench_out, out, [&](std::ostream& os) { write_bench_csv(os, rows); });
            return kOk;
        }
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NotConverged& e) {
        err << "not converged: " << e.what() << '\n';
        return kNotConverged;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kInconsistent;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace primerec::cli
