#pragma once

/**
 * @file driver.hpp
 * @brief Runs the recursion: s schedule, backend selection, ladders, sweeps.
 *
 * The schedule doubles s from s_start up to s_max. At each s the bracket is
 * evaluated and the Bertrand window scanned for a certified candidate.
 *
 * Backends:
 *   exact   Rat throughout.
 *   auto    Dyadic intervals at s*ceil(log2(2p_n)) + 32 bits, doubling up to
 *           prec_cap_multiplier times that floor; exact if still indecisive.
 *   dyadic  The same precision ladder without the exact referee. An s that
 *           stays indecisive at the cap is treated as not certified.
 *
 * Every certified m is cross-checked against the trial-division oracle;
 * a mismatch throws InternalInconsistency.
 */

#include "primerec/arith.hpp"
#include "primerec/bracket.hpp"
#include "primerec/certifier.hpp"
#include "primerec/primes.hpp"
#include "primerec/root_locator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace primerec {

enum class Backend { exact, dyadic, automatic };

inline std::string_view to_string(Backend b) {
    switch (b) {
    case Backend::exact: return "exact";
    case Backend::dyadic: return "dyadic";
    case Backend::automatic: return "auto";
    }
    return "?";
}

inline std::optional<Backend> parse_backend(std::string_view s) {
    if (s == "exact") return Backend::exact;
    if (s == "dyadic") return Backend::dyadic;
    if (s == "auto") return Backend::automatic;
    return std::nullopt;
}

struct DriverOptions {
    BracketForm form = BracketForm::E4;
    Backend backend = Backend::automatic;
    unsigned s_start = 4;
    unsigned s_max = 4096;
    unsigned prec_cap_multiplier = 64;

    void validate() const {
        if (s_start < 2) throw std::invalid_argument("s_start must be >= 2");
        if (s_max < s_start) throw std::invalid_argument("s_max must be >= s_start");
        if (prec_cap_multiplier < 1) throw std::invalid_argument("prec_cap_multiplier must be >= 1");
    }
};

/// s_start, 2 s_start, 4 s_start, ... up to s_max.
inline std::vector<unsigned> doubling_schedule(unsigned s_start, unsigned s_max) {
    std::vector<unsigned> out;
    for (unsigned long long s = s_start; s <= s_max; s *= 2) out.push_back(static_cast<unsigned>(s));
    return out;
}

struct NotConverged : std::runtime_error {
    explicit NotConverged(unsigned s_max_)
        : std::runtime_error("no certificate up to s_max=" + std::to_string(s_max_)), s_max(s_max_) {}
    unsigned s_max;
};

/// Result of evaluating and scanning at a single s.
struct Evaluation {
    Backend backend_used = Backend::exact;  // exact or dyadic
    unsigned prec = 0;                      // 0 for exact
    Log2Field b_log2;                       // of the requested form
    std::size_t operand_bits = 0;
    bool decided = false;                   // false only for pure dyadic at the cap
    std::optional<RawEstimate> raw;
    std::optional<Certificate> certificate;
};

namespace detail {

inline std::optional<std::uint64_t> root_of(const Rat& b, unsigned s) {
    if (b.sign() <= 0 || b > Rat{1}) return std::nullopt;
    return bracket_root(b, s);
}

// nullopt when the interval does not pin down the raw estimate.
inline std::optional<std::optional<RawEstimate>> raw_from(const DyadicInterval& b, const PrimeSeq& ps,
                                                          unsigned s) {
    const auto pos = DyadicField::positive(b);
    if (!pos) return std::nullopt;
    if (!*pos) return std::optional<RawEstimate>{};
    const auto a = root_of(b.lo(), s);
    const auto c = root_of(b.hi(), s);
    if (!a || !c || *a != *c) return std::nullopt;
    return std::optional<RawEstimate>{RawEstimate{*a, candidate_window(ps).contains(*a)}};
}

inline std::optional<std::optional<RawEstimate>> raw_from(const Rat& b, const PrimeSeq& ps, unsigned s) {
    return std::optional<std::optional<RawEstimate>>(raw_estimate_of(b, ps, s));
}

template <class Field>
Evaluation evaluate_with(const Field& f, const PrimeSeq& ps, unsigned s, BracketForm form, bool want_raw) {
    Evaluation ev;
    const auto b_form = eval_bracket(f, ps, s, form);
    ev.b_log2 = report_log2(b_form);
    ev.operand_bits = b_form.bits();
    // Certification always runs on E4; E1T is divided back by the product.
    const auto b_e4 = form == BracketForm::E4 ? b_form : b_form / euler_factor_prod(f, ps, s, false);
    const auto scan = certify_scan_with(f, ps, s, b_e4);
    if (!scan) return ev;
    if (want_raw) {
        auto raw = raw_from(b_form, ps, s);
        if (!raw) return ev;
        ev.raw = *raw;
    }
    ev.certificate = scan->hit;
    ev.decided = true;
    return ev;
}

}  // namespace detail

/// Evaluate and scan at one s with the given backend.
inline Evaluation evaluate_at(const PrimeSeq& ps, unsigned s, BracketForm form, Backend backend,
                              unsigned prec_cap_multiplier, bool want_raw = false) {
    if (backend != Backend::exact) {
        const unsigned floor = recommended_prec(ps, s);
        const unsigned cap = floor * prec_cap_multiplier;
        for (unsigned prec = floor;; prec = std::min(prec * 2, cap)) {
            auto ev = detail::evaluate_with(DyadicField{prec}, ps, s, form, want_raw);
            ev.backend_used = Backend::dyadic;
            ev.prec = prec;
            if (ev.decided || (backend == Backend::dyadic && prec >= cap)) return ev;
            if (prec >= cap) break;
        }
    }
    auto ev = detail::evaluate_with(ExactField{}, ps, s, form, want_raw);
    ev.backend_used = Backend::exact;
    return ev;
}

struct StepStats {
    unsigned s_used = 0;
    Backend backend_used = Backend::exact;
    unsigned prec = 0;
    std::uint64_t elapsed_ns = 0;
    std::size_t operand_bits = 0;
};

struct NextPrimeResult {
    std::uint64_t m = 0;
    Certificate certificate;
    StepStats stats;
};

namespace detail {

inline std::uint64_t elapsed_since(std::chrono::steady_clock::time_point t0) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count());
}

inline void cross_check(const PrimeSeq& ps, std::uint64_t m) {
    const auto truth = oracle_next_prime(ps);
    if (m != truth)
        throw InternalInconsistency("certified " + std::to_string(m) + " but next prime after " +
                                    std::to_string(ps.back()) + " is " + std::to_string(truth));
}

}  // namespace detail

inline NextPrimeResult next_prime(const PrimeSeq& ps, const DriverOptions& opts = {}) {
    opts.validate();
    const auto t0 = std::chrono::steady_clock::now();
    for (const unsigned s : doubling_schedule(opts.s_start, opts.s_max)) {
        const auto ev = evaluate_at(ps, s, opts.form, opts.backend, opts.prec_cap_multiplier);
        if (!ev.certificate) continue;
        detail::cross_check(ps, ev.certificate->m);
        NextPrimeResult r;
        r.m = ev.certificate->m;
        r.certificate = *ev.certificate;
        r.stats = {s, ev.backend_used, ev.prec, detail::elapsed_since(t0), ev.operand_bits};
        return r;
    }
    throw NotConverged(opts.s_max);
}

struct LadderStep {
    std::uint64_t n = 0;  // seed length; p_next is p_{n+1}
    std::uint64_t p_next = 0;
    unsigned s_used = 0;
    Backend backend_used = Backend::exact;
    unsigned prec = 0;
    Certificate certificate;
    std::uint64_t elapsed_ns = 0;
    std::size_t operand_bits = 0;
};

struct LadderReport {
    std::vector<std::uint64_t> primes{2};
    std::vector<LadderStep> steps;
};

struct LadderNotConverged : NotConverged {
    LadderNotConverged(unsigned s_max_, LadderReport partial_)
        : NotConverged(s_max_), partial(std::move(partial_)) {}
    LadderReport partial;
};

/// Iterate next_prime from the seed [2] until n_target primes are known.
inline LadderReport ladder(std::size_t n_target, const DriverOptions& opts = {}) {
    if (n_target < 1) throw std::invalid_argument("ladder: n_target must be >= 1");
    opts.validate();
    LadderReport report;
    PrimeSeq ps{2};
    while (ps.size() < n_target) {
        NextPrimeResult r;
        try {
            r = next_prime(ps, opts);
        } catch (const NotConverged& e) {
            throw LadderNotConverged(e.s_max, std::move(report));
        }
        report.steps.push_back({ps.size(), r.m, r.stats.s_used, r.stats.backend_used, r.stats.prec,
                                r.certificate, r.stats.elapsed_ns, r.stats.operand_bits});
        report.primes.push_back(r.m);
        ps = ps.extended(r.m);
    }
    return report;
}

struct ConvergenceRecord {
    std::uint64_t n = 0;
    unsigned s = 0;
    BracketForm form = BracketForm::E4;
    Backend backend = Backend::exact;  // backend actually used
    Log2Field b_log2;
    std::optional<std::uint64_t> m_raw;
    bool in_window = false;
    std::optional<std::uint64_t> certified_m;
    std::uint64_t elapsed_ns = 0;
    std::size_t operand_bits = 0;
};

/// One record per (s, form), s-major, in input order. Grid points are
/// evaluated concurrently, at most hardware_concurrency at a time.
inline std::vector<ConvergenceRecord> converge_sweep(const PrimeSeq& ps, const std::vector<unsigned>& s_values,
                                                     const std::vector<BracketForm>& forms,
                                                     Backend backend = Backend::exact,
                                                     unsigned prec_cap_multiplier = 64) {
    for (auto s : s_values)
        if (s < 2) throw std::invalid_argument("converge_sweep: s must be >= 2");

    auto one = [&ps, backend, prec_cap_multiplier](unsigned s, BracketForm form) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto ev = evaluate_at(ps, s, form, backend, prec_cap_multiplier, true);
        ConvergenceRecord rec;
        rec.n = ps.size();
        rec.s = s;
        rec.form = form;
        rec.backend = ev.backend_used;
        rec.b_log2 = ev.b_log2;
        if (ev.raw) {
            rec.m_raw = ev.raw->m_raw;
            rec.in_window = ev.raw->in_window;
        }
        if (ev.certificate) {
            detail::cross_check(ps, ev.certificate->m);
            rec.certified_m = ev.certificate->m;
        }
        rec.operand_bits = ev.operand_bits;
        rec.elapsed_ns = detail::elapsed_since(t0);
        return rec;
    };

    std::vector<std::pair<unsigned, BracketForm>> grid;
    for (auto s : s_values)
        for (auto form : forms) grid.emplace_back(s, form);

    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ConvergenceRecord> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); i += width) {
        std::vector<std::future<ConvergenceRecord>> batch;
        for (std::size_t k = i; k < std::min(grid.size(), i + width); ++k)
            batch.push_back(std::async(std::launch::async, one, grid[k].first, grid[k].second));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

}  // namespace primerec
