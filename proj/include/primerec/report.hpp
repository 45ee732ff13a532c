#pragma once

// CSV and JSON renderings. Layouts are fixed (schema version 1): comma
// separator, LF line endings, header row always present. Rationals are
// rendered "num/den"; log2 magnitudes carry 9 fractional digits and are for
// reading only.

#include "primerec/certifier.hpp"
#include "primerec/driver.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace primerec {

inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kLadderCsvHeader = "n,p_next,s_used,backend,elapsed_ns,operand_bits";
inline constexpr std::string_view kConvergeCsvHeader =
    "n,s,form,backend,b_log2,m_raw,in_window,certified_m,elapsed_ns,operand_bits";
inline constexpr std::string_view kBenchCsvHeader = "backend,n,p_next,s_used,prec,elapsed_ns,operand_bits";

namespace detail {

inline const char* json_bool(bool b) { return b ? "true" : "false"; }

template <class T>
std::string opt_text(const std::optional<T>& v) {
    return v ? std::to_string(*v) : "none";
}

}  // namespace detail

/// Exactly the keys n, s, m, b_log2, ub_next_log2, lb_prev_log2,
/// passed_upper, passed_lower, passed, in that order.
inline std::string certificate_json(const Certificate& c) {
    std::ostringstream os;
    os << "{\"n\":" << c.n << ",\"s\":" << c.s << ",\"m\":" << c.m << ",\"b_log2\":" << c.b_log2.json()
       << ",\"ub_next_log2\":" << c.ub_next_log2.json() << ",\"lb_prev_log2\":" << c.lb_prev_log2.json()
       << ",\"passed_upper\":" << detail::json_bool(c.passed_upper)
       << ",\"passed_lower\":" << detail::json_bool(c.passed_lower)
       << ",\"passed\":" << detail::json_bool(c.passed) << "}";
    return os.str();
}

inline std::string next_prime_json(const NextPrimeResult& r) {
    std::ostringstream os;
    os << "{\"m\":" << r.m << ",\"s_used\":" << r.stats.s_used << ",\"backend\":\""
       << to_string(r.stats.backend_used) << "\",\"prec\":" << r.stats.prec
       << ",\"elapsed_ns\":" << r.stats.elapsed_ns << ",\"operand_bits\":" << r.stats.operand_bits
       << ",\"certificate\":" << certificate_json(r.certificate) << "}";
    return os.str();
}

inline void write_ladder_csv(std::ostream& os, const LadderReport& report) {
    os << kLadderCsvHeader << '\n';
    for (const auto& st : report.steps)
        os << st.n << ',' << st.p_next << ',' << st.s_used << ',' << to_string(st.backend_used) << ','
           << st.elapsed_ns << ',' << st.operand_bits << '\n';
}

inline void write_ladder_json(std::ostream& os, const LadderReport& report) {
    os << "{\"schema\":" << kSchemaVersion << ",\"primes\":[";
    for (std::size_t i = 0; i < report.primes.size(); ++i) os << (i ? "," : "") << report.primes[i];
    os << "],\"steps\":[";
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const auto& st = report.steps[i];
        os << (i ? "," : "") << "{\"n\":" << st.n << ",\"p_next\":" << st.p_next << ",\"s_used\":" << st.s_used
           << ",\"backend\":\"" << to_string(st.backend_used) << "\",\"prec\":" << st.prec
           << ",\"elapsed_ns\":" << st.elapsed_ns << ",\"operand_bits\":" << st.operand_bits
           << ",\"certificate\":" << certificate_json(st.certificate) << "}";
    }
    os << "]}\n";
}

inline void write_converge_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
    os << kConvergeCsvHeader << '\n';
    for (const auto& r : records)
        os << r.n << ',' << r.s << ',' << to_string(r.form) << ',' << to_string(r.backend) << ','
           << r.b_log2.text() << ',' << detail::opt_text(r.m_raw) << ',' << (r.in_window ? "true" : "false")
           << ',' << detail::opt_text(r.certified_m) << ',' << r.elapsed_ns << ',' << r.operand_bits << '\n';
}

struct BenchRow {
    std::string backend;  // requested backend
    LadderStep step;
};

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << kBenchCsvHeader << '\n';
    for (const auto& r : rows)
        os << r.backend << ',' << r.step.n << ',' << r.step.p_next << ',' << r.step.s_used << ','
           << r.step.prec << ',' << r.step.elapsed_ns << ',' << r.step.operand_bits << '\n';
}

}  // namespace primerec
