#include <catch2/catch_amalgamated.hpp>

#include "primerec/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using primerec::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    for (std::string f; std::getline(is, f, ',');) out.push_back(f);
    return out;
}

void check_certificate_schema(const nlohmann::json& c) {
    const std::set<std::string> expected{"n",           "s",         "m",           "b_log2",
                                         "ub_next_log2", "lb_prev_log2", "passed_upper", "passed_lower",
                                         "passed"};
    std::set<std::string> keys;
    for (auto it = c.begin(); it != c.end(); ++it) keys.insert(it.key());
    CHECK(keys == expected);
    CHECK(c["n"].is_number_integer());
    CHECK(c["s"].is_number_integer());
    CHECK(c["m"].is_number_integer());
    for (const char* k : {"b_log2", "ub_next_log2", "lb_prev_log2"})
        CHECK((c[k].is_number() || c[k].is_string()));
    for (const char* k : {"passed_upper", "passed_lower", "passed"}) CHECK(c[k].is_boolean());
}

}  // namespace

TEST_CASE("next --primes 2 --json", "[cli]") {
    const auto r = invoke({"next", "--primes", "2", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["m"] == 3);
    CHECK(j["s_used"] == 4);
    check_certificate_schema(j["certificate"]);
    CHECK(j["certificate"]["passed"] == true);
    CHECK(j["certificate"]["lb_prev_log2"] == "skipped");
    CHECK(j["certificate"]["ub_next_log2"] == "empty-sum");
}

TEST_CASE("next --n 3 prints 7", "[cli]") {
    const auto r = invoke({"next", "--n", "3"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).at(0) == "7");
}

TEST_CASE("next rejects bad seeds and options", "[cli]") {
    CHECK(invoke({"next", "--primes", "2,5"}).code == 2);
    CHECK(invoke({"next", "--primes", "3,5"}).code == 2);
    CHECK(invoke({"next", "--primes", "2,x"}).code == 2);
    CHECK(invoke({"next"}).code == 2);
    CHECK(invoke({"next", "--n", "0"}).code == 2);
    CHECK(invoke({"next", "--n", "3", "--primes", "2,3,5"}).code == 2);
    CHECK(invoke({"next", "--n", "3", "--form", "e3"}).code == 2);
    CHECK(invoke({"next", "--n", "3", "--backend", "gpu"}).code == 2);
    CHECK(invoke({"next", "--n", "3", "--s-start", "1"}).code == 2);
    CHECK(invoke({"bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
}

TEST_CASE("next exits 1 when the schedule is exhausted", "[cli]") {
    CHECK(invoke({"next", "--n", "10", "--s-start", "2", "--s-max", "8"}).code == 1);
}

TEST_CASE("next --form e1t", "[cli]") {
    const auto r = invoke({"next", "--primes", "2,3,5,7", "--form", "e1t", "--json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["m"] == 11);
}

TEST_CASE("ladder csv", "[cli]") {
    const auto r = invoke({"ladder", "--n", "26", "--emit", "csv"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 26);
    CHECK(ls[0] == "n,p_next,s_used,backend,elapsed_ns,operand_bits");
    CHECK(fields(ls.back()).at(1) == "101");
    CHECK(r.out.find('\r') == std::string::npos);

    const auto one = invoke({"ladder", "--n", "1"});
    REQUIRE(one.code == 0);
    CHECK(lines(one.out).size() == 1);

    CHECK(invoke({"ladder", "--n", "0"}).code == 2);
    CHECK(invoke({"ladder", "--n", "3", "--emit", "xml"}).code == 2);
}

TEST_CASE("ladder json and --out", "[cli]") {
    const std::string path = "primerec_test_ladder.json";
    const auto r = invoke({"ladder", "--n", "6", "--emit", "json", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["primes"] == nlohmann::json::array({2, 3, 5, 7, 11, 13}));
    REQUIRE(j["steps"].size() == 5);
    for (const auto& st : j["steps"]) check_certificate_schema(st["certificate"]);
    std::remove(path.c_str());
}

TEST_CASE("converge csv", "[cli]") {
    const auto a = invoke({"converge", "--primes", "2", "--s-list", "2,4", "--forms", "e4"});
    REQUIRE(a.code == 0);
    const auto ls = lines(a.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "n,s,form,backend,b_log2,m_raw,in_window,certified_m,elapsed_ns,operand_bits");
    const auto r2 = fields(ls[1]);
    CHECK(r2[1] == "2");
    CHECK(r2[4] == "-5.169925001");
    CHECK(r2[5] == "6");
    CHECK(r2[6] == "false");
    const auto r4 = fields(ls[2]);
    CHECK(r4[1] == "4");
    CHECK(r4[5] == "3");
    CHECK(r4[6] == "true");
    CHECK(r4[7] == "3");

    const auto neg = invoke({"converge", "--primes", "2,3", "--s-list", "2", "--forms", "e4"});
    REQUIRE(neg.code == 0);
    const auto nrow = fields(lines(neg.out).at(1));
    CHECK(nrow[4] == "nonpositive");
    CHECK(nrow[5] == "none");
    CHECK(nrow[7] == "none");

    const auto both = invoke({"converge", "--primes", "2", "--s-list", "4", "--forms", "e4,e1t"});
    REQUIRE(both.code == 0);
    const auto bl = lines(both.out);
    REQUIRE(bl.size() == 3);
    CHECK(fields(bl[1])[2] == "e4");
    CHECK(fields(bl[2])[2] == "e1t");
    CHECK(fields(bl[1])[7] == fields(bl[2])[7]);

    const auto range = invoke({"converge", "--n", "2", "--s-list", "2:10:4"});
    REQUIRE(range.code == 0);
    CHECK(lines(range.out).size() == 4);  // s = 2, 6, 10

    CHECK(invoke({"converge", "--primes", "2", "--s-list", "1,4"}).code == 2);
    CHECK(invoke({"converge", "--primes", "2", "--s-list", "4:2"}).code == 0);  // empty grid
    CHECK(invoke({"converge", "--primes", "2", "--forms", "e5"}).code == 2);
}

TEST_CASE("identity-check", "[cli]") {
    const auto r = invoke({"identity-check", "--n", "1:5", "--big-n", "1:8", "--s", "2:6"});
    CHECK(r.code == 0);
    // every (n, big_n) pair has big_n < n here, so only form identities run
    CHECK(invoke({"identity-check", "--n", "4:5", "--big-n", "1:3", "--s", "2:3"}).code == 0);
    CHECK(invoke({"identity-check", "--n", "0:2"}).code == 2);
    CHECK(invoke({"identity-check", "--s", "1:3"}).code == 2);
}

TEST_CASE("selftest --n 1", "[cli]") {
    const auto r = invoke({"selftest", "--n", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("3/3 checks passed") != std::string::npos);
}

TEST_CASE("bench", "[cli]") {
    const auto r = invoke({"bench", "--n", "8", "--backends", "exact,dyadic"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + 2 * 7);
    CHECK(ls[0] == "backend,n,p_next,s_used,prec,elapsed_ns,operand_bits");
    CHECK(fields(ls[1])[0] == "exact");
    CHECK(fields(ls[2])[0] == "dyadic");

    const auto one = invoke({"bench", "--n", "1"});
    REQUIRE(one.code == 0);
    CHECK(lines(one.out).size() == 1);

    CHECK(invoke({"bench", "--n", "4", "--backends", "exact,fpga"}).code == 2);
}

TEST_CASE("identical invocations give identical bytes apart from elapsed_ns", "[cli]") {
    auto strip = [](const std::string& csv, std::size_t col) {
        std::string out;
        for (const auto& l : lines(csv)) {
            auto f = fields(l);
            f[col] = "";
            for (const auto& x : f) out += x + ",";
            out += "\n";
        }
        return out;
    };
    const auto a = invoke({"converge", "--n", "4", "--s-list", "2:64:2", "--forms", "e4,e1t"});
    const auto b = invoke({"converge", "--n", "4", "--s-list", "2:64:2", "--forms", "e4,e1t"});
    CHECK(strip(a.out, 8) == strip(b.out, 8));
}
