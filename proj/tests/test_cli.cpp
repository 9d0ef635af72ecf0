/*
   Copyright 2026 The qdiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qdiff/cli.hpp"
#include "qdiff/parse.hpp"

using namespace qdiff;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_ratfun basics") {
    CHECK(parse_ratfun("(1+x)/(1-2*x)") ==
          RatFun(Poly{Rat(1), Rat(1)}, Poly{Rat(1), Rat(-2)}));
    CHECK(parse_ratfun("x^3 - 7") == RatFun(Poly{Rat(-7), Rat(0), Rat(0), Rat(1)}));
    CHECK(parse_ratfun("3/4") == RatFun(Rat(3, 4)));
    CHECK(parse_ratfun(" - x ^ 2 ") == RatFun(Poly{Rat(0), Rat(0), Rat(-1)}));
    CHECK(parse_ratfun("x^(-1)") == RatFun(Poly(Rat(1)), Poly::x()));
    CHECK(parse_ratfun("2*x*(x-1)") == RatFun(Poly{Rat(0), Rat(-2), Rat(2)}));
    // whitespace-insensitive
    CHECK(parse_ratfun("1+x") == parse_ratfun(" 1 + x "));
}

TEST_CASE("parse_ratfun error paths") {
    CHECK_THROWS_AS(parse_ratfun("1 +"), parse_error);
    CHECK_THROWS_AS(parse_ratfun("(1"), parse_error);
    CHECK_THROWS_AS(parse_ratfun("y"), parse_error);
    CHECK_THROWS_AS(parse_ratfun("x^x"), parse_error);
    CHECK_THROWS_AS(parse_ratfun("1 2"), parse_error);
    // parses, then domain error on the zero denominator
    CHECK_THROWS_AS(parse_ratfun("1/(x-x)"), std::domain_error);
}

TEST_CASE("format/parse round trip") {
    for (const char* s : {"(1+x)/(1-2*x)", "x^3-7", "1/2", "x", "(x^2-1)/(x^2+x+1)", "0"}) {
        RatFun f = parse_ratfun(s);
        CHECK(parse_ratfun(format_ratfun(f)) == f);
    }
}

TEST_CASE("parse_param forms") {
    CHECK(parse_param("q").is_exponent);
    CHECK(parse_param("q^3").v == 3);
    CHECK(parse_param("q^(2/3)").v == Rat(2, 3));
    CHECK(parse_param("q^(-1)").v == -1);
    CHECK(!parse_param("5/7").is_exponent);
    CHECK(parse_param("5/7").v == Rat(5, 7));
    CHECK_THROWS_AS(parse_param("q^"), parse_error);
}

TEST_CASE("cli: worked example table and JSON schema") {
    auto r = run({"curvature-scan", "--q", "8", "--pmax", "50", "--system",
                  "[[\"1\",\"3\"],[\"0\",\"1\"]]", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["command"] == "curvature-scan");
    CHECK(j["q"] == "8");
    CHECK(j.contains("inputs_hash"));
    const json& scan = j["scan"];
    REQUIRE(scan["verdicts"].is_array());
    const json& first = scan["verdicts"][0];
    CHECK(first["p"] == 3);
    CHECK(first["kappa"] == 2);
    CHECK(first["ell"] == 2);
    CHECK(first["status_mod_p"] == "identity");
    CHECK(first["status_mod_p_ell"] == "unipotent");
    CHECK(first["order"] == 2);
    // deterministic: primes ascending
    std::uint64_t prev = 0;
    for (const auto& v : scan["verdicts"]) {
        CHECK(v["p"].get<std::uint64_t>() > prev);
        prev = v["p"].get<std::uint64_t>();
    }
}

TEST_CASE("cli: identical reports for repeated runs and jobs > 1") {
    std::vector<std::string> base = {"curvature-scan", "--q",     "2",      "--pmax", "80",
                                     "--system",       "[[\"1\",\"x\"],[\"0\",\"1\"]]", "--json"};
    auto r1 = run(base);
    auto r2 = run(base);
    CHECK(r1.out == r2.out);
    std::vector<std::string> jobs = base;
    jobs.push_back("--jobs");
    jobs.push_back("4");
    auto r3 = run(jobs);
    CHECK(json::parse(r1.out)["scan"] == json::parse(r3.out)["scan"]);
}

TEST_CASE("cli: qcalc-eval") {
    auto r = run({"qcalc-eval", "--q", "2", "qbinom(4,2)"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "35\n");
    CHECK(run({"qcalc-eval", "--q", "2", "qint(3)"}).out == "7\n");
    CHECK(run({"qcalc-eval", "--q", "2", "qfact(4)"}).out == "315\n");
    CHECK(run({"qcalc-eval", "--q", "2", "nosuch(1)"}).code == 1);
}

TEST_CASE("cli: schwarz JSON") {
    auto r = run({"schwarz", "--q", "2", "--a", "q^2", "--b", "q^6", "--c", "q^6", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["rational_basis"] == true);
    CHECK(j["algebraic_basis"] == true);
    CHECK(j["params"]["a"] == "q^(2)");
    CHECK(j.contains("log_zero"));
    CHECK(j.contains("log_infinity"));
    CHECK(j.contains("witness"));
}

TEST_CASE("cli: galois families") {
    CHECK(run({"galois", "--q", "2", "--family", "rank1", "--b", "q^(1/2)"}).out ==
          "generic Galois group: Mu(2)\n");
    CHECK(run({"galois", "--q", "2", "--family", "triangular2", "--a", "1", "--b", "1+x"}).out ==
          "generic Galois group: Ga x| Gm (at cap)\n");
    CHECK(run({"galois", "--q", "2", "--family", "antidiagonal2", "--r", "q^2"}).out ==
          "generic Galois group: FourElement\n");
}

TEST_CASE("cli: grothendieck JSON schema") {
    auto r = run({"grothendieck", "--q", "2", "--pmax", "40", "--degree-cap", "6", "--terms",
                  "30", "--system", "[[\"1\",\"0\"],[\"0\",\"1\"]]", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "consistent_trivial");
    CHECK(j["caps"]["degree_cap"] == 6);
    CHECK(j["caps"]["terms"] == 30);
    CHECK(j["caps"]["pmax"] == 40);
    CHECK(j["solutions"].is_array());
    CHECK(j["solutions"].size() == 2);
}

TEST_CASE("cli: error exit codes") {
    // domain error: q = 1
    CHECK(run({"curvature-scan", "--q", "1", "--pmax", "10", "--system", "[[\"1\"]]"}).code == 1);
    // parse error in the system
    CHECK(run({"curvature-scan", "--q", "2", "--pmax", "10", "--system", "[[\"y\"]]"}).code == 1);
    // usage error
    CHECK(run({"curvature-scan"}).code == 2);
    // scans with bad primes still exit 0
    auto r = run({"curvature-scan", "--q", "2", "--pmax", "20", "--system",
                  "[[\"1/(3*x+3)\",\"0\"],[\"0\",\"1\"]]", "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["scan"]["bad_primes"].size() > 0);
}

TEST_CASE("cli: kappa-sum and casorati") {
    auto r = run({"kappa-sum", "--q", "3", "--pmax", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 primes") != std::string::npos);
    auto c = run({"casorati", "--q", "2", "--functions", "[\"1\",\"x\",\"x+1\"]"});
    CHECK(c.out == "casorati rank: 2 of 3\n");
}

TEST_CASE("cli: every command carries the JSON envelope") {
    const std::vector<std::vector<std::string>> cmds = {
        {"curvature-scan", "--q", "8", "--pmax", "20", "--system", "[[\"1\",\"3\"],[\"0\",\"1\"]]"},
        {"rational-solve", "--q", "2", "--system", "[[\"1\",\"0\"],[\"0\",\"1\"]]",
         "--degree-cap", "4", "--terms", "14"},
        {"grothendieck", "--q", "2", "--pmax", "20", "--system", "[[\"1\"]]", "--degree-cap",
         "4", "--terms", "14"},
        {"schwarz", "--q", "2", "--a", "q^1", "--b", "q^3", "--c", "q^3"},
        {"galois", "--q", "2", "--family", "rank1", "--b", "q^(1/2)"},
        {"chi", "--q", "8", "--system", "[[\"1\",\"3\"],[\"0\",\"1\"]]", "--p", "3", "--n", "40"},
        {"casorati", "--q", "2", "--functions", "[\"1\",\"x\"]"},
        {"cyclic-vector", "--q", "2", "--system", "[[\"1\",\"1\"],[\"0\",\"2\"]]"},
        {"qcalc-eval", "--q", "2", "qint(4)"},
        {"size", "--q", "8", "--system", "[[\"1\",\"3\"],[\"0\",\"1\"]]", "--terms", "20",
         "--pmax", "20"},
        {"kappa-sum", "--q", "2", "--pmax", "50"},
    };
    for (auto args : cmds) {
        std::string name = args[0];
        args.push_back("--json");
        auto r = run(args);
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j["tool_version"] == kToolVersion);
        CHECK(j["command"] == name);
        CHECK(j.contains("q"));
        CHECK(j.contains("inputs_hash"));
    }
}

TEST_CASE("cli: per-command defaults do not leak across subcommands") {
    auto r = run({"grothendieck", "--q", "2", "--system", "[[\"1\"]]", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["caps"]["pmax"] == 200);
    CHECK(j["caps"]["degree_cap"] == 30);
    CHECK(j["caps"]["terms"] == 200);
    auto k = run({"kappa-sum", "--q", "2", "--json"});
    CHECK(json::parse(k.out)["pmax"] == 10000);
}
