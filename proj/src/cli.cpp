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

#include "qdiff/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qdiff/classify.hpp"
#include "qdiff/parse.hpp"
#include "qdiff/qcalc.hpp"
#include "qdiff/solver.hpp"

namespace qdiff {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

struct Ctx {
    std::string q_text;
    std::string out_file;
    bool json_out = false;
    unsigned jobs = 1;

    Rat q() const { return parse_rational(q_text); }
};

RatMatrix parse_system_json(const std::string& text) {
    std::string body = text;
    if (body == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        body = ss.str();
    }
    json doc = json::parse(body);
    if (!doc.is_array() || doc.empty())
        throw std::domain_error("system must be a JSON array of rows");
    std::size_t rows = doc.size();
    std::size_t cols = doc[0].size();
    std::vector<RatFun> entries;
    for (const auto& row : doc) {
        if (!row.is_array() || row.size() != cols)
            throw std::domain_error("system rows must have equal length");
        for (const auto& cell : row) entries.push_back(parse_ratfun(cell.get<std::string>()));
    }
    return RatMatrix(rows, cols, entries);
}

json envelope(const Ctx& ctx, const std::string& command, const std::string& inputs) {
    json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["q"] = ctx.q_text;
    j["inputs_hash"] = hash_hex(command + "|" + ctx.q_text + "|" + inputs);
    return j;
}

const char* status_str(CurvatureStatus s) {
    switch (s) {
        case CurvatureStatus::Identity: return "identity";
        case CurvatureStatus::Unipotent: return "unipotent";
        case CurvatureStatus::Other: return "other";
        case CurvatureStatus::BadPrime: return "bad-prime";
    }
    return "?";
}

json scan_to_json(const ScanReport& rep) {
    json j;
    j["pmax"] = rep.pmax;
    j["system_hash"] = nullptr;  // filled by the caller's envelope
    json verdicts = json::array();
    for (const auto& e : rep.entries) {
        json v;
        v["p"] = e.profile.p;
        v["kappa"] = e.profile.kappa;
        v["ell"] = e.profile.ell;
        const CurvatureVerdict& main =
            rep.summary_modulus == ModulusChoice::mod_p ? e.at_p : e.at_p_ell;
        v["status"] = status_str(main.status);
        if (main.status == CurvatureStatus::Unipotent || main.status == CurvatureStatus::Identity)
            v["order"] = main.order;
        v["status_mod_p"] = status_str(e.at_p.status);
        v["status_mod_p_ell"] = status_str(e.at_p_ell.status);
        verdicts.push_back(std::move(v));
    }
    j["verdicts"] = std::move(verdicts);
    j["bad_primes"] = rep.bad_primes;
    j["weak_primes"] = rep.weak;
    j["not_good"] = rep.not_good;
    j["summary"] = {{"identity", rep.summary.identity},
                    {"unipotent", rep.summary.unipotent},
                    {"other", rep.summary.other},
                    {"bad", rep.summary.bad}};
    return j;
}

void emit(const Ctx& ctx, std::ostream& out, const json& j, const std::string& text) {
    if (!ctx.out_file.empty()) {
        std::ofstream f(ctx.out_file);
        f << j.dump(2) << "\n";
    }
    if (ctx.json_out)
        out << j.dump(2) << "\n";
    else
        out << text;
}

std::string scan_text(const ScanReport& rep) {
    std::ostringstream os;
    os << "curvature scan: q = " << rep.q.get_str() << ", pmax = " << rep.pmax << "\n";
    os << "  p   kappa  ell  mod p        mod p^ell\n";
    for (const auto& e : rep.entries) {
        os << "  " << e.profile.p << "   " << e.profile.kappa << "   " << e.profile.ell << "   ";
        os << status_str(e.at_p.status);
        if (e.at_p.status == CurvatureStatus::Unipotent) os << "(" << e.at_p.order << ")";
        os << "   " << status_str(e.at_p_ell.status);
        if (e.at_p_ell.status == CurvatureStatus::Unipotent)
            os << "(" << e.at_p_ell.order << ")";
        os << "\n";
    }
    os << "summary: identity " << rep.summary.identity << ", unipotent "
       << rep.summary.unipotent << ", other " << rep.summary.other << ", bad "
       << rep.summary.bad << "\n";
    if (!rep.bad_primes.empty()) {
        os << "bad primes:";
        for (auto p : rep.bad_primes) os << " " << p;
        os << "\n";
    }
    return os.str();
}

const char* verdict_str(GrothVerdict v) {
    switch (v) {
        case GrothVerdict::consistent_trivial: return "consistent_trivial";
        case GrothVerdict::consistent_nontrivial: return "consistent_nontrivial";
        case GrothVerdict::inconsistent: return "inconsistent";
        case GrothVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// Classifier inputs are either a plain expression or the symbolic form
// q^(e/d); the grammar has no identifier 'q', so a leading q decides.
ScaledFun parse_scaled(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == 'q') {
        ParamValue p = parse_param(s);
        return ScaledFun(RatFun(Rat(1)), p.v);
    }
    return ScaledFun(parse_ratfun(s));
}

Rat parse_qcalc_call(const std::string& expr, const Rat& q) {
    auto open = expr.find('(');
    auto close = expr.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw parse_error("expected name(args)", 0);
    std::string name = expr.substr(0, open);
    std::string args = expr.substr(open + 1, close - open - 1);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= args.size(); ++i) {
        if (i == args.size() || args[i] == ',') {
            parts.push_back(args.substr(start, i - start));
            start = i + 1;
        }
    }
    auto as_uint = [&](const std::string& t) {
        Rat r = parse_rational(t);
        if (!is_integer(r) || r < 0) throw std::domain_error("expected a nonnegative integer");
        return static_cast<unsigned>(numer(r).get_ui());
    };
    if (name == "qint" && parts.size() == 1) return q_int(as_uint(parts[0]), q);
    if (name == "qfact" && parts.size() == 1) return q_factorial(as_uint(parts[0]), q);
    if (name == "qbinom" && parts.size() == 2)
        return q_binomial(as_uint(parts[0]), static_cast<long>(as_uint(parts[1])), q);
    if (name == "qpoch" && parts.size() == 2)
        return q_pochhammer(parse_rational(parts[0]), as_uint(parts[1]), q);
    throw parse_error("unknown function '" + name + "'", 0);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computation with linear q-difference systems over Q"};
    app.require_subcommand(1);

    Ctx ctx;
    app.add_option("--q", ctx.q_text, "dilation ratio q (rational, not 0 or +-1)");
    app.add_flag("--json", ctx.json_out, "emit the JSON report");
    app.add_option("--out", ctx.out_file, "also write the JSON report to a file");
    app.add_option("--jobs", ctx.jobs, "scan concurrency")->default_val(1);

    std::string system_text, modulus = "p-ell";
    std::uint64_t pmax = 200;
    unsigned terms = 200, degree_cap = 30;
    long dcap = 24;

    auto* scan = app.add_subcommand("curvature-scan", "kappa_p-curvature verdicts per prime");
    scan->add_option("--system", system_text, "JSON matrix of expressions ('-' = stdin)")
        ->required();
    scan->add_option("--pmax", pmax)->default_val(200);
    scan->add_option("--modulus", modulus, "summary modulus: p or p-ell")->default_val("p-ell");

    auto* solve = app.add_subcommand("rational-solve", "fundamental rational solutions");
    solve->add_option("--system", system_text)->required();
    solve->add_option("--degree-cap", degree_cap)->default_val(30);
    solve->add_option("--terms", terms)->default_val(200);

    auto* groth = app.add_subcommand("grothendieck", "curvature scan versus rational solvability");
    groth->add_option("--system", system_text)->required();
    groth->add_option("--pmax", pmax)->default_val(200);
    groth->add_option("--degree-cap", degree_cap)->default_val(30);
    groth->add_option("--terms", terms)->default_val(200);

    std::string pa, pb, pc, pr_text, family;
    auto* schwarz = app.add_subcommand("schwarz", "q-Schwarz classification of H_{a,b,c}");
    schwarz->add_option("--a", pa)->required();
    schwarz->add_option("--b", pb)->required();
    schwarz->add_option("--c", pc)->required();

    auto* galois = app.add_subcommand("galois", "generic Galois group taxonomy");
    galois->add_option("--family", family, "rank1 | triangular2 | antidiagonal2")->required();
    galois->add_option("--a", pa, "a(x) for triangular2");
    galois->add_option("--b", pb, "b for rank1/triangular2 (expression or q^(e/d))");
    galois->add_option("--r", pr_text, "r for antidiagonal2 (expression or q^(e/d))");
    galois->add_option("--dcap", dcap)->default_val(24);

    std::uint64_t chi_p = 3;
    unsigned chi_n = 200;
    auto* chi = app.add_subcommand("chi", "radius invariant: truncation and bounds");
    chi->add_option("--system", system_text)->required();
    chi->add_option("--p", chi_p)->required();
    chi->add_option("--n", chi_n)->default_val(200);

    std::string funcs_text;
    auto* casorati = app.add_subcommand("casorati", "rank of the Casorati matrix");
    casorati->add_option("--functions", funcs_text, "JSON array of expressions")->required();

    auto* cyclic = app.add_subcommand("cyclic-vector", "cyclic vector and companion form");
    cyclic->add_option("--system", system_text)->required();

    std::string eval_expr;
    auto* qcalc = app.add_subcommand("qcalc-eval", "evaluate qint/qfact/qbinom/qpoch");
    qcalc->add_option("expr", eval_expr, "e.g. qbinom(4,2)")->required();

    bool size_series = false;
    auto* size = app.add_subcommand("size", "partial size over places");
    size->add_option("--system", system_text)->required();
    size->add_option("--terms", terms)->default_val(200);
    size->add_option("--pmax", pmax)->default_val(200);
    size->add_flag("--series", size_series, "size of the formal solution instead");

    std::uint64_t ksum_pmax = 10000;
    auto* ksum = app.add_subcommand("kappa-sum", "partial sums of log p/(kappa_p (p-1))");
    ksum->add_option("--pmax", ksum_pmax)->default_val(10000);

    for (auto* sc : {scan, solve, groth, schwarz, galois, chi, casorati, cyclic, qcalc, size, ksum})
        sc->fallthrough();

    std::vector<std::string> argv_copy = args;
    std::reverse(argv_copy.begin(), argv_copy.end());
    try {
        app.parse(argv_copy);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (scan->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            ModulusChoice mc = modulus == "p" ? ModulusChoice::mod_p : ModulusChoice::mod_p_ell;
            ScanReport rep = curvature_scan(S, pmax, ctx.jobs, mc);
            json j = envelope(ctx, "curvature-scan", system_text + "|" + std::to_string(pmax));
            json sj = scan_to_json(rep);
            sj["system_hash"] = j["inputs_hash"];
            j["scan"] = std::move(sj);
            emit(ctx, out, j, scan_text(rep));
            return 0;
        }
        if (solve->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            auto res = rational_solutions(S, degree_cap, terms);
            json j = envelope(ctx, "rational-solve", system_text);
            std::ostringstream text;
            json sols = json::array();
            const char* st = res.status == SolveStatus::Found
                                 ? "found"
                                 : res.status == SolveStatus::NoneProven ? "none" : "inconclusive";
            j["status"] = st;
            j["note"] = res.note;
            j["caps"] = {{"degree_cap", degree_cap}, {"terms", terms}};
            text << "rational solutions: " << st;
            if (!res.note.empty()) text << " (" << res.note << ")";
            text << "\n";
            if (res.basis) {
                std::vector<std::string> printed;
                for (const auto& row : res.basis->solutions) {
                    std::string line;
                    for (std::size_t i = 0; i < row.size(); ++i)
                        line += (i ? ", " : "") + format_ratfun(row[i]);
                    printed.push_back("[" + line + "]");
                }
                std::sort(printed.begin(), printed.end());
                for (const auto& s : printed) {
                    sols.push_back(s);
                    text << "  " << s << "\n";
                }
            }
            j["solutions"] = std::move(sols);
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (groth->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            auto rep = grothendieck_test(S, pmax, degree_cap, terms, ctx.jobs);
            json j = envelope(ctx, "grothendieck", system_text);
            j["verdict"] = verdict_str(rep.verdict);
            json sj = scan_to_json(rep.scan);
            sj["system_hash"] = j["inputs_hash"];
            j["scan"] = std::move(sj);
            json sols = json::array();
            if (rep.solve.basis) {
                std::vector<std::string> printed;
                for (const auto& row : rep.solve.basis->solutions) {
                    std::string line;
                    for (std::size_t i = 0; i < row.size(); ++i)
                        line += (i ? ", " : "") + format_ratfun(row[i]);
                    printed.push_back("[" + line + "]");
                }
                std::sort(printed.begin(), printed.end());
                for (const auto& s : printed) sols.push_back(s);
            }
            j["solutions"] = std::move(sols);
            j["caps"] = {{"degree_cap", degree_cap}, {"terms", terms}, {"pmax", pmax}};
            std::ostringstream text;
            text << "grothendieck verdict: " << verdict_str(rep.verdict) << "\n"
                 << scan_text(rep.scan);
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (schwarz->parsed()) {
            HypergeomParams P;
            P.q = ctx.q();
            P.a = parse_param(pa);
            P.b = parse_param(pb);
            P.c = parse_param(pc);
            SchwarzVerdict vr = schwarz_rational(P);
            SchwarzVerdict va = schwarz_algebraic(P);
            json j = envelope(ctx, "schwarz", pa + "|" + pb + "|" + pc);
            j["params"] = {{"a", P.a.str()}, {"b", P.b.str()}, {"c", P.c.str()}};
            j["rational_basis"] = vr.rational_basis;
            j["algebraic_basis"] = va.algebraic_basis;
            j["log_zero"] = vr.log_sing_zero;
            j["log_infinity"] = vr.log_sing_infinity;
            j["witness"] = vr.exponent_triple
                               ? "(" + std::to_string((*vr.exponent_triple)[0]) + "," +
                                     std::to_string((*vr.exponent_triple)[1]) + "," +
                                     std::to_string((*vr.exponent_triple)[2]) + ")"
                               : vr.witness;
            std::ostringstream text;
            text << "H(a,b,c) with a=" << P.a.str() << " b=" << P.b.str()
                 << " c=" << P.c.str() << ", q=" << ctx.q_text << "\n"
                 << "  rational basis:  " << (vr.rational_basis ? "yes" : "no") << "\n"
                 << "  algebraic basis: " << (va.algebraic_basis ? "yes" : "no") << "\n"
                 << "  log singular at 0: " << (vr.log_sing_zero ? "yes" : "no")
                 << ", at infinity: " << (vr.log_sing_infinity ? "yes" : "no") << "\n";
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (galois->parsed()) {
            Rat q = ctx.q();
            GroupDescriptor g;
            std::string inputs = family;
            if (family == "rank1") {
                g = galois_rank1(parse_scaled(pb), q, dcap);
                inputs += "|" + pb;
            } else if (family == "triangular2") {
                g = galois_triangular2(parse_ratfun(pa), parse_scaled(pb), q, dcap);
                inputs += "|" + pa + "|" + pb;
            } else if (family == "antidiagonal2") {
                g = galois_antidiagonal2(parse_scaled(pr_text), q, dcap);
                inputs += "|" + pr_text;
            } else {
                throw std::domain_error("unknown family '" + family + "'");
            }
            json j = envelope(ctx, "galois", inputs);
            j["family"] = family;
            j["group"] = g.str();
            j["dcap"] = dcap;
            emit(ctx, out, j, "generic Galois group: " + g.str() + "\n");
            return 0;
        }
        if (chi->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            auto tb = chi_truncated(S, chi_p, chi_n);
            ChiBoundsContext cctx;
            auto prof = prime_profile(ctx.q(), chi_p);
            if (prof.good && prof.strong) {
                auto vp = unipotent_order(S, chi_p, ModulusChoice::mod_p);
                if (vp.status == CurvatureStatus::Identity ||
                    vp.status == CurvatureStatus::Unipotent)
                    cctx.order_mod_p = vp.order;
                auto vq = unipotent_order(S, chi_p, ModulusChoice::mod_p_ell);
                if (vq.status == CurvatureStatus::Identity ||
                    vq.status == CurvatureStatus::Unipotent)
                    cctx.order_mod_qk = vq.order;
            }
            try {
                cctx.cyclic_coeffs = delta_companion_coeffs(S);
            } catch (const std::exception&) {
                // no cyclic context: the Dwork-Frobenius bound is skipped
            }
            auto bounds = chi_bounds(S, chi_p, cctx);
            json j = envelope(ctx, "chi", system_text + "|" + std::to_string(chi_p));
            j["p"] = chi_p;
            j["N"] = chi_n;
            j["log_p_chi_estimate"] = tb.estimate.get_str();
            j["log_p_chi_estimate_real"] = tb.estimate.get_d();
            json bl = json::array();
            std::ostringstream text;
            text << "chi at p = " << chi_p << ": log_p estimate " << tb.estimate.get_str()
                 << " ~ " << tb.estimate.get_d() << " (N = " << chi_n << ")\n";
            auto kind_name = [](ChiBoundKind k) {
                switch (k) {
                    case ChiBoundKind::truncated: return "truncated";
                    case ChiBoundKind::trivial: return "trivial";
                    case ChiBoundKind::nilpotent_mod_p: return "nilpotent_mod_p";
                    case ChiBoundKind::unipotent_mod_qk: return "unipotent_mod_qk";
                    case ChiBoundKind::dwork_frobenius: return "dwork_frobenius";
                    case ChiBoundKind::bad_regime_range: return "bad_regime_range";
                }
                return "?";
            };
            for (const auto& b : bounds.bounds) {
                json e;
                e["kind"] = kind_name(b.kind);
                if (b.log_lower) e["log_lower"] = b.log_lower->get_str();
                if (b.log_upper) e["log_upper"] = b.log_upper->get_str();
                e["equality"] = b.is_equality;
                bl.push_back(e);
                text << "  bound " << kind_name(b.kind);
                if (b.log_lower) text << "  >= " << b.log_lower->get_str();
                if (b.log_upper) text << "  <= " << b.log_upper->get_str();
                text << (b.is_equality ? "  (equality)" : "") << "\n";
            }
            for (const auto& [k, why] : bounds.skipped)
                text << "  skipped " << kind_name(k) << ": " << why << "\n";
            j["bounds"] = std::move(bl);
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (casorati->parsed()) {
            json doc = json::parse(funcs_text);
            std::vector<RatFun> u;
            for (const auto& cell : doc) u.push_back(parse_ratfun(cell.get<std::string>()));
            std::size_t r = casorati_rank(u, ctx.q());
            json j = envelope(ctx, "casorati", funcs_text);
            j["rank"] = r;
            j["count"] = u.size();
            emit(ctx, out, j,
                 "casorati rank: " + std::to_string(r) + " of " + std::to_string(u.size()) +
                     "\n");
            return 0;
        }
        if (cyclic->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            CyclicVector cv = cyclic_vector(S);
            json j = envelope(ctx, "cyclic-vector", system_text);
            json coords = json::array();
            std::ostringstream text;
            text << "cyclic vector m = (";
            for (std::size_t i = 0; i < cv.coords.size(); ++i) {
                coords.push_back(cv.coords[i].str());
                text << (i ? ", " : "") << cv.coords[i].str();
            }
            text << ")\ndet P = " << format_ratfun(cv.basis_change.det()) << "\n";
            j["coords"] = std::move(coords);
            j["det"] = format_ratfun(cv.basis_change.det());
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (qcalc->parsed()) {
            Rat v = parse_qcalc_call(eval_expr, ctx.q());
            json j = envelope(ctx, "qcalc-eval", eval_expr);
            j["value"] = v.get_str();
            emit(ctx, out, j, v.get_str() + "\n");
            return 0;
        }
        if (size->parsed()) {
            QDiffSystem S(ctx.q(), parse_system_json(system_text));
            SizeEstimate est = size_series ? size_partial(formal_solution(S, terms), terms, pmax)
                                           : size_partial(S, terms, pmax);
            json j = envelope(ctx, "size", system_text);
            j["N"] = est.N;
            j["pmax"] = est.pmax;
            j["partial_sum"] = est.partial_sum;
            json contrib = json::array();
            std::ostringstream text;
            text << "partial size (N = " << est.N << ", pmax = " << est.pmax
                 << "): " << est.partial_sum << "\n";
            for (const auto& [p, c] : est.contributions) {
                contrib.push_back({{"place", p == 0 ? "inf" : std::to_string(p)}, {"value", c}});
                text << "  place " << (p == 0 ? "inf" : std::to_string(p)) << ": " << c << "\n";
            }
            j["contributions"] = std::move(contrib);
            emit(ctx, out, j, text.str());
            return 0;
        }
        if (ksum->parsed()) {
            auto rep = kappa_sum_partial(ctx.q(), ksum_pmax);
            json j = envelope(ctx, "kappa-sum", std::to_string(ksum_pmax));
            j["pmax"] = ksum_pmax;
            j["total"] = rep.total;
            json table = json::array();
            for (const auto& row : rep.table)
                table.push_back({{"p", row.p},
                                 {"kappa", row.kappa},
                                 {"term", row.term},
                                 {"partial", row.partial}});
            j["table"] = std::move(table);
            std::ostringstream text;
            text << "sum log p / (kappa_p (p-1)) over good p <= " << ksum_pmax << ": " << rep.total
                 << " (" << rep.table.size() << " primes)\n";
            emit(ctx, out, j, text.str());
            return 0;
        }
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const bad_prime& e) {
        err << "bad prime: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no command\n";
    return 2;
}

}  // namespace qdiff
