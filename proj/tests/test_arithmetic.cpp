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

#include <random>

#include "qdiff/arithmetic.hpp"
#include "qdiff/qcalc.hpp"

using namespace qdiff;

namespace {

RatMatrix scalar_mat(const RatFun& a) { return RatMatrix(1, 1, {a}); }

QDiffSystem upper_unipotent(const Rat& q, const RatFun& corner) {
    return QDiffSystem(q, RatMatrix(2, 2, {RatFun(Rat(1)), corner, RatFun(), RatFun(Rat(1))}));
}

}  // namespace

TEST_CASE("prime_profile examples") {
    {
        auto pr = prime_profile(Rat(8), 3);
        CHECK(pr.good);
        CHECK(pr.kappa == 2);
        CHECK(pr.ell == 2);
        CHECK(pr.strong);
    }
    {
        auto pr = prime_profile(Rat(2), 7);
        CHECK(pr.kappa == 3);
        CHECK(pr.ell == 1);
        CHECK(pr.strong);
    }
    {
        auto pr = prime_profile(Rat(3), 3);
        CHECK(!pr.good);
    }
    {
        // p = 2 with ell = 1 is good but weak: q = 3, 1 - 3 = -2
        auto pr = prime_profile(Rat(3), 2);
        CHECK(pr.good);
        CHECK(pr.kappa == 1);
        CHECK(pr.ell == 1);
        CHECK(!pr.strong);
    }
    {
        // rational q = 2/3 at p = 5: 2 * 3^{-1} = 4 mod 5, order 2
        auto pr = prime_profile(Rat(2, 3), 5);
        CHECK(pr.good);
        CHECK(pr.kappa == 2);
    }
    {
        // kappa divides p - 1
        for (std::uint64_t p : {5ull, 11ull, 13ull, 101ull}) {
            auto pr = prime_profile(Rat(2), p);
            CHECK((p - 1) % pr.kappa == 0);
        }
    }
}

TEST_CASE("the q = 8, p = 3 worked example") {
    QDiffSystem S = upper_unipotent(Rat(8), RatFun(Rat(3)));
    // curvature matrix [[1,6],[0,1]]: identity mod 3, not mod 9
    ModMatrix M9 = curvature_matrix(S, 3, ModulusChoice::mod_p_ell);
    CHECK(M9.entry(0, 1).equals_constant(6));
    CHECK(!M9.is_identity());
    ModMatrix M3 = curvature_matrix(S, 3, ModulusChoice::mod_p);
    CHECK(M3.is_identity());
    auto v3 = curvature_is_identity(S, 3, ModulusChoice::mod_p);
    CHECK(v3.status == CurvatureStatus::Identity);
    auto v9 = unipotent_order(S, 3, ModulusChoice::mod_p_ell);
    CHECK(v9.status == CurvatureStatus::Unipotent);
    CHECK(v9.order == 2);
}

TEST_CASE("curvature of the identity and of a scalar non-unipotent system") {
    QDiffSystem S(Rat(8), RatMatrix::identity(2));
    for (std::uint64_t p : {3ull, 5ull, 11ull}) {
        auto v = curvature_is_identity(S, p, ModulusChoice::mod_p_ell);
        CHECK(v.status == CurvatureStatus::Identity);
    }
    // scalar A = 2 at q = 8: curvature is 2^kappa_p.  At p = 3 (kappa = 2)
    // that is 4 = 1 mod 3 but 4 != 1 mod 9; at p = 7 (kappa = 1) it is
    // 2 != 1 mod 7, a genuine Other.
    QDiffSystem T(Rat(8), scalar_mat(RatFun(Rat(2))));
    auto v = curvature_is_identity(T, 3, ModulusChoice::mod_p);
    CHECK(v.status == CurvatureStatus::Identity);
    auto v9 = curvature_is_identity(T, 3, ModulusChoice::mod_p_ell);
    CHECK(v9.status == CurvatureStatus::Unipotent);
    auto v7 = curvature_is_identity(T, 7, ModulusChoice::mod_p);
    CHECK(v7.status == CurvatureStatus::Other);
}

TEST_CASE("curvature_scan basics") {
    {
        QDiffSystem S(Rat(8), RatMatrix::identity(2));
        auto rep = curvature_scan(S, 100);
        CHECK(rep.all_identity_at_p_ell());
        CHECK(rep.summary.identity == rep.entries.size());
        CHECK(!rep.entries.empty());
        // 2 divides q: not good
        CHECK(std::find(rep.not_good.begin(), rep.not_good.end(), 2) != rep.not_good.end());
    }
    {
        // scalar A = 1 + x at q = 2: some non-identity verdict below 50
        QDiffSystem S(Rat(2), scalar_mat(RatFun(Poly{Rat(1), Rat(1)})));
        auto rep = curvature_scan(S, 50);
        CHECK(rep.summary.other + rep.summary.unipotent > 0);
    }
}

TEST_CASE("identity at p^ell implies identity at p; unipotent orders shrink") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pick(-3, 3);
    Rat q(8);
    for (int it = 0; it < 6; ++it) {
        Poly corner{Rat(pick(rng)), Rat(pick(rng))};
        if (corner.is_zero()) continue;
        QDiffSystem S = upper_unipotent(q, RatFun(corner));
        auto rep = curvature_scan(S, 60);
        for (const auto& e : rep.entries) {
            if (e.at_p_ell.status == CurvatureStatus::Identity)
                CHECK(e.at_p.status == CurvatureStatus::Identity);
            if (e.at_p_ell.status == CurvatureStatus::Unipotent ||
                e.at_p_ell.status == CurvatureStatus::Identity) {
                // (M-I)^n = 0 mod p^ell forces (M-I)^n = 0 mod p: m <= n
                CHECK((e.at_p.status == CurvatureStatus::Identity ||
                       e.at_p.status == CurvatureStatus::Unipotent));
                CHECK(e.at_p.order <= e.at_p_ell.order);
            }
        }
    }
}

TEST_CASE("scan is order-insensitive and thread-safe") {
    QDiffSystem S = upper_unipotent(Rat(8), RatFun(Rat(3)));
    auto rep1 = curvature_scan(S, 80, 1);
    auto rep4 = curvature_scan(S, 80, 4);
    REQUIRE(rep1.entries.size() == rep4.entries.size());
    for (std::size_t i = 0; i < rep1.entries.size(); ++i) {
        CHECK(rep1.entries[i].profile.p == rep4.entries[i].profile.p);
        CHECK(rep1.entries[i].at_p_ell.status == rep4.entries[i].at_p_ell.status);
        CHECK(rep1.entries[i].at_p_ell.order == rep4.entries[i].at_p_ell.order);
    }
}

TEST_CASE("chi_truncated: exp_q at (6, 5) approaches -1/4") {
    // d_q y = y: A = 1 + (q-1)x, kappa = 1, ell = 1
    Rat q(6);
    QDiffSystem S(q, scalar_mat(RatFun(Poly{Rat(1), Rat(5)})));
    auto b = chi_truncated(S, 5, 200);
    double est = b.estimate.get_d();
    CHECK(est < -0.2);
    CHECK(est > -0.3);
    // G_1 = 0: chi estimate 0
    QDiffSystem T(q, RatMatrix::identity(2));
    auto b0 = chi_truncated(T, 5, 50);
    CHECK(b0.estimate == 0);
}

TEST_CASE("chi_truncated matches the Dwork-Frobenius closed form") {
    // scalar G_1 = 1/5 at q = 6, p = 5: log_5 chi = -1/4 - 1
    Rat q(6);
    QDiffSystem DF(q, scalar_mat(RatFun(Poly{Rat(1), Rat(1, 5) * (q - 1)})));
    auto b = chi_truncated(DF, 5, 300);
    double est = b.estimate.get_d();
    CHECK(est == doctest::Approx(-1.25).epsilon(0.05));
    ChiBoundsContext ctx;
    ctx.cyclic_coeffs = std::vector<RatFun>{RatFun(Rat(1, 5))};
    auto bounds = chi_bounds(DF, 5, ctx);
    bool saw_df = false;
    for (const auto& bd : bounds.bounds)
        if (bd.kind == ChiBoundKind::dwork_frobenius) {
            saw_df = true;
            CHECK(bd.is_equality);
            CHECK(*bd.log_lower == Rat(-5, 4));  // -1/(p-1) - 1 = -1/4 - 1
        }
    CHECK(saw_df);
}

TEST_CASE("chi_bounds: trivial and unipotent forms") {
    Rat q(6);
    // exp_q system: trivial bound -1/(p-1) since |G| = 1
    QDiffSystem S(q, scalar_mat(RatFun(Poly{Rat(1), Rat(5)})));
    ChiBoundsContext ctx;
    ctx.order_mod_qk = 1;  // identity curvature
    auto rep = chi_bounds(S, 5, ctx);
    bool saw_trivial = false, saw_uni = false;
    for (const auto& b : rep.bounds) {
        if (b.kind == ChiBoundKind::trivial) {
            saw_trivial = true;
            CHECK(*b.log_lower == Rat(-1, 4));
        }
        if (b.kind == ChiBoundKind::unipotent_mod_qk) {
            saw_uni = true;
            CHECK(*b.log_lower == Rat(-1, 4));  // (n-1)/n = 0 at n = 1
        }
    }
    CHECK(saw_trivial);
    CHECK(saw_uni);
    // the truncated estimate respects the bounds
    auto tb = chi_truncated(S, 5, 120);
    CHECK(tb.estimate >= Rat(-1, 4) - Rat(1, 100));
}

TEST_CASE("chi_bounds: bad regime two-sided range at p = 2") {
    Rat q(3);  // 1 - q = -2: ell = 1 at p = 2, weak
    QDiffSystem S(q, scalar_mat(RatFun(Poly{Rat(1), Rat(2)})));
    auto rep = chi_bounds(S, 2, ChiBoundsContext{});
    REQUIRE(rep.bounds.size() == 1);
    CHECK(rep.bounds[0].kind == ChiBoundKind::bad_regime_range);
    CHECK(rep.bounds[0].log_lower.has_value());
    CHECK(rep.bounds[0].log_upper.has_value());
    CHECK(*rep.bounds[0].log_lower <= *rep.bounds[0].log_upper);
    CHECK(rep.skipped.size() == 4);
}

TEST_CASE("valuation growth of G_n on the worked unipotent example") {
    // q = 8, p = 3: curvature identity mod 3 (order n = 1, kappa = 2), so
    // v_3(G_{2s}) >= s for s <= 4
    QDiffSystem S = upper_unipotent(Rat(8), RatFun(Rat(3)));
    auto G = delta_matrices(S, 8);
    for (unsigned s = 1; s <= 4; ++s) {
        std::optional<Rat> vmin;
        for (const auto& e : G[2 * s].entries()) {
            auto v = gauss_valuation(e, 3);
            if (!v) continue;
            if (!vmin || *v < *vmin) vmin = v;
        }
        REQUIRE(vmin.has_value());
        CHECK(*vmin >= static_cast<long>(s));
    }
}

TEST_CASE("power system chi relation (unokappa direction)") {
    // log chi(S) <= (1/kappa) log chi(power system) within 10% slack
    Rat q(8);
    QDiffSystem S = upper_unipotent(q, RatFun(Rat(3)));
    std::uint64_t p = 3;
    auto prof = prime_profile(q, p);
    REQUIRE(prof.kappa == 2);
    auto chiS = chi_truncated(S, p, 120);
    QDiffSystem P = power_system(S, static_cast<unsigned>(prof.kappa));
    auto chiP = chi_truncated(P, p, 60);
    double lhs = chiS.estimate.get_d();
    double rhs = chiP.estimate.get_d() / static_cast<double>(prof.kappa);
    CHECK(lhs <= rhs + 0.1 * (std::abs(rhs) + 0.05));
}

TEST_CASE("size_partial examples") {
    Rat q(6);
    {
        // geometric series 1/(1-x): all coefficients 1, size partial 0
        FormalSolution y;
        y.N = 40;
        y.coeff.assign(41, QMat(1, std::vector<Rat>(1, Rat(1))));
        auto est = size_partial(y, 40, 50);
        CHECK(est.partial_sum == doctest::Approx(0.0));
    }
    {
        // exp_q truncation: finite-place contributions from v_p([n]_q!)
        QDiffSystem S(q, scalar_mat(RatFun(Poly{Rat(1), Rat(5)})));
        FormalSolution y = formal_solution(S, 60);
        auto est = size_partial(y, 60, 30);
        CHECK(est.partial_sum > 0);
        // the p = 5 contribution must dominate: v_5([n]_q!) grows like n/4
        bool saw5 = false;
        for (auto& [p, c] : est.contributions)
            if (p == 5) {
                saw5 = true;
                CHECK(c > 0.2 * std::log(5.0));
            }
        CHECK(saw5);
    }
    {
        // all-identity system: size partial bounded by sum log p/(kappa(p-1))
        QDiffSystem S = upper_unipotent(Rat(8), RatFun(Rat(3)));
        auto est = size_partial(S, 60, 50);
        auto ks = kappa_sum_partial(Rat(8), 50);
        CHECK(est.partial_sum <= ks.total + 0.15);
    }
}

TEST_CASE("kappa_sum_partial") {
    {
        auto rep = kappa_sum_partial(Rat(3), 2);
        REQUIRE(rep.table.size() == 1);
        CHECK(rep.table[0].kappa == 1);
        CHECK(rep.total == doctest::Approx(std::log(2.0)));
    }
    {
        // pmax below the least good prime
        auto rep = kappa_sum_partial(Rat(6), 4);  // 2, 3 divide 6
        CHECK(rep.table.empty());
        CHECK(rep.total == 0);
    }
    {
        // monotone partials with shrinking increments at q = 2
        auto rep = kappa_sum_partial(Rat(2), 10000);
        double prev = 0;
        for (const auto& row : rep.table) {
            CHECK(row.partial >= prev);
            prev = row.partial;
        }
        CHECK(rep.total < 2.0);  // finite-looking
    }
}

TEST_CASE("compare_kappa_profiles") {
    CHECK(compare_kappa_profiles(Rat(5), Rat(5), 500).equal_orders_everywhere);
    CHECK(compare_kappa_profiles(Rat(5), Rat(1, 5), 1000).equal_orders_everywhere);
    auto rep = compare_kappa_profiles(Rat(2), Rat(3), 100);
    CHECK(!rep.equal_orders_everywhere);
    CHECK(!rep.mismatches.empty());
}

TEST_CASE("chi_truncated matches the direct G_n valuation route") {
    struct Case {
        QDiffSystem S;
        std::uint64_t p;
    };
    std::vector<Case> cases;
    cases.push_back({QDiffSystem(Rat(8), RatMatrix(2, 2, {RatFun(Rat(1)), RatFun(Rat(3)),
                                                          RatFun(), RatFun(Rat(1))})),
                     3});
    cases.push_back({QDiffSystem(Rat(6), scalar_mat(RatFun(Poly{Rat(1), Rat(1)}))), 5});
    cases.push_back(
        {QDiffSystem(Rat(8), RatMatrix(2, 2, {RatFun(Poly{Rat(1), Rat(3)}), RatFun::x(),
                                              RatFun(Rat(3)), RatFun(Poly{Rat(1), Rat(-1)})})),
         3});
    for (auto& [S, p] : cases) {
        const unsigned N = 12;
        auto tb = chi_truncated(S, p, N);
        auto G = delta_matrices(S, N);
        Rat running(0);
        for (unsigned n = 1; n <= N; ++n) {
            std::optional<Rat> vmin;
            for (const auto& e : G[n].entries()) {
                auto v = gauss_valuation(e, p);
                if (!v) continue;
                if (!vmin || *v < *vmin) vmin = v;
            }
            if (vmin) {
                Rat term = q_factorial_valuation(n, p, S.q()) - *vmin;
                if (term > running) running = term;
            }
            CHECK(tb.h_over_n[n - 1] == running / Rat(static_cast<long>(n)));
        }
    }
}

TEST_CASE("size_partial monotone in pmax; weak primes recorded by scans") {
    QDiffSystem S = upper_unipotent(Rat(8), RatFun(Rat(3)));
    auto e1 = size_partial(S, 40, 20);
    auto e2 = size_partial(S, 40, 60);
    CHECK(e2.partial_sum >= e1.partial_sum);
    // q = 3: p = 2 is good but weak (ell = 1), so scans must record it
    QDiffSystem T(Rat(3), RatMatrix::identity(2));
    auto rep = curvature_scan(T, 20);
    CHECK(std::find(rep.weak.begin(), rep.weak.end(), 2) != rep.weak.end());
    for (const auto& e : rep.entries) CHECK(e.profile.p != 2);
}
