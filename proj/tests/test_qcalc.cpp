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

#include "qdiff/qcalc.hpp"

using namespace qdiff;

TEST_CASE("q_int and q_factorial") {
    Rat q(2);
    CHECK(q_int(0, q) == 0);
    CHECK(q_int(3, q) == 7);
    CHECK(q_int(5, Rat(1)) == 5);
    CHECK(q_factorial(4, q) == Rat(315));  // 1*3*7*15
    CHECK(q_factorial(0, q) == 1);
}

TEST_CASE("q_binomial basics") {
    Rat q(2);
    for (unsigned n = 0; n <= 8; ++n) {
        CHECK(q_binomial(n, 0, q) == 1);
        CHECK(q_binomial(n, static_cast<long>(n), q) == 1);
    }
    CHECK(q_binomial(4, 2, q) == 35);
    CHECK(q_binomial(3, 5, q) == 0);
    CHECK(q_binomial(3, -1, q) == 0);
    // factorial quotient agreement
    QSymbolTable tab(Rat(3, 2));
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned i = 0; i <= n; ++i)
            CHECK(tab.q_binomial(n, static_cast<long>(i)) ==
                  tab.q_factorial(n) / (tab.q_factorial(n - i) * tab.q_factorial(i)));
}

TEST_CASE("binomial identity: (1-x)_n expansion, n <= 30") {
    Rat q(3, 2);
    QSymbolTable tab(q);
    for (unsigned n = 1; n <= 30; ++n) {
        Poly lhs = q_pochhammer_x(Rat(1), n, q);
        // lhs should have x -> x convention: (x-1)_n; the identity is about
        // (1-x)_n = prod (1 - q^i x), compare via coefficients
        Poly prod(Rat(1));
        Rat qi(1);
        for (unsigned i = 0; i < n; ++i) {
            prod = prod * Poly{Rat(1), -qi};
            qi *= q;
        }
        for (unsigned j = 0; j <= n; ++j) {
            Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
            Rat expect = sign * tab.q_binomial(n, static_cast<long>(j)) *
                         rat_pow(q, static_cast<long>(j) * (static_cast<long>(j) - 1) / 2);
            CHECK(prod.coeff(j) == expect);
        }
    }
}

TEST_CASE("both Pascal recurrences, n <= 30") {
    QSymbolTable tab(Rat(5, 3));
    const Rat& q = tab.q();
    for (unsigned n = 1; n <= 30; ++n)
        for (unsigned i = 1; i <= n; ++i) {
            Rat lhs = tab.q_binomial(n, static_cast<long>(i));
            Rat r1 = tab.q_binomial(n - 1, static_cast<long>(i) - 1) +
                     tab.q_binomial(n - 1, static_cast<long>(i)) * rat_pow(q, static_cast<long>(i));
            Rat r2 = tab.q_binomial(n - 1, static_cast<long>(i) - 1) *
                         rat_pow(q, static_cast<long>(n - i)) +
                     tab.q_binomial(n - 1, static_cast<long>(i));
            CHECK(lhs == r1);
            CHECK(lhs == r2);
        }
}

TEST_CASE("q-binomials have nonnegative integer values at q = 2, 3, 5") {
    for (long qv : {2L, 3L, 5L}) {
        QSymbolTable tab{Rat(qv)};
        for (unsigned n = 1; n <= 30; ++n)
            for (unsigned i = 0; i <= n; ++i) {
                Rat b = tab.q_binomial(n, static_cast<long>(i));
                CHECK(is_integer(b));
                CHECK(b >= 0);
            }
    }
}

TEST_CASE("pochhammer examples") {
    Rat q(2);
    CHECK(q_pochhammer_x(Rat(5), 0, q) == Poly(Rat(1)));
    CHECK(q_pochhammer_x(Rat(1), 2, q) == Poly{Rat(2), Rat(-3), Rat(1)});  // (x-1)(x-2)
    CHECK(q_pochhammer(Rat(1), 3, q) == 0);
    CHECK(q_pochhammer(Rat(3), 2, q) == Rat(-2) * Rat(-5));
}

TEST_CASE("d_q (x-a)_n = [n]_q (x-a)_{n-1}") {
    Rat q(3, 2), a(2, 5);
    for (unsigned n = 1; n <= 8; ++n) {
        RatFun lhs = qderive(RatFun(q_pochhammer_x(a, n, q)), q, 1);
        RatFun rhs = RatFun(q_int(n, q)) * RatFun(q_pochhammer_x(a, n - 1, q));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("phi_to_dq coefficients match the small closed forms") {
    Rat q(2);
    auto c1 = phi_to_dq_coeffs(1, q);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0] == 1);
    CHECK(c1[1] == q - 1);
    auto c2 = phi_to_dq_coeffs(2, q);
    // phi^2 = 1 + [2]_q (q-1) x d_q + (q-1)^2 q x^2 d_q^2 = 1 + 3x d_q + 2x^2 d_q^2
    REQUIRE(c2.size() == 3);
    CHECK(c2[0] == 1);
    CHECK(c2[1] == 3);
    CHECK(c2[2] == 2);
}

TEST_CASE("operator conversions are exact on rational functions") {
    Rat q(3);
    RatFun f(Poly{Rat(1), Rat(2), Rat(0), Rat(1)}, Poly{Rat(1), Rat(1)});
    for (unsigned n = 1; n <= 4; ++n) {
        // phi^n f = f(q^n x) via the d_q expansion
        CHECK(apply_dq_expansion(phi_to_dq_coeffs(n, q), f, q) == dilate(f, q, n));
        // d_q^n f via the phi expansion
        CHECK(apply_phi_expansion(dq_to_phi_coeffs(n, q), f, q) == qderive(f, q, n));
    }
    // round-trip on the monomial basis x^0..x^6
    for (unsigned n = 1; n <= 4; ++n)
        for (int m = 0; m <= 6; ++m) {
            RatFun xm(Poly::x(m));
            CHECK(apply_dq_expansion(phi_to_dq_coeffs(n, q), xm, q) == dilate(xm, q, n));
            CHECK(apply_phi_expansion(dq_to_phi_coeffs(n, q), xm, q) == qderive(xm, q, n));
        }
}

TEST_CASE("q_factorial_valuation examples") {
    CHECK(q_factorial_valuation(4, 3, Rat(8)) == 4);
    CHECK(q_factorial_valuation(6, 3, Rat(8)) == 7);
    CHECK(q_factorial_valuation(1, 3, Rat(8)) == 0);  // n < kappa
    CHECK_THROWS_AS(q_factorial_valuation(4, 3, Rat(3)), std::domain_error);
}

TEST_CASE("q_factorial_valuation matches the direct product, n <= 60") {
    struct Case { std::uint64_t p; long q; };
    for (auto [p, qv] : {Case{3, 8}, Case{5, 2}, Case{7, 10}}) {
        Rat q(qv);
        Int pz(static_cast<unsigned long>(p));
        Rat prod(1), qm(1);
        long direct = 0;
        for (unsigned n = 1; n <= 60; ++n) {
            qm *= q;
            Rat qint = (Rat(1) - qm) / (Rat(1) - q);
            direct += valuation(qint, pz);
            CHECK(q_factorial_valuation(n, p, q) == direct);
        }
    }
}
