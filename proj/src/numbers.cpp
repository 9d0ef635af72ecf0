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

#include "qdiff/numbers.hpp"

#include <cstdlib>

namespace qdiff {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(bound + 1, true);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
    }
    return out;
}

long valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& r, const Int& p) {
    if (r == 0) throw std::domain_error("valuation of 0");
    return valuation(numer(r), p) - valuation(denom(r), p);
}

Rat rat_pow(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    if (r == 0) {
        if (e < 0) throw std::domain_error("0^negative");
        return Rat(0);
    }
    Rat base = e < 0 ? Rat(denom(r), numer(r)) : r;
    base.canonicalize();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), k);
    Rat out(n, d);
    out.canonicalize();
    return out;
}

bool is_integer(const Rat& r) { return denom(r) == 1; }

namespace {

// Prime exponent vector of |r| over the primes dividing q, by repeated
// division.  Fails (nullopt) if |r| has a prime factor outside q's support.
struct ExpVec {
    std::vector<Int> primes;
    std::vector<long> q_exp;  // exponents in q
    std::vector<long> r_exp;  // exponents in r
    bool q_neg = false;
    bool r_neg = false;
};

std::optional<ExpVec> exponent_vectors(const Rat& r, const Rat& q) {
    ExpVec ev;
    ev.q_neg = q < 0;
    ev.r_neg = r < 0;
    Int qn = abs(numer(q)), qd = denom(q);
    // trial-divide |q|
    Int m = qn * qd;
    for (Int d = 2; d * d <= m;) {
        if (m % d == 0) {
            ev.primes.push_back(d);
            while (m % d == 0) m /= d;
        }
        d += 1;
    }
    if (m > 1) ev.primes.push_back(m);
    Int rn = abs(numer(r)), rd = denom(r);
    for (const Int& p : ev.primes) {
        ev.q_exp.push_back(valuation(qn, p) - valuation(qd, p));
        long e = 0;
        while (rn % p == 0) { rn /= p; ++e; }
        while (rd % p == 0) { rd /= p; --e; }
        ev.r_exp.push_back(e);
    }
    if (rn != 1 || rd != 1) return std::nullopt;  // r has foreign prime factors
    return ev;
}

}  // namespace

std::optional<long> q_power_test(const Rat& r, const Rat& q) {
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("q_power_test: q must not be 0 or a root of unity");
    if (r == 0) throw std::domain_error("q_power_test: r must be nonzero");
    auto ev = exponent_vectors(r, q);
    if (!ev) return std::nullopt;
    std::optional<long> k;
    for (std::size_t i = 0; i < ev->primes.size(); ++i) {
        long qe = ev->q_exp[i], re = ev->r_exp[i];
        if (qe == 0) {
            if (re != 0) return std::nullopt;
            continue;
        }
        if (re % qe != 0) return std::nullopt;
        long cand = re / qe;
        if (k && *k != cand) return std::nullopt;
        k = cand;
    }
    if (!k) {
        // |q| = 1 is excluded, so q has at least one prime with nonzero
        // exponent; reaching here means r = +-1.
        k = 0;
    }
    bool sign_ok = ev->q_neg ? (ev->r_neg == ((*k % 2) != 0)) : !ev->r_neg;
    if (!sign_ok) return std::nullopt;
    if (rat_pow(q, *k) != r) return std::nullopt;
    return k;
}

std::optional<Rat> q_rational_power_test(const Rat& r, const Rat& q, long dcap) {
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("q_rational_power_test: q must not be 0 or a root of unity");
    if (r == 0) throw std::domain_error("q_rational_power_test: r must be nonzero");
    if (dcap < 1) throw std::domain_error("q_rational_power_test: dcap must be >= 1");
    auto ev = exponent_vectors(r, q);
    if (!ev) return std::nullopt;
    std::optional<Rat> ratio;
    for (std::size_t i = 0; i < ev->primes.size(); ++i) {
        long qe = ev->q_exp[i], re = ev->r_exp[i];
        if (qe == 0) {
            if (re != 0) return std::nullopt;
            continue;
        }
        Rat cand(re, qe);
        cand.canonicalize();
        if (ratio && *ratio != cand) return std::nullopt;
        ratio = cand;
    }
    if (!ratio) ratio = Rat(0);
    Int dz = denom(*ratio), ez = numer(*ratio);
    if (!dz.fits_slong_p() || !ez.fits_slong_p()) return std::nullopt;
    long d = dz.get_si(), e = ez.get_si();
    if (d > dcap) return std::nullopt;
    // r^d = q^e, checked including signs
    if (rat_pow(r, d) != rat_pow(q, e)) return std::nullopt;
    return ratio;
}

}  // namespace qdiff
