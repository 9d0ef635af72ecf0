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

#include "qdiff/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdiff {

namespace {

// ---------------------------------------------------------------------------
// F_p polynomial helpers (p small, coefficients in uint64).

using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p), newr = static_cast<long long>(a % p);
    while (newr != 0) {
        long long quot = r / newr;
        std::swap(t -= quot * newt, newt);
        std::swap(r -= quot * newr, newr);
    }
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

// remainder of a mod b
FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
    fp_trim(a);
    std::uint64_t linv = fp_inv(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t f = a.back() * linv % p;
        std::size_t off = a.size() - b.size();
        if (f)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[off + j] = (a[off + j] + p * f - f * b[j] % p) % p;
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

FpPoly fp_divexact(FpPoly a, const FpPoly& b, std::uint64_t p) {
    fp_trim(a);
    std::uint64_t linv = fp_inv(b.back(), p);
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
        std::uint64_t f = a.back() * linv % p;
        std::size_t off = a.size() - b.size();
        q[off] = f;
        if (f)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[off + j] = (a[off + j] + p * f - f * b[j] % p) % p;
        a.pop_back();
        fp_trim(a);
    }
    return q;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t linv = fp_inv(a.back(), p);
        for (auto& v : a) v = v * linv % p;
    }
    return a;
}

FpPoly fp_derivative(const FpPoly& f, std::uint64_t p) {
    FpPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % p) % p);
    fp_trim(d);
    return d;
}

// Extended Euclid: s*a + t*b = 1 for coprime a, b.
void fp_bezout(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& s, FpPoly& t) {
    FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    fp_trim(r0);
    fp_trim(r1);
    while (!r1.empty()) {
        FpPoly q = fp_divexact(r0, r1, p);
        auto step = [&](FpPoly& x0, FpPoly& x1) {
            FpPoly nx = x0;
            FpPoly qx1 = fp_mul(q, x1, p);
            if (qx1.size() > nx.size()) nx.resize(qx1.size(), 0);
            for (std::size_t i = 0; i < qx1.size(); ++i) nx[i] = (nx[i] + p - qx1[i]) % p;
            fp_trim(nx);
            x0 = std::move(x1);
            x1 = std::move(nx);
        };
        step(r0, r1);
        step(s0, s1);
        step(t0, t1);
    }
    // r0 = gcd (a unit for coprime inputs); scale to make combination equal 1
    std::uint64_t linv = fp_inv(r0.back(), p);
    for (auto& v : s0) v = v * linv % p;
    for (auto& v : t0) v = v * linv % p;
    s = std::move(s0);
    t = std::move(t0);
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
std::vector<FpPoly> berlekamp(const FpPoly& f, std::uint64_t p) {
    std::size_t n = f.size() - 1;
    if (n == 1) return {f};
    // Frobenius matrix: column i = x^{ip} mod f
    FpPoly xp = {0, 1};
    {
        // x^p mod f by square and multiply
        FpPoly acc = {1};
        FpPoly base = {0, 1};
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = fp_rem(fp_mul(acc, base, p), f, p);
            base = fp_rem(fp_mul(base, base, p), f, p);
            e >>= 1;
        }
        xp = acc;
    }
    std::vector<FpPoly> cols(n);
    FpPoly cur = {1};
    for (std::size_t i = 0; i < n; ++i) {
        cols[i] = cur;
        cur = fp_rem(fp_mul(cur, xp, p), f, p);
    }
    // Build Q - I and compute its kernel basis.
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
        m[j][j] = (m[j][j] + p - 1) % p;
    }
    // Gaussian elimination, tracking pivot columns
    std::vector<long> pivot_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && m[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(m[pr], m[row]);
        std::uint64_t inv = fp_inv(m[row][col], p);
        for (std::size_t j = 0; j < n; ++j) m[row][j] = m[row][j] * inv % p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            std::uint64_t fct = m[i][col];
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = (m[i][j] + p * fct - fct * m[row][j] % p) % p;
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<FpPoly> kernel;
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] != -1) continue;
        FpPoly v(n, 0);
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < n; ++c2)
            if (pivot_of_col[c2] != -1)
                v[c2] = (p - m[static_cast<std::size_t>(pivot_of_col[c2])][col] % p) % p;
        fp_trim(v);
        kernel.push_back(std::move(v));
    }
    std::size_t nfactors = kernel.size();
    std::vector<FpPoly> factors = {f};
    if (nfactors == 1) return factors;
    for (const auto& v : kernel) {
        if (factors.size() == nfactors) break;
        if (v.size() <= 1) continue;  // constant kernel vector splits nothing
        std::vector<FpPoly> next;
        for (const auto& u : factors) {
            if (u.size() <= 2) {
                next.push_back(u);
                continue;
            }
            FpPoly rest = u;
            for (std::uint64_t s = 0; s < p && rest.size() > 2; ++s) {
                FpPoly vs = v;
                vs[0] = (vs[0] + p - s) % p;
                fp_trim(vs);
                FpPoly g = vs.empty() ? FpPoly{} : fp_gcd(rest, vs, p);
                if (g.size() > 1 && g.size() < rest.size()) {
                    next.push_back(g);
                    rest = fp_divexact(rest, g, p);
                }
            }
            if (rest.size() > 1) next.push_back(rest);
        }
        factors = std::move(next);
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Z/p^K polynomial helpers with mpz coefficients.

using ZkPoly = std::vector<Int>;

void zk_trim(ZkPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZkPoly zk_mul(const ZkPoly& a, const ZkPoly& b, const Int& mod) {
    if (a.empty() || b.empty()) return {};
    ZkPoly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
            c[i + j] %= mod;
        }
    }
    zk_trim(c);
    return c;
}

// Linear Hensel lift of a coprime splitting F = G*H (mod p) of a monic F up
// to modulus p^K; G, H monic.
void hensel_pair(const ZkPoly& F, FpPoly g0, FpPoly h0, std::uint64_t p, unsigned K,
                 ZkPoly& G, ZkPoly& H) {
    FpPoly s, t;
    fp_bezout(g0, h0, p, s, t);
    G.assign(g0.begin(), g0.end());
    H.assign(h0.begin(), h0.end());
    Int pj(static_cast<unsigned long>(p));
    Int pK;
    mpz_pow_ui(pK.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t(), K);
    for (unsigned j = 1; pj < pK; ++j, pj *= static_cast<unsigned long>(p)) {
        // e = (F - G*H) / p^j mod p
        ZkPoly gh = zk_mul(G, H, pK);
        ZkPoly diff(std::max(F.size(), gh.size()), Int(0));
        for (std::size_t i = 0; i < F.size(); ++i) diff[i] += F[i];
        for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
        FpPoly e(diff.size(), 0);
        bool all_zero = true;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            Int q = diff[i] / pj;  // exact by induction
            Int r = q % static_cast<unsigned long>(p);
            if (r < 0) r += static_cast<unsigned long>(p);
            e[i] = r.get_ui();
            if (e[i]) all_zero = false;
        }
        if (all_zero) continue;
        fp_trim(e);
        // u*h0 + v*g0 = e with deg u < deg g0: u = (t*e mod g0)
        FpPoly u = fp_rem(fp_mul(t, e, p), g0, p);
        // v = (e - u*h0) / g0
        FpPoly uh = fp_mul(u, h0, p);
        FpPoly rest = e;
        if (uh.size() > rest.size()) rest.resize(uh.size(), 0);
        for (std::size_t i = 0; i < uh.size(); ++i) rest[i] = (rest[i] + p - uh[i]) % p;
        fp_trim(rest);
        FpPoly v = rest.empty() ? FpPoly{} : fp_divexact(rest, g0, p);
        if (G.size() < g0.size()) G.resize(g0.size(), Int(0));
        for (std::size_t i = 0; i < u.size(); ++i) G[i] = (G[i] + pj * static_cast<unsigned long>(u[i])) % pK;
        if (H.size() < h0.size()) H.resize(h0.size(), Int(0));
        for (std::size_t i = 0; i < v.size(); ++i) H[i] = (H[i] + pj * static_cast<unsigned long>(v[i])) % pK;
    }
}

// Lift the full modular factorization of a monic F through a factor tree.
void hensel_tree(const ZkPoly& F, const std::vector<FpPoly>& facs, std::uint64_t p,
                 unsigned K, std::vector<ZkPoly>& out) {
    if (facs.size() == 1) {
        out.push_back(F);
        return;
    }
    std::size_t half = facs.size() / 2;
    FpPoly g = {1}, h = {1};
    for (std::size_t i = 0; i < half; ++i) g = fp_mul(g, facs[i], p);
    for (std::size_t i = half; i < facs.size(); ++i) h = fp_mul(h, facs[i], p);
    ZkPoly G, H;
    hensel_pair(F, g, h, p, K, G, H);
    hensel_tree(G, {facs.begin(), facs.begin() + static_cast<long>(half)}, p, K, out);
    hensel_tree(H, {facs.begin() + static_cast<long>(half), facs.end()}, p, K, out);
}

Poly zk_to_poly_symmetric(const ZkPoly& f, const Int& mod) {
    Int half = mod / 2;
    std::vector<Rat> c;
    c.reserve(f.size());
    for (const auto& v : f) c.emplace_back(v > half ? Rat(v - mod) : Rat(v));
    return Poly(std::move(c));
}

// Factor a monic squarefree polynomial with integer coefficients.
std::vector<Poly> factor_monic_squarefree(const Poly& F) {
    long n = F.degree();
    if (n <= 1) return {F};
    // choose a prime keeping F squarefree mod p
    std::uint64_t p = 0;
    FpPoly fp;
    for (std::uint64_t cand : primes_up_to(10000)) {
        if (cand == 2) continue;  // odd primes give balanced symmetric ranges
        FpPoly f(static_cast<std::size_t>(n) + 1, 0);
        bool ok = true;
        for (long i = 0; i <= n; ++i) {
            Rat c = F.coeff(static_cast<std::size_t>(i));
            Int r = numer(c) % static_cast<unsigned long>(cand);
            if (r < 0) r += static_cast<unsigned long>(cand);
            f[static_cast<std::size_t>(i)] = r.get_ui();
            ok = ok && denom(c) == 1;
        }
        if (!ok) throw std::logic_error("factor: non-integer coefficients");
        fp_trim(f);
        if (f.size() != static_cast<std::size_t>(n) + 1) continue;  // p | lc impossible (monic)
        FpPoly d = fp_derivative(f, cand);
        FpPoly g = d.empty() ? f : fp_gcd(f, d, cand);
        if (g.size() == 1) {
            p = cand;
            fp = std::move(f);
            break;
        }
    }
    if (p == 0) throw std::logic_error("factor: no squarefree prime found");

    std::vector<FpPoly> modular = berlekamp(fp, p);
    if (modular.size() == 1) return {F};

    // Landau-Mignotte style bound on coefficients of monic factors
    double norm2 = 0;
    for (const auto& c : F.coeffs()) {
        double d = std::abs(c.get_d());
        norm2 += d * d;
    }
    double bound = std::ldexp(std::sqrt(norm2) + 1.0, static_cast<int>(n));
    unsigned K = 1;
    double pk = static_cast<double>(p);
    while (pk < 2 * bound + 1) {
        pk *= static_cast<double>(p);
        ++K;
    }
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t(), K);

    ZkPoly Fz;
    for (long i = 0; i <= n; ++i) {
        Int v = numer(F.coeff(static_cast<std::size_t>(i))) % mod;
        if (v < 0) v += mod;
        Fz.push_back(v);
    }
    std::vector<ZkPoly> lifted;
    hensel_tree(Fz, modular, p, K, lifted);

    // Recombination over subsets of growing cardinality.
    std::vector<Poly> out;
    std::vector<ZkPoly> pool = lifted;
    Poly rest = F;
    std::size_t card = 1;
    while (pool.size() > 0 && 2 * card <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(card);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            ZkPoly prod = {Int(1)};
            for (std::size_t i : idx) prod = zk_mul(prod, pool[i], mod);
            Poly cand = zk_to_poly_symmetric(prod, mod);
            auto [quot, rem] = Poly::divrem(rest, cand);
            if (rem.is_zero()) {
                out.push_back(cand);
                rest = quot;
                std::vector<ZkPoly> np;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        np.push_back(pool[i]);
                pool = std::move(np);
                found = true;
                break;
            }
            // next subset
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                   pool.size() - card + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < card; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++card;
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& P) {
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = P.monic();
    if (f.degree() < 1) return out;
    // Yun's algorithm
    Poly fprime = f.derivative();
    Poly a = gcd(f, fprime);
    Poly b = f / a;
    Poly c = fprime / a;
    Poly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        Poly ai = gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Factorization factor_poly(const Poly& P) {
    if (P.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    Factorization out;
    out.constant = P.lead();
    if (P.degree() < 1) return out;

    for (const auto& [sf, mult] : squarefree_decomposition(P)) {
        Poly f = sf;
        // pull out the factor x
        if (f.coeff(0) == 0) {
            long k = 0;
            while (f.coeff(static_cast<std::size_t>(k)) == 0) ++k;
            std::vector<Rat> c(f.coeffs().begin() + k, f.coeffs().end());
            f = Poly(std::move(c));
            out.factors.emplace_back(Poly::x(), mult);
        }
        if (f.degree() < 1) continue;
        // make monic integral: g(x) = l^{n-1} f(x/l) for integral f-parts;
        // here f is monic over Q, so scale by the lcm of denominators first.
        Int lcm_den(1);
        for (const auto& c : f.coeffs()) {
            Int d = denom(c);
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        }
        Rat l(lcm_den);
        // h(x) = l^deg * f(x / l) is monic with integer coefficients
        Poly h = rat_pow(l, f.degree()) * f.scale_arg(Rat(1) / l);
        for (const Poly& g : factor_monic_squarefree(h)) {
            // undo substitution: factor of f is monic version of g(l x)
            Poly back = g.scale_arg(l).monic();
            out.factors.emplace_back(back, mult);
        }
    }
    // deterministic order: by degree, then coefficient string
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.str() < b.first.str();
    });
    return out;
}

}  // namespace qdiff
