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

#include "qdiff/modring.hpp"

namespace qdiff {

ModRing::ModRing(std::uint64_t prime, unsigned exponent) : p(prime), ell(exponent) {
    if (exponent < 1) throw std::domain_error("ModRing: ell must be >= 1");
    modulus = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (modulus > (std::uint64_t(1) << 62) / prime) throw modulus_overflow();
        modulus *= prime;
    }
}

std::uint64_t ModRing::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t out = 1 % modulus, base = a % modulus;
    while (e) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

std::uint64_t ModRing::inv(std::uint64_t a) const {
    a %= modulus;
    if (a % p == 0) throw bad_prime(p);
    // extended Euclid against the modulus
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(modulus), newr = static_cast<long long>(a);
    while (newr != 0) {
        long long quot = r / newr;
        std::swap(t -= quot * newt, newt);
        std::swap(r -= quot * newr, newr);
    }
    if (t < 0) t += static_cast<long long>(modulus);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t ModRing::reduce(const Int& n) const {
    Int r = n % static_cast<unsigned long>(modulus);
    if (r < 0) r += static_cast<unsigned long>(modulus);
    return r.get_ui();
}

std::uint64_t ModRing::reduce(const Rat& r) const {
    if (mpz_divisible_ui_p(denom(r).get_mpz_t(), p)) throw bad_prime(p);
    return mul(reduce(numer(r)), inv(reduce(denom(r))));
}

ModPoly ModPoly::constant(ModRing r, std::uint64_t v) {
    ModPoly out(r);
    v %= r.modulus;
    if (v) out.c.push_back(v);
    return out;
}

bool ModPoly::content_divisible_by_p() const {
    for (auto v : c)
        if (v % ring.p != 0) return false;
    return true;
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    ModPoly out(a.ring);
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i)
        out.c[i] = a.ring.add(a.coeff(i), b.coeff(i));
    out.trim();
    return out;
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    ModPoly out(a.ring);
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i)
        out.c[i] = a.ring.sub(a.coeff(i), b.coeff(i));
    out.trim();
    return out;
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.ring);
    ModPoly out(a.ring);
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = a.ring.add(out.c[i + j], a.ring.mul(a.c[i], b.c[j]));
    }
    out.trim();
    return out;
}

ModPoly ModPoly::scale_arg(std::uint64_t u) const {
    ModPoly out(*this);
    std::uint64_t f = 1;
    for (std::size_t i = 1; i < out.c.size(); ++i) {
        f = ring.mul(f, u);
        out.c[i] = ring.mul(out.c[i], f);
    }
    out.trim();
    return out;
}

ModRatFun::ModRatFun(ModPoly n, ModPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero() || den.content_divisible_by_p()) throw bad_prime(num.ring.p);
}

ModRatFun ModRatFun::constant(ModRing r, std::uint64_t v) {
    return ModRatFun(ModPoly::constant(r, v), ModPoly::constant(r, 1));
}

bool ModRatFun::equals_constant(std::uint64_t v) const {
    ModPoly scaled = ModPoly::constant(num.ring, v) * den;
    return num == scaled;
}

ModRatFun operator+(const ModRatFun& a, const ModRatFun& b) {
    return ModRatFun(a.num * b.den + b.num * a.den, a.den * b.den);
}

ModRatFun operator-(const ModRatFun& a, const ModRatFun& b) {
    return ModRatFun(a.num * b.den - b.num * a.den, a.den * b.den);
}

ModRatFun operator*(const ModRatFun& a, const ModRatFun& b) {
    return ModRatFun(a.num * b.num, a.den * b.den);
}

bool operator==(const ModRatFun& a, const ModRatFun& b) {
    return a.num * b.den == b.num * a.den;
}

ModMatrix::ModMatrix(ModRing r, std::size_t size)
    : ring(r), n(size), num(size * size, ModPoly(r)), den(ModPoly::constant(r, 1)) {}

ModMatrix ModMatrix::identity(ModRing r, std::size_t size) {
    ModMatrix m(r, size);
    for (std::size_t i = 0; i < size; ++i) m.at(i, i) = ModPoly::constant(r, 1);
    return m;
}

bool ModMatrix::is_identity() const {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (at(i, j) != den) return false;
            } else if (!at(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

bool ModMatrix::is_zero() const {
    for (const auto& e : num)
        if (!e.is_zero()) return false;
    return true;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix out(a.ring, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.n; ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) = out.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        }
    out.den = a.den * b.den;
    return out;
}

ModMatrix operator-(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix out(a.ring, a.n);
    for (std::size_t i = 0; i < a.n * a.n; ++i)
        out.num[i] = a.num[i] * b.den - b.num[i] * a.den;
    out.den = a.den * b.den;
    return out;
}

ModMatrix ModMatrix::dilate_entries(std::uint64_t qres) const {
    ModMatrix out(*this);
    for (auto& e : out.num) e = e.scale_arg(qres);
    out.den = den.scale_arg(qres);
    return out;
}

ModMatrix ModMatrix::pow(unsigned long e) const {
    ModMatrix base(*this), out = identity(ring, n);
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

namespace {

// Write f = (1/L) * N with N an integer polynomial, L a positive integer.
void clear_coeff_denominators(const Poly& f, Int& L, std::vector<Int>& N) {
    L = 1;
    for (const auto& c : f.coeffs()) {
        Int d = denom(c);
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
    N.clear();
    for (const auto& c : f.coeffs()) N.push_back(numer(c) * (L / denom(c)));
}

long int_content_valuation(const std::vector<Int>& v, std::uint64_t p) {
    Int pz(static_cast<unsigned long>(p));
    long best = -1;
    for (const auto& x : v) {
        if (x == 0) continue;
        long val = valuation(x, pz);
        if (best < 0 || val < best) best = val;
        if (best == 0) break;
    }
    return best;  // -1 for the zero vector (infinite content)
}

ModPoly reduce_int_poly(const std::vector<Int>& v, const ModRing& ring, long strip) {
    Int pw(1);
    for (long i = 0; i < strip; ++i) pw *= static_cast<unsigned long>(ring.p);
    ModPoly out(ring);
    for (const auto& x : v) out.c.push_back(ring.reduce(Int(x / pw)));
    out.trim();
    return out;
}

}  // namespace

ModRatFun mod_reduce(const RatFun& f, const ModRing& ring) {
    Int Ln, Ld;
    std::vector<Int> N, D;
    clear_coeff_denominators(f.num(), Ln, N);
    clear_coeff_denominators(f.den(), Ld, D);
    // f = (Ld * N) / (Ln * D)
    for (auto& x : N) x *= Ld;
    for (auto& x : D) x *= Ln;
    long vn = int_content_valuation(N, ring.p);
    long vd = int_content_valuation(D, ring.p);
    long strip = vn < 0 ? vd : std::min(vn, vd);
    if (vd - strip > 0) throw bad_prime(ring.p);
    ModPoly dp = reduce_int_poly(D, ring, strip);
    if (dp.is_zero() || dp.content_divisible_by_p()) throw bad_prime(ring.p);
    return ModRatFun(vn < 0 ? ModPoly(ring) : reduce_int_poly(N, ring, strip), dp);
}

ModMatrix mod_reduce(const RatMatrix& m, const ModRing& ring) {
    if (!m.is_square()) throw std::domain_error("mod_reduce: square matrices only");
    // common monic denominator over Q
    Poly common(Rat(1));
    for (const auto& e : m.entries()) {
        Poly g = gcd(common, e.den());
        common = common * (e.den() / g);
    }
    std::size_t n = m.rows();
    std::vector<std::vector<Int>> nums(n * n);
    std::vector<Int> den_int;
    Int L(1);
    {
        std::vector<Poly> scaled(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            const RatFun& e = m.entries()[i];
            scaled[i] = e.num() * (common / e.den());
        }
        for (const auto& pl : scaled)
            for (const auto& c : pl.coeffs()) {
                Int d = denom(c);
                mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
            }
        for (const auto& c : common.coeffs()) {
            Int d = denom(c);
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t i = 0; i < n * n; ++i)
            for (const auto& c : scaled[i].coeffs())
                nums[i].push_back(numer(c) * (L / denom(c)));
        for (const auto& c : common.coeffs()) den_int.push_back(numer(c) * (L / denom(c)));
    }
    long vmin = int_content_valuation(den_int, ring.p);
    for (const auto& v : nums) {
        long vi = int_content_valuation(v, ring.p);
        if (vi >= 0) vmin = std::min(vmin, vi);
    }
    long vd = int_content_valuation(den_int, ring.p);
    if (vd - vmin > 0) throw bad_prime(ring.p);
    ModMatrix out(ring, n);
    out.den = reduce_int_poly(den_int, ring, vmin);
    if (out.den.is_zero() || out.den.content_divisible_by_p()) throw bad_prime(ring.p);
    for (std::size_t i = 0; i < n * n; ++i)
        out.num[i] = int_content_valuation(nums[i], ring.p) < 0
                         ? ModPoly(ring)
                         : reduce_int_poly(nums[i], ring, vmin);
    return out;
}

}  // namespace qdiff
