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

#ifndef QDIFF_MODRING_HPP
#define QDIFF_MODRING_HPP

#include <cstdint>
#include <vector>

#include "qdiff/matrix.hpp"

namespace qdiff {

/// Raised when p^ell does not fit the machine-word coefficient ring.
class modulus_overflow : public std::domain_error {
  public:
    modulus_overflow() : std::domain_error("modulus p^ell exceeds 62 bits") {}
};

/// Coefficient ring Z/p^ell Z.  The modulus must fit in 62 bits, which covers
/// every desk-scale prime power here.
struct ModRing {
    std::uint64_t p = 0;
    unsigned ell = 1;
    std::uint64_t modulus = 0;

    ModRing() = default;
    ModRing(std::uint64_t prime, unsigned exponent);

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= modulus ? s - modulus : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + modulus - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * b) % modulus);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /// Inverse of a unit; throws bad_prime if p | a.
    std::uint64_t inv(std::uint64_t a) const;
    /// Residue of a rational whose denominator is a unit; bad_prime otherwise.
    std::uint64_t reduce(const Rat& r) const;
    std::uint64_t reduce(const Int& n) const;

    friend bool operator==(const ModRing& a, const ModRing& b) {
        return a.p == b.p && a.ell == b.ell;
    }
};

/// Polynomial over Z/p^ell Z, coefficient i = coefficient of x^i.
struct ModPoly {
    ModRing ring;
    std::vector<std::uint64_t> c;

    ModPoly() = default;
    explicit ModPoly(ModRing r) : ring(r) {}
    ModPoly(ModRing r, std::vector<std::uint64_t> coeffs) : ring(r), c(std::move(coeffs)) {
        trim();
    }
    static ModPoly constant(ModRing r, std::uint64_t v);

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    std::uint64_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    /// True iff every coefficient is divisible by p (zero-divisor content).
    bool content_divisible_by_p() const;

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.c == b.c; }
    friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }

    /// p(u * x) for a unit u.
    ModPoly scale_arg(std::uint64_t u) const;
};

/// Fraction of ModPoly; the denominator's content must be a unit.  Kept
/// unreduced, equality is by cross-multiplication.
struct ModRatFun {
    ModPoly num, den;

    ModRatFun() = default;
    ModRatFun(ModPoly n, ModPoly d);
    static ModRatFun constant(ModRing r, std::uint64_t v);

    bool is_zero() const { return num.is_zero(); }
    bool equals_constant(std::uint64_t v) const;

    friend ModRatFun operator+(const ModRatFun& a, const ModRatFun& b);
    friend ModRatFun operator-(const ModRatFun& a, const ModRatFun& b);
    friend ModRatFun operator*(const ModRatFun& a, const ModRatFun& b);
    friend bool operator==(const ModRatFun& a, const ModRatFun& b);
    friend bool operator!=(const ModRatFun& a, const ModRatFun& b) { return !(a == b); }
};

/// Matrix over the modular fraction ring, stored with one common scalar
/// denominator: M = num / den.
struct ModMatrix {
    ModRing ring;
    std::size_t n = 0;                  // square
    std::vector<ModPoly> num;           // row-major
    ModPoly den;                        // unit-content denominator

    ModMatrix() = default;
    ModMatrix(ModRing r, std::size_t size);
    static ModMatrix identity(ModRing r, std::size_t size);

    ModPoly& at(std::size_t i, std::size_t j) { return num[i * n + j]; }
    const ModPoly& at(std::size_t i, std::size_t j) const { return num[i * n + j]; }
    ModRatFun entry(std::size_t i, std::size_t j) const { return ModRatFun(at(i, j), den); }

    bool is_identity() const;
    bool is_zero() const;

    friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
    friend ModMatrix operator-(const ModMatrix& a, const ModMatrix& b);

    ModMatrix dilate_entries(std::uint64_t qres) const;
    ModMatrix pow(unsigned long e) const;
};

/// Coefficient reduction of a rational function into Z/p^ell Z per the
/// module contract: the common denominator's p-content must cancel against
/// the numerator's, otherwise bad_prime is thrown.
ModRatFun mod_reduce(const RatFun& f, const ModRing& ring);

/// Matrix reduction; bad_prime if any entry fails.
ModMatrix mod_reduce(const RatMatrix& m, const ModRing& ring);

}  // namespace qdiff

#endif
