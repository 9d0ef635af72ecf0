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

#ifndef QDIFF_RATFUN_HPP
#define QDIFF_RATFUN_HPP

#include <iosfwd>
#include <optional>

#include "qdiff/poly.hpp"

namespace qdiff {

/// Rational function over Q, stored fully reduced with a monic denominator,
/// so equality is structural.
class RatFun {
  public:
    RatFun() : num_(), den_(Rat(1)) {}
    RatFun(Poly num, Poly den);
    explicit RatFun(Poly num) : num_(std::move(num)), den_(Rat(1)) {}
    explicit RatFun(const Rat& c) : num_(c), den_(Rat(1)) {}
    explicit RatFun(long c) : num_(Rat(c)), den_(Rat(1)) {}

    static RatFun x() { return RatFun(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Constant value; requires is_constant().
    Rat constant() const;

    bool has_pole_at_zero() const { return den_.coeff(0) == 0; }
    /// Value at x0; the point must not be a pole.
    Rat operator()(const Rat& x0) const;
    /// Value at infinity for deg num <= deg den (0 if <).
    Rat at_infinity() const;
    bool regular_at_infinity() const { return num_.degree() <= den_.degree(); }

    /// Order of vanishing at 0 (negative at a pole); requires nonzero.
    long ord_at_zero() const;

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun inverse() const;
    RatFun pow(long e) const;

    /// f(s * x), exact substitution.
    RatFun scale_arg(const Rat& s) const;

    std::string str(const std::string& var = "x") const;

  private:
    Poly num_, den_;
};

/// f(q^k x); dilate(dilate(f, q, 1), q, -1) = f.
RatFun dilate(const RatFun& f, const Rat& q, long k = 1);

/// d_q^n f with d_q f = (f(qx) - f(x)) / ((q-1) x).  The difference always
/// cancels the pole at 0, so no precondition beyond q not in {0, 1}.
RatFun qderive(const RatFun& f, const Rat& q, unsigned n = 1);

/// Additive Gauss valuation v_p: min of coefficient valuations of the
/// numerator minus the same for the denominator.  nullopt encodes +infinity
/// (f = 0).  Multiplicative: v(fg) = v(f) + v(g).
std::optional<Rat> gauss_valuation(const RatFun& f, std::uint64_t p);

/// Gauss valuation of a polynomial (min over coefficients), nullopt for 0.
std::optional<Rat> gauss_valuation(const Poly& f, std::uint64_t p);

std::ostream& operator<<(std::ostream& os, const RatFun& f);

}  // namespace qdiff

#endif
