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

#ifndef QDIFF_POLY_HPP
#define QDIFF_POLY_HPP

#include <initializer_list>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qdiff/numbers.hpp"

namespace qdiff {

/// Univariate polynomial over Q.  Coefficient i is the coefficient of x^i;
/// the zero polynomial has an empty coefficient list, otherwise the trailing
/// coefficient is nonzero.
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { normalize(); }
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    explicit Poly(const Rat& constant) {
        if (constant != 0) c_.push_back(constant);
    }
    explicit Poly(long constant) : Poly(Rat(constant)) {}

    static Poly x(int degree = 1, const Rat& lead = Rat(1));

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Rat operator()(const Rat& x0) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& s, Poly p);
    friend Poly operator*(Poly p, const Rat& s) { return s * std::move(p); }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder with deg rem < deg divisor.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);

    Poly pow(unsigned long e) const;
    Poly derivative() const;
    /// p(s * x)
    Poly scale_arg(const Rat& s) const;
    /// p(x) * x^k (k >= 0)
    Poly shift_up(unsigned long k) const;
    Poly monic() const;

    /// Integer content: the positive rational c with p = c * (primitive
    /// integer polynomial).  Zero polynomial has content 0.
    Rat content() const;
    /// p / content(): integer coefficients with gcd 1, positive leading sign
    /// as inherited.
    Poly primitive_part() const;

    std::string str(const std::string& var = "x") const;

  private:
    void normalize() {
        // mpq_class(n, d) does not canonicalize on its own
        for (auto& v : c_) v.canonicalize();
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace qdiff

#endif
