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

#include "qdiff/ratfun.hpp"

#include <ostream>

namespace qdiff {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    Rat lead = den_.lead();
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

Rat RatFun::constant() const {
    if (!is_constant()) throw std::domain_error("RatFun: not constant");
    return num_.coeff(0) / den_.coeff(0);
}

Rat RatFun::operator()(const Rat& x0) const {
    Rat d = den_(x0);
    if (d == 0) throw std::domain_error("RatFun: evaluation at a pole");
    return num_(x0) / d;
}

Rat RatFun::at_infinity() const {
    if (num_.degree() > den_.degree()) throw std::domain_error("RatFun: pole at infinity");
    if (num_.degree() < den_.degree()) return Rat(0);
    return num_.lead() / den_.lead();
}

long RatFun::ord_at_zero() const {
    if (is_zero()) throw std::domain_error("RatFun: ord of 0");
    long n = 0, d = 0;
    while (num_.coeff(static_cast<std::size_t>(n)) == 0) ++n;
    while (den_.coeff(static_cast<std::size_t>(d)) == 0) ++d;
    return n - d;
}

RatFun RatFun::operator-() const {
    RatFun out(*this);
    out.num_ = -out.num_;
    return out;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
    return RatFun(den_, num_);
}

RatFun RatFun::pow(long e) const {
    if (e == 0) return RatFun(Rat(1));
    const RatFun base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    return RatFun(base.num_.pow(k), base.den_.pow(k));
}

RatFun RatFun::scale_arg(const Rat& s) const {
    return RatFun(num_.scale_arg(s), den_.scale_arg(s));
}

std::string RatFun::str(const std::string& var) const {
    if (den_ == Poly(Rat(1))) return num_.str(var);
    std::string n = num_.str(var), d = den_.str(var);
    if (num_.degree() > 0) n = "(" + n + ")";
    if (den_.degree() > 0) d = "(" + d + ")";
    return n + "/" + d;
}

RatFun dilate(const RatFun& f, const Rat& q, long k) {
    if (q == 0) throw std::domain_error("dilate: q must be nonzero");
    if (k == 0) return f;
    return f.scale_arg(rat_pow(q, k));
}

RatFun qderive(const RatFun& f, const Rat& q, unsigned n) {
    if (q == 0 || q == 1) throw std::domain_error("qderive: q must not be 0 or 1");
    RatFun out = f;
    const RatFun step_den(Poly{Rat(0), q - 1});  // (q-1) x
    for (unsigned i = 0; i < n; ++i)
        out = (dilate(out, q, 1) - out) / step_den;
    return out;
}

std::optional<Rat> gauss_valuation(const Poly& f, std::uint64_t p) {
    if (f.is_zero()) return std::nullopt;
    Int pz(static_cast<unsigned long>(p));
    bool have = false;
    long best = 0;
    for (const auto& c : f.coeffs()) {
        if (c == 0) continue;
        long v = valuation(c, pz);
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    return Rat(best);
}

std::optional<Rat> gauss_valuation(const RatFun& f, std::uint64_t p) {
    if (f.is_zero()) return std::nullopt;
    return *gauss_valuation(f.num(), p) - *gauss_valuation(f.den(), p);
}

std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.str(); }

}  // namespace qdiff
