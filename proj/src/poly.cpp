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

#include "qdiff/poly.hpp"

#include <ostream>
#include <sstream>

namespace qdiff {

Poly Poly::x(int degree, const Rat& lead) {
    if (degree < 0) throw std::domain_error("Poly::x: negative degree");
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1, Rat(0));
    c.back() = lead;
    return Poly(std::move(c));
}

Rat Poly::operator()(const Rat& x0) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x0 + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly out(*this);
    for (auto& v : out.c_) v = -v;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly operator*(const Rat& s, Poly p) {
    if (s == 0) return Poly();
    for (auto& v : p.c_) v *= s;
    return p;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly::divrem: division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> rem = a.c_;
    std::vector<Rat> quo(a.c_.size() - b.c_.size() + 1, Rat(0));
    const Rat lb = b.lead();
    for (long i = a.degree(); i >= b.degree(); --i) {
        Rat t = rem[static_cast<std::size_t>(i)] / lb;
        if (t == 0) continue;
        quo[static_cast<std::size_t>(i - b.degree())] = t;
        for (long j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(i - b.degree() + j)] -= t * b.c_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return Poly::divrem(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return Poly::divrem(a, b).second; }

Poly Poly::pow(unsigned long e) const {
    Poly base(*this), out(Rat(1));
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    return Poly(std::move(d));
}

Poly Poly::scale_arg(const Rat& s) const {
    std::vector<Rat> out(c_);
    Rat f(1);
    for (std::size_t i = 1; i < out.size(); ++i) {
        f *= s;
        out[i] *= f;
    }
    return Poly(std::move(out));
}

Poly Poly::shift_up(unsigned long k) const {
    if (is_zero()) return Poly();
    std::vector<Rat> out(k, Rat(0));
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    return Rat(1) / lead() * *this;
}

Rat Poly::content() const {
    if (is_zero()) return Rat(0);
    Int num_gcd(0), den_lcm(1);
    for (const auto& v : c_) {
        if (v == 0) continue;
        Int n = abs(numer(v));
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        Int d = denom(v);
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return Poly();
    return Rat(1) / content() * *this;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = r2.is_zero() ? Poly() : r2.monic();
    }
    return r0.is_zero() ? Poly() : r0.monic();
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Rat& v = c_[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        Rat av = abs(v);
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        bool show_coeff = (i == 0) || av != 1;
        if (show_coeff) os << av.get_str();
        if (i > 0) {
            if (show_coeff) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace qdiff
