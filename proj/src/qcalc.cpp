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

#include "qdiff/qcalc.hpp"

#include "qdiff/modring.hpp"

namespace qdiff {

Rat QSymbolTable::q_int(unsigned n) {
    if (ints_.empty()) ints_.push_back(Rat(0));
    while (ints_.size() <= n)
        ints_.push_back(ints_.back() * q_ + 1);  // [n]_q = q [n-1]_q + 1
    return ints_[n];
}

Rat QSymbolTable::q_factorial(unsigned n) {
    if (facts_.empty()) facts_.push_back(Rat(1));
    while (facts_.size() <= n) {
        unsigned m = static_cast<unsigned>(facts_.size());
        facts_.push_back(facts_.back() * q_int(m));
    }
    return facts_[n];
}

Rat QSymbolTable::q_binomial(unsigned n, long i) {
    if (i < 0 || i > static_cast<long>(n)) return Rat(0);
    unsigned ui = static_cast<unsigned>(i);
    if (ui == 0 || ui == n) return Rat(1);
    auto key = std::make_pair(n, ui);
    auto it = binom_.find(key);
    if (it != binom_.end()) return it->second;
    // C(n,i)_q = C(n-1,i-1)_q + q^i C(n-1,i)_q
    Rat val = q_binomial(n - 1, i - 1) + rat_pow(q_, i) * q_binomial(n - 1, i);
    binom_.emplace(key, val);
    return val;
}

Rat q_int(unsigned n, const Rat& q) { return QSymbolTable(q).q_int(n); }
Rat q_factorial(unsigned n, const Rat& q) { return QSymbolTable(q).q_factorial(n); }
Rat q_binomial(unsigned n, long i, const Rat& q) { return QSymbolTable(q).q_binomial(n, i); }

Poly q_pochhammer_x(const Rat& a, unsigned n, const Rat& q) {
    Poly out(Rat(1));
    Rat ai = a;
    for (unsigned i = 0; i < n; ++i) {
        out = out * Poly{-ai, Rat(1)};
        ai *= q;
    }
    return out;
}

Rat q_pochhammer(const Rat& a, unsigned n, const Rat& q) {
    Rat out(1), ai = a;
    for (unsigned i = 0; i < n; ++i) {
        out *= Rat(1) - ai;
        ai *= q;
    }
    return out;
}

std::vector<Rat> phi_to_dq_coeffs(unsigned n, const Rat& q) {
    if (q == 0 || q == 1) throw std::domain_error("phi_to_dq_coeffs: q must not be 0 or 1");
    QSymbolTable tab(q);
    std::vector<Rat> out(n + 1);
    for (unsigned i = 0; i <= n; ++i)
        out[i] = tab.q_binomial(n, static_cast<long>(i)) * rat_pow(q - 1, static_cast<long>(i)) *
                 rat_pow(q, static_cast<long>(i) * (static_cast<long>(i) - 1) / 2);
    return out;
}

std::vector<Rat> dq_to_phi_coeffs(unsigned n, const Rat& q) {
    if (q == 0 || q == 1) throw std::domain_error("dq_to_phi_coeffs: q must not be 0 or 1");
    QSymbolTable tab_inv(Rat(1) / q);
    Rat denom = rat_pow(q - 1, static_cast<long>(n));
    std::vector<Rat> out(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        Rat sign = ((n + j) % 2 == 0) ? Rat(1) : Rat(-1);
        out[j] = sign * tab_inv.q_binomial(n, static_cast<long>(j)) *
                 rat_pow(q, -static_cast<long>(j) * (static_cast<long>(j) - 1) / 2) / denom;
    }
    return out;
}

RatFun apply_dq_expansion(const std::vector<Rat>& coeffs, const RatFun& f, const Rat& q) {
    RatFun out;
    RatFun dqi = f;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i > 0) dqi = qderive(dqi, q, 1);
        out += RatFun(Poly::x(static_cast<int>(i), coeffs[i])) * dqi;
    }
    return out;
}

RatFun apply_phi_expansion(const std::vector<Rat>& coeffs, const RatFun& f, const Rat& q) {
    RatFun acc;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        acc += RatFun(coeffs[j]) * dilate(f, q, static_cast<long>(j));
    unsigned n = static_cast<unsigned>(coeffs.size()) - 1;
    return acc / RatFun(Poly::x(static_cast<int>(n)));
}

Rat q_factorial_valuation(unsigned n, std::uint64_t p, const Rat& q) {
    Int pz(static_cast<unsigned long>(p));
    if (q == 0 || valuation(q, pz) != 0)
        throw std::domain_error("q_factorial_valuation: q must be a p-adic unit");
    if (q == 1) {
        long v = 0;
        for (Int pk = pz; pk <= static_cast<long>(n); pk *= pz)
            v += static_cast<long>(Int(static_cast<long>(n) / pk).get_si());
        return Rat(v);
    }
    // multiplicative order of q mod p
    ModRing fp(p, 1);
    std::uint64_t qres = fp.reduce(q);
    std::uint64_t acc = qres;
    unsigned long kappa = 1;
    while (acc != 1) {
        acc = fp.mul(acc, qres);
        ++kappa;
    }
    long ell = valuation(Rat(1) - rat_pow(q, static_cast<long>(kappa)), pz);
    bool strong = ell >= 1 && (p > 2 || ell >= 2);
    if (strong) {
        // v([n]_q!) = [n/kappa] v([kappa]_q) + v([n/kappa]!)
        unsigned long m = n / kappa;
        long v_kappa = kappa == 1 ? 0 : ell;  // [1]_q = 1
        long v_mfact = 0;
        for (Int pk = pz; pk <= static_cast<long>(m); pk *= pz)
            v_mfact += static_cast<long>(Int(static_cast<long>(m) / pk).get_si());
        return Rat(static_cast<long>(m) * v_kappa + v_mfact);
    }
    // fallback: direct product of valuations of [m]_q = (1 - q^m)/(1 - q)
    long v_1mq = valuation(Rat(1) - q, pz);
    long total = 0;
    Rat qm = q;
    for (unsigned m = 2; m <= n; ++m) {
        qm *= q;
        total += valuation(Rat(1) - qm, pz) - v_1mq;
    }
    return Rat(total);
}

}  // namespace qdiff
