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

#include "qdiff/classify.hpp"

#include <array>

namespace qdiff {

ScaledFun ScaledFun::normalized(const Rat& q) const {
    if (qexp == 0) return *this;
    if (auto v = qexp_value(q, qexp)) return ScaledFun(RatFun(*v) * u, Rat(0));
    return *this;
}

std::string GroupDescriptor::str() const {
    switch (family) {
        case GroupFamily::Trivial: return "Trivial";
        case GroupFamily::Mu: return "Mu(" + std::to_string(d) + ")";
        case GroupFamily::Gm: return at_cap ? "Gm (at cap)" : "Gm";
        case GroupFamily::AdditiveGa: return "Ga";
        case GroupFamily::GaSemidirectMu:
            return "Ga x| Mu(" + std::to_string(d) + ")";
        case GroupFamily::GaSemidirectGm: return at_cap ? "Ga x| Gm (at cap)" : "Ga x| Gm";
        case GroupFamily::Diag2: return "Diag2";
        case GroupFamily::Diag2UnionAntidiag2:
            return at_cap ? "Diag2 u Antidiag2 (at cap)" : "Diag2 u Antidiag2";
        case GroupFamily::FiniteDihedralLike:
            return "Dihedral(" + std::to_string(d) + ")";
        case GroupFamily::FourElement: return "FourElement";
    }
    return "?";
}

namespace {

void require_usable_q(const Rat& q) {
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("classify: q must not be 0 or a root of unity");
}

}  // namespace

GroupDescriptor galois_rank1(const ScaledFun& b_in, const Rat& q, long dcap) {
    require_usable_q(q);
    ScaledFun b = b_in.normalized(q);
    if (b.u.is_zero()) throw std::domain_error("galois_rank1: b must be nonzero");
    if (order1_rational_test_scaled(b.u, b.qexp, q)) return {GroupFamily::Trivial, 1, false};
    if (auto w = order1_kummer_test_scaled(b.u, b.qexp, q, dcap))
        return {GroupFamily::Mu, w->d, false};
    return {GroupFamily::Gm, 1, true};
}

GroupDescriptor galois_triangular2(const RatFun& a, const ScaledFun& b_in, const Rat& q,
                                   long dcap) {
    require_usable_q(q);
    if (a.is_zero()) throw std::domain_error("galois_triangular2: a must be nonzero");
    if (a.has_pole_at_zero() || a(Rat(0)) == 0)
        throw std::domain_error("galois_triangular2: a must be regular and nonzero at 0");
    ScaledFun b = b_in.normalized(q);
    if (b.u.is_zero()) throw std::domain_error("galois_triangular2: b must be nonzero");
    if (order1_rational_test_scaled(b.u, b.qexp, q))
        return {GroupFamily::AdditiveGa, 1, false};
    if (auto w = order1_kummer_test_scaled(b.u, b.qexp, q, dcap))
        return {GroupFamily::GaSemidirectMu, w->d, false};
    return {GroupFamily::GaSemidirectGm, 1, true};
}

GroupDescriptor galois_antidiagonal2(const ScaledFun& r_in, const Rat& q, long dcap) {
    require_usable_q(q);
    ScaledFun r = r_in.normalized(q);
    if (r.u.is_zero()) throw std::domain_error("galois_antidiagonal2: r must be nonzero");
    // the scalar equation steps by q^2: r = u q^qexp = u (q^2)^{qexp/2}
    Rat q2 = q * q;
    Rat gamma2 = r.qexp / 2;
    if (order1_rational_test_scaled(r.u, gamma2, q2)) return {GroupFamily::FourElement, 1, false};
    if (auto w = order1_kummer_test_scaled(r.u, gamma2, q2, dcap))
        return {GroupFamily::FiniteDihedralLike, w->d, false};
    return {GroupFamily::Diag2UnionAntidiag2, 1, true};
}

// ---------------------------------------------------------------------------
// Curvature membership.  The e-basis curvature of these families is computed
// modulo p^{ell}; the claimed groups constrain it through d-torsion relations
// on full or half period products (the half-period entries themselves carry a
// q-twist, only the stated combinations are torsion).

namespace {

struct LocalData {
    ModRing ring;
    unsigned long kappa;
};

LocalData local_data(const Rat& q, std::uint64_t p) {
    PrimeProfile prof = prime_profile(q, p);
    if (!prof.good || !prof.strong)
        throw std::domain_error("curvature membership: profile not good and strong");
    return {ModRing(p, static_cast<unsigned>(prof.ell)), prof.kappa};
}

// (prod_{i in idx} u(q^i x))^d * q^{e}: e must be an integer.
ModRatFun twisted_power_product(const RatFun& u, const Rat& q, const std::vector<long>& idx,
                                long d, const Rat& e, const LocalData& L) {
    if (!is_integer(e)) throw std::domain_error("curvature membership: non-integral twist");
    ModRatFun acc = ModRatFun::constant(L.ring, L.ring.reduce(rat_pow(q, numer(e).get_si())));
    ModRatFun um = mod_reduce(u, L.ring);
    std::uint64_t qres = L.ring.reduce(q);
    for (long i : idx) {
        std::uint64_t qi = L.ring.pow(qres, static_cast<std::uint64_t>(i));
        ModRatFun shifted(um.num.scale_arg(qi), um.den.scale_arg(qi));
        for (long rep = 0; rep < d; ++rep) acc = acc * shifted;
    }
    return acc;
}

std::vector<long> range_step(long from, long to_excl, long step) {
    std::vector<long> out;
    for (long i = from; i < to_excl; i += step) out.push_back(i);
    return out;
}

}  // namespace

bool curvature_membership_rank1(const ScaledFun& b_in, const Rat& q, const GroupDescriptor& g,
                                std::uint64_t p) {
    ScaledFun b = b_in.normalized(q);
    LocalData L = local_data(q, p);
    long kappa = static_cast<long>(L.kappa);
    long d = g.family == GroupFamily::Trivial ? 1 : g.d;
    if (g.family == GroupFamily::Gm) return true;  // GL_1 membership is vacuous
    // (A_kappa)^d = q^{qexp * kappa * d} (prod u(q^i x))^d must be 1
    Rat e = b.qexp * Rat(kappa) * Rat(d);
    ModRatFun v = twisted_power_product(b.u, q, range_step(0, kappa, 1), d, e, L);
    return v.equals_constant(1);
}

bool curvature_membership_triangular2(const RatFun& a, const ScaledFun& b_in, const Rat& q,
                                      const GroupDescriptor& g, std::uint64_t p) {
    // Phi(e) = e [[1,0],[a,b]]: iterates keep the first row at (1, 0); only
    // the (2,2) entry prod b(q^i x) is constrained by the claimed group.
    (void)a;
    ScaledFun b = b_in.normalized(q);
    LocalData L = local_data(q, p);
    long kappa = static_cast<long>(L.kappa);
    if (g.family == GroupFamily::GaSemidirectGm) return true;
    long d = g.family == GroupFamily::AdditiveGa ? 1 : g.d;
    Rat e = b.qexp * Rat(kappa) * Rat(d);
    ModRatFun v = twisted_power_product(b.u, q, range_step(0, kappa, 1), d, e, L);
    return v.equals_constant(1);
}

bool curvature_membership_antidiagonal2(const ScaledFun& r_in, const Rat& q,
                                        const GroupDescriptor& g, std::uint64_t p) {
    ScaledFun r = r_in.normalized(q);
    LocalData L = local_data(q, p);
    long kappa = static_cast<long>(L.kappa);
    if (g.family == GroupFamily::Diag2UnionAntidiag2) return true;  // shape is structural
    long d = g.family == GroupFamily::FourElement ? 1 : g.d;
    if (kappa % 2 == 0) {
        // diagonal curvature diag(D1, D2): each D^d must be 1
        Rat e = r.qexp * Rat(kappa / 2) * Rat(d);
        ModRatFun D1 = twisted_power_product(r.u, q, range_step(1, kappa, 2), d, e, L);
        ModRatFun D2 = twisted_power_product(r.u, q, range_step(0, kappa, 2), d, e, L);
        return D1.equals_constant(1) && D2.equals_constant(1);
    }
    // antidiagonal curvature antidiag(E1, E2): (E1 E2)^d must be 1 (the
    // entries themselves carry the q-twist of the split-basis conjugation)
    Rat e = r.qexp * Rat(kappa) * Rat(d);
    ModRatFun E = twisted_power_product(r.u, q, range_step(0, kappa, 1), d, e, L);
    return E.equals_constant(1);
}

// ---------------------------------------------------------------------------
// Basic hypergeometric equation.

std::string ParamValue::str() const {
    if (is_exponent) return "q^(" + v.get_str() + ")";
    return v.get_str();
}

std::optional<Rat> param_rational_value(const ParamValue& p, const Rat& q) {
    if (!p.is_exponent) return p.v;
    return qexp_value(q, p.v);
}

std::optional<Rat> param_q_exponent(const ParamValue& p, const Rat& q) {
    if (p.is_exponent) return p.v;
    if (p.v == 0) return std::nullopt;
    return q_rational_power_test(p.v, q, 64);
}

QDiffSystem hypergeom_system(const HypergeomParams& P) {
    require_usable_q(P.q);
    auto av = param_rational_value(P.a, P.q);
    auto bv = param_rational_value(P.b, P.q);
    auto cv = param_rational_value(P.c, P.q);
    if (!av || !bv || !cv)
        throw std::domain_error("hypergeom_system: parameters must have exact rational values");
    if ((*av == 0 && *cv == 0) || (*bv == 0 && *cv == 0))
        throw degenerate_equation();
    Rat cq = *cv / P.q;
    Poly denom{-cq, *av * *bv};  // abx - c/q
    if (denom.is_zero()) throw degenerate_equation();
    // y(q^2 x) + P1(x) y(qx) + Q0(x) y(x) = 0
    RatFun P1 = RatFun(Poly{Rat(1) + cq, -(*av + *bv)}, denom);  // -((a+b)x - (1+c/q))/(abx-c/q)
    RatFun Q0 = RatFun(Poly{Rat(-1), Rat(1)}, denom);            // (x-1)/(abx-c/q)
    // rows (y(x), y(qx)): Y(qx) = Y(x) [[0, -Q0],[1, -P1]]
    RatMatrix A(2, 2, {RatFun(), -Q0, RatFun(Rat(1)), -P1});
    return QDiffSystem(P.q, A);
}

std::vector<Rat> phi21_truncate(const HypergeomParams& P, unsigned N) {
    require_usable_q(P.q);
    auto av = param_rational_value(P.a, P.q);
    auto bv = param_rational_value(P.b, P.q);
    auto cv = param_rational_value(P.c, P.q);
    if (!av || !bv || !cv)
        throw std::domain_error("phi21_truncate: parameters must have exact rational values");
    std::vector<Rat> out(N + 1, Rat(0));
    out[0] = 1;
    Rat qn(1);  // q^n
    Rat coeff(1);
    bool terminated = false;
    for (unsigned n = 0; n < N; ++n) {
        if (!terminated) {
            Rat num = (Rat(1) - *av * qn) * (Rat(1) - *bv * qn);
            Rat den = (Rat(1) - *cv * qn) * (Rat(1) - qn * P.q);  // (1-cq^n)(1-q^{n+1})
            if (num == 0) {
                terminated = true;  // the series stops; later coefficients are 0
            } else if (den == 0) {
                throw undefined_parameters("2phi1 undefined: denominator factor vanishes first");
            } else {
                coeff = coeff * num / den;
                out[n + 1] = coeff;
            }
        }
        qn *= P.q;
    }
    return out;
}

namespace {

bool in_Z_set(long u, long v) { return (u > 0 && v <= 0) || (u <= 0 && v > 0); }

std::optional<long> integer_exponent(const ParamValue& p, const Rat& q) {
    auto e = param_q_exponent(p, q);
    if (!e || !is_integer(*e)) return std::nullopt;
    if (!numer(*e).fits_slong_p()) return std::nullopt;
    return numer(*e).get_si();
}

}  // namespace

LogSingVerdict log_singularity_zero(const HypergeomParams& P) {
    LogSingVerdict out;
    auto gamma = integer_exponent(P.c, P.q);
    if (!gamma) return out;  // hypothesis not met: recorded false-with-note
    out.hypothesis_met = true;
    auto alpha = integer_exponent(P.a, P.q);
    auto beta = integer_exponent(P.b, P.q);
    bool nonlog = (alpha && in_Z_set(*alpha, *alpha + 1 - *gamma)) ||
                  (beta && in_Z_set(*beta, *beta + 1 - *gamma));
    out.value = !nonlog;
    return out;
}

LogSingVerdict log_singularity_infinity(const HypergeomParams& P) {
    LogSingVerdict out;
    auto alpha = integer_exponent(P.a, P.q);
    auto beta = integer_exponent(P.b, P.q);
    // hypothesis a/b in q^Z; with rational-exponent data this is
    // alpha - beta in Z, checked on the exact exponents when available
    auto ea = param_q_exponent(P.a, P.q);
    auto eb = param_q_exponent(P.b, P.q);
    if (!ea || !eb || !is_integer(*ea - *eb)) return out;
    out.hypothesis_met = true;
    bool clause1 = alpha && beta && in_Z_set(*alpha, *beta);
    bool clause2 = false;
    if (auto ec = param_q_exponent(P.c, P.q)) {
        Rat t1 = *ea + 1 - *ec, t2 = *eb + 1 - *ec;
        if (is_integer(t1) && is_integer(t2) && numer(t1).fits_slong_p() &&
            numer(t2).fits_slong_p())
            clause2 = in_Z_set(numer(t1).get_si(), numer(t2).get_si());
    }
    out.value = !(clause1 || clause2);
    return out;
}

bool schwarz_z_clause(long alpha, long beta, long gamma) {
    return (in_Z_set(alpha, alpha + 1 - gamma) || in_Z_set(beta, beta + 1 - gamma)) &&
           (in_Z_set(alpha, beta) || in_Z_set(alpha + 1 - gamma, beta + 1 - gamma));
}

SchwarzVerdict schwarz_rational(const HypergeomParams& P) {
    require_usable_q(P.q);
    SchwarzVerdict out;
    auto alpha = integer_exponent(P.a, P.q);
    auto beta = integer_exponent(P.b, P.q);
    auto gamma = integer_exponent(P.c, P.q);
    {
        LogSingVerdict z = log_singularity_zero(P);
        out.log_sing_zero = z.value;
        LogSingVerdict i = log_singularity_infinity(P);
        out.log_sing_infinity = i.value;
    }
    if (!alpha || !beta || !gamma) {
        out.witness = "parameters are not all integer powers of q";
        out.algebraic_basis = schwarz_algebraic(P).algebraic_basis;
        return out;
    }
    out.exponent_triple = std::array<long, 3>{*alpha, *beta, *gamma};
    if (schwarz_z_clause(*alpha, *beta, *gamma)) {
        out.rational_basis = true;
        out.algebraic_basis = true;
    } else {
        out.witness = "Z-condition fails on (" + std::to_string(*alpha) + "," +
                      std::to_string(*beta) + "," + std::to_string(*gamma) + ")";
        out.algebraic_basis = false;  // integral exponents: algebraic iff rational
    }
    return out;
}

SchwarzVerdict schwarz_algebraic(const HypergeomParams& P) {
    require_usable_q(P.q);
    SchwarzVerdict out;
    auto alpha = integer_exponent(P.a, P.q);
    auto beta = integer_exponent(P.b, P.q);
    auto gamma = integer_exponent(P.c, P.q);
    {
        LogSingVerdict z = log_singularity_zero(P);
        out.log_sing_zero = z.value;
        LogSingVerdict i = log_singularity_infinity(P);
        out.log_sing_infinity = i.value;
    }
    if (alpha && beta && gamma) {
        out.exponent_triple = std::array<long, 3>{*alpha, *beta, *gamma};
        out.rational_basis = schwarz_z_clause(*alpha, *beta, *gamma);
        out.algebraic_basis = out.rational_basis;
        if (!out.rational_basis) out.witness = "Z-condition fails on the integral triple";
        return out;
    }
    // non-rational branch of the boxed classification
    auto ea = param_q_exponent(P.a, P.q);
    auto eb = param_q_exponent(P.b, P.q);
    auto ec = param_q_exponent(P.c, P.q);
    if (!ea || !eb || !ec) {
        out.witness = "some parameter is not in q^Q within the cap";
        return out;
    }
    bool c_not_integral = !is_integer(*ec);
    bool ab_not_integral = !is_integer(*ea - *eb);
    bool clause_a = is_integer(*ea) && is_integer(*eb - *ec);
    bool clause_b = is_integer(*eb) && is_integer(*ea - *ec);
    out.algebraic_basis = c_not_integral && ab_not_integral && (clause_a || clause_b);
    if (!out.algebraic_basis) out.witness = "Prop.-algebrici clauses fail";
    return out;
}

bool goursat_rational(long alpha, long beta, long gamma) {
    long s1 = std::abs(1 - gamma);
    long s2 = std::abs(gamma - alpha - beta);
    long s3 = std::abs(alpha - beta);
    return s1 <= s2 + s3 && s2 <= s1 + s3 && s3 <= s1 + s2;
}

}  // namespace qdiff
