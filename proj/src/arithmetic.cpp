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

#include "qdiff/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qdiff/qcalc.hpp"

namespace qdiff {

PrimeProfile prime_profile(const Rat& q, std::uint64_t p) {
    PrimeProfile out;
    out.p = p;
    if (q == 0) throw std::domain_error("prime_profile: q must be nonzero");
    Int pz(static_cast<unsigned long>(p));
    if (valuation(q, pz) != 0) return out;  // not good; kappa/ell unset
    out.good = true;
    ModRing fp(p, 1);
    std::uint64_t qres = fp.reduce(q);
    std::uint64_t acc = qres;
    out.kappa = 1;
    while (acc != 1) {
        acc = fp.mul(acc, qres);
        ++out.kappa;
    }
    // ell = v_p(1 - q^kappa) = v_p(den^kappa - num^kappa), computed modulo a
    // generous power of p with an exact fallback.
    const unsigned cap = 48;
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), cap);
    Int a, b;
    mpz_powm_ui(a.get_mpz_t(), numer(q).get_mpz_t(), out.kappa, mod.get_mpz_t());
    mpz_powm_ui(b.get_mpz_t(), denom(q).get_mpz_t(), out.kappa, mod.get_mpz_t());
    Int diff = (b - a) % mod;
    if (diff < 0) diff += mod;
    if (diff != 0) {
        out.ell = valuation(diff, pz);
    } else {
        out.ell = valuation(Rat(1) - rat_pow(q, static_cast<long>(out.kappa)), pz);
    }
    out.strong = out.ell >= 1 && (p > 2 || out.ell >= 2);
    return out;
}

namespace {

ModMatrix curvature_product_mod(const QDiffSystem& S, const ModRing& ring, unsigned long kappa) {
    ModMatrix Am = mod_reduce(S.matrix(), ring);
    std::uint64_t qres = ring.reduce(S.q());
    ModMatrix acc = ModMatrix::identity(ring, S.rank());
    std::uint64_t qp = 1;
    for (unsigned long i = 0; i < kappa; ++i) {
        acc = acc * Am.dilate_entries(qp);
        qp = ring.mul(qp, qres);
    }
    return acc;
}

}  // namespace

ModMatrix curvature_matrix(const QDiffSystem& S, std::uint64_t p, ModulusChoice choice) {
    PrimeProfile prof = prime_profile(S.q(), p);
    if (!prof.good || !prof.strong)
        throw std::domain_error("curvature_matrix: profile not good and strong at p=" +
                                std::to_string(p));
    ModRing ring(p, choice == ModulusChoice::mod_p ? 1u : static_cast<unsigned>(prof.ell));
    try {
        return curvature_product_mod(S, ring, prof.kappa);
    } catch (const bad_prime&) {
        // The factors may fail to reduce while the full product does; fall
        // back to the exact iterate (bad primes are small, so this is cheap).
        return mod_reduce(phi_iterate(S, static_cast<unsigned>(prof.kappa)), ring);
    }
}

namespace {

CurvatureVerdict classify_curvature(const QDiffSystem& S, std::uint64_t p, ModulusChoice choice,
                                    const PrimeProfile& prof) {
    CurvatureVerdict v;
    v.p = p;
    v.kappa = prof.kappa;
    v.ell = prof.ell;
    v.modulus_used = choice;
    ModMatrix M;
    try {
        M = curvature_matrix(S, p, choice);
    } catch (const bad_prime&) {
        v.status = CurvatureStatus::BadPrime;
        return v;
    } catch (const modulus_overflow&) {
        // p^ell beyond the machine ring: record and skip, never abort a scan
        v.status = CurvatureStatus::BadPrime;
        return v;
    }
    if (M.is_identity()) {
        v.status = CurvatureStatus::Identity;
        v.order = 1;
        return v;
    }
    unsigned ell_used = choice == ModulusChoice::mod_p ? 1u : static_cast<unsigned>(prof.ell);
    unsigned bound = static_cast<unsigned>(S.rank()) * ell_used;
    ModMatrix N = M - ModMatrix::identity(M.ring, M.n);
    ModMatrix power = N;
    for (unsigned n = 1; n <= bound; ++n) {
        if (power.is_zero()) {
            v.status = CurvatureStatus::Unipotent;
            v.order = n;
            return v;
        }
        if (n < bound) power = power * N;
    }
    v.status = CurvatureStatus::Other;
    return v;
}

}  // namespace

CurvatureVerdict curvature_is_identity(const QDiffSystem& S, std::uint64_t p,
                                       ModulusChoice choice) {
    PrimeProfile prof = prime_profile(S.q(), p);
    if (!prof.good || !prof.strong)
        throw std::domain_error("curvature_is_identity: profile not good and strong");
    return classify_curvature(S, p, choice, prof);
}

CurvatureVerdict unipotent_order(const QDiffSystem& S, std::uint64_t p, ModulusChoice choice) {
    return curvature_is_identity(S, p, choice);
}

bool ScanReport::all_identity_at_p_ell() const {
    for (const auto& e : entries)
        if (e.at_p_ell.status != CurvatureStatus::Identity) return false;
    return true;
}

ScanReport curvature_scan(const QDiffSystem& S, std::uint64_t pmax, unsigned jobs,
                          ModulusChoice summary_modulus) {
    if (pmax < 2) throw std::domain_error("curvature_scan: pmax must be >= 2");
    ScanReport report;
    report.q = S.q();
    report.pmax = pmax;
    report.summary_modulus = summary_modulus;
    std::vector<std::uint64_t> primes = primes_up_to(pmax);
    std::vector<PrimeProfile> profiles(primes.size());
    std::vector<std::optional<ScanEntry>> slots(primes.size());

    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < primes.size(); i += step) {
            PrimeProfile prof = prime_profile(S.q(), primes[i]);
            profiles[i] = prof;
            if (!prof.good || !prof.strong) continue;
            ScanEntry e;
            e.profile = prof;
            e.at_p = classify_curvature(S, primes[i], ModulusChoice::mod_p, prof);
            e.at_p_ell = classify_curvature(S, primes[i], ModulusChoice::mod_p_ell, prof);
            slots[i] = std::move(e);
        }
    };
    if (jobs <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < primes.size(); ++i) {
        const PrimeProfile& prof = profiles[i];
        if (!prof.good) {
            report.not_good.push_back(primes[i]);
            continue;
        }
        if (!prof.strong) {
            report.weak.push_back(primes[i]);
            continue;
        }
        const ScanEntry& e = *slots[i];
        const CurvatureVerdict& v =
            summary_modulus == ModulusChoice::mod_p ? e.at_p : e.at_p_ell;
        switch (v.status) {
            case CurvatureStatus::Identity: ++report.summary.identity; break;
            case CurvatureStatus::Unipotent: ++report.summary.unipotent; break;
            case CurvatureStatus::Other: ++report.summary.other; break;
            case CurvatureStatus::BadPrime: ++report.summary.bad; break;
        }
        if (v.status == CurvatureStatus::BadPrime)
            report.bad_primes.push_back(primes[i]);
        report.entries.push_back(e);
    }
    return report;
}

// ---------------------------------------------------------------------------
// chi machinery: exact p-adic tracking of G_n through the recursion
//   P_{n+1} = B(x) P_n(qx) + [P_n(qx) D(x) - P_n(x) D(q^n x)] / ((q-1)x)
// where G_1 = B/D with integer B, D, so G_n = P_n / (D(x)...D(q^{n-1}x)).
// Coefficients live in Z/p^T; the exact division by (q-1)x happens at the
// coefficient level through (q^i - q^{nj})/(q-1) = +-q^min [|i-nj|]_q.

namespace {

struct ZkCtx {
    Int mod;  // p^T
    Int pz;
    unsigned T;
    std::vector<Int> qpow;  // q^k mod p^T
    std::vector<Int> qint;  // [k]_q mod p^T

    ZkCtx(std::uint64_t p, unsigned T_, const Rat& q)
        : pz(static_cast<unsigned long>(p)), T(T_) {
        mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), T);
        Int num = numer(q) % mod;
        if (num < 0) num += mod;
        Int den = denom(q) % mod;
        Int deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw bad_prime(p);
        qpow.push_back(Int(1) % mod);
        qpow.push_back(num * deninv % mod);
        qint.push_back(Int(0));
        qint.push_back(Int(1) % mod);
    }
    const Int& qp(std::size_t k) {
        while (qpow.size() <= k) qpow.push_back(qpow.back() * qpow[1] % mod);
        return qpow[k];
    }
    const Int& qi(std::size_t k) {
        while (qint.size() <= k) {
            std::size_t m = qint.size();
            qint.push_back((qint.back() + qp(m - 1)) % mod);  // [m]_q = [m-1]_q + q^{m-1}
        }
        return qint[k];
    }
};

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

ZkPoly zk_add(ZkPoly a, const ZkPoly& b, const Int& mod) {
    if (b.size() > a.size()) a.resize(b.size(), Int(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % mod;
    zk_trim(a);
    return a;
}

ZkPoly zk_scale_arg(const ZkPoly& f, ZkCtx& ctx, std::size_t stride) {
    ZkPoly out = f;
    for (std::size_t j = 1; j < out.size(); ++j)
        out[j] = out[j] * ctx.qp(stride * j) % ctx.mod;
    return out;
}

// [P(qx) D(x) - P(x) D(q^n x)] / ((q-1) x), exact at the coefficient level.
ZkPoly zk_dq_bracket(const ZkPoly& P, const ZkPoly& D, unsigned long n, ZkCtx& ctx) {
    if (P.empty() || D.empty()) return {};
    std::size_t len = P.size() + D.size() - 1;
    ZkPoly out(len > 1 ? len - 1 : 0, Int(0));
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (P[i] == 0) continue;
        for (std::size_t j = 0; j < D.size(); ++j) {
            if (D[j] == 0) continue;
            std::size_t a = i, b = static_cast<std::size_t>(n) * j;
            if (a == b) continue;
            std::size_t m = i + j;  // m >= 1 here since a != b
            Int term = P[i] * D[j] % ctx.mod;
            std::size_t lo = std::min(a, b), diff = (a > b) ? a - b : b - a;
            term = term * ctx.qp(lo) % ctx.mod;
            term = term * ctx.qi(diff) % ctx.mod;
            if (a < b) term = -term;
            out[m - 1] = ((out[m - 1] + term) % ctx.mod + ctx.mod) % ctx.mod;
        }
    }
    zk_trim(out);
    return out;
}

long zk_content_valuation(const ZkPoly& f, const Int& pz, unsigned T) {
    long best = static_cast<long>(T);
    for (const auto& c : f) {
        if (c == 0) continue;
        best = std::min(best, valuation(c, pz));
        if (best == 0) break;
    }
    return best;  // T encodes "at least T" (or the zero polynomial)
}

struct DeltaIntegralForm {
    std::vector<Poly> B;  // mu x mu numerator matrix, integer coefficients
    Poly D;               // scalar denominator, integer coefficients
    long cD = 0;          // v_p(content D)
};

DeltaIntegralForm delta_integral_form(const QDiffSystem& S, std::uint64_t p) {
    DeltaSystem ds = DeltaSystem::from_system(S);
    std::size_t mu = S.rank();
    Poly common(Rat(1));
    for (const auto& e : ds.G1.entries()) {
        Poly g = gcd(common, e.den());
        common = common * (e.den() / g);
    }
    std::vector<Poly> nums(mu * mu);
    Int L(1);
    for (std::size_t i = 0; i < mu * mu; ++i) {
        nums[i] = ds.G1.entries()[i].num() * (common / ds.G1.entries()[i].den());
        for (const auto& c : nums[i].coeffs()) {
            Int d = denom(c);
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
        }
    }
    for (const auto& c : common.coeffs()) {
        Int d = denom(c);
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
    DeltaIntegralForm out;
    Rat Lr(L);
    for (auto& np : nums) np = Lr * np;
    out.B = std::move(nums);
    out.D = Lr * common;
    // strip the common p-power so the working precision T stays small
    Int pz(static_cast<unsigned long>(p));
    auto content_v = [&](const Poly& f) {
        long best = -1;
        for (const auto& c : f.coeffs()) {
            if (c == 0) continue;
            long v = valuation(numer(c), pz);
            if (best < 0 || v < best) best = v;
        }
        return best;
    };
    long vD = content_v(out.D);
    long t = vD;
    for (const auto& bp : out.B) {
        long v = content_v(bp);
        if (v >= 0) t = std::min(t, v);
    }
    if (t > 0) {
        Rat scale = Rat(1) / rat_pow(Rat(pz), t);
        for (auto& bp : out.B) bp = scale * bp;
        out.D = scale * out.D;
        vD -= t;
    }
    out.cD = vD;
    return out;
}

// h(n) for n = 0..N: h(n) = max(0, max_{s<=n} v([s]_q!) - v(G_s)).
std::vector<Rat> h_sequence(const QDiffSystem& S, std::uint64_t p, unsigned N) {
    PrimeProfile prof = prime_profile(S.q(), p);
    if (!prof.good) throw std::domain_error("chi: profile not good");
    DeltaIntegralForm form = delta_integral_form(S, p);
    Int pz(static_cast<unsigned long>(p));
    // v_p([s]_q!) for s <= N
    std::vector<long> vfact(N + 1, 0);
    if (prof.strong) {
        long v1q = prof.kappa == 1 ? prof.ell : 0;
        for (unsigned s = 1; s <= N; ++s) {
            long vs = 0;
            if (s % prof.kappa == 0) {
                unsigned long m = s / prof.kappa;
                vs = prof.ell;
                while (m % p == 0) {
                    ++vs;
                    m /= p;
                }
            }
            vfact[s] = vfact[s - 1] + vs - v1q;
        }
    } else {
        Rat qs(1);
        long v1q = valuation(Rat(1) - S.q(), pz);
        for (unsigned s = 1; s <= N; ++s) {
            qs *= S.q();
            vfact[s] = vfact[s - 1] + valuation(Rat(1) - qs, pz) - v1q;
        }
    }
    long maxT = 1;
    for (unsigned s = 1; s <= N; ++s)
        maxT = std::max(maxT, vfact[s] + static_cast<long>(s) * form.cD + 1);
    unsigned T = static_cast<unsigned>(maxT);
    ZkCtx ctx(p, T, S.q());

    std::size_t mu = S.rank();
    auto to_zk = [&](const Poly& f) {
        ZkPoly out;
        for (const auto& c : f.coeffs()) {
            Int v = numer(c) % ctx.mod;
            if (v < 0) v += ctx.mod;
            out.push_back(v);
        }
        zk_trim(out);
        return out;
    };
    std::vector<ZkPoly> Bz(mu * mu), Pn(mu * mu);
    ZkPoly Dz = to_zk(form.D);
    if (Dz.empty()) throw bad_prime(p);
    for (std::size_t i = 0; i < mu * mu; ++i) {
        Bz[i] = to_zk(form.B[i]);
        Pn[i] = Bz[i];
    }
    std::vector<Rat> h(N + 1, Rat(0));
    long running = 0;  // h(n); the s = 0 term is 0 because G_0 = I
    for (unsigned n = 1; n <= N; ++n) {
        long vc = static_cast<long>(T);
        for (const auto& e : Pn) vc = std::min(vc, zk_content_valuation(e, pz, T));
        if (vc < static_cast<long>(T)) {
            long term = vfact[n] - (vc - static_cast<long>(n) * form.cD);
            running = std::max(running, term);
        }
        h[n] = Rat(running);
        if (n == N) break;
        std::vector<ZkPoly> next(mu * mu);
        std::vector<ZkPoly> Pq(mu * mu);
        for (std::size_t i = 0; i < mu * mu; ++i) Pq[i] = zk_scale_arg(Pn[i], ctx, 1);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                ZkPoly acc;
                for (std::size_t k = 0; k < mu; ++k)
                    acc = zk_add(std::move(acc), zk_mul(Bz[i * mu + k], Pq[k * mu + j], ctx.mod),
                                 ctx.mod);
                acc = zk_add(std::move(acc), zk_dq_bracket(Pn[i * mu + j], Dz, n, ctx), ctx.mod);
                next[i * mu + j] = std::move(acc);
            }
        Pn = std::move(next);
    }
    return h;
}

// -log_p sup(|G_1|_Gauss, 1), always <= 0
Rat neg_log_sup_G(const QDiffSystem& S, std::uint64_t p) {
    DeltaSystem ds = DeltaSystem::from_system(S);
    std::optional<Rat> vmin;
    for (const auto& e : ds.G1.entries()) {
        auto v = gauss_valuation(e, p);
        if (!v) continue;
        if (!vmin || *v < *vmin) vmin = v;
    }
    if (!vmin) return Rat(0);  // G_1 = 0
    return *vmin < 0 ? *vmin : Rat(0);
}

}  // namespace

ChiBound chi_truncated(const QDiffSystem& S, std::uint64_t p, unsigned N) {
    if (N == 0) throw std::domain_error("chi_truncated: N must be positive");
    std::vector<Rat> h = h_sequence(S, p, N);
    ChiBound out;
    out.kind = ChiBoundKind::truncated;
    out.N = N;
    out.h_over_n.reserve(N);
    for (unsigned n = 1; n <= N; ++n) out.h_over_n.push_back(h[n] / Rat(static_cast<long>(n)));
    out.estimate = -out.h_over_n.back();
    return out;
}

ChiBoundsReport chi_bounds(const QDiffSystem& S, std::uint64_t p, const ChiBoundsContext& ctx) {
    ChiBoundsReport report;
    PrimeProfile prof = prime_profile(S.q(), p);
    if (!prof.good) throw std::domain_error("chi_bounds: profile not good");
    const Rat kap(static_cast<long>(prof.kappa));
    const Rat pm1(static_cast<long>(p - 1));
    const Rat v_kappa = prof.kappa == 1 ? Rat(0) : Rat(prof.ell);
    const Rat logsup = neg_log_sup_G(S, p);  // = -log_p sup(|G|,1), <= 0

    if (!prof.strong) {
        // Prop.-qmerdosi regime: only the two-sided range applies.
        unsigned long e = 1;
        Int pz(static_cast<unsigned long>(p));
        long target = p > 2 ? 1 : 2;
        while (true) {
            Rat qek = rat_pow(S.q(), static_cast<long>(e * prof.kappa));
            if (qek != 1 && valuation(Rat(1) - qek, pz) >= target) break;
            ++e;
        }
        Rat v_e = Rat(valuation(Rat(1) - rat_pow(S.q(), static_cast<long>(e * prof.kappa)), pz));
        ChiBound b;
        b.kind = ChiBoundKind::bad_regime_range;
        b.log_lower =
            Rat(-1) / (kap * pm1) - v_e / Rat(static_cast<long>(e * prof.kappa)) + logsup;
        b.log_upper = -v_kappa / kap + logsup;
        report.bounds.push_back(std::move(b));
        report.skipped.emplace_back(ChiBoundKind::trivial, "profile not strong");
        report.skipped.emplace_back(ChiBoundKind::nilpotent_mod_p, "profile not strong");
        report.skipped.emplace_back(ChiBoundKind::unipotent_mod_qk, "profile not strong");
        report.skipped.emplace_back(ChiBoundKind::dwork_frobenius, "profile not strong");
        return report;
    }

    {
        ChiBound b;
        b.kind = ChiBoundKind::trivial;
        b.log_lower = -v_kappa / kap - Rat(1) / (kap * pm1) + logsup;
        report.bounds.push_back(std::move(b));
    }
    if (ctx.order_mod_p && *ctx.order_mod_p >= 1) {
        unsigned n = *ctx.order_mod_p;
        ChiBound b;
        b.kind = ChiBoundKind::nilpotent_mod_p;
        b.order = n;
        b.log_lower =
            Rat(1) / (kap * Rat(static_cast<long>(n))) - v_kappa / kap - Rat(1) / (kap * pm1);
        report.bounds.push_back(std::move(b));
    } else {
        report.skipped.emplace_back(ChiBoundKind::nilpotent_mod_p, "no mod-p unipotence order");
    }
    if (ctx.order_mod_qk && *ctx.order_mod_qk >= 1) {
        unsigned n = *ctx.order_mod_qk;
        ChiBound b;
        b.kind = ChiBoundKind::unipotent_mod_qk;
        b.order = n;
        b.log_lower = -v_kappa * Rat(static_cast<long>(n) - 1) / (Rat(static_cast<long>(n)) * kap) -
                      Rat(1) / (kap * pm1);
        report.bounds.push_back(std::move(b));
    } else {
        report.skipped.emplace_back(ChiBoundKind::unipotent_mod_qk,
                                    "no mod-(1-q^kappa) unipotence order");
    }
    if (!ctx.cyclic_coeffs) {
        report.skipped.emplace_back(ChiBoundKind::dwork_frobenius, "no cyclic coefficients");
    } else if (prof.kappa != 1) {
        report.skipped.emplace_back(ChiBoundKind::dwork_frobenius, "kappa != 1");
    } else {
        const auto& a = *ctx.cyclic_coeffs;
        std::size_t mu = a.size();
        std::optional<Rat> best;  // max_i (-v(a_i)) / (mu - i)
        bool sup_gt_one = false;
        for (std::size_t i = 0; i < mu; ++i) {
            auto v = gauss_valuation(a[i], p);
            if (!v) continue;
            if (*v < 0) sup_gt_one = true;
            Rat cand = -*v / Rat(static_cast<long>(mu - i));
            if (!best || cand > *best) best = cand;
        }
        if (!sup_gt_one) {
            report.skipped.emplace_back(ChiBoundKind::dwork_frobenius, "sup |a_i| <= 1");
        } else {
            ChiBound b;
            b.kind = ChiBoundKind::dwork_frobenius;
            b.is_equality = true;
            Rat val = Rat(-1) / pm1 - *best;
            b.log_lower = val;
            b.log_upper = val;
            report.bounds.push_back(std::move(b));
        }
    }
    return report;
}

namespace {

double log_abs(const Rat& r) {
    signed long exp_n, exp_d;
    double mn = mpz_get_d_2exp(&exp_n, numer(r).get_mpz_t());
    double md = mpz_get_d_2exp(&exp_d, denom(r).get_mpz_t());
    return std::log(std::fabs(mn / md)) + static_cast<double>(exp_n - exp_d) * std::log(2.0);
}

}  // namespace

SizeEstimate size_partial(const FormalSolution& y, unsigned N, std::uint64_t pmax) {
    SizeEstimate out;
    out.N = N;
    out.pmax = pmax;
    unsigned upto = std::min<unsigned>(N, y.N);
    double arch = 0;  // sup log^+ |a_n|
    for (unsigned n = 0; n <= upto; ++n)
        for (const auto& row : y.coeff[n])
            for (const auto& v : row)
                if (v != 0) arch = std::max(arch, log_abs(v));
    out.contributions.emplace_back(0, arch / static_cast<double>(N));
    out.partial_sum = arch;
    for (std::uint64_t p : primes_up_to(pmax)) {
        Int pz(static_cast<unsigned long>(p));
        long worst = 0;  // max(0, -v_p(a_n)) = v_p of the denominator
        for (unsigned n = 0; n <= upto; ++n)
            for (const auto& row : y.coeff[n])
                for (const auto& v : row) {
                    if (v == 0) continue;
                    worst = std::max(worst, valuation(denom(v), pz));
                }
        if (worst > 0) {
            double contrib = static_cast<double>(worst) * std::log(static_cast<double>(p));
            out.contributions.emplace_back(p, contrib / static_cast<double>(N));
            out.partial_sum += contrib;
        }
    }
    out.partial_sum /= static_cast<double>(N);
    return out;
}

SizeEstimate size_partial(const QDiffSystem& S, unsigned N, std::uint64_t pmax) {
    SizeEstimate out;
    out.N = N;
    out.pmax = pmax;
    for (std::uint64_t p : primes_up_to(pmax)) {
        PrimeProfile prof = prime_profile(S.q(), p);
        if (!prof.good || !prof.strong) continue;
        std::vector<Rat> h;
        try {
            h = h_sequence(S, p, N);
        } catch (const bad_prime&) {
            continue;
        }
        double contrib = h.back().get_d() * std::log(static_cast<double>(p));
        if (contrib != 0) {
            out.contributions.emplace_back(p, contrib / static_cast<double>(N));
            out.partial_sum += contrib;
        }
    }
    out.partial_sum /= static_cast<double>(N);
    return out;
}

KappaSumReport kappa_sum_partial(const Rat& q, std::uint64_t pmax) {
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("kappa_sum_partial: q must not be 0 or +-1");
    KappaSumReport out;
    for (std::uint64_t p : primes_up_to(pmax)) {
        Int pz(static_cast<unsigned long>(p));
        if (valuation(q, pz) != 0) continue;
        ModRing fp(p, 1);
        std::uint64_t qres = fp.reduce(q);
        std::uint64_t acc = qres;
        unsigned long kappa = 1;
        while (acc != 1) {
            acc = fp.mul(acc, qres);
            ++kappa;
        }
        double term = std::log(static_cast<double>(p)) /
                      (static_cast<double>(kappa) * static_cast<double>(p - 1));
        out.total += term;
        out.table.push_back({p, kappa, term, out.total});
    }
    return out;
}

KappaCompareReport compare_kappa_profiles(const Rat& q1, const Rat& q2, std::uint64_t pmax) {
    if (q1 == 0 || q2 == 0) throw std::domain_error("compare_kappa_profiles: zero q");
    KappaCompareReport out;
    for (std::uint64_t p : primes_up_to(pmax)) {
        Int pz(static_cast<unsigned long>(p));
        if (valuation(q1, pz) != 0 || valuation(q2, pz) != 0) continue;
        ModRing fp(p, 1);
        auto order = [&](const Rat& q) {
            std::uint64_t r = fp.reduce(q);
            std::uint64_t acc = r;
            unsigned long k = 1;
            while (acc != 1) {
                acc = fp.mul(acc, r);
                ++k;
            }
            return k;
        };
        unsigned long k1 = order(q1), k2 = order(q2);
        if (k1 != k2) {
            out.equal_orders_everywhere = false;
            out.mismatches.push_back({p, k1, k2});
        }
    }
    return out;
}

}  // namespace qdiff
