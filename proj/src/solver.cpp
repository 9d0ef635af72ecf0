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

#include "qdiff/solver.hpp"

#include <algorithm>
#include <map>

#include "qdiff/factor.hpp"
#include "qdiff/series.hpp"

namespace qdiff {

std::optional<Rat> qexp_value(const Rat& q, const Rat& e) {
    if (is_integer(e)) {
        if (!numer(e).fits_slong_p()) return std::nullopt;
        return rat_pow(q, numer(e).get_si());
    }
    // q^{a/d} rational iff q^a has an exact d-th root (including sign)
    if (!numer(e).fits_slong_p() || !denom(e).fits_slong_p()) return std::nullopt;
    long a = numer(e).get_si();
    unsigned long d = denom(e).get_ui();
    Rat qa = rat_pow(q, a);
    if (qa < 0 && d % 2 == 0) return std::nullopt;
    Int n = numer(qa), den = denom(qa);
    Int rn, rd;
    bool neg = n < 0;
    Int an = abs(n);
    if (mpz_root(rn.get_mpz_t(), an.get_mpz_t(), d) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d) == 0) return std::nullopt;
    if (neg) rn = -rn;
    Rat out(rn, rd);
    out.canonicalize();
    return out;
}

namespace {

// q-shift of a monic irreducible: shift_k(a) = q^{-k deg a} a(q^k x), monic.
Poly orbit_shift(const Poly& a, const Rat& q, long k) {
    return a.scale_arg(rat_pow(q, k)).monic();
}

struct OrbitData {
    Poly anchor;                 // monic irreducible, degree >= 1
    std::map<long, long> expo;   // position k -> exponent e_k
};

struct Order1Core {
    bool solvable_orbits = true;  // all orbit sums telescope
    long x_exponent = 0;          // exponent of x in b
    Rat residual_constant;        // C * q^{-sum d G}, to be matched to q^m
    RatFun f_orbit;               // product of shifted anchors^g (no x, no const)
};

// Factor b, group factors into q-orbits, telescope.  Valid for any nonzero b.
Order1Core order1_core(const RatFun& b, const Rat& q) {
    Order1Core out;
    Factorization fn = factor_poly(b.num());
    Factorization fd = factor_poly(b.den());
    out.residual_constant = fn.constant / fd.constant;
    std::vector<OrbitData> orbits;
    auto add_factor = [&](const Poly& irr, long e) {
        if (irr == Poly::x()) {
            out.x_exponent += e;
            return;
        }
        for (auto& orb : orbits) {
            if (orb.anchor.degree() != irr.degree()) continue;
            // position k from the constant-term ratio u_0 / a_0 = q^{-k d}
            Rat ratio = irr.coeff(0) / orb.anchor.coeff(0);
            auto s = q_power_test(ratio, q);
            if (!s) continue;
            long d = irr.degree();
            if (*s % d != 0) continue;
            long k = -*s / d;
            if (orbit_shift(orb.anchor, q, k) != irr) continue;
            orb.expo[k] += e;
            return;
        }
        orbits.push_back(OrbitData{irr, {{0, e}}});
    };
    for (const auto& [irr, mult] : fn.factors) add_factor(irr, static_cast<long>(mult));
    for (const auto& [irr, mult] : fd.factors) add_factor(irr, -static_cast<long>(mult));

    out.f_orbit = RatFun(Rat(1));
    for (const auto& orb : orbits) {
        long total = 0;
        for (const auto& [k, e] : orb.expo) total += e;
        if (total != 0) {
            out.solvable_orbits = false;
            return out;
        }
        long kmin = orb.expo.begin()->first;
        long kmax = orb.expo.rbegin()->first;
        long d = orb.anchor.degree();
        long G = 0;
        // g_k = sum_{j > k} e_j, supported on [kmin, kmax-1]
        long suffix = 0;
        std::map<long, long> g;
        for (long k = kmax - 1; k >= kmin; --k) {
            auto it = orb.expo.find(k + 1);
            suffix += it == orb.expo.end() ? 0 : it->second;
            if (suffix != 0) g[k] = suffix;
        }
        for (const auto& [k, gk] : g) {
            G += gk;
            out.f_orbit *= RatFun(orbit_shift(orb.anchor, q, k)).pow(gk);
        }
        out.residual_constant /= rat_pow(q, d * G);
    }
    return out;
}

}  // namespace

std::optional<RatFun> order1_rational_test(const RatFun& b, const Rat& q) {
    return order1_rational_test_scaled(b, Rat(0), q);
}

std::optional<RatFun> order1_rational_test_scaled(const RatFun& u, const Rat& qexp,
                                                  const Rat& q) {
    if (u.is_zero()) throw std::domain_error("order1: b must be nonzero");
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("order1: q must not be 0 or a root of unity");
    Rat gamma = qexp;
    RatFun b = u;
    if (!is_integer(gamma)) {
        auto v = qexp_value(q, gamma);
        if (!v) return std::nullopt;  // b itself is not in Q(x)
        b = RatFun(*v) * u;
        gamma = 0;
    }
    Order1Core core = order1_core(b, q);
    if (!core.solvable_orbits || core.x_exponent != 0) return std::nullopt;
    auto m = q_power_test(core.residual_constant, q);
    if (!m) return std::nullopt;
    long mm = *m + (is_integer(gamma) ? numer(gamma).get_si() : 0);
    RatFun f = core.f_orbit * RatFun(Poly::x()).pow(mm);
    // soundness: verify the witness exactly
    RatFun check = dilate(f, q, 1) / f;
    if (!is_integer(qexp)) {
        if (check != b) throw std::logic_error("order1: witness verification failed");
    } else {
        if (check != RatFun(rat_pow(q, numer(qexp).get_si())) * u)
            throw std::logic_error("order1: witness verification failed");
    }
    return f;
}

std::optional<KummerWitness> order1_kummer_test(const RatFun& b, const Rat& q, long dcap) {
    return order1_kummer_test_scaled(b, Rat(0), q, dcap);
}

std::optional<KummerWitness> order1_kummer_test_scaled(const RatFun& u, const Rat& qexp,
                                                       const Rat& q, long dcap) {
    if (u.is_zero()) throw std::domain_error("order1: b must be nonzero");
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("order1: q must not be 0 or a root of unity");
    if (dcap < 1) throw std::domain_error("order1: dcap must be >= 1");
    // Fold exactly-rational exponent parts into the rational factor.
    Rat gamma = qexp;
    RatFun b = u;
    if (auto v = qexp_value(q, gamma)) {
        b = RatFun(*v) * u;
        gamma = 0;
    }
    Order1Core core = order1_core(b, q);
    if (!core.solvable_orbits || core.x_exponent != 0) return std::nullopt;
    auto e0 = q_rational_power_test(core.residual_constant, q, dcap);
    if (!e0) return std::nullopt;
    Rat delta = *e0 + gamma;
    Int dz = denom(delta);
    if (!dz.fits_slong_p() || dz.get_si() > dcap) return std::nullopt;
    KummerWitness w;
    w.d = dz.get_si();
    w.delta = delta;
    w.f = core.f_orbit;
    return w;
}

// ---------------------------------------------------------------------------
// Formal solution space with integer shifts (exact Frobenius method).

namespace {

struct FormalSpace {
    bool eigen_ok = false;       // all eigenvalues of A(0) rational powers of q
    bool shift_in_cap = true;    // eigen-exponents within the allowed shift range
    long s_min = 0;
    std::vector<long> exponents; // eigen-exponents s_i (with multiplicity)
    unsigned params = 0;         // dimension of the solution space
    /// series[r][n] = row of w^{(r)}_n (coefficients of x^n)
    std::vector<std::vector<std::vector<Rat>>> series;
};

// Row solve w * M = r.  Returns nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_row(const QMat& M, const std::vector<Rat>& r) {
    std::size_t n = M.size();
    // transpose system M^T w^T = r^T
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = M[j][i];
        aug[i][n] = r[i];
    }
    std::vector<long> piv(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && aug[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(aug[pr], aug[row]);
        Rat inv = Rat(1) / aug[row][col];
        for (std::size_t j = 0; j <= n; ++j) aug[row][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (std::size_t j = 0; j <= n; ++j) aug[i][j] -= f * aug[row][j];
        }
        piv[col] = static_cast<long>(row);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (aug[i][n] != 0) return std::nullopt;
    std::vector<Rat> w(n, Rat(0));
    for (std::size_t col = 0; col < n; ++col)
        if (piv[col] >= 0) w[col] = aug[static_cast<std::size_t>(piv[col])][n];
    return w;
}

// Basis of { w : w M = 0 } (left kernel).
std::vector<std::vector<Rat>> left_kernel(const QMat& M) {
    std::size_t n = M.size();
    // row-reduce M^T; free columns give kernel vectors
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M[j][i];
    std::vector<long> piv_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(a[pr], a[row]);
        Rat inv = Rat(1) / a[row][col];
        for (std::size_t j = 0; j < n; ++j) a[row][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        piv_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::vector<Rat>> out;
    for (std::size_t col = 0; col < n; ++col) {
        if (piv_of_col[col] >= 0) continue;
        std::vector<Rat> v(n, Rat(0));
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < n; ++c2)
            if (piv_of_col[c2] >= 0)
                v[c2] = -a[static_cast<std::size_t>(piv_of_col[c2])][col];
        out.push_back(std::move(v));
    }
    return out;
}

// Column kernel of M (vectors v with M v = 0).
std::vector<std::vector<Rat>> right_kernel(const QMat& M) {
    std::size_t n = M.size();
    QMat t(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = M[j][i];
    return left_kernel(t);  // w M^T = 0 <=> M w^T = 0
}

FormalSpace formal_space(const QDiffSystem& S, unsigned Nser) {
    std::size_t mu = S.rank();
    for (const auto& e : S.matrix().entries())
        if (e.has_pole_at_zero()) throw pole_at_zero();
    QMat A0 = S.matrix().eval(Rat(0));
    if (!qmat_invertible(A0)) throw pole_at_zero();
    FormalSpace out;
    // eigen-exponents: every eigenvalue must be a rational integer power of q
    Poly chi = qmat_charpoly(A0);
    Factorization fac = factor_poly(chi);
    for (const auto& [irr, mult] : fac.factors) {
        if (irr.degree() != 1) return out;  // irrational eigenvalue
        Rat root = -irr.coeff(0);
        auto s = q_power_test(root, S.q());
        if (!s) return out;
        for (unsigned m = 0; m < mult; ++m) out.exponents.push_back(*s);
    }
    out.eigen_ok = true;
    out.s_min = *std::min_element(out.exponents.begin(), out.exponents.end());
    long t_max = *std::max_element(out.exponents.begin(), out.exponents.end()) - out.s_min;
    unsigned N = std::max<unsigned>(Nser, static_cast<unsigned>(t_max) + 1);

    // scaled system B = A / q^{s_min}
    Rat scale = Rat(1) / rat_pow(S.q(), out.s_min);
    auto Bser = taylor_matrix(S.matrix(), N);
    for (auto& rowv : Bser)
        for (auto& entry : rowv)
            for (auto& c : entry) c *= scale;
    QMat B0(mu, std::vector<Rat>(mu));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) B0[i][j] = Bser[i][j][0];

    // history[r][n] = row w_n of parameter r
    std::vector<std::vector<std::vector<Rat>>> hist;
    Rat qn(1);
    for (unsigned n = 0; n <= N; ++n) {
        if (n > 0) qn *= S.q();
        // M_n = q^n I - B0
        QMat M(mu, std::vector<Rat>(mu));
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) M[i][j] = (i == j ? qn : Rat(0)) - B0[i][j];
        // RHS per existing parameter
        std::size_t P = hist.size();
        std::vector<std::vector<Rat>> rhs(P, std::vector<Rat>(mu, Rat(0)));
        for (std::size_t r = 0; r < P; ++r)
            for (unsigned m = 0; m < n; ++m)
                for (std::size_t j = 0; j < mu; ++j) {
                    Rat acc(0);
                    for (std::size_t k = 0; k < mu; ++k)
                        acc += hist[r][m][k] * Bser[k][j][n - m];
                    rhs[r][j] += acc;
                }
        bool resonant = std::find(out.exponents.begin(), out.exponents.end(),
                                  static_cast<long>(n) + out.s_min) != out.exponents.end();
        if (!resonant) {
            // M invertible: unique continuation per parameter
            for (std::size_t r = 0; r < P; ++r) {
                auto w = solve_row(M, rhs[r]);
                hist[r].push_back(*w);  // always consistent
            }
        } else {
            // consistency constraints: rhs combination must be orthogonal to
            // the column kernel of M
            auto ker_cols = right_kernel(M);
            if (P > 0 && !ker_cols.empty()) {
                std::vector<std::vector<Rat>> C(ker_cols.size(), std::vector<Rat>(P, Rat(0)));
                for (std::size_t t = 0; t < ker_cols.size(); ++t)
                    for (std::size_t r = 0; r < P; ++r)
                        for (std::size_t j = 0; j < mu; ++j)
                            C[t][r] += rhs[r][j] * ker_cols[t][j];
                // kernel of C = admissible parameter combinations
                auto admissible = [&]() {
                    // left kernel of C^T = right kernel of C: vectors c with C c = 0
                    std::size_t rows = C.size();
                    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(P));
                    for (std::size_t i = 0; i < rows; ++i) a[i] = C[i];
                    // gaussian elimination
                    std::vector<long> piv_of_col(P, -1);
                    std::size_t row = 0;
                    for (std::size_t col = 0; col < P && row < rows; ++col) {
                        std::size_t pr = row;
                        while (pr < rows && a[pr][col] == 0) ++pr;
                        if (pr == rows) continue;
                        std::swap(a[pr], a[row]);
                        Rat inv = Rat(1) / a[row][col];
                        for (std::size_t j = 0; j < P; ++j) a[row][j] *= inv;
                        for (std::size_t i = 0; i < rows; ++i) {
                            if (i == row || a[i][col] == 0) continue;
                            Rat f = a[i][col];
                            for (std::size_t j = 0; j < P; ++j) a[i][j] -= f * a[row][j];
                        }
                        piv_of_col[col] = static_cast<long>(row);
                        ++row;
                    }
                    std::vector<std::vector<Rat>> basis;
                    for (std::size_t col = 0; col < P; ++col) {
                        if (piv_of_col[col] >= 0) continue;
                        std::vector<Rat> v(P, Rat(0));
                        v[col] = 1;
                        for (std::size_t c2 = 0; c2 < P; ++c2)
                            if (piv_of_col[c2] >= 0)
                                v[c2] = -a[static_cast<std::size_t>(piv_of_col[c2])][col];
                        basis.push_back(std::move(v));
                    }
                    return basis;
                }();
                // reparametrize history and rhs
                std::vector<std::vector<std::vector<Rat>>> nhist;
                std::vector<std::vector<Rat>> nrhs;
                for (const auto& c : admissible) {
                    std::vector<std::vector<Rat>> comb(n, std::vector<Rat>(mu, Rat(0)));
                    std::vector<Rat> crhs(mu, Rat(0));
                    for (std::size_t r = 0; r < P; ++r) {
                        if (c[r] == 0) continue;
                        for (unsigned m = 0; m < n; ++m)
                            for (std::size_t j = 0; j < mu; ++j)
                                comb[m][j] += c[r] * hist[r][m][j];
                        for (std::size_t j = 0; j < mu; ++j) crhs[j] += c[r] * rhs[r][j];
                    }
                    nhist.push_back(std::move(comb));
                    nrhs.push_back(std::move(crhs));
                }
                hist = std::move(nhist);
                rhs = std::move(nrhs);
                P = hist.size();
            }
            // particular continuation for surviving parameters
            for (std::size_t r = 0; r < P; ++r) {
                auto w = solve_row(M, rhs[r]);
                if (!w) throw std::logic_error("formal_space: inconsistent after reparam");
                hist[r].push_back(*w);
            }
            // new parameters from the left kernel of M (solutions starting here)
            for (const auto& kv : left_kernel(M)) {
                std::vector<std::vector<Rat>> fresh(n + 1, std::vector<Rat>(mu, Rat(0)));
                fresh[n] = kv;
                hist.push_back(std::move(fresh));
            }
        }
    }
    out.params = static_cast<unsigned>(hist.size());
    out.series = std::move(hist);
    return out;
}

}  // namespace

RationalSolveResult rational_solutions(const QDiffSystem& S, unsigned degree_cap,
                                       unsigned terms) {
    RationalSolveResult out;
    out.degree_cap = degree_cap;
    unsigned Nser = std::max(terms, 2 * degree_cap + 4);
    FormalSpace fs = formal_space(S, Nser);
    std::size_t mu = S.rank();
    if (!fs.eigen_ok) {
        out.status = SolveStatus::NoneProven;
        out.note = "an exponent of A(0) lies outside q^Z";
        return out;
    }
    for (long s : fs.exponents)
        if (s > static_cast<long>(degree_cap) || s < -static_cast<long>(degree_cap)) {
            out.status = SolveStatus::Inconclusive;
            out.note = "eigen-exponent beyond the shift cap";
            return out;
        }
    if (fs.params < mu) {
        out.status = SolveStatus::NoneProven;
        out.note = "formal solution space has dimension " + std::to_string(fs.params) +
                   " < " + std::to_string(mu);
        return out;
    }
    RationalSolutionBasis basis;
    for (unsigned r = 0; r < fs.params; ++r) {
        std::vector<RatFun> row(mu);
        for (std::size_t j = 0; j < mu; ++j) {
            std::vector<Rat> comp;
            comp.reserve(fs.series[r].size());
            for (const auto& w : fs.series[r]) comp.push_back(w[j]);
            auto rec = pade_reconstruct(comp, degree_cap);
            if (!rec) {
                out.status = SolveStatus::Inconclusive;
                out.note = "Pade reconstruction failed at the degree cap";
                return out;
            }
            RatFun shift = fs.s_min >= 0
                               ? RatFun(Poly::x(static_cast<int>(fs.s_min)))
                               : RatFun(Poly(Rat(1)), Poly::x(static_cast<int>(-fs.s_min)));
            row[j] = shift * *rec;
        }
        basis.solutions.push_back(std::move(row));
    }
    // exact verification: y(qx) = y(x) A(x) rowwise
    for (const auto& row : basis.solutions) {
        for (std::size_t j = 0; j < mu; ++j) {
            RatFun acc;
            for (std::size_t k = 0; k < mu; ++k) acc += row[k] * S.matrix().at(k, j);
            if (dilate(row[j], S.q(), 1) != acc) {
                out.status = SolveStatus::Inconclusive;
                out.note = "candidate failed exact verification";
                return out;
            }
        }
    }
    // independence certificate: stacked fundamental matrix is invertible
    RatMatrix Y(mu, mu);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) Y.at(i, j) = basis.solutions[i][j];
    if (Y.det().is_zero()) {
        out.status = SolveStatus::Inconclusive;
        out.note = "candidates are dependent over Q(x)";
        return out;
    }
    out.status = SolveStatus::Found;
    out.basis = std::move(basis);
    return out;
}

bool is_trivial_over_formal(const QDiffSystem& S, unsigned N) {
    FormalSpace fs = formal_space(S, N);
    return fs.eigen_ok && fs.params == S.rank();
}

GrothendieckTestReport grothendieck_test(const QDiffSystem& S, std::uint64_t pmax,
                                         unsigned degree_cap, unsigned terms, unsigned jobs) {
    GrothendieckTestReport out;
    out.pmax = pmax;
    out.degree_cap = degree_cap;
    out.terms = terms;
    out.scan = curvature_scan(S, pmax, jobs);
    try {
        out.solve = rational_solutions(S, degree_cap, terms);
    } catch (const pole_at_zero&) {
        out.solve.status = SolveStatus::Inconclusive;
        out.solve.note = "system not regular-presentable at 0";
    }
    bool all_identity = out.scan.all_identity_at_p_ell();
    bool found = out.solve.status == SolveStatus::Found;
    if (all_identity && found) {
        out.verdict = GrothVerdict::consistent_trivial;
    } else if (!all_identity && !found) {
        out.verdict = GrothVerdict::consistent_nontrivial;
    } else if (!all_identity && found) {
        out.verdict = GrothVerdict::inconsistent;  // would contradict the criterion
    } else {
        out.verdict = GrothVerdict::inconclusive;
    }
    return out;
}

}  // namespace qdiff
