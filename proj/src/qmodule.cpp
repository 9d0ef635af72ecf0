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

#include "qdiff/qmodule.hpp"

#include "qdiff/series.hpp"

namespace qdiff {

QDiffSystem::QDiffSystem(Rat q, RatMatrix A, bool allow_root_of_unity)
    : q_(std::move(q)), A_(std::move(A)) {
    if (q_ == 0) throw std::domain_error("QDiffSystem: q must be nonzero");
    if (!allow_root_of_unity && (q_ == 1 || q_ == -1))
        throw std::domain_error("QDiffSystem: q must not be a root of unity");
    if (!A_.is_square()) throw std::domain_error("QDiffSystem: matrix must be square");
    if (A_.det().is_zero()) throw std::domain_error("QDiffSystem: det A = 0");
}

DeltaSystem DeltaSystem::from_system(const QDiffSystem& S) {
    RatFun scale(Poly{Rat(0), S.q() - 1});  // (q-1) x
    RatMatrix G = S.matrix() - RatMatrix::identity(S.rank());
    DeltaSystem out{S.q(), scale.inverse() * G};
    return out;
}

QDiffSystem DeltaSystem::to_system() const {
    RatFun scale(Poly{Rat(0), q - 1});
    return QDiffSystem(q, RatMatrix::identity(G1.rows()) + scale * G1);
}

RatMatrix phi_iterate(const QDiffSystem& S, unsigned n) {
    RatMatrix out = RatMatrix::identity(S.rank());
    Rat qi(1);
    for (unsigned i = 0; i < n; ++i) {
        out = out * S.matrix().dilate_entries(qi, 1);
        qi *= S.q();
    }
    return out;
}

std::vector<RatMatrix> delta_matrices(const QDiffSystem& S, unsigned n) {
    if (S.q() == 1) throw std::domain_error("delta_matrices: q must not be 1");
    std::vector<RatMatrix> out;
    out.reserve(n + 1);
    out.push_back(RatMatrix::identity(S.rank()));
    if (n == 0) return out;
    DeltaSystem ds = DeltaSystem::from_system(S);
    out.push_back(ds.G1);
    const Rat& q = S.q();
    const RatFun step(Poly{Rat(0), q - 1});
    for (unsigned m = 1; m < n; ++m) {
        const RatMatrix& Gm = out.back();
        RatMatrix shifted = Gm.dilate_entries(q, 1);
        RatMatrix dq = step.inverse() * (shifted - Gm);
        out.push_back(ds.G1 * shifted + dq);
    }
    return out;
}

std::size_t casorati_rank(const std::vector<RatFun>& u, const Rat& q) {
    if (q == 0 || q == 1 || q == -1)
        throw std::domain_error("casorati_rank: q must not be 0 or a root of unity");
    std::size_t mu = u.size();
    RatMatrix cas(mu, mu);
    for (std::size_t j = 0; j < mu; ++j)
        for (std::size_t i = 0; i < mu; ++i)
            cas.at(j, i) = dilate(u[i], q, static_cast<long>(j));
    return cas.rank();
}

namespace {

// Coordinates of Phi(m) for coordinate column c: A(x) * c(qx).
std::vector<RatFun> phi_on_coords(const QDiffSystem& S, const std::vector<RatFun>& c) {
    std::size_t mu = S.rank();
    std::vector<RatFun> shifted(mu);
    for (std::size_t i = 0; i < mu; ++i) shifted[i] = dilate(c[i], S.q(), 1);
    std::vector<RatFun> out(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        RatFun acc;
        for (std::size_t j = 0; j < mu; ++j) acc += S.matrix().at(i, j) * shifted[j];
        out[i] = acc;
    }
    return out;
}

// P = [c | Phi c | ... | Phi^{mu-1} c] as columns; nullopt if singular.
std::optional<CyclicVector> try_cyclic(const QDiffSystem& S, const std::vector<Poly>& cand) {
    std::size_t mu = S.rank();
    std::vector<RatFun> col(mu);
    for (std::size_t i = 0; i < mu; ++i) col[i] = RatFun(cand[i]);
    RatMatrix P(mu, mu);
    for (std::size_t j = 0; j < mu; ++j) {
        for (std::size_t i = 0; i < mu; ++i) P.at(i, j) = col[i];
        if (j + 1 < mu) col = phi_on_coords(S, col);
    }
    if (P.det().is_zero()) return std::nullopt;
    CyclicVector out;
    out.coords = cand;
    out.basis_change = P;
    out.companion = P.inverse() * S.matrix() * P.dilate_entries(S.q(), 1);
    return out;
}

}  // namespace

CyclicVector cyclic_vector(const QDiffSystem& S) {
    if (S.q() == 1 || S.q() == -1)
        throw std::domain_error("cyclic_vector: q must not be a root of unity");
    std::size_t mu = S.rank();
    std::vector<Poly> cand(mu);
    // standard basis vectors
    for (std::size_t i = 0; i < mu; ++i) {
        for (auto& c : cand) c = Poly();
        cand[i] = Poly(Rat(1));
        if (auto r = try_cyclic(S, cand)) return *r;
    }
    const Rat lambdas[] = {Rat(1), Rat(-1), Rat(2)};
    const int s_max = static_cast<int>(2 * mu);
    // pairs e_i + lambda x^s e_j
    for (int s = 0; s <= s_max; ++s)
        for (const Rat& l : lambdas)
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t j = 0; j < mu; ++j) {
                    if (i == j) continue;
                    for (auto& c : cand) c = Poly();
                    cand[i] = Poly(Rat(1));
                    cand[j] = Poly::x(s, l);
                    if (auto r = try_cyclic(S, cand)) return *r;
                }
    // triples e_i + l1 x^{s1} e_j + l2 x^{s2} e_k
    for (int s1 = 0; s1 <= s_max; ++s1)
        for (int s2 = 0; s2 <= s_max; ++s2)
            for (const Rat& l1 : lambdas)
                for (const Rat& l2 : lambdas)
                    for (std::size_t i = 0; i < mu; ++i)
                        for (std::size_t j = 0; j < mu; ++j)
                            for (std::size_t k = 0; k < mu; ++k) {
                                if (i == j || j == k || i == k) continue;
                                for (auto& c : cand) c = Poly();
                                cand[i] = Poly(Rat(1));
                                cand[j] = Poly::x(s1, l1);
                                cand[k] = Poly::x(s2, l2);
                                if (auto r = try_cyclic(S, cand)) return *r;
                            }
    throw search_exhausted();
}

std::vector<RatFun> delta_companion_coeffs(const QDiffSystem& S) {
    std::size_t mu = S.rank();
    CyclicVector cv = cyclic_vector(S);
    const Rat& q = S.q();
    const RatFun step(Poly{Rat(0), q - 1});
    auto delta_coords = [&](const std::vector<RatFun>& c) {
        std::vector<RatFun> shifted(mu), out(mu);
        for (std::size_t i = 0; i < mu; ++i) shifted[i] = dilate(c[i], q, 1);
        for (std::size_t i = 0; i < mu; ++i) {
            RatFun acc;
            for (std::size_t j = 0; j < mu; ++j) acc += S.matrix().at(i, j) * shifted[j];
            out[i] = (acc - c[i]) / step;
        }
        return out;
    };
    std::vector<RatFun> col(mu);
    for (std::size_t i = 0; i < mu; ++i) col[i] = RatFun(cv.coords[i]);
    RatMatrix P(mu, mu);
    for (std::size_t j = 0; j < mu; ++j) {
        for (std::size_t i = 0; i < mu; ++i) P.at(i, j) = col[i];
        col = delta_coords(col);
    }
    // the same m is cyclic for Delta_q; col now holds Delta^mu m
    RatMatrix rhs(mu, 1);
    for (std::size_t i = 0; i < mu; ++i) rhs.at(i, 0) = col[i];
    RatMatrix sol = P.inverse() * rhs;
    std::vector<RatFun> out(mu);
    for (std::size_t i = 0; i < mu; ++i) out[i] = sol.at(i, 0);
    return out;
}

FormalSolution formal_solution(const QDiffSystem& S, unsigned N) {
    std::size_t mu = S.rank();
    for (const auto& e : S.matrix().entries())
        if (e.has_pole_at_zero()) throw pole_at_zero();
    // A(0) must be the identity so that G_1 = (A - I)/((q-1)x) is regular at 0
    QMat A0 = S.matrix().eval(Rat(0));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (A0[i][j] != (i == j ? Rat(1) : Rat(0))) throw pole_at_zero();
    auto Aser = taylor_matrix(S.matrix(), N);
    FormalSolution out;
    out.N = N;
    out.coeff.assign(N + 1, QMat(mu, std::vector<Rat>(mu, Rat(0))));
    out.coeff[0] = qmat_identity(mu);
    Rat qn(1);
    for (unsigned n = 1; n <= N; ++n) {
        qn *= S.q();
        Rat scale = Rat(1) / (qn - 1);
        // (q^n - 1) Y_n = sum_{m<n} Y_m A_{n-m}
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                Rat acc(0);
                for (unsigned m = 0; m < n; ++m)
                    for (std::size_t k = 0; k < mu; ++k)
                        acc += out.coeff[m][i][k] * Aser[k][j][n - m];
                out.coeff[n][i][j] = acc * scale;
            }
    }
    return out;
}

ConstantForm constant_form_at_zero(const QDiffSystem& S, unsigned N) {
    std::size_t mu = S.rank();
    for (const auto& e : S.matrix().entries())
        if (e.has_pole_at_zero()) throw pole_at_zero();
    QMat A0 = S.matrix().eval(Rat(0));
    if (!qmat_invertible(A0)) throw pole_at_zero();
    auto Aser = taylor_matrix(S.matrix(), N);
    ConstantForm out;
    out.A0 = A0;
    out.gauge.N = N;
    out.gauge.coeff.assign(N + 1, QMat(mu, std::vector<Rat>(mu, Rat(0))));
    out.gauge.coeff[0] = qmat_identity(mu);
    Rat qn(1);
    for (unsigned n = 1; n <= N; ++n) {
        qn *= S.q();
        // q^n F_n A0 - A0 F_n = R_n, R_n = sum_{j>=1} A_j F_{n-j}
        QMat R(mu, std::vector<Rat>(mu, Rat(0)));
        for (unsigned j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t l = 0; l < mu; ++l) {
                    Rat acc(0);
                    for (std::size_t k = 0; k < mu; ++k)
                        acc += Aser[i][k][j] * out.gauge.coeff[n - j][k][l];
                    R[i][l] += acc;
                }
        // Solve the mu^2 x mu^2 linear system for F_n.
        std::size_t dim = mu * mu;
        std::vector<std::vector<Rat>> M(dim, std::vector<Rat>(dim + 1, Rat(0)));
        for (std::size_t a = 0; a < mu; ++a)
            for (std::size_t b = 0; b < mu; ++b) {
                std::size_t r = a * mu + b;
                // (q^n F A0)_{ab} = q^n sum_k F_{ak} A0_{kb}
                for (std::size_t k = 0; k < mu; ++k) M[r][a * mu + k] += qn * A0[k][b];
                // -(A0 F)_{ab} = -sum_k A0_{ak} F_{kb}
                for (std::size_t k = 0; k < mu; ++k) M[r][k * mu + b] -= A0[a][k];
                M[r][dim] = R[a][b];
            }
        // Gaussian elimination; singular => resonance at this order.
        std::size_t row = 0;
        std::vector<long> piv(dim, -1);
        for (std::size_t col = 0; col < dim && row < dim; ++col) {
            std::size_t pr = row;
            while (pr < dim && M[pr][col] == 0) ++pr;
            if (pr == dim) continue;
            std::swap(M[pr], M[row]);
            Rat inv = Rat(1) / M[row][col];
            for (std::size_t j2 = 0; j2 <= dim; ++j2) M[row][j2] *= inv;
            for (std::size_t i2 = 0; i2 < dim; ++i2) {
                if (i2 == row || M[i2][col] == 0) continue;
                Rat f = M[i2][col];
                for (std::size_t j2 = 0; j2 <= dim; ++j2) M[i2][j2] -= f * M[row][j2];
            }
            piv[col] = static_cast<long>(row);
            ++row;
        }
        if (row < dim) throw resonant_error(n);
        for (std::size_t a = 0; a < mu; ++a)
            for (std::size_t b = 0; b < mu; ++b)
                out.gauge.coeff[n][a][b] =
                    M[static_cast<std::size_t>(piv[a * mu + b])][dim];
    }
    return out;
}

bool is_regular_singular_presentation(const QDiffSystem& S, SingularPoint at) {
    if (at == SingularPoint::zero) {
        for (const auto& e : S.matrix().entries())
            if (e.has_pole_at_zero()) return false;
        return qmat_invertible(S.matrix().eval(Rat(0)));
    }
    std::size_t mu = S.rank();
    QMat Ainf(mu, std::vector<Rat>(mu));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            const RatFun& e = S.matrix().at(i, j);
            if (!e.regular_at_infinity()) return false;
            Ainf[i][j] = e.at_infinity();
        }
    return qmat_invertible(Ainf);
}

QDiffSystem dual(const QDiffSystem& S) {
    return QDiffSystem(S.q(), S.matrix().inverse().transpose());
}

QDiffSystem tensor(const QDiffSystem& S1, const QDiffSystem& S2) {
    if (S1.q() != S2.q()) throw std::domain_error("tensor: operands must share q");
    return QDiffSystem(S1.q(), RatMatrix::kronecker(S1.matrix(), S2.matrix()));
}

QDiffSystem power_system(const QDiffSystem& S, unsigned k) {
    if (k == 0) throw std::domain_error("power_system: k must be positive");
    return QDiffSystem(rat_pow(S.q(), static_cast<long>(k)), phi_iterate(S, k));
}

}  // namespace qdiff
