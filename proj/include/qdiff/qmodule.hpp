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

#ifndef QDIFF_QMODULE_HPP
#define QDIFF_QMODULE_HPP

#include <vector>

#include "qdiff/matrix.hpp"

namespace qdiff {

class pole_at_zero : public std::domain_error {
  public:
    pole_at_zero() : std::domain_error("system matrix not adapted at 0") {}
};

/// Raised when the constant-form gauge hits a singular solve at some order.
class resonant_error : public std::domain_error {
  public:
    explicit resonant_error(unsigned order)
        : std::domain_error("resonant at order " + std::to_string(order)), order_(order) {}
    unsigned order() const noexcept { return order_; }

  private:
    unsigned order_;
};

class search_exhausted : public std::runtime_error {
  public:
    search_exhausted() : std::runtime_error("cyclic vector search exhausted") {}
};

/// Rank-mu q-difference system (q, A(x)) with A invertible over Q(x).
/// Convention: the basis row transforms as Phi(e) = e A(x); a fundamental
/// row-matrix solution satisfies Y(qx) = Y(x) A(x).
class QDiffSystem {
  public:
    QDiffSystem(Rat q, RatMatrix A, bool allow_root_of_unity = false);

    const Rat& q() const { return q_; }
    std::size_t rank() const { return A_.rows(); }
    const RatMatrix& matrix() const { return A_; }

  private:
    Rat q_;
    RatMatrix A_;
};

/// The same module presented through Delta_q: A(x) = I + (q-1) x G1(x).
struct DeltaSystem {
    Rat q;
    RatMatrix G1;

    static DeltaSystem from_system(const QDiffSystem& S);
    QDiffSystem to_system() const;
};

/// Truncated matrix power series sum_{n<=N} Y_n x^n.
struct FormalSolution {
    unsigned N = 0;
    std::vector<QMat> coeff;  // coeff[n] = Y_n

    std::size_t rank() const { return coeff.empty() ? 0 : coeff[0].size(); }
};

/// A_n(x) = A(x) A(qx) ... A(q^{n-1} x); A_0 = I.
RatMatrix phi_iterate(const QDiffSystem& S, unsigned n);

/// G_0 = I, G_1 = (A - I)/((q-1)x), G_{n+1}(x) = G_1(x) G_n(qx) + d_q G_n(x).
std::vector<RatMatrix> delta_matrices(const QDiffSystem& S, unsigned n);

/// Rank over Q(x) of the Casorati matrix (phi^j u_i); equals the dimension
/// of the Q-span of the u_i.
std::size_t casorati_rank(const std::vector<RatFun>& u, const Rat& q);

struct CyclicVector {
    std::vector<Poly> coords;   // coordinates of m over Q[x]
    RatMatrix basis_change;     // P = [m | Phi m | ... | Phi^{mu-1} m], det != 0
    RatMatrix companion;        // P^{-1} A(x) P(qx), companion-shaped
};

/// Deterministic bounded search for a cyclic vector.  Throws
/// search_exhausted if no candidate works (not expected for small ranks).
CyclicVector cyclic_vector(const QDiffSystem& S);

/// Coefficients a_0..a_{mu-1} of the Delta_q-companion presentation obtained
/// from the cyclic vector: Delta(Delta^{mu-1} m) = sum a_i Delta^i m.
std::vector<RatFun> delta_companion_coeffs(const QDiffSystem& S);

/// Power-series fundamental solution at 0 with Y_0 = I; requires A regular
/// at 0 with A(0) = I (equivalently G_1 without pole at 0).
/// Residual contract: Y(qx) - Y(x) A(x) = O(x^{N+1}).
FormalSolution formal_solution(const QDiffSystem& S, unsigned N);

struct ConstantForm {
    QMat A0;
    FormalSolution gauge;  // F = I + sum F_n x^n with F(qx) A0 = A(x) F(x) + O(x^{N+1})
};

/// Truncated reduction to constant form at 0 in the non-resonant case.
ConstantForm constant_form_at_zero(const QDiffSystem& S, unsigned N);

enum class SingularPoint { zero, infinity };

/// Definitional check in the given basis: A regular and invertible at the
/// point.  No gauge search.
bool is_regular_singular_presentation(const QDiffSystem& S, SingularPoint at);

QDiffSystem dual(const QDiffSystem& S);
QDiffSystem tensor(const QDiffSystem& S1, const QDiffSystem& S2);

/// The q^k-difference system (q^k, A_k(x)).
QDiffSystem power_system(const QDiffSystem& S, unsigned k);

}  // namespace qdiff

#endif
