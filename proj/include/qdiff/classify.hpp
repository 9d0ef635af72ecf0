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

#ifndef QDIFF_CLASSIFY_HPP
#define QDIFF_CLASSIFY_HPP

#include <array>
#include <string>

#include "qdiff/solver.hpp"

namespace qdiff {

class undefined_parameters : public std::domain_error {
  public:
    explicit undefined_parameters(const std::string& what) : std::domain_error(what) {}
};

class degenerate_equation : public std::domain_error {
  public:
    degenerate_equation() : std::domain_error("hypergeometric equation degenerates") {}
};

/// b(x) = u(x) * q^qexp; exactly rational exponent parts are folded into u
/// by normalized().
struct ScaledFun {
    RatFun u;
    Rat qexp;

    ScaledFun() : u(Rat(1)), qexp(0) {}
    ScaledFun(RatFun f, Rat e) : u(std::move(f)), qexp(std::move(e)) {}
    explicit ScaledFun(RatFun f) : u(std::move(f)), qexp(0) {}

    ScaledFun normalized(const Rat& q) const;
};

enum class GroupFamily {
    Trivial,
    Mu,
    Gm,
    AdditiveGa,
    GaSemidirectMu,
    GaSemidirectGm,
    Diag2,
    Diag2UnionAntidiag2,
    FiniteDihedralLike,
    FourElement,
};

struct GroupDescriptor {
    GroupFamily family = GroupFamily::Trivial;
    long d = 1;          // torsion order for Mu / GaSemidirectMu / FiniteDihedralLike
    bool at_cap = false; // infinite families are reported within the Kummer cap

    std::string str() const;
};

/// Rank-1 taxonomy for y(qx) = b(x) y(x): Trivial, Mu(d), or Gm-at-cap.
GroupDescriptor galois_rank1(const ScaledFun& b, const Rat& q, long dcap);

/// Lower-triangular rank-2 family Phi(e) = e [[1,0],[a,b]]; the case split
/// follows the solvability class of the b-equation.  Requires a != 0 regular
/// and nonzero at 0.
GroupDescriptor galois_triangular2(const RatFun& a, const ScaledFun& b, const Rat& q, long dcap);

/// Antidiagonal rank-2 family Phi(e) = e [[0,1],[r,0]]; order-1 tests run
/// with modulus q^2.
GroupDescriptor galois_antidiagonal2(const ScaledFun& r, const Rat& q, long dcap);

/// Membership of Phi_q^{kappa_p} mod p^{ell_p} in the reduction of the
/// claimed group (consistency check; membership only, not minimality).  Throws
/// bad_prime when the instance does not reduce at p.
bool curvature_membership_rank1(const ScaledFun& b, const Rat& q, const GroupDescriptor& g,
                                std::uint64_t p);
bool curvature_membership_triangular2(const RatFun& a, const ScaledFun& b, const Rat& q,
                                      const GroupDescriptor& g, std::uint64_t p);
bool curvature_membership_antidiagonal2(const ScaledFun& r, const Rat& q,
                                        const GroupDescriptor& g, std::uint64_t p);

/// One hypergeometric parameter: an exact rational, or an exact power q^e.
struct ParamValue {
    bool is_exponent = false;
    Rat v;  // the rational value, or the exponent e

    static ParamValue rational(Rat r) { return {false, std::move(r)}; }
    static ParamValue exponent(Rat e) { return {true, std::move(e)}; }

    std::string str() const;
};

struct HypergeomParams {
    ParamValue a, b, c;
    Rat q;
};

/// Exact rational value of a parameter when it has one.
std::optional<Rat> param_rational_value(const ParamValue& v, const Rat& q);
/// Exponent e with value = q^e, e rational (within the fixed cap 64).
std::optional<Rat> param_q_exponent(const ParamValue& v, const Rat& q);

/// Companion system of the basic hypergeometric equation
///   phi^2 y - ((a+b)x - (1+c/q))/(abx - c/q) phi y + (x-1)/(abx - c/q) y = 0,
/// rows (y(x), y(qx)).  Parameters must have exact rational values.
QDiffSystem hypergeom_system(const HypergeomParams& P);

/// First N+1 coefficients of 2phi1(a,b,c;q,x), exact; terminating numerators
/// win over terminating denominators, otherwise undefined_parameters.
std::vector<Rat> phi21_truncate(const HypergeomParams& P, unsigned N);

struct LogSingVerdict {
    bool value = false;          // logarithmic singularity present
    bool hypothesis_met = false; // the q^Z membership hypothesis held
};

/// Logarithmic singularity at 0 (hypothesis: c in q^Z).
LogSingVerdict log_singularity_zero(const HypergeomParams& P);
/// Logarithmic singularity at infinity (hypothesis: a/b in q^Z).
LogSingVerdict log_singularity_infinity(const HypergeomParams& P);

struct SchwarzVerdict {
    bool rational_basis = false;
    bool algebraic_basis = false;
    bool log_sing_zero = false;
    bool log_sing_infinity = false;
    std::optional<std::array<long, 3>> exponent_triple;  // (alpha, beta, gamma) if integral
    std::string witness;                                 // failing condition otherwise
};

SchwarzVerdict schwarz_rational(const HypergeomParams& P);
SchwarzVerdict schwarz_algebraic(const HypergeomParams& P);

/// Goursat triangle test: |1-gamma|, |gamma-alpha-beta|, |alpha-beta| are
/// the sides of a (possibly degenerate) triangle.
bool goursat_rational(long alpha, long beta, long gamma);

/// The Z-clause of the rational criterion on an integer exponent triple.
bool schwarz_z_clause(long alpha, long beta, long gamma);

}  // namespace qdiff

#endif
