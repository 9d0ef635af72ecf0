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

#ifndef QDIFF_SOLVER_HPP
#define QDIFF_SOLVER_HPP

#include <string>

#include "qdiff/arithmetic.hpp"
#include "qdiff/qmodule.hpp"

namespace qdiff {

/// Exact decision for y(qx) = b(x) y(x) over Q(x): returns a witness f with
/// f(qx)/f(x) = b(x) or nullopt (a proof of nonexistence, not a cap).
/// Decided by grouping the irreducible factors of b into q-shift orbits and
/// telescoping the exponent sequences.
std::optional<RatFun> order1_rational_test(const RatFun& b, const Rat& q);

struct KummerWitness {
    long d = 1;    // minimal d with a solution in Q(q^{1/d})(x^{1/d})
    Rat delta;     // y = x^delta f(x), delta in (1/d) Z
    RatFun f;
};

/// Exact decision for solutions y = x^delta f(x), f rational, delta
/// rational with denominator <= dcap.
std::optional<KummerWitness> order1_kummer_test(const RatFun& b, const Rat& q, long dcap);

/// Variants for b(x) = u(x) * q^qexp with an exact exponent (Kummer-symbolic
/// constants); base is still the dilation ratio q.
std::optional<RatFun> order1_rational_test_scaled(const RatFun& u, const Rat& qexp, const Rat& q);
std::optional<KummerWitness> order1_kummer_test_scaled(const RatFun& u, const Rat& qexp,
                                                       const Rat& q, long dcap);

/// q^e as an exact rational, when it is one (integer e, or an exact d-th
/// root); nullopt otherwise.
std::optional<Rat> qexp_value(const Rat& q, const Rat& e);

struct RationalSolutionBasis {
    /// Row solutions y with y(qx) = y(x) A(x), verified by exact
    /// substitution; the stacked matrix has nonzero determinant.
    std::vector<std::vector<RatFun>> solutions;
};

enum class SolveStatus {
    Found,         // verified full basis
    NoneProven,    // structural obstruction: no full rational basis exists
    Inconclusive,  // reconstruction failed at the degree cap
};

struct RationalSolveResult {
    SolveStatus status = SolveStatus::Inconclusive;
    std::optional<RationalSolutionBasis> basis;
    unsigned degree_cap = 0;
    std::string note;
};

/// Series + Pade + exact verification for a full fundamental basis of
/// rational row solutions.  The system must be regular at 0 with A(0)
/// invertible (pole_at_zero otherwise); integer shifts x^s are derived from
/// the eigenvalues of A(0) and limited to |s| <= degree_cap.
RationalSolveResult rational_solutions(const QDiffSystem& S, unsigned degree_cap, unsigned terms);

/// True iff the module is trivial over Q((x)): a full basis of
/// Laurent-series solutions with exponents in q^Z exists through order N.
bool is_trivial_over_formal(const QDiffSystem& S, unsigned N);

enum class GrothVerdict {
    consistent_trivial,
    consistent_nontrivial,
    inconsistent,
    inconclusive,
};

struct GrothendieckTestReport {
    ScanReport scan;
    RationalSolveResult solve;
    GrothVerdict verdict = GrothVerdict::inconclusive;
    std::uint64_t pmax = 0;
    unsigned degree_cap = 0;
    unsigned terms = 0;
};

/// Two-sided criterion check: the curvature scan against rational solving.
GrothendieckTestReport grothendieck_test(const QDiffSystem& S, std::uint64_t pmax,
                                         unsigned degree_cap, unsigned terms,
                                         unsigned jobs = 1);

}  // namespace qdiff

#endif
