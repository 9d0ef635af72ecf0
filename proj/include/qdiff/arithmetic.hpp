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

#ifndef QDIFF_ARITHMETIC_HPP
#define QDIFF_ARITHMETIC_HPP

#include <optional>
#include <string>

#include "qdiff/modring.hpp"
#include "qdiff/qmodule.hpp"

namespace qdiff {

/// Per-prime arithmetic data for a fixed q.
struct PrimeProfile {
    std::uint64_t p = 0;
    unsigned long kappa = 0;  // multiplicative order of q mod p
    long ell = 0;             // v_p(1 - q^kappa)
    bool good = false;        // v_p(q) = 0
    bool strong = false;      // |1 - q^kappa|_p < |p|^{1/(p-1)}: ell>=1 and (p>2 or ell>=2)
};

PrimeProfile prime_profile(const Rat& q, std::uint64_t p);

enum class CurvatureStatus { Identity, Unipotent, Other, BadPrime };
enum class ModulusChoice { mod_p, mod_p_ell };

struct CurvatureVerdict {
    std::uint64_t p = 0;
    unsigned long kappa = 0;
    long ell = 0;
    CurvatureStatus status = CurvatureStatus::BadPrime;
    unsigned order = 0;  // unipotence order; Identity reports 1
    ModulusChoice modulus_used = ModulusChoice::mod_p_ell;
};

/// Phi_q^{kappa_p} reduced modulo p (choice mod_p) or p^{ell_p} (mod_p_ell).
/// Requires a good strong profile; bad_prime propagates from the reduction.
ModMatrix curvature_matrix(const QDiffSystem& S, std::uint64_t p,
                           ModulusChoice choice = ModulusChoice::mod_p_ell);

/// Identity test at the modulus of hypothesis (*) (p^{ell_p} by default).
CurvatureVerdict curvature_is_identity(const QDiffSystem& S, std::uint64_t p,
                                       ModulusChoice choice = ModulusChoice::mod_p_ell);

/// Minimal n with (curvature - I)^n = 0, searched up to mu (mod p) or
/// mu*ell (mod p^ell); beyond that the status is Other.
CurvatureVerdict unipotent_order(const QDiffSystem& S, std::uint64_t p, ModulusChoice choice);

struct ScanEntry {
    PrimeProfile profile;
    CurvatureVerdict at_p;      // modulo p
    CurvatureVerdict at_p_ell;  // modulo p^ell
};

struct ScanSummary {
    std::size_t identity = 0, unipotent = 0, other = 0, bad = 0;
};

struct ScanReport {
    Rat q;
    std::uint64_t pmax = 0;
    ModulusChoice summary_modulus = ModulusChoice::mod_p_ell;
    std::vector<ScanEntry> entries;             // good strong primes, ascending
    std::vector<std::uint64_t> bad_primes;      // reduction failed
    std::vector<std::uint64_t> not_good;        // p | q
    std::vector<std::uint64_t> weak;            // good but not strong
    ScanSummary summary;                        // counts at summary_modulus

    bool all_identity_at_p_ell() const;
};

/// Verdicts for all good strong primes <= pmax; per-prime failures are
/// recorded, never abort the scan.  jobs > 1 runs primes concurrently.
ScanReport curvature_scan(const QDiffSystem& S, std::uint64_t pmax, unsigned jobs = 1,
                          ModulusChoice summary_modulus = ModulusChoice::mod_p_ell);

enum class ChiBoundKind {
    truncated,
    trivial,
    nilpotent_mod_p,
    unipotent_mod_qk,
    dwork_frobenius,
    bad_regime_range,
};

/// One bound on log_p chi_p(M), exact rationals on the log scale.
struct ChiBound {
    ChiBoundKind kind;
    std::optional<Rat> log_lower;  // log_p chi >= log_lower
    std::optional<Rat> log_upper;  // log_p chi <= log_upper
    bool is_equality = false;
    unsigned order = 0;              // unipotence order used, if any
    unsigned N = 0;                  // truncation, for kind truncated
    std::vector<Rat> h_over_n;       // h(n)/n for n = 1..N (truncated kind)
    Rat estimate;                    // -h(N)/N: the truncated log_p chi estimate
};

/// Truncated chi estimate: h(n) = sup_{s<=n} (v_p([s]_q!) - v_p(G_s)) with
/// h(n)/n -> -log_p chi.  Exact p-adic bookkeeping, good primes only.
ChiBound chi_truncated(const QDiffSystem& S, std::uint64_t p, unsigned N);

struct ChiBoundsContext {
    /// a_0..a_{mu-1} from a Delta_q-cyclic companion presentation
    std::optional<std::vector<RatFun>> cyclic_coeffs;
    std::optional<unsigned> order_mod_p;     // unipotent reduction order mod p
    std::optional<unsigned> order_mod_qk;    // unipotent reduction order mod 1-q^kappa
};

struct ChiBoundsReport {
    std::vector<ChiBound> bounds;
    std::vector<std::pair<ChiBoundKind, std::string>> skipped;  // hypothesis not met
};

/// Every closed-form bound whose hypothesis holds at p.
ChiBoundsReport chi_bounds(const QDiffSystem& S, std::uint64_t p, const ChiBoundsContext& ctx);

struct SizeEstimate {
    unsigned N = 0;
    std::uint64_t pmax = 0;
    double partial_sum = 0;  // (1/N) * sum of h over places
    /// (place, contribution): place 0 encodes the archimedean place.
    std::vector<std::pair<std::uint64_t, double>> contributions;
};

/// Partial size of a truncated series solution (all places <= pmax plus the
/// archimedean place).
SizeEstimate size_partial(const FormalSolution& y, unsigned N, std::uint64_t pmax);
/// Partial size of a system (good strong finite places <= pmax).
SizeEstimate size_partial(const QDiffSystem& S, unsigned N, std::uint64_t pmax);

struct KappaSumRow {
    std::uint64_t p;
    unsigned long kappa;
    double term;     // log p / (kappa_p (p-1))
    double partial;  // running sum
};

struct KappaSumReport {
    double total = 0;
    std::vector<KappaSumRow> table;
};

/// Partial sums of sum_p log p / (kappa_p (p-1)) over good primes <= pmax.
KappaSumReport kappa_sum_partial(const Rat& q, std::uint64_t pmax);

struct KappaCompareReport {
    bool equal_orders_everywhere = true;
    struct Mismatch {
        std::uint64_t p;
        unsigned long kappa1, kappa2;
    };
    std::vector<Mismatch> mismatches;
};

/// kappa_p(q1) vs kappa_p(q2) on mutually good primes <= pmax.
KappaCompareReport compare_kappa_profiles(const Rat& q1, const Rat& q2, std::uint64_t pmax);

}  // namespace qdiff

#endif
