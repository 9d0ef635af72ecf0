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

#ifndef QDIFF_QCALC_HPP
#define QDIFF_QCALC_HPP

#include <map>
#include <vector>

#include "qdiff/ratfun.hpp"

namespace qdiff {

/// Cache of q-integers, q-factorials and q-binomials for one fixed q.
/// Confine an instance to one thread; all returned values are plain copies.
class QSymbolTable {
  public:
    explicit QSymbolTable(const Rat& q) : q_(q) {}

    const Rat& q() const { return q_; }
    /// [n]_q = 1 + q + ... + q^{n-1}
    Rat q_int(unsigned n);
    /// [n]_q! = [1]_q [2]_q ... [n]_q
    Rat q_factorial(unsigned n);
    /// Gaussian binomial, Pascal recurrence with memoization; 0 outside range.
    Rat q_binomial(unsigned n, long i);

  private:
    Rat q_;
    std::vector<Rat> ints_, facts_;
    std::map<std::pair<unsigned, unsigned>, Rat> binom_;
};

Rat q_int(unsigned n, const Rat& q);
Rat q_factorial(unsigned n, const Rat& q);
Rat q_binomial(unsigned n, long i, const Rat& q);

/// (x - a)_n = (x - a)(x - qa) ... (x - q^{n-1} a), as a polynomial.
Poly q_pochhammer_x(const Rat& a, unsigned n, const Rat& q);
/// (a; q)_n = (1 - a)(1 - aq) ... (1 - a q^{n-1}).
Rat q_pochhammer(const Rat& a, unsigned n, const Rat& q);

/// Coefficients [c_0, ..., c_n] with phi_q^n = sum_i c_i x^i d_q^i.
std::vector<Rat> phi_to_dq_coeffs(unsigned n, const Rat& q);
/// Coefficients [e_0, ..., e_n] with d_q^n = x^{-n} sum_j e_j phi_q^j.
std::vector<Rat> dq_to_phi_coeffs(unsigned n, const Rat& q);

/// Apply sum_i c_i x^i d_q^i to f (operational check of phi_to_dq_coeffs).
RatFun apply_dq_expansion(const std::vector<Rat>& coeffs, const RatFun& f, const Rat& q);
/// Apply x^{-n} sum_j e_j phi_q^j to f (operational check of dq_to_phi_coeffs).
RatFun apply_phi_expansion(const std::vector<Rat>& coeffs, const RatFun& f, const Rat& q);

/// v_p([n]_q!), exact.  Requires v_p(q) = 0.  Uses the integer-part formula
/// when the strong admissibility condition holds at p, otherwise the direct
/// product of valuations.
Rat q_factorial_valuation(unsigned n, std::uint64_t p, const Rat& q);

}  // namespace qdiff

#endif
