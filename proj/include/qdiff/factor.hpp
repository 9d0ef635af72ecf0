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

#ifndef QDIFF_FACTOR_HPP
#define QDIFF_FACTOR_HPP

#include <utility>
#include <vector>

#include "qdiff/poly.hpp"

namespace qdiff {

struct Factorization {
    Rat constant;                                   // leading constant
    std::vector<std::pair<Poly, unsigned>> factors; // monic irreducible, multiplicity
};

/// Complete factorization over Q: P = constant * prod factor^multiplicity,
/// factors monic, irreducible, pairwise distinct.  P must be nonzero.
Factorization factor_poly(const Poly& P);

/// Squarefree decomposition (Yun): P = constant * prod part_i^i with the
/// parts monic, squarefree, pairwise coprime (parts may be 1, omitted).
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& P);

}  // namespace qdiff

#endif
