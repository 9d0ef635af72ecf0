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

#ifndef QDIFF_SERIES_HPP
#define QDIFF_SERIES_HPP

#include <optional>
#include <vector>

#include "qdiff/matrix.hpp"

namespace qdiff {

/// Truncated power series expansion of a rational function regular at 0,
/// coefficients 0..N.
std::vector<Rat> taylor_at_zero(const RatFun& f, unsigned N);

/// Taylor coefficients 0..N of every entry; all entries must be regular at 0.
std::vector<std::vector<std::vector<Rat>>> taylor_matrix(const RatMatrix& m, unsigned N);

/// Pade reconstruction: rational function u/w with deg u, deg w <= dcap and
/// u/w = series + O(x^{len(series)}), w(0) = 1.  Returns nullopt when the
/// linear system admits no solution matching all given coefficients.
std::optional<RatFun> pade_reconstruct(const std::vector<Rat>& series, unsigned dcap);

}  // namespace qdiff

#endif
