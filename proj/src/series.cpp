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

#include "qdiff/series.hpp"

namespace qdiff {

std::vector<Rat> taylor_at_zero(const RatFun& f, unsigned N) {
    if (f.has_pole_at_zero()) throw std::domain_error("taylor_at_zero: pole at 0");
    std::vector<Rat> out(N + 1, Rat(0));
    const Poly& num = f.num();
    const Poly& den = f.den();
    Rat d0 = den.coeff(0);
    for (unsigned n = 0; n <= N; ++n) {
        Rat acc = num.coeff(n);
        for (unsigned j = 1; j <= n; ++j) acc -= den.coeff(j) * out[n - j];
        out[n] = acc / d0;
    }
    return out;
}

std::vector<std::vector<std::vector<Rat>>> taylor_matrix(const RatMatrix& m, unsigned N) {
    std::vector<std::vector<std::vector<Rat>>> out(
        m.rows(), std::vector<std::vector<Rat>>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = taylor_at_zero(m.at(i, j), N);
    return out;
}

std::optional<RatFun> pade_reconstruct(const std::vector<Rat>& series, unsigned dcap) {
    const std::size_t T = series.size();
    if (T < 2 * static_cast<std::size_t>(dcap) + 1)
        throw std::domain_error("pade_reconstruct: not enough series terms");
    // Find w = 1 + w_1 x + ... + w_d x^d with (w * series) == u mod x^T and
    // deg u <= d: rows n = d+1 .. T-1 give sum_j w_j c_{n-j} = -c_n.
    const unsigned d = dcap;
    const std::size_t rows = T - d - 1;
    std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(d + 1, Rat(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t n = d + 1 + r;
        for (unsigned j = 1; j <= d; ++j) M[r][j - 1] = series[n - j];
        M[r][d] = -series[n];  // augmented column
    }
    // Gaussian elimination for w_1..w_d (may be underdetermined; take any
    // solution, the exact verification downstream rejects bad candidates).
    std::vector<long> pivot_row(d, -1);
    std::size_t row = 0;
    for (unsigned col = 0; col < d && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && M[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(M[pr], M[row]);
        Rat inv = Rat(1) / M[row][col];
        for (unsigned j = 0; j <= d; ++j) M[row][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rat f = M[i][col];
            for (unsigned j = 0; j <= d; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_row[col] = static_cast<long>(row);
        ++row;
    }
    // consistency: remaining rows must be all-zero
    for (std::size_t i = row; i < rows; ++i)
        if (M[i][d] != 0) return std::nullopt;
    std::vector<Rat> w(d + 1, Rat(0));
    w[0] = 1;
    for (unsigned col = 0; col < d; ++col)
        if (pivot_row[col] >= 0) w[col + 1] = M[static_cast<std::size_t>(pivot_row[col])][d];
    Poly wp((std::vector<Rat>(w)));
    // u = (w * series) truncated to degree d
    std::vector<Rat> u(d + 1, Rat(0));
    for (unsigned n = 0; n <= d; ++n) {
        Rat acc(0);
        for (unsigned j = 0; j <= std::min<unsigned>(n, d); ++j)
            acc += w[j] * series[n - j];
        u[n] = acc;
    }
    RatFun cand(Poly(std::move(u)), wp);
    // A valid reconstruction must reproduce the full series window.
    std::vector<Rat> back = taylor_at_zero(cand, static_cast<unsigned>(T - 1));
    for (std::size_t i = 0; i < T; ++i)
        if (back[i] != series[i]) return std::nullopt;
    return cand;
}

}  // namespace qdiff
