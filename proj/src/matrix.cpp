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

#include "qdiff/matrix.hpp"

#include <ostream>

namespace qdiff {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<RatFun> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols)
        throw std::domain_error("RatMatrix: entry count does not match dimensions");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RatFun(Rat(1));
    return m;
}

bool RatMatrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? RatFun(Rat(1)) : RatFun())) return false;
    return true;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix out(*this);
    for (auto& v : out.e_) v = -v;
    return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::domain_error("RatMatrix: shape mismatch");
    RatMatrix out(a);
    for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] += b.e_[i];
    return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::domain_error("RatMatrix: shape mismatch");
    RatMatrix out(a);
    for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] -= b.e_[i];
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("RatMatrix: shape mismatch");
    RatMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const RatFun& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const RatFun& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

RatMatrix operator*(const RatFun& s, const RatMatrix& m) {
    RatMatrix out(m);
    for (auto& v : out.e_) v = s * v;
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

RatFun RatMatrix::det() const {
    if (!is_square()) throw std::domain_error("RatMatrix: det of non-square");
    RatMatrix m(*this);
    RatFun d(Rat(1));
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t pivot = col;
        while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows_) return RatFun();
        if (pivot != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        RatFun inv = m.at(col, col).inverse();
        for (std::size_t i = col + 1; i < rows_; ++i) {
            if (m.at(i, col).is_zero()) continue;
            RatFun f = m.at(i, col) * inv;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

RatMatrix RatMatrix::inverse() const {
    if (!is_square()) throw std::domain_error("RatMatrix: inverse of non-square");
    RatMatrix m(*this), inv = identity(rows_);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t pivot = col;
        while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows_) throw std::domain_error("RatMatrix: singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        RatFun f = m.at(col, col).inverse();
        for (std::size_t j = 0; j < cols_; ++j) {
            m.at(col, j) *= f;
            inv.at(col, j) *= f;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            RatFun g = m.at(i, col);
            for (std::size_t j = 0; j < cols_; ++j) {
                m.at(i, j) -= g * m.at(col, j);
                inv.at(i, j) -= g * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::size_t RatMatrix::rank() const {
    RatMatrix m(*this);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
        std::size_t pivot = r;
        while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        RatFun f = m.at(r, col).inverse();
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (m.at(i, col).is_zero()) continue;
            RatFun g = m.at(i, col) * f;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= g * m.at(r, j);
        }
        ++r;
    }
    return r;
}

RatMatrix RatMatrix::pow(unsigned long e) const {
    RatMatrix base(*this), out = identity(rows_);
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

RatMatrix RatMatrix::dilate_entries(const Rat& q, long k) const {
    RatMatrix out(*this);
    for (auto& v : out.e_) v = dilate(v, q, k);
    return out;
}

std::vector<std::vector<Rat>> RatMatrix::eval(const Rat& x0) const {
    std::vector<std::vector<Rat>> out(rows_, std::vector<Rat>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j)(x0);
    return out;
}

RatMatrix RatMatrix::kronecker(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows_; ++k)
                for (std::size_t l = 0; l < b.cols_; ++l)
                    out.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << m.at(i, j);
            if (j + 1 < m.cols()) os << ", ";
        }
        os << "]";
        if (i + 1 < m.rows()) os << ", ";
    }
    return os << "]";
}

QMat qmat_identity(std::size_t n) {
    QMat m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMat out(n, std::vector<Rat>(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

Rat qmat_det(const QMat& a) {
    QMat m(a);
    std::size_t n = m.size();
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return d;
}

bool qmat_invertible(const QMat& a) { return qmat_det(a) != 0; }

Poly qmat_charpoly(const QMat& a) {
    // Expansion of det(xI - A) through the Faddeev-LeVerrier recursion.
    std::size_t n = a.size();
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = 1;
    QMat m = qmat_identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = qmat_mul(a, m);
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
        Rat c = -tr / Rat(static_cast<long>(k));
        coeffs[n - k] = c;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += c;
    }
    return Poly(std::move(coeffs));
}

}  // namespace qdiff
