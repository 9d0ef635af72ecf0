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

#ifndef QDIFF_MATRIX_HPP
#define QDIFF_MATRIX_HPP

#include <iosfwd>
#include <vector>

#include "qdiff/ratfun.hpp"

namespace qdiff {

/// Dense matrix of rational functions, row-major.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<RatFun> entries);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFun& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RatFun& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    const std::vector<RatFun>& entries() const { return e_; }

    bool is_square() const { return rows_ == cols_; }
    bool is_identity() const;
    bool is_zero() const;

    RatMatrix operator-() const;
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatFun& s, const RatMatrix& m);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    RatMatrix transpose() const;
    RatFun det() const;
    RatMatrix inverse() const;
    std::size_t rank() const;
    RatMatrix pow(unsigned long e) const;

    /// Entry-wise f(q^k x).
    RatMatrix dilate_entries(const Rat& q, long k = 1) const;
    /// Entry-wise evaluation; every entry must be regular at x0.
    std::vector<std::vector<Rat>> eval(const Rat& x0) const;

    /// Kronecker product.
    static RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);

  private:
    std::size_t rows_, cols_;
    std::vector<RatFun> e_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

/// Square matrix of rationals (constant matrices: A(0), gauge data, ...).
using QMat = std::vector<std::vector<Rat>>;

QMat qmat_identity(std::size_t n);
QMat qmat_mul(const QMat& a, const QMat& b);
Rat qmat_det(const QMat& a);
bool qmat_invertible(const QMat& a);
/// Characteristic polynomial det(xI - A), exact.
Poly qmat_charpoly(const QMat& a);

}  // namespace qdiff

#endif
