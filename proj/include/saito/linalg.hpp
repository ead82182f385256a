// saito/linalg.hpp — dense exact linear algebra over the rationals.
//
// The exact solver is the authority for classification (unique / inconsistent
// / underdetermined); the modular solver in modsolve.hpp is the fast path and
// must agree with it bit-for-bit wherever both apply.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rational.hpp"

namespace saito {

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

std::vector<Rational> mat_vec(const Matrix& A, std::span<const Rational> x);

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    std::vector<Rational> solution;  // meaningful only when status == Unique
};

// Solves A x = b for any shape of A by fraction-free (Bareiss) elimination
// after clearing row denominators. A unique result is re-verified against the
// original system before being returned.
SolveResult solve_exact(const Matrix& A, std::span<const Rational> b);

// Pivot column indices of the reduced form; size() is the rank.
std::vector<std::size_t> rank_profile(const Matrix& A);

// Bareiss determinant; pre: A square.
Rational determinant(const Matrix& A);

// Exact inverse; pre: A square and nonsingular (throws otherwise).
Matrix inverse(const Matrix& A);

}  // namespace saito
