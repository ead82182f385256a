#include "saito/linalg.hpp"

#include <stdexcept>

namespace saito {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) p.at(r, c) += a * o.at(k, c);
        }
    return p;
}

std::vector<Rational> mat_vec(const Matrix& A, std::span<const Rational> x) {
    if (x.size() != A.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<Rational> y(A.rows(), Rational(0));
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c)
            if (A.at(r, c) != 0) y[r] += A.at(r, c) * x[c];
    return y;
}

namespace {

// mpz_divexact corrupts silently on inexact input, so divide with a checked
// remainder instead; elimination bugs then surface immediately.
void div_checked(Int& out, const Int& num, const Int& den) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("fraction-free elimination: inexact division");
    out = std::move(q);
}

// Integer working copy of [A|b] with each row scaled by the LCM of its
// denominators (positive, so the solution set is unchanged).
std::vector<std::vector<Int>> integer_augmented(const Matrix& A, std::span<const Rational> b) {
    std::size_t rows = A.rows(), cols = A.cols();
    std::vector<std::vector<Int>> M(rows, std::vector<Int>(cols + (b.empty() ? 0 : 1)));
    for (std::size_t r = 0; r < rows; ++r) {
        Int lcm = 1;
        for (std::size_t c = 0; c < cols; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denominator(A.at(r, c)).get_mpz_t());
        if (!b.empty()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denominator(b[r]).get_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) {
            Rational v = A.at(r, c) * lcm;
            M[r][c] = numerator(v);
        }
        if (!b.empty()) {
            Rational v = b[r] * lcm;
            M[r][cols] = numerator(v);
        }
    }
    return M;
}

struct Echelon {
    std::vector<std::vector<Int>> M;       // row echelon, fraction-free
    std::vector<std::size_t> pivot_cols;   // within the first `cols` columns
    std::size_t cols;                      // unaugmented width
    bool augmented;
};

// Fraction-free Bareiss elimination with row pivoting. Works on the first
// `cols` columns; an optional trailing augmented column is carried along.
Echelon bareiss(std::vector<std::vector<Int>> M, std::size_t cols, bool augmented) {
    std::size_t rows = M.size();
    std::size_t width = cols + (augmented ? 1 : 0);
    Echelon e{std::move(M), {}, cols, augmented};
    Int prev_pivot = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && e.M[sel][col] == 0) ++sel;
        if (sel == rows) continue;  // free column
        std::swap(e.M[row], e.M[sel]);
        const Int pivot = e.M[row][col];
        for (std::size_t r = row + 1; r < rows; ++r) {
            Int factor = e.M[r][col];
            for (std::size_t j = col; j < width; ++j) {
                Int t = e.M[r][j] * pivot - factor * e.M[row][j];
                div_checked(e.M[r][j], t, prev_pivot);
            }
        }
        prev_pivot = pivot;
        e.pivot_cols.push_back(col);
        ++row;
    }
    return e;
}

}  // namespace

SolveResult solve_exact(const Matrix& A, std::span<const Rational> b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_exact: shape mismatch");
    std::size_t cols = A.cols();
    Echelon e = bareiss(integer_augmented(A, b), cols, /*augmented=*/true);

    // Consistency: a row that is zero on the coefficient side must be zero on
    // the augmented side too.
    for (std::size_t r = e.pivot_cols.size(); r < e.M.size(); ++r) {
        bool zero_lhs = true;
        for (std::size_t c = 0; c < cols && zero_lhs; ++c) zero_lhs = (e.M[r][c] == 0);
        if (zero_lhs && e.M[r][cols] != 0) return {SolveStatus::Inconsistent, {}};
    }
    if (e.pivot_cols.size() < cols) return {SolveStatus::Underdetermined, {}};

    // Back substitution over the rationals.
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t k = cols; k-- > 0;) {
        const auto& row = e.M[k];
        std::size_t pc = e.pivot_cols[k];
        Rational acc(row[cols]);
        for (std::size_t c = pc + 1; c < cols; ++c)
            if (row[c] != 0) acc -= Rational(row[c]) * x[c];
        x[pc] = acc / Rational(row[pc]);
    }

    // Insurance: check the candidate against the original system.
    auto resid = mat_vec(A, x);
    for (std::size_t r = 0; r < A.rows(); ++r)
        if (resid[r] != b[r]) throw std::logic_error("solve_exact: residual check failed");
    return {SolveStatus::Unique, std::move(x)};
}

std::vector<std::size_t> rank_profile(const Matrix& A) {
    Echelon e = bareiss(integer_augmented(A, {}), A.cols(), /*augmented=*/false);
    return e.pivot_cols;
}

Rational determinant(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: not square");
    std::size_t n = A.rows();
    if (n == 0) return Rational(1);

    // Track the row scaling applied by integer_augmented and the row swaps.
    Int scale_den = 1;
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n));
    for (std::size_t r = 0; r < n; ++r) {
        Int lcm = 1;
        for (std::size_t c = 0; c < n; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denominator(A.at(r, c)).get_mpz_t());
        for (std::size_t c = 0; c < n; ++c) M[r][c] = numerator(A.at(r, c) * lcm);
        scale_den *= lcm;
    }
    int sign = 1;
    Int prev_pivot = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && M[sel][col] == 0) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(M[col], M[sel]);
            sign = -sign;
        }
        const Int pivot = M[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Int factor = M[r][col];
            for (std::size_t j = col; j < n; ++j) {
                Int t = M[r][j] * pivot - factor * M[col][j];
                div_checked(M[r][j], t, prev_pivot);
            }
        }
        prev_pivot = pivot;
    }
    // With Bareiss, the last pivot is det of the integer-scaled matrix.
    Rational det = make_rational(M[n - 1][n - 1], scale_den);
    return sign < 0 ? Rational(-det) : det;
}

Matrix inverse(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: not square");
    std::size_t n = A.rows();
    Matrix inv(n, n);
    // Column-by-column solves; fine at the sizes used here (n <= 8).
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rational> e(n, Rational(0));
        e[c] = 1;
        auto res = solve_exact(A, e);
        if (res.status != SolveStatus::Unique) throw std::invalid_argument("inverse: singular matrix");
        for (std::size_t r = 0; r < n; ++r) inv.at(r, c) = res.solution[r];
    }
    return inv;
}

}  // namespace saito
