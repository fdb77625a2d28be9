#pragma once

/** @file smith.hpp
 *  @brief Smith and Hermite normal forms over the integers.
 */

#include <algorithm>
#include <optional>

#include "wallform/matrix.hpp"

namespace wallform {

struct SmithForm {
    IntMatrix U;      // unimodular, rows x rows
    IntMatrix D;      // diagonal, d_1 | d_2 | ... then zeros
    IntMatrix V;      // unimodular, cols x cols
    IntMatrix U_inv;  // inverse of U
    std::size_t rank = 0;

    Int diagonal(std::size_t i) const { return i < rank ? D(i, i) : Int(0); }
};

// U * A * V == D. Pivots on the smallest nonzero absolute value.
inline SmithForm smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithForm r{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(m), 0};
    IntMatrix& D = r.D;

    auto row_op = [&](std::size_t target, std::size_t source, const Int& k) {
        D.add_row(target, source, k);
        r.U.add_row(target, source, k);
        r.U_inv.add_col(source, target, -k);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        r.U.swap_rows(a, b);
        r.U_inv.swap_cols(a, b);
    };
    auto col_op = [&](std::size_t target, std::size_t source, const Int& k) {
        D.add_col(target, source, k);
        r.V.add_col(target, source, k);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            bool found = false;
            std::size_t p = t, q = t;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int& v = D(i, j);
                    if (v == 0) continue;
                    if (!found || abs(v) < best) {
                        best = abs(v);
                        p = i;
                        q = j;
                        found = true;
                        if (best == 1) goto pivot_chosen;
                    }
                }
        pivot_chosen:
            if (!found) {
                r.rank = t;
                goto finish;
            }
            row_swap(t, p);
            D.swap_cols(t, q);
            r.V.swap_cols(t, q);

            bool clean = true;
            const Int pivot = D(t, t);
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int quotient;
                mpz_tdiv_q(quotient.get_mpz_t(), D(i, t).get_mpz_t(), pivot.get_mpz_t());
                row_op(i, t, -quotient);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int quotient;
                mpz_tdiv_q(quotient.get_mpz_t(), D(t, j).get_mpz_t(), pivot.get_mpz_t());
                col_op(j, t, -quotient);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides_all = true;
            for (std::size_t i = t + 1; i < m && divides_all; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), pivot.get_mpz_t())) {
                        row_op(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            r.U.negate_row(t);
            r.U_inv.negate_col(t);
        }
    }
    r.rank = t;
finish:
    return r;
}

// Invariant factors including units; zeros for the corank part are not listed.
inline std::vector<Int> nonzero_invariant_factors(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    std::vector<Int> out;
    for (std::size_t i = 0; i < s.rank; ++i) out.push_back(s.D(i, i));
    return out;
}

inline std::size_t matrix_rank(const IntMatrix& A) { return smith_normal_form(A).rank; }

/** Row-style Hermite normal form of the lattice spanned by the rows of @p A.
 *  Pivots are positive and entries above a pivot lie in [0, pivot). Zero rows are dropped. */
inline IntMatrix hermite_rows(IntMatrix A) {
    const std::size_t m = A.rows(), n = A.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        for (std::size_t i = row + 1; i < m; ++i) {
            if (A(i, col) == 0) continue;
            if (A(row, col) == 0) {
                A.swap_rows(row, i);
                continue;
            }
            Int g, s, t;
            extended_gcd(A(row, col), A(i, col), g, s, t);
            Int a = A(row, col) / g, b = A(i, col) / g;
            for (std::size_t j = col; j < n; ++j) {
                Int x = A(row, j), y = A(i, j);
                A(row, j) = s * x + t * y;
                A(i, j) = a * y - b * x;
            }
        }
        if (A(row, col) == 0) continue;
        if (A(row, col) < 0) A.negate_row(row);
        for (std::size_t k = 0; k < row; ++k) {
            Int q = floor_div(A(k, col), A(row, col));
            A.add_row(k, row, -q);
        }
        ++row;
    }
    IntMatrix out(row, n);
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = A(i, j);
    return out;
}

inline std::vector<Coords> hermite_basis(std::size_t dim, const std::vector<Coords>& generators) {
    IntMatrix h = hermite_rows(IntMatrix::from_rows(dim, generators));
    std::vector<Coords> out;
    for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
    return out;
}

/** Basis of the integer kernel {x : A x = 0}, as columns, in Hermite-reduced form. */
inline std::vector<Coords> kernel_basis(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    std::vector<Coords> raw;
    for (std::size_t j = s.rank; j < A.cols(); ++j) raw.push_back(s.V.column(j));
    if (raw.empty()) return raw;
    return hermite_basis(A.cols(), raw);
}

/** Some integer solution of A x = b, if one exists. */
inline std::optional<Coords> solve_integer(const SmithForm& s, const Coords& b) {
    const std::size_t m = s.D.rows(), n = s.D.cols();
    if (b.size() != m) throw InvalidInput("right-hand side size mismatch");
    Coords y = s.U * b;
    Coords z(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < s.rank) {
            const Int& d = s.D(i, i);
            if (!mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            z[i] = y[i] / d;
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * z;
}

inline std::optional<Coords> solve_integer(const IntMatrix& A, const Coords& b) {
    return solve_integer(smith_normal_form(A), b);
}

inline bool is_unimodular(const IntMatrix& A) {
    if (A.rows() != A.cols()) return false;
    SmithForm s = smith_normal_form(A);
    if (s.rank != A.rows()) return false;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) return false;
    return true;
}

inline IntMatrix unimodular_inverse(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    if (A.rows() != A.cols() || s.rank != A.rows())
        throw InvalidInput("matrix is not invertible over the integers");
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) throw InvalidInput("matrix is not invertible over the integers");
    return s.V * s.U;
}

}  // namespace wallform
