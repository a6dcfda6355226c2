// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "canonring/error.hpp"
#include "canonring/scalar.hpp"

namespace canonring {

using std::abs;
using boost::multiprecision::abs;

/// Smith normal form over the integers: `left * a * right == diagonal`.
///
/// `left` and `right` are unimodular. When computed with `divisibility_chain`
/// the nonzero diagonal entries are positive and each divides the next;
/// without it the result is only a diagonalization, which is all an integer
/// solve needs.
template <typename Scalar>
struct SmithForm {
    Matrix<Scalar> diagonal;
    Matrix<Scalar> left;
    Matrix<Scalar> left_inverse;
    Matrix<Scalar> right;
    Index rank = 0;

    [[nodiscard]] Vector<Scalar> invariants() const {
        Vector<Scalar> out(rank);
        for (Index i = 0; i < rank; ++i) out(i) = diagonal(i, i);
        return out;
    }
};

struct SmithOptions {
    bool divisibility_chain = true;
    bool track_left = true;
    bool track_left_inverse = false;
    bool track_right = true;
};

namespace detail {

// Row/column operations on the working matrix, mirrored onto whichever
// transforms are being tracked. `rhs` receives the left transform directly.
template <typename Scalar>
class Reducer {
  public:
    Reducer(Matrix<Scalar>& s, Matrix<Scalar>* left, Matrix<Scalar>* left_inv, Matrix<Scalar>* right,
            Vector<Scalar>* rhs)
        : s_(s), left_(left), left_inv_(left_inv), right_(right), rhs_(rhs) {}

    void swap_rows(Index i, Index j) {
        if (i == j) return;
        s_.row(i).swap(s_.row(j));
        if (left_) left_->row(i).swap(left_->row(j));
        if (left_inv_) left_inv_->col(i).swap(left_inv_->col(j));
        if (rhs_) std::swap((*rhs_)(i), (*rhs_)(j));
    }

    // row_i += c * row_j
    void add_row(Index i, Index j, const Scalar& c) {
        axpy_row(s_, i, j, c);
        if (left_) axpy_row(*left_, i, j, c);
        if (left_inv_) axpy_col(*left_inv_, j, i, -c);
        if (rhs_) (*rhs_)(i) += c * (*rhs_)(j);
    }

    void negate_row(Index i) {
        s_.row(i) = -s_.row(i);
        if (left_) left_->row(i) = -left_->row(i);
        if (left_inv_) left_inv_->col(i) = -left_inv_->col(i);
        if (rhs_) (*rhs_)(i) = -(*rhs_)(i);
    }

    void swap_cols(Index i, Index j) {
        if (i == j) return;
        s_.col(i).swap(s_.col(j));
        if (right_) right_->col(i).swap(right_->col(j));
    }

    // col_i += c * col_j
    void add_col(Index i, Index j, const Scalar& c) {
        axpy_col(s_, i, j, c);
        if (right_) axpy_col(*right_, i, j, c);
    }

  private:
    static void axpy_row(Matrix<Scalar>& m, Index i, Index j, const Scalar& c) {
        for (Index k = 0; k < m.cols(); ++k)
            if (m(j, k) != 0) m(i, k) += c * m(j, k);
    }
    static void axpy_col(Matrix<Scalar>& m, Index i, Index j, const Scalar& c) {
        for (Index k = 0; k < m.rows(); ++k)
            if (m(k, j) != 0) m(k, i) += c * m(k, j);
    }

    Matrix<Scalar>& s_;
    Matrix<Scalar>* left_;
    Matrix<Scalar>* left_inv_;
    Matrix<Scalar>* right_;
    Vector<Scalar>* rhs_;
};

template <typename Scalar>
std::optional<std::pair<Index, Index>> min_abs_entry(const Matrix<Scalar>& s, Index t) {
    std::optional<std::pair<Index, Index>> best;
    Scalar best_abs = 0;
    for (Index j = t; j < s.cols(); ++j) {
        for (Index i = t; i < s.rows(); ++i) {
            if (s(i, j) == 0) continue;
            Scalar a = abs(s(i, j));
            if (!best || a < best_abs) {
                best = {i, j};
                best_abs = a;
                if (best_abs == 1) return best;
            }
        }
    }
    return best;
}

// Diagonalizes `s` in place. Returns the rank.
template <typename Scalar>
Index diagonalize(Matrix<Scalar>& s, Reducer<Scalar>& ops, bool divisibility_chain) {
    const Index limit = std::min(s.rows(), s.cols());
    Index t = 0;
    for (; t < limit; ++t) {
        auto pivot = min_abs_entry(s, t);
        if (!pivot) break;
        ops.swap_rows(t, pivot->first);
        ops.swap_cols(t, pivot->second);
        for (;;) {
            bool clean = true;
            for (Index i = t + 1; i < s.rows(); ++i) {
                if (s(i, t) == 0) continue;
                Scalar q = s(i, t) / s(t, t);
                if (q != 0) ops.add_row(i, t, Scalar(-q));
                if (s(i, t) != 0) clean = false;
            }
            for (Index j = t + 1; j < s.cols(); ++j) {
                if (s(t, j) == 0) continue;
                Scalar q = s(t, j) / s(t, t);
                if (q != 0) ops.add_col(j, t, Scalar(-q));
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; move it to the pivot.
                Index bi = t, bj = t;
                Scalar best = abs(s(t, t));
                for (Index i = t + 1; i < s.rows(); ++i)
                    if (s(i, t) != 0 && abs(s(i, t)) < best) { best = abs(s(i, t)); bi = i; bj = t; }
                for (Index j = t + 1; j < s.cols(); ++j)
                    if (s(t, j) != 0 && abs(s(t, j)) < best) { best = abs(s(t, j)); bi = t; bj = j; }
                ops.swap_rows(t, bi);
                ops.swap_cols(t, bj);
                continue;
            }
            if (divisibility_chain) {
                bool divides = true;
                for (Index i = t + 1; i < s.rows() && divides; ++i) {
                    for (Index j = t + 1; j < s.cols(); ++j) {
                        if (s(i, j) != 0 && s(i, j) % s(t, t) != 0) {
                            ops.add_row(t, i, Scalar(1));
                            divides = false;
                            break;
                        }
                    }
                }
                if (!divides) continue;
            }
            break;
        }
        if (s(t, t) < 0) ops.negate_row(t);
    }
    return t;
}

}  // namespace detail

template <typename Scalar>
[[nodiscard]] SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& a, const SmithOptions& opts = {}) {
    SmithForm<Scalar> out;
    out.diagonal = a;
    if (opts.track_left) out.left = Matrix<Scalar>::Identity(a.rows(), a.rows());
    if (opts.track_left_inverse) out.left_inverse = Matrix<Scalar>::Identity(a.rows(), a.rows());
    if (opts.track_right) out.right = Matrix<Scalar>::Identity(a.cols(), a.cols());
    detail::Reducer<Scalar> ops(out.diagonal, opts.track_left ? &out.left : nullptr,
                                opts.track_left_inverse ? &out.left_inverse : nullptr,
                                opts.track_right ? &out.right : nullptr, nullptr);
    out.rank = detail::diagonalize(out.diagonal, ops, opts.divisibility_chain);
    return out;
}

/// Some integer solution of `a * x == b`, or nothing when none exists.
template <typename Scalar>
[[nodiscard]] std::optional<Vector<Scalar>> solve_integer(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
    if (b.size() != a.rows()) throw Error(ErrorKind::SizeMismatch, "right-hand side length differs from row count");
    Matrix<Scalar> s = a;
    Matrix<Scalar> right = Matrix<Scalar>::Identity(a.cols(), a.cols());
    Vector<Scalar> rhs = b;
    detail::Reducer<Scalar> ops(s, nullptr, nullptr, &right, &rhs);
    const Index rank = detail::diagonalize(s, ops, false);
    Vector<Scalar> y = Vector<Scalar>::Zero(a.cols());
    for (Index i = 0; i < rank; ++i) {
        if (rhs(i) % s(i, i) != 0) return std::nullopt;
        y(i) = rhs(i) / s(i, i);
    }
    for (Index i = rank; i < rhs.size(); ++i)
        if (rhs(i) != 0) return std::nullopt;
    Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
    for (Index j = 0; j < rank; ++j)
        if (y(j) != 0) x += right.col(j) * y(j);
    return x;
}

/// Inverse of a square matrix over a field (Gauss-Jordan, exact).
/// Throws SizeMismatch for non-square input and DegenerateCone for singular input.
template <typename Scalar>
[[nodiscard]] Matrix<Scalar> exact_inverse(const Matrix<Scalar>& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::SizeMismatch, "inverse of a non-square matrix");
    const Index n = a.rows();
    Matrix<Scalar> m = a;
    Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
    for (Index c = 0; c < n; ++c) {
        Index p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw Error(ErrorKind::DegenerateCone, "singular matrix");
        m.row(c).swap(m.row(p));
        inv.row(c).swap(inv.row(p));
        const Scalar pivot = m(c, c);
        for (Index k = 0; k < n; ++k) {
            if (m(c, k) != 0) m(c, k) /= pivot;
            if (inv(c, k) != 0) inv(c, k) /= pivot;
        }
        for (Index r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Scalar f = m(r, c);
            for (Index k = 0; k < n; ++k) {
                if (m(c, k) != 0) m(r, k) -= f * m(c, k);
                if (inv(c, k) != 0) inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

}  // namespace canonring
