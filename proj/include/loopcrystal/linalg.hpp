#pragma once
// Exact Gaussian elimination over any field scalar usable in Eigen dense
// matrices (Fp, Rational).

#include <utility>
#include <vector>

#include "loopcrystal/field.hpp"

namespace loopcrystal {

template <class Scalar>
struct Echelon {
    Mat<Scalar> reduced;          // reduced row echelon form
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <class Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    Echelon<S> out{m.eval(), {}};
    Mat<S>& a = out.reduced;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (a(i, c) != S(0)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        const S inv = S(1) / a(r, c);
        a.row(r) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == S(0)) continue;
            const S f = a(i, c);
            a.row(i) -= f * a.row(r);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return static_cast<Eigen::Index>(rref(m).pivots.size());
}

// Basis of {x : m x = 0} as the columns of the result.
template <class Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0) return Mat<S>::Identity(cols, cols);
    auto e = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    Mat<S> basis(cols, cols - static_cast<Eigen::Index>(e.pivots.size()));
    basis.setZero();
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        basis(free, k) = S(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            basis(e.pivots[r], k) = -e.reduced(static_cast<Eigen::Index>(r), free);
        ++k;
    }
    return basis;
}

// Columns of m reduced to a basis of their span.
template <class Derived>
Mat<typename Derived::Scalar> column_basis(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    if (m.cols() == 0 || m.rows() == 0) return Mat<S>(m.rows(), 0);
    auto e = rref(m);
    Mat<S> out(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = m.col(e.pivots[k]);
    return out;
}

// Solve a x = b for one solution; returns false when inconsistent.
template <class DA, class DB>
bool solve_exact(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                 Vec<typename DA::Scalar>& x) {
    using S = typename DA::Scalar;
    Mat<S> aug(a.rows(), a.cols() + 1);
    aug << a, b;
    auto e = rref(aug);
    x = Vec<S>::Zero(a.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return false;
        x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), a.cols());
    }
    return true;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != S(0)) return false;
    return true;
}

template <class Derived>
Mat<Rational> to_rational(const Eigen::MatrixBase<Derived>& m) {
    return m.template cast<Rational>();
}

}  // namespace loopcrystal
