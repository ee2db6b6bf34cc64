#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "eulaflag/errors.hpp"

namespace eulaflag {

template <typename Scalar>
struct PowerIterationResult {
    Eigen::Vector<Scalar, Eigen::Dynamic> scores;
    bool converged{false};
    int iterations{0};
};

/// Weighted-PageRank power iteration over an edge-weight matrix.
///
/// Solves p_i = (1-d)/n + d * sum_j (w_ji / sum_k w_jk) * p_j. Rows with zero
/// out-weight distribute their mass uniformly (dangling-node rule), so the
/// iterate keeps sum(p) = 1 at every step. Stops when the L1 change of one
/// iteration drops below `tolerance`; running out of iterations is reported
/// through the converged flag, never as an error.
template <typename Derived>
PowerIterationResult<typename Derived::Scalar> power_iteration(
    const Eigen::MatrixBase<Derived>& weights, double damping, double tolerance,
    int max_iterations) {
    using Scalar = typename Derived::Scalar;
    using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    const Eigen::Index n = weights.rows();
    if (n == 0 || weights.cols() != n) {
        throw DimensionError("power_iteration expects a nonempty square matrix");
    }

    const Scalar d = static_cast<Scalar>(damping);
    const Scalar uniform = Scalar(1) / static_cast<Scalar>(n);

    Vector row_sums = weights.rowwise().sum();
    Matrix transitions = Matrix::Zero(n, n);
    std::vector<bool> dangling(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (row_sums(j) > Scalar(0)) {
            transitions.row(j) = weights.row(j) / row_sums(j);
        } else {
            dangling[static_cast<std::size_t>(j)] = true;
        }
    }

    PowerIterationResult<Scalar> result;
    Vector p = Vector::Constant(n, uniform);
    for (int iter = 0; iter < max_iterations; ++iter) {
        Scalar dangling_mass = Scalar(0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (dangling[static_cast<std::size_t>(j)]) dangling_mass += p(j);
        }
        Vector q = Vector::Constant(n, (Scalar(1) - d) * uniform + d * dangling_mass * uniform);
        q.noalias() += d * (transitions.transpose() * p);

        const Scalar delta = (q - p).template lpNorm<1>();
        p = std::move(q);
        result.iterations = iter + 1;
        if (delta < static_cast<Scalar>(tolerance)) {
            result.converged = true;
            break;
        }
    }
    result.scores = std::move(p);
    return result;
}

template <typename Scalar>
struct TruncatedSvd {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u;  // m x k
    Eigen::Vector<Scalar, Eigen::Dynamic> singular_values;    // k, non-increasing
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> v;  // n x k
};

namespace detail {

/// One-sided Jacobi (Hestenes) orthogonalization of the columns of `b`,
/// accumulating the right rotations into `v`. On return the columns of `b`
/// are mutually orthogonal: b = U * diag(sigma) * v^T with sigma_i = |b_i|.
template <typename Scalar>
void hestenes_sweeps(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v) {
    const Eigen::Index c = b.cols();
    const Scalar tol = Scalar(1e-14);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Eigen::Index p = 0; p + 1 < c; ++p) {
            for (Eigen::Index q = p + 1; q < c; ++q) {
                const Scalar alpha = b.col(p).squaredNorm();
                const Scalar beta = b.col(q).squaredNorm();
                const Scalar gamma = b.col(p).dot(b.col(q));
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == Scalar(0)) {
                    continue;
                }
                rotated = true;
                const Scalar zeta = (beta - alpha) / (Scalar(2) * gamma);
                const Scalar t = (zeta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(zeta) + std::sqrt(Scalar(1) + zeta * zeta));
                const Scalar cs = Scalar(1) / std::sqrt(Scalar(1) + t * t);
                const Scalar sn = cs * t;
                for (Eigen::Index i = 0; i < b.rows(); ++i) {
                    const Scalar bp = b(i, p);
                    const Scalar bq = b(i, q);
                    b(i, p) = cs * bp - sn * bq;
                    b(i, q) = sn * bp + cs * bq;
                }
                for (Eigen::Index i = 0; i < v.rows(); ++i) {
                    const Scalar vp = v(i, p);
                    const Scalar vq = v(i, q);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

/// Deterministically extends a partial orthonormal column set: column `col`
/// of `u` gets the first standard basis vector that survives Gram-Schmidt
/// against columns [0, col).
template <typename Scalar>
void fill_orthonormal_column(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& u,
                             Eigen::Index col) {
    const Eigen::Index m = u.rows();
    for (Eigen::Index basis = 0; basis < m; ++basis) {
        Eigen::Vector<Scalar, Eigen::Dynamic> cand = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(m);
        cand(basis) = Scalar(1);
        for (Eigen::Index j = 0; j < col; ++j) {
            cand -= u.col(j).dot(cand) * u.col(j);
        }
        const Scalar nrm = cand.norm();
        if (nrm > Scalar(1e-8)) {
            u.col(col) = cand / nrm;
            return;
        }
    }
}

}  // namespace detail

/// Rank-k truncated SVD by one-sided Jacobi, run on whichever orientation of
/// the input has fewer columns. Singular values come back non-increasing and
/// non-negative; U and V have orthonormal columns (zero singular directions
/// are completed deterministically).
template <typename Scalar>
TruncatedSvd<Scalar> truncated_svd(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, Eigen::Index k) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (m == 0 || n == 0) throw DimensionError("truncated_svd: empty matrix");
    if (k < 1 || k > std::min(m, n)) {
        throw DimensionError("truncated_svd: k must lie in [1, min(m,n)]");
    }

    const bool flipped = m < n;
    Matrix b = flipped ? Matrix(a.transpose()) : a;  // rows >= cols
    const Eigen::Index c = b.cols();
    Matrix v = Matrix::Identity(c, c);
    detail::hestenes_sweeps(b, v);

    Vector sigma(c);
    for (Eigen::Index i = 0; i < c; ++i) sigma(i) = b.col(i).norm();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(c));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index lhs, Eigen::Index rhs) { return sigma(lhs) > sigma(rhs); });

    const Scalar sigma_max = sigma(order[0]);
    Matrix u_side(b.rows(), k);
    Matrix v_side(c, k);
    Vector values(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        values(i) = sigma(src);
        v_side.col(i) = v.col(src);
        if (sigma(src) > Scalar(1e-300) && sigma(src) > sigma_max * Scalar(1e-14)) {
            u_side.col(i) = b.col(src) / sigma(src);
        } else {
            values(i) = Scalar(0);
            detail::fill_orthonormal_column(u_side, i);
        }
    }

    TruncatedSvd<Scalar> result;
    result.singular_values = std::move(values);
    if (flipped) {
        result.u = std::move(v_side);
        result.v = std::move(u_side);
    } else {
        result.u = std::move(u_side);
        result.v = std::move(v_side);
    }
    return result;
}

}  // namespace eulaflag
