#include "macnf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "macnf/errors.hpp"

namespace macnf {

namespace {

constexpr double kRecomputeFactor = 100.0;

// Reflector H = I - tau v v^T with v(0) = 1 mapping x to (beta, 0, ..., 0).
// Follows the LAPACK dlarfg convention: tau = 0 when x is already reduced.
struct Reflector {
    double tau = 0.0;
    double beta = 0.0;
};

Reflector make_reflector(Eigen::Ref<Eigen::VectorXd> x) {
    const double alpha = x(0);
    const double tail = x.size() > 1 ? x.tail(x.size() - 1).norm() : 0.0;
    if (tail == 0.0) {
        return {0.0, alpha};
    }
    const double beta = -std::copysign(std::hypot(alpha, tail), alpha);
    x.tail(x.size() - 1) /= (alpha - beta);
    x(0) = 1.0;
    return {(beta - alpha) / beta, beta};
}

void apply_reflector(const Eigen::VectorXd& v, double tau, Eigen::Ref<Matrix> block) {
    if (tau == 0.0 || block.cols() == 0) {
        return;
    }
    const Eigen::RowVectorXd w = v.transpose() * block;
    block.noalias() -= (tau * v) * w;
}

}  // namespace

void require_finite(const Matrix& A, const char* what) {
    if (!A.allFinite()) {
        throw NonFiniteError(std::string(what) + ": matrix has non-finite entries");
    }
}

std::vector<Index> householder_reduce(Matrix& A, Index plain_steps, Index pivoted_steps,
                                      Matrix* qt) {
    const Index m = A.rows();
    const Index n = A.cols();
    if (plain_steps < 0 || pivoted_steps < 0 || plain_steps + pivoted_steps > std::min(m, n)) {
        throw InvalidArgument("householder_reduce: step counts exceed matrix size");
    }
    if (qt != nullptr && qt->rows() != m) {
        throw InvalidArgument("householder_reduce: accumulator row count mismatch");
    }
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});

    const Index total = plain_steps + pivoted_steps;
    Eigen::VectorXd norms;   // current trailing norms, indexed by position
    Eigen::VectorXd exact;   // trailing norm at last exact computation
    Eigen::VectorXd v;

    for (Index k = 0; k < total; ++k) {
        if (k == plain_steps) {
            norms.resize(n);
            exact.resize(n);
            for (Index j = k; j < n; ++j) {
                norms(j) = A.col(j).tail(m - k).norm();
                exact(j) = norms(j);
            }
        }
        if (k >= plain_steps) {
            Index best = k;
            for (Index j = k + 1; j < n; ++j) {
                if (norms(j) > norms(best) ||
                    (norms(j) == norms(best) && perm[j] < perm[best])) {
                    best = j;
                }
            }
            if (best != k) {
                A.col(k).swap(A.col(best));
                std::swap(norms(k), norms(best));
                std::swap(exact(k), exact(best));
                std::swap(perm[k], perm[best]);
            }
        }

        v = A.col(k).tail(m - k);
        const Reflector h = make_reflector(v);
        apply_reflector(v, h.tau, A.block(k, k + 1, m - k, n - k - 1));
        if (qt != nullptr) {
            apply_reflector(v, h.tau, qt->bottomRows(m - k));
        }
        A(k, k) = h.beta;
        A.col(k).tail(m - k - 1).setZero();

        if (k >= plain_steps) {
            for (Index j = k + 1; j < n; ++j) {
                if (norms(j) == 0.0) {
                    continue;
                }
                const double ratio = std::abs(A(k, j)) / norms(j);
                const double shrink = std::max(0.0, (1.0 - ratio) * (1.0 + ratio));
                const double updated = norms(j) * std::sqrt(shrink);
                if (updated * kRecomputeFactor < exact(j)) {
                    norms(j) = k + 1 < m ? A.col(j).tail(m - k - 1).norm() : 0.0;
                    exact(j) = norms(j);
                } else {
                    norms(j) = updated;
                }
            }
        }
    }
    return perm;
}

PivotedQR qr_pivoted(const Matrix& A) {
    if (A.size() == 0) {
        throw InvalidArgument("qr_pivoted: empty matrix");
    }
    require_finite(A, "qr_pivoted");
    PivotedQR out;
    out.R = A;
    Matrix qt = Matrix::Identity(A.rows(), A.rows());
    out.perm = householder_reduce(out.R, 0, std::min(A.rows(), A.cols()), &qt);
    out.Q = qt.transpose();
    return out;
}

PlainQR qr_plain(const Matrix& A) {
    if (A.size() == 0) {
        throw InvalidArgument("qr_plain: empty matrix");
    }
    require_finite(A, "qr_plain");
    PlainQR out;
    out.R = A;
    Matrix qt = Matrix::Identity(A.rows(), A.rows());
    householder_reduce(out.R, std::min(A.rows(), A.cols()), 0, &qt);
    out.Q = qt.transpose();
    return out;
}

Matrix back_substitute(const Matrix& U, const Matrix& B, double rel_tol) {
    const Index r = U.rows();
    if (U.cols() != r || B.rows() != r) {
        throw InvalidArgument("back_substitute: expected square U and matching B");
    }
    if (r == 0) {
        return B;
    }
    const double scale = U.diagonal().cwiseAbs().maxCoeff();
    for (Index i = 0; i < r; ++i) {
        if (!(std::abs(U(i, i)) > rel_tol * scale)) {
            throw SingularBlockError("back_substitute: negligible diagonal entry at index " +
                                         std::to_string(i),
                                     static_cast<std::size_t>(i));
        }
    }
    Matrix X = B;
    for (Index i = r - 1; i >= 0; --i) {
        X.row(i) /= U(i, i);
        if (i > 0) {
            X.topRows(i).noalias() -= U.col(i).head(i) * X.row(i);
        }
    }
    return X;
}

namespace {

template <typename M>
double condition_from_svd(const M& A) {
    if (A.rows() != A.cols() || A.rows() == 0) {
        throw InvalidArgument("condition_2norm: expected a nonempty square matrix");
    }
    if (!A.allFinite()) {
        throw NonFiniteError("condition_2norm: matrix has non-finite entries");
    }
    const Eigen::VectorXd s = Eigen::BDCSVD<M>(A).singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (smin == 0.0 || smin <= smax * std::numeric_limits<double>::epsilon()) {
        return std::numeric_limits<double>::infinity();
    }
    return smax / smin;
}

template <typename M>
double spectral_norm_impl(const M& A) {
    if (A.size() == 0) {
        return 0.0;
    }
    return Eigen::BDCSVD<M>(A).singularValues()(0);
}

}  // namespace

double condition_2norm(const Matrix& U) { return condition_from_svd(U); }
double condition_2norm(const ComplexMatrix& U) { return condition_from_svd(U); }

double spectral_norm(const Matrix& A) { return spectral_norm_impl(A); }
double spectral_norm(const ComplexMatrix& A) { return spectral_norm_impl(A); }

Index nullity(const Matrix& A, double rel_tol) {
    if (A.size() == 0) {
        throw InvalidArgument("nullity: empty matrix");
    }
    require_finite(A, "nullity");
    const Eigen::VectorXd s = Eigen::BDCSVD<Matrix>(A).singularValues();
    const double threshold = rel_tol * s(0);
    const Index rank = (s.array() > threshold).count();
    return A.cols() - rank;
}

namespace {

EigenDecomposition finish(ComplexVector values, ComplexMatrix vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        const double nrm = vectors.col(j).norm();
        if (nrm > 0.0) {
            vectors.col(j) /= nrm;
        }
    }
    EigenDecomposition out;
    out.vector_condition = condition_from_svd(vectors);
    out.values = std::move(values);
    out.right_vectors = std::move(vectors);
    return out;
}

}  // namespace

EigenDecomposition eig_general(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0) {
        throw InvalidArgument("eig_general: expected a nonempty square matrix");
    }
    require_finite(A, "eig_general");
    Eigen::EigenSolver<Matrix> solver(A, true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_general: eigensolver did not converge");
    }
    return finish(solver.eigenvalues(), solver.eigenvectors());
}

EigenDecomposition eig_general(const ComplexMatrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0) {
        throw InvalidArgument("eig_general: expected a nonempty square matrix");
    }
    if (!A.allFinite()) {
        throw NonFiniteError("eig_general: matrix has non-finite entries");
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_general: eigensolver did not converge");
    }
    return finish(solver.eigenvalues(), solver.eigenvectors());
}

}  // namespace macnf
