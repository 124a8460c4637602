#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "macnf/errors.hpp"
#include "macnf/linalg.hpp"
#include "test_util.hpp"

using namespace macnf;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix A(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            A(i, j) = normal(rng);
        }
    }
    return A;
}

Matrix permuted(const Matrix& A, const std::vector<Index>& perm) {
    Matrix out(A.rows(), A.cols());
    for (Index j = 0; j < A.cols(); ++j) {
        out.col(j) = A.col(perm[static_cast<std::size_t>(j)]);
    }
    return out;
}

void expect_qr_invariants(const Matrix& A, const PivotedQR& qr) {
    const Index m = A.rows();
    const Index k = std::min(A.rows(), A.cols());
    EXPECT_LE((qr.Q.transpose() * qr.Q - Matrix::Identity(m, m)).norm(), 1e-12 * m);
    EXPECT_LE((permuted(A, qr.perm) - qr.Q * qr.R).norm(), 1e-12 * A.norm());
    for (Index i = 1; i < k; ++i) {
        EXPECT_GE(std::abs(qr.R(i - 1, i - 1)), std::abs(qr.R(i, i)));
    }
    for (Index j = 0; j < A.cols(); ++j) {
        for (Index i = j + 1; i < m; ++i) {
            EXPECT_EQ(qr.R(i, j), 0.0);
        }
    }
}

}  // namespace

TEST(QrPivoted, Identity) {
    const auto qr = qr_pivoted(Matrix::Identity(3, 3));
    EXPECT_EQ(qr.perm, (std::vector<Index>{0, 1, 2}));
    EXPECT_EQ(qr.R, Matrix::Identity(3, 3));
    EXPECT_EQ(qr.Q, Matrix::Identity(3, 3));
}

TEST(QrPivoted, SwapsToLargerColumn) {
    Matrix A(2, 2);
    A << 0, 2, 0, 0;
    const auto qr = qr_pivoted(A);
    EXPECT_EQ(qr.perm, (std::vector<Index>{1, 0}));
    EXPECT_DOUBLE_EQ(std::abs(qr.R(0, 0)), 2.0);
}

TEST(QrPivoted, TiesGoToLowestIndex) {
    Matrix A(3, 3);
    A << 1, 0, 0, 0, 0, 1, 0, 1, 0;
    EXPECT_EQ(qr_pivoted(A).perm, (std::vector<Index>{0, 1, 2}));
}

TEST(QrPivoted, Reconstruction) {
    const Matrix A = random_matrix(20, 12, 1);
    const auto qr = qr_pivoted(A);
    EXPECT_LE((permuted(A, qr.perm) - qr.Q * qr.R).norm() / A.norm(), 1e-12);
}

TEST(QrPivoted, RejectsNonFinite) {
    Matrix A = Matrix::Identity(2, 2);
    A(1, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(qr_pivoted(A), NonFiniteError);
    EXPECT_THROW(qr_pivoted(Matrix(0, 0)), InvalidArgument);
}

TEST(QrPivoted, RandomInvariants) {
    std::mt19937_64 sizes(2024);
    std::uniform_int_distribution<Index> dim(1, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const Index m = dim(sizes);
        const Index n = std::min<Index>(dim(sizes), 150);
        const Matrix A = random_matrix(m, n, 5000 + trial);
        expect_qr_invariants(A, qr_pivoted(A));
    }
}

TEST(QrPivoted, RankDeficientDiagonalDecreases) {
    // Rank 5 in 40 x 30; downdated norms must still give monotone |R_ii|.
    const Matrix A = random_matrix(40, 5, 9) * random_matrix(5, 30, 10);
    const auto qr = qr_pivoted(A);
    expect_qr_invariants(A, qr);
    EXPECT_LE(std::abs(qr.R(5, 5)), 1e-12 * std::abs(qr.R(0, 0)));
}

TEST(QrPivoted, AgreesWithEigenColumnSelection) {
    // Businger-Golub pivoting picks the same leading columns as Eigen's
    // ColPivHouseholderQR for generic input.
    const Matrix A = random_matrix(30, 25, 77);
    const auto ours = qr_pivoted(A);
    Eigen::ColPivHouseholderQR<Matrix> ref(A);
    const auto& indices = ref.colsPermutation().indices();
    for (Index j = 0; j < 10; ++j) {
        EXPECT_EQ(ours.perm[static_cast<std::size_t>(j)], indices(j));
    }
}

TEST(QrPlain, Examples) {
    const auto id = qr_plain(Matrix::Identity(3, 3));
    EXPECT_EQ(id.Q, Matrix::Identity(3, 3));
    EXPECT_EQ(id.R, Matrix::Identity(3, 3));
    Matrix v(2, 1);
    v << 3, 4;
    EXPECT_DOUBLE_EQ(std::abs(qr_plain(v).R(0, 0)), 5.0);
    const Matrix A = random_matrix(30, 10, 4);
    const auto qr = qr_plain(A);
    EXPECT_LE((A - qr.Q * qr.R).norm() / A.norm(), 1e-12);
    EXPECT_LE((qr.Q.transpose() * qr.Q - Matrix::Identity(30, 30)).norm(), 1e-12 * 30);
}

TEST(BackSubstitute, Examples) {
    const Matrix B = random_matrix(3, 2, 8);
    EXPECT_EQ(back_substitute(Matrix::Identity(3, 3), B), B);
    Matrix U(2, 2);
    U << 2, 1, 0, 4;
    Matrix b(2, 1);
    b << 5, 8;
    const Matrix x = back_substitute(U, b);
    EXPECT_DOUBLE_EQ(x(0, 0), 1.5);
    EXPECT_DOUBLE_EQ(x(1, 0), 2.0);
}

TEST(BackSubstitute, SingularBlock) {
    Matrix U = Matrix::Zero(2, 2);
    U(0, 0) = 1.0;
    U(1, 1) = 1e-16;
    try {
        back_substitute(U, Matrix::Ones(2, 1));
        FAIL();
    } catch (const SingularBlockError& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(BackSubstitute, InverseOfMultiplication) {
    for (int trial = 0; trial < 50; ++trial) {
        const Index r = 5 + trial;
        Matrix U = random_matrix(r, r, 300 + trial).triangularView<Eigen::Upper>();
        U.diagonal().array() += 3.0 * U.diagonal().array().sign();
        const Matrix B = random_matrix(r, 4, 900 + trial);
        const Matrix X = back_substitute(U, B);
        EXPECT_LE((U * X - B).norm(), 1e-10 * condition_2norm(U) * B.norm());
    }
}

TEST(Condition, Examples) {
    EXPECT_DOUBLE_EQ(condition_2norm(Matrix(Matrix::Identity(4, 4))), 1.0);
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 100;
    D(1, 1) = 1;
    EXPECT_NEAR(condition_2norm(D), 100.0, 1e-12);
    Matrix S = Matrix::Ones(3, 3);
    EXPECT_TRUE(std::isinf(condition_2norm(S)));
}

TEST(Nullity, Examples) {
    EXPECT_EQ(nullity(Matrix::Zero(3, 3)), 3);
    EXPECT_EQ(nullity(Matrix::Identity(3, 5)), 2);
    const Matrix A = random_matrix(12, 4, 1) * random_matrix(4, 9, 2);
    EXPECT_EQ(nullity(A), 5);
}

TEST(Nullity, InvariantUnderRowOperations) {
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix A = random_matrix(15, 3 + trial % 8, 40 + trial) *
                         random_matrix(3 + trial % 8, 20, 80 + trial);
        const Index base = nullity(A);
        Matrix rows_swapped = A;
        rows_swapped.row(0).swap(rows_swapped.row(14));
        rows_swapped.row(3).swap(rows_swapped.row(7));
        EXPECT_EQ(nullity(rows_swapped), base);
        const Matrix Q = Eigen::HouseholderQR<Matrix>(random_matrix(15, 15, 200 + trial))
                             .householderQ();
        EXPECT_EQ(nullity(Matrix(Q * A)), base);
    }
}

TEST(Eig, Examples) {
    Matrix D = Matrix::Zero(3, 3);
    D.diagonal() << 1, 2, 3;
    auto e = eig_general(D);
    std::vector<Complex> vals(e.values.data(), e.values.data() + 3);
    EXPECT_LE(testutil::multiset_distance(vals, {1.0, 2.0, 3.0}), 1e-14);
    Matrix S(2, 2);
    S << 0, 1, 1, 0;
    e = eig_general(S);
    vals.assign(e.values.data(), e.values.data() + 2);
    EXPECT_LE(testutil::multiset_distance(vals, {-1.0, 1.0}), 1e-14);
    EXPECT_THROW(eig_general(Matrix(2, 3)), InvalidArgument);
}

TEST(Eig, ResidualAndConjugateClosure) {
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix A = random_matrix(20, 20, 600 + trial);
        const auto e = eig_general(A);
        const double norm = spectral_norm(A);
        std::vector<Complex> vals(e.values.data(), e.values.data() + e.values.size());
        std::vector<Complex> conj_vals;
        for (Index j = 0; j < e.values.size(); ++j) {
            const auto v = e.right_vectors.col(j);
            EXPECT_LE((A.cast<Complex>() * v - e.values(j) * v).norm(), 1e-8 * norm * v.norm());
            conj_vals.push_back(std::conj(e.values(j)));
        }
        EXPECT_LE(testutil::multiset_distance(vals, conj_vals), 1e-8 * norm);
        EXPECT_GE(e.vector_condition, 1.0);
    }
}
