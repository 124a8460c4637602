#pragma once

#include <vector>

#include <Eigen/Core>

namespace macnf {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// A * P = Q * R with Q orthogonal (rows x rows) and R upper trapezoidal.
/// `perm[j]` is the original index of the column placed at position j.
struct PivotedQR {
    Matrix Q;
    Matrix R;
    std::vector<Index> perm;
};

struct PlainQR {
    Matrix Q;
    Matrix R;
};

/// In-place Householder triangularization.
///
/// The first `plain_steps` columns are eliminated in their given order. The
/// next `pivoted_steps` steps use Businger-Golub column pivoting among the
/// columns not yet eliminated: the column whose trailing part (rows at or
/// below the current step) has the largest 2-norm is swapped into place,
/// ties going to the lowest original column index. Column norms are
/// downdated and recomputed exactly once they have shrunk by a factor 100
/// relative to their last exact value.
///
/// On return the processed columns of `A` are upper triangular (entries
/// below the diagonal set to zero) and the trailing rows hold the
/// transformed remainder. The returned permutation maps positions to
/// original column indices. If `qt` is non-null it must have A.rows() rows;
/// every reflection is also applied to it, so passing the identity yields
/// Q^T on return.
std::vector<Index> householder_reduce(Matrix& A, Index plain_steps, Index pivoted_steps,
                                      Matrix* qt = nullptr);

/// Householder QR with column pivoting over all min(rows, cols) steps.
PivotedQR qr_pivoted(const Matrix& A);

/// Householder QR without pivoting.
PlainQR qr_plain(const Matrix& A);

/// Solves U X = B for upper triangular square U by back substitution.
/// Throws SingularBlockError if some |U_ii| <= rel_tol * max_j |U_jj|.
Matrix back_substitute(const Matrix& U, const Matrix& B, double rel_tol = 1e-15);

/// sigma_max / sigma_min from a full SVD; +infinity when sigma_min is zero
/// or below machine precision relative to sigma_max.
double condition_2norm(const Matrix& U);
double condition_2norm(const ComplexMatrix& U);

/// Largest singular value.
double spectral_norm(const Matrix& A);
double spectral_norm(const ComplexMatrix& A);

/// cols - rank, where rank counts singular values above rel_tol * sigma_max.
Index nullity(const Matrix& A, double rel_tol = 1e-8);

struct EigenDecomposition {
    ComplexVector values;
    /// Columns are unit-norm right eigenvectors.
    ComplexMatrix right_vectors;
    /// 2-norm condition number of `right_vectors`.
    double vector_condition = 0.0;
};

/// Full spectrum and right eigenvectors of a general square matrix.
EigenDecomposition eig_general(const Matrix& A);
EigenDecomposition eig_general(const ComplexMatrix& A);

/// Throws NonFiniteError if any entry is NaN or infinite.
void require_finite(const Matrix& A, const char* what);

}  // namespace macnf
