#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "macnf/linalg.hpp"
#include "macnf/macaulay.hpp"
#include "macnf/polynomial.hpp"

namespace macnf {

/// How the monomial basis of the quotient ring is chosen.
class BasisStrategy {
public:
    enum class Kind { QrPivot, Fixed };

    /// Let pivoted QR on the Macaulay matrix pick the basis.
    static BasisStrategy qr_pivot() { return BasisStrategy(Kind::QrPivot, {}); }
    /// Use exactly these monomials, in this order.
    static BasisStrategy fixed(std::vector<Monomial> basis) {
        return BasisStrategy(Kind::Fixed, std::move(basis));
    }

    Kind kind() const noexcept { return kind_; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

private:
    BasisStrategy(Kind kind, std::vector<Monomial> monomials)
        : kind_(kind), monomials_(std::move(monomials)) {}

    Kind kind_;
    std::vector<Monomial> monomials_;
};

/// {x^alpha : alpha_i <= d_i - 1}, canonical order. Size prod(d_i).
std::vector<Monomial> block_basis(std::span<const unsigned> degrees);

/// Multiplication matrices of C[x]/I in a monomial basis, plus the
/// diagnostics of the reduction that produced them.
struct QuotientSystem {
    std::size_t nvars = 0;
    std::vector<Monomial> basis;

    /// Monomials with a stored normal form: every column of the Macaulay
    /// matrix outside the basis.
    std::vector<Monomial> reduced;
    /// Row j gives x^reduced[j] = sum_b normal_forms(j, b) * basis[b] mod I.
    Matrix normal_forms;

    /// mult_matrices[i] represents [g] -> [x_{i+1} g]; column b holds the
    /// coordinates of x_{i+1} * basis[b].
    std::vector<Matrix> mult_matrices;

    /// 2-norm condition number of the r x r triangular block that is inverted.
    double inverted_block_condition = 0.0;
    /// min |U_ii| / max |U_ii| over that block.
    double basis_condition_diag = 0.0;

    // Reduction diagnostics.
    unsigned t = 0;
    Index support_size = 0;
    Index rank = 0;
    std::vector<double> pivot_magnitudes;
    double dropped_row_max = 0.0;
    double macaulay_norm = 0.0;
    bool dropped_rows_suspicious = false;

    /// The r rows [U | Z] kept after dropping the syzygy rows, with the
    /// column labels in the order they appear. Each row is a polynomial in I.
    Matrix reduced_rows;
    std::vector<Monomial> reduced_row_columns;

    std::size_t dimension() const { return basis.size(); }

    /// Coordinates of the normal form of `m` over the basis, if m lies in
    /// the Macaulay support.
    std::optional<Eigen::VectorXd> normal_form(const Monomial& m) const;
};

/// Relative pivot magnitude below which the inverted block counts as singular.
inline constexpr double kGenericityPivotTol = 1e-12;
/// Dropped syzygy rows above this multiple of ||M||_F are reported as suspicious.
inline constexpr double kDroppedRowWarnTol = 1e-6;

/// Builds the Macaulay matrix, triangularizes it with Householder QR
/// (column pivoting in the interior block for the QR strategy), drops the
/// syzygy rows, solves for the normal forms and assembles the n
/// multiplication matrices.
QuotientSystem compute_quotient_system(const PolySystem& system, const BasisStrategy& strategy);

/// ||m_i m_j - m_j m_i||_2 / ||m_i m_j||_2 for 0-based i < j; +infinity when
/// the product vanishes.
double commutator_metric(const QuotientSystem& qs, std::size_t i, std::size_t j);

/// Plain-text diagnostic report (key: value lines).
void write_diagnostics(std::ostream& out, const QuotientSystem& qs);

}  // namespace macnf
