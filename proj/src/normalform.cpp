#include "macnf/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include "macnf/errors.hpp"

namespace macnf {

std::vector<Monomial> block_basis(std::span<const unsigned> degrees) {
    if (degrees.empty() ||
        std::any_of(degrees.begin(), degrees.end(), [](unsigned d) { return d == 0; })) {
        throw InvalidArgument("block_basis: degrees must be nonempty and positive");
    }
    const std::size_t n = degrees.size();
    unsigned max_total = 0;
    for (unsigned d : degrees) {
        max_total += d - 1;
    }
    std::vector<Monomial> out;
    for (auto& m : enumerate_monomials(n, max_total)) {
        bool inside = true;
        for (std::size_t i = 0; i < n && inside; ++i) {
            inside = m[i] <= degrees[i] - 1;
        }
        if (inside) {
            out.push_back(std::move(m));
        }
    }
    return out;
}

namespace {

// Column order for the fixed strategy: degree-t block, then the interior
// columns outside the basis, then the basis in the requested order.
std::vector<Index> fixed_column_order(const MacaulayMatrix& mac,
                                      const std::vector<Monomial>& basis, Index n_basis) {
    if (static_cast<Index>(basis.size()) != n_basis) {
        throw InvalidBasisError("fixed basis has " + std::to_string(basis.size()) +
                                " monomials, expected " + std::to_string(n_basis));
    }
    std::vector<Index> basis_cols;
    std::set<Index> seen;
    for (const auto& b : basis) {
        if (b.nvars() != mac.col_monomials.front().nvars()) {
            throw InvalidBasisError("basis monomial " + b.to_string() +
                                    " has the wrong number of variables");
        }
        if (b.degree() >= mac.t) {
            throw InvalidBasisError("basis monomial " + b.to_string() + " has degree " +
                                    std::to_string(b.degree()) + "; basis degrees must be < t = " +
                                    std::to_string(mac.t));
        }
        const Index col = mac.column_of(b);
        if (col < 0) {
            throw InvalidBasisError("basis monomial " + b.to_string() + " is not in the support");
        }
        if (!seen.insert(col).second) {
            throw InvalidBasisError("basis monomial " + b.to_string() + " is repeated");
        }
        basis_cols.push_back(col);
    }
    std::vector<Index> order;
    order.reserve(static_cast<std::size_t>(mac.cols()));
    for (Index j = 0; j < mac.cols(); ++j) {
        if (!seen.contains(j)) {
            order.push_back(j);
        }
    }
    order.insert(order.end(), basis_cols.begin(), basis_cols.end());
    return order;
}

}  // namespace

QuotientSystem compute_quotient_system(const PolySystem& system, const BasisStrategy& strategy) {
    const MacaulayMatrix mac = build_macaulay(system);
    const std::size_t n = system.nvars();
    const Index n_basis = static_cast<Index>(bezout_number(system.degrees()));
    const Index n_rows = mac.rows();
    const Index n_cols = mac.cols();
    const Index border = mac.split;
    const Index rank = n_cols - n_basis;

    if (rank > n_rows || border > rank) {
        throw GenericityError("Macaulay matrix of degree " + std::to_string(mac.t) +
                                  " is too small for rank " + std::to_string(rank),
                              0);
    }

    // Column order before the QR sweep (positions -> Macaulay column).
    std::vector<Index> order(static_cast<std::size_t>(n_cols));
    std::iota(order.begin(), order.end(), Index{0});
    if (strategy.kind() == BasisStrategy::Kind::Fixed) {
        order = fixed_column_order(mac, strategy.monomials(), n_basis);
    }
    Matrix work(n_rows, n_cols);
    for (Index j = 0; j < n_cols; ++j) {
        work.col(j) = mac.matrix.col(order[static_cast<std::size_t>(j)]);
    }

    // Border block first (plain), then either pivoted or plain steps on the
    // interior block until the rank is reached.
    std::vector<Index> perm;
    if (strategy.kind() == BasisStrategy::Kind::QrPivot) {
        perm = householder_reduce(work, border, rank - border);
    } else {
        perm = householder_reduce(work, rank, 0);
    }

    QuotientSystem qs;
    qs.nvars = n;
    qs.t = mac.t;
    qs.support_size = n_cols;
    qs.rank = rank;
    qs.macaulay_norm = mac.matrix.norm();
    qs.dropped_row_max =
        n_rows > rank ? work.bottomRows(n_rows - rank).cwiseAbs().maxCoeff() : 0.0;
    qs.dropped_rows_suspicious = qs.dropped_row_max > kDroppedRowWarnTol * qs.macaulay_norm;

    std::vector<Monomial> labels;
    labels.reserve(static_cast<std::size_t>(n_cols));
    for (Index p : perm) {
        labels.push_back(mac.col_monomials[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])]);
    }

    const Matrix upper = work.topLeftCorner(rank, rank);
    const Eigen::VectorXd diag = upper.diagonal().cwiseAbs();
    qs.pivot_magnitudes.assign(diag.data(), diag.data() + diag.size());
    const double largest = diag.maxCoeff();
    for (Index i = 0; i < rank; ++i) {
        if (!(diag(i) > kGenericityPivotTol * largest)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", diag(i) / largest);
            throw GenericityError("genericity violation: pivot " + std::to_string(i) +
                                      " (column " + labels[static_cast<std::size_t>(i)].to_string() +
                                      ") has relative magnitude " + buf,
                                  static_cast<std::size_t>(i));
        }
    }
    qs.basis_condition_diag = diag.minCoeff() / largest;
    qs.inverted_block_condition = condition_2norm(upper);

    Matrix coeffs = -back_substitute(upper, work.topRightCorner(rank, n_basis), 0.0);

    qs.reduced.assign(labels.begin(), labels.begin() + rank);
    std::vector<Monomial> basis(labels.begin() + rank, labels.end());

    // The pivoted basis is reported in canonical order; a fixed basis keeps
    // the caller's order.
    std::vector<Index> basis_order(static_cast<std::size_t>(n_basis));
    std::iota(basis_order.begin(), basis_order.end(), Index{0});
    if (strategy.kind() == BasisStrategy::Kind::QrPivot) {
        std::sort(basis_order.begin(), basis_order.end(), [&](Index a, Index b) {
            return basis[static_cast<std::size_t>(a)] < basis[static_cast<std::size_t>(b)];
        });
    }
    qs.normal_forms.resize(rank, n_basis);
    qs.basis.reserve(static_cast<std::size_t>(n_basis));
    for (Index k = 0; k < n_basis; ++k) {
        const Index src = basis_order[static_cast<std::size_t>(k)];
        qs.basis.push_back(basis[static_cast<std::size_t>(src)]);
        qs.normal_forms.col(k) = coeffs.col(src);
    }

    qs.reduced_rows = work.topRows(rank);
    qs.reduced_row_columns = std::move(labels);

    std::map<Monomial, Index> basis_index;
    for (Index k = 0; k < n_basis; ++k) {
        basis_index.emplace(qs.basis[static_cast<std::size_t>(k)], k);
    }
    std::map<Monomial, Index> reduced_index;
    for (Index k = 0; k < rank; ++k) {
        reduced_index.emplace(qs.reduced[static_cast<std::size_t>(k)], k);
    }

    qs.mult_matrices.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        Matrix m = Matrix::Zero(n_basis, n_basis);
        for (Index b = 0; b < n_basis; ++b) {
            const Monomial product = qs.basis[static_cast<std::size_t>(b)].times_variable(v);
            if (auto it = basis_index.find(product); it != basis_index.end()) {
                m(it->second, b) = 1.0;
            } else {
                // deg(product) <= t, so it is a reduced column.
                m.col(b) = qs.normal_forms.row(reduced_index.at(product)).transpose();
            }
        }
        qs.mult_matrices.push_back(std::move(m));
    }
    return qs;
}

std::optional<Eigen::VectorXd> QuotientSystem::normal_form(const Monomial& m) const {
    if (auto it = std::find(basis.begin(), basis.end(), m); it != basis.end()) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Index>(basis.size()));
        e(it - basis.begin()) = 1.0;
        return e;
    }
    if (auto it = std::find(reduced.begin(), reduced.end(), m); it != reduced.end()) {
        return normal_forms.row(it - reduced.begin()).transpose();
    }
    return std::nullopt;
}

double commutator_metric(const QuotientSystem& qs, std::size_t i, std::size_t j) {
    if (i >= j || j >= qs.mult_matrices.size()) {
        throw InvalidArgument("commutator_metric: need 0 <= i < j < n");
    }
    const Matrix& a = qs.mult_matrices[i];
    const Matrix& b = qs.mult_matrices[j];
    const Matrix ab = a * b;
    const double denom = spectral_norm(ab);
    if (denom == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return spectral_norm(Matrix(ab - b * a)) / denom;
}

void write_diagnostics(std::ostream& out, const QuotientSystem& qs) {
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.6e", x);
        return std::string(buf);
    };
    out << "t: " << qs.t << '\n'
        << "support_size: " << qs.support_size << '\n'
        << "rank: " << qs.rank << '\n'
        << "basis_size: " << qs.basis.size() << '\n'
        << "basis:";
    for (const auto& b : qs.basis) {
        out << ' ' << b.to_string();
    }
    out << '\n' << "pivot_magnitudes:";
    for (double p : qs.pivot_magnitudes) {
        out << ' ' << num(p);
    }
    out << '\n'
        << "inverted_block_condition: " << num(qs.inverted_block_condition) << '\n'
        << "basis_condition_diag: " << num(qs.basis_condition_diag) << '\n'
        << "dropped_row_max: " << num(qs.dropped_row_max)
        << (qs.dropped_rows_suspicious ? " (warning: syzygy rows not negligible)" : "") << '\n';
}

}  // namespace macnf
