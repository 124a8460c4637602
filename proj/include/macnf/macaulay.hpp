#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "macnf/linalg.hpp"
#include "macnf/polynomial.hpp"

namespace macnf {

/// t = sum(d_i) - (n - 1).
unsigned macaulay_degree(std::span<const unsigned> degrees);

/// prod(d_i), the generic number of solutions.
unsigned long long bezout_number(std::span<const unsigned> degrees);

/// Dense Macaulay matrix of degree t.
///
/// Columns are labeled by all monomials of degree <= t: first the degree-t
/// monomials, then the remaining ones by descending degree, canonical order
/// inside each degree. Row (i, beta) holds the coefficients of x^beta * f_i;
/// blocks follow the equation order and shifts inside a block run through
/// all monomials of degree <= t - d_i in canonical order.
struct MacaulayMatrix {
    Matrix matrix;
    std::vector<Monomial> col_monomials;
    /// row_shifts[i] is the shift set of equation i.
    std::vector<std::vector<Monomial>> row_shifts;
    unsigned t = 0;
    /// Columns [0, split) have degree t; the rest have degree < t.
    Index split = 0;

    Index rows() const { return matrix.rows(); }
    Index cols() const { return matrix.cols(); }

    /// Column index of `m`, or -1 if not in the support.
    Index column_of(const Monomial& m) const;
};

/// Column labels in Macaulay order for n variables and degree t.
std::vector<Monomial> macaulay_columns(std::size_t nvars, unsigned t);

MacaulayMatrix build_macaulay(const PolySystem& system);

/// v(z) = (z^alpha_1, ..., z^alpha_l) over the given column labels.
ComplexVector root_vector(std::span<const Complex> z, std::span<const Monomial> col_monomials);

/// CSV dump: header "shift,<monomial labels...>", then one row per shift
/// labeled like "x1*f2".
void write_macaulay_csv(std::ostream& out, const MacaulayMatrix& mac);

}  // namespace macnf
