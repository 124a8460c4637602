#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "macnf/normalform.hpp"
#include "macnf/polynomial.hpp"

namespace macnf {

struct SolutionSet {
    std::vector<ComplexPoint> points;
    std::vector<double> residuals;
    double max_residual = 0.0;
    /// Condition number of the eigenvector matrix that was used.
    double extraction_condition = 0.0;
    /// Number of random combinations redrawn before one was accepted.
    int retries = 0;

    std::size_t size() const { return points.size(); }
};

struct SolveOptions {
    std::uint64_t seed = 0;
    /// Eigenvector matrices with a larger condition number are rejected.
    double max_vector_condition = 1e8;
    /// Extra random combinations tried after the first one.
    int max_retries = 3;
};

/// Reads all solutions off the multiplication matrices: eigendecomposes a
/// random real combination m_f = sum c_i m_{x_i} (c_i ~ N(0,1)) and takes
/// coordinate k of solution j as (V^{-1} m_{x_k} V)_{jj}. Residuals are
/// evaluated against `system`.
SolutionSet extract_solutions(const PolySystem& system, const QuotientSystem& qs,
                              const SolveOptions& options);

/// compute_quotient_system followed by extract_solutions.
SolutionSet solve_system(const PolySystem& system, const BasisStrategy& strategy,
                         std::uint64_t seed);

/// Eigenvalues of f(m_{x_1}, ..., m_{x_n}), i.e. f on the variety with
/// multiplicity.
std::vector<Complex> evaluate_on_variety(const Polynomial& f, const QuotientSystem& qs);

/// f(m_{x_1}, ..., m_{x_n}) as a matrix.
Matrix matrix_polynomial(const Polynomial& f, const QuotientSystem& qs);

/// Applies newton_refine to every point (at most `iterations` steps each).
SolutionSet refine_solutions(const PolySystem& system, const SolutionSet& sols,
                             int iterations = 1);

struct VerificationReport {
    std::size_t passed = 0;
    std::size_t total = 0;
    std::size_t expected = 0;
    bool complete = false;
    /// Index of the point with the largest residual (meaningless when empty).
    std::size_t worst_index = 0;
    double worst_residual = 0.0;
};

/// Recomputes every residual from `system` and counts those <= tol.
/// `complete` means exactly prod(d_i) points were supplied.
VerificationReport verify_solutions(const PolySystem& system, const SolutionSet& sols,
                                    double tol);

/// One line per point: comma-separated "re+im*i" coordinates, then the
/// residual.
void write_solutions(std::ostream& out, const SolutionSet& sols);

/// Same content as CSV with header x1_re,x1_im,...,residual.
void write_solutions_csv(std::ostream& out, const SolutionSet& sols);

}  // namespace macnf
