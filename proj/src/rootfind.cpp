#include "macnf/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "macnf/errors.hpp"
#include "macnf/macaulay.hpp"

namespace macnf {

SolutionSet extract_solutions(const PolySystem& system, const QuotientSystem& qs,
                              const SolveOptions& options) {
    const std::size_t n = qs.nvars;
    if (system.nvars() != n) {
        throw InvalidArgument("extract_solutions: system and quotient dimensions differ");
    }
    const Index dim = static_cast<Index>(qs.dimension());
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    SolutionSet out;
    double best_condition = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        Matrix combo = Matrix::Zero(dim, dim);
        for (std::size_t i = 0; i < n; ++i) {
            combo += normal(rng) * qs.mult_matrices[i];
        }
        EigenDecomposition eig = eig_general(combo);
        best_condition = std::min(best_condition, eig.vector_condition);
        if (!(eig.vector_condition <= options.max_vector_condition)) {
            continue;
        }

        const ComplexMatrix& V = eig.right_vectors;
        Eigen::PartialPivLU<ComplexMatrix> lu(V);
        out.points.assign(static_cast<std::size_t>(dim), ComplexPoint(n));
        for (std::size_t k = 0; k < n; ++k) {
            const ComplexMatrix mv = qs.mult_matrices[k].cast<Complex>() * V;
            const ComplexMatrix readout = lu.solve(mv);
            for (Index j = 0; j < dim; ++j) {
                out.points[static_cast<std::size_t>(j)][k] = readout(j, j);
            }
        }
        out.extraction_condition = eig.vector_condition;
        out.retries = attempt;
        out.residuals.resize(out.points.size());
        out.max_residual = 0.0;
        for (std::size_t j = 0; j < out.points.size(); ++j) {
            out.residuals[j] = residual(system, out.points[j]);
            out.max_residual = std::max(out.max_residual, out.residuals[j]);
        }
        return out;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", best_condition);
    throw ExtractionError("eigenvector matrix ill-conditioned for every random combination "
                          "(best condition " +
                          std::string(buf) + "); the system may have multiple roots");
}

SolutionSet solve_system(const PolySystem& system, const BasisStrategy& strategy,
                         std::uint64_t seed) {
    const QuotientSystem qs = compute_quotient_system(system, strategy);
    SolveOptions options;
    options.seed = seed;
    return extract_solutions(system, qs, options);
}

Matrix matrix_polynomial(const Polynomial& f, const QuotientSystem& qs) {
    if (f.nvars() != qs.nvars) {
        throw InvalidArgument("matrix_polynomial: polynomial has " + std::to_string(f.nvars()) +
                              " variables, quotient system has " + std::to_string(qs.nvars));
    }
    const Index dim = static_cast<Index>(qs.dimension());
    Matrix result = Matrix::Zero(dim, dim);
    if (f.is_zero()) {
        return result;
    }
    // Accumulate monomial matrices along the canonical order, reusing the
    // previously built monomial whenever it divides the next one by a single
    // variable.
    std::map<Monomial, Matrix> cache;
    const Monomial one = Monomial::one(qs.nvars);
    cache.emplace(one, Matrix::Identity(dim, dim));
    auto monomial_matrix = [&](const Monomial& m, auto&& self) -> const Matrix& {
        if (auto it = cache.find(m); it != cache.end()) {
            return it->second;
        }
        std::size_t v = 0;
        while (m[v] == 0) {
            ++v;
        }
        std::vector<unsigned> e(m.exponents().begin(), m.exponents().end());
        --e[v];
        const Matrix& lower = self(Monomial(std::move(e)), self);
        Matrix product = qs.mult_matrices[v] * lower;
        return cache.emplace(m, std::move(product)).first->second;
    };
    for (const auto& [m, c] : f.terms()) {
        result += c * monomial_matrix(m, monomial_matrix);
    }
    return result;
}

std::vector<Complex> evaluate_on_variety(const Polynomial& f, const QuotientSystem& qs) {
    const Matrix mf = matrix_polynomial(f, qs);
    Eigen::EigenSolver<Matrix> solver(mf, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("evaluate_on_variety: eigensolver did not converge");
    }
    const ComplexVector values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

SolutionSet refine_solutions(const PolySystem& system, const SolutionSet& sols, int iterations) {
    SolutionSet out = sols;
    out.max_residual = 0.0;
    for (std::size_t j = 0; j < out.points.size(); ++j) {
        NewtonResult r = newton_refine(system, sols.points[j], iterations);
        out.points[j] = std::move(r.point);
        out.residuals[j] = r.residual;
        out.max_residual = std::max(out.max_residual, r.residual);
    }
    return out;
}

VerificationReport verify_solutions(const PolySystem& system, const SolutionSet& sols,
                                    double tol) {
    VerificationReport report;
    report.total = sols.points.size();
    report.expected = bezout_number(system.degrees());
    report.complete = report.total == report.expected;
    for (std::size_t j = 0; j < sols.points.size(); ++j) {
        const double r = residual(system, sols.points[j]);
        if (r <= tol) {
            ++report.passed;
        }
        if (j == 0 || r > report.worst_residual) {
            report.worst_residual = r;
            report.worst_index = j;
        }
    }
    return report;
}

namespace {

std::string format_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", z.real(), z.imag());
    return buf;
}

}  // namespace

void write_solutions(std::ostream& out, const SolutionSet& sols) {
    char buf[32];
    for (std::size_t j = 0; j < sols.points.size(); ++j) {
        for (const Complex& c : sols.points[j]) {
            out << format_complex(c) << ',';
        }
        std::snprintf(buf, sizeof buf, "%.6e", sols.residuals[j]);
        out << buf << '\n';
    }
}

void write_solutions_csv(std::ostream& out, const SolutionSet& sols) {
    const std::size_t n = sols.points.empty() ? 0 : sols.points.front().size();
    for (std::size_t k = 0; k < n; ++k) {
        out << 'x' << k + 1 << "_re,x" << k + 1 << "_im,";
    }
    out << "residual\n";
    char buf[64];
    for (std::size_t j = 0; j < sols.points.size(); ++j) {
        for (const Complex& c : sols.points[j]) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,", c.real(), c.imag());
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g", sols.residuals[j]);
        out << buf << '\n';
    }
}

}  // namespace macnf
