// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "macnf/linalg.hpp"
#include "macnf/macaulay.hpp"
#include "macnf/normalform.hpp"
#include "macnf/parse.hpp"
#include "macnf/rootfind.hpp"
#include "test_util.hpp"

using namespace macnf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_seconds;  // <= 0: no limit
    std::function<Outcome()> body;
};

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string sci(double x) { return fmt("%.3e", x); }

std::vector<Complex> eigenvalues(const Matrix& m) {
    const auto e = eig_general(m);
    return {e.values.data(), e.values.data() + e.values.size()};
}

PolySystem dense(std::vector<unsigned> degs, std::uint64_t seed) {
    return random_dense_system(degs.size(), degs, seed);
}

// Systems shared by criteria 4, 7 and 8.
struct SolvedCase {
    unsigned degree;
    std::uint64_t seed;
    PolySystem system;
    SolutionSet solutions;
};

const std::vector<unsigned> kResidualDegrees{5, 10, 15, 20};
const std::vector<std::uint64_t> kResidualSeeds{401, 402, 403};

std::vector<SolvedCase>& residual_cases() {
    static std::vector<SolvedCase> cases;
    return cases;
}

Outcome worked_example() {
    Outcome o;
    const auto sys = testutil::toy_system();
    const std::vector<Monomial> basis{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const auto qs = compute_quotient_system(sys, BasisStrategy::fixed(basis));
    Matrix mx1(4, 4);
    mx1 << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    Matrix mx2(4, 4);
    mx2 << 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0;
    const double e1 = (qs.mult_matrices[0] - mx1).cwiseAbs().maxCoeff();
    const double e2 = (qs.mult_matrices[1] - mx2).cwiseAbs().maxCoeff();
    const double ev = testutil::multiset_distance(eigenvalues(qs.mult_matrices[0]),
                                                 {-1.0, -1.0, 1.0, 1.0});
    o.pass = e1 <= 1e-12 && e2 <= 1e-12 && ev <= 1e-10;
    o.detail = "max|m_x1 - exact| = " + sci(e1) + ", max|m_x2 - exact| = " + sci(e2) +
               ", eigenvalue error = " + sci(ev);
    return o;
}

Outcome commutator_seven_six() {
    double total = 0.0;
    const int seeds = 5;
    for (int s = 0; s < seeds; ++s) {
        const auto qs = compute_quotient_system(dense({7, 6}, 100 + s), BasisStrategy::qr_pivot());
        total += commutator_metric(qs, 0, 1);
    }
    const double mean = total / seeds;
    return {mean <= 1e-10, "mean commutator metric over 5 seeds = " + sci(mean)};
}

Outcome condition_separation() {
    const std::vector<unsigned> degs{10, 10};
    double qr_sum = 0.0;
    double block_sum = 0.0;
    const int seeds = 5;
    for (int s = 0; s < seeds; ++s) {
        const auto sys = dense(degs, 200 + s);
        qr_sum += compute_quotient_system(sys, BasisStrategy::qr_pivot()).inverted_block_condition;
        block_sum += compute_quotient_system(sys, BasisStrategy::fixed(block_basis(degs)))
                         .inverted_block_condition;
    }
    const double qr = qr_sum / seeds;
    const double block = block_sum / seeds;
    return {qr <= 1e6 && block >= 1e3 * qr,
            "mean condition QR = " + sci(qr) + ", block = " + sci(block) + " (ratio " +
                sci(block / qr) + ")"};
}

Outcome residual_scaling() {
    Outcome o;
    auto& cases = residual_cases();
    cases.clear();
    for (unsigned d : kResidualDegrees) {
        double worst = 0.0;
        bool complete = true;
        for (std::uint64_t seed : kResidualSeeds) {
            auto sys = dense({d, d}, seed);
            auto sols = solve_system(sys, BasisStrategy::qr_pivot(), seed);
            complete = complete && sols.size() == static_cast<std::size_t>(d) * d;
            worst = std::max(worst, sols.max_residual);
            cases.push_back({d, seed, std::move(sys), std::move(sols)});
        }
        o.pass = o.pass && complete && worst <= 1e-8;
        o.detail += "d=" + std::to_string(d) + ": " + std::to_string(d * d) +
                    (complete ? " found" : " INCOMPLETE") + ", max res " + sci(worst) + "; ";
    }
    return o;
}

Outcome three_variables() {
    const auto sys = dense({3, 3, 3}, 500);
    const auto qs = compute_quotient_system(sys, BasisStrategy::qr_pivot());
    SolveOptions options;
    options.seed = 500;
    const auto sols = extract_solutions(sys, qs, options);
    double worst_comm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            worst_comm = std::max(worst_comm, commutator_metric(qs, i, j));
        }
    }
    const bool pass = sols.size() == 27 && sols.max_residual <= 1e-8 && worst_comm <= 1e-10;
    return {pass, std::to_string(sols.size()) + " solutions, max residual " +
                      sci(sols.max_residual) + ", worst commutator " + sci(worst_comm)};
}

Outcome nullity_theorem() {
    Outcome o;
    const std::vector<std::vector<unsigned>> tuples{{2, 3}, {4, 4}, {2, 2, 2}};
    int checked = 0;
    for (const auto& degs : tuples) {
        for (int s = 0; s < 5; ++s) {
            const auto mac = build_macaulay(dense(degs, 600 + s));
            const auto null = static_cast<unsigned long long>(nullity(mac.matrix, 1e-8));
            const auto expected = bezout_number(degs);
            ++checked;
            if (null != expected) {
                o.pass = false;
                o.detail += "degrees " + std::to_string(degs.size()) + "-tuple seed " +
                            std::to_string(600 + s) + ": nullity " + std::to_string(null) +
                            " != " + std::to_string(expected) + "; ";
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(checked) + " Macaulay matrices, nullity = Bezout number in all";
    }
    return o;
}

Outcome root_vectors() {
    double worst = 0.0;
    std::size_t points = 0;
    for (const auto& c : residual_cases()) {
        if (c.degree > 10) {
            continue;
        }
        const auto mac = build_macaulay(c.system);
        const ComplexMatrix M = mac.matrix.cast<Complex>();
        const double mnorm = mac.matrix.norm();
        for (const auto& z : c.solutions.points) {
            const ComplexVector v = root_vector(z, mac.col_monomials);
            worst = std::max(worst, (M * v).norm() / (mnorm * v.norm()));
            ++points;
        }
    }
    return {points > 0 && worst <= 1e-8,
            std::to_string(points) + " roots, max ||Mv||/(||M||_F ||v||) = " + sci(worst)};
}

Outcome newton_refinement() {
    double worst_before = 0.0;
    double worst_after = 0.0;
    int systems = 0;
    for (const auto& c : residual_cases()) {
        if (c.degree != 10) {
            continue;
        }
        const auto refined = refine_solutions(c.system, c.solutions, 1);
        worst_before = std::max(worst_before, c.solutions.max_residual);
        worst_after = std::max(worst_after, refined.max_residual);
        ++systems;
    }
    return {systems > 0 && worst_after <= 1e-13,
            std::to_string(systems) + " degree-10 systems, max residual " + sci(worst_before) +
                " -> " + sci(worst_after)};
}

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

Outcome property_suites() {
    Outcome o;
    const int cases = 100;

    // Pivoted QR: monotone diagonal, orthogonality, reconstruction.
    int qr_fail = 0;
    std::mt19937_64 sizes(9);
    std::uniform_int_distribution<Index> rows_dist(1, 200);
    std::uniform_int_distribution<Index> cols_dist(1, 150);
    for (int k = 0; k < cases; ++k) {
        const Index m = rows_dist(sizes);
        const Index n = cols_dist(sizes);
        const Matrix A = random_matrix(m, n, 10000 + k);
        const auto qr = qr_pivoted(A);
        Matrix AP(m, n);
        for (Index j = 0; j < n; ++j) {
            AP.col(j) = A.col(qr.perm[static_cast<std::size_t>(j)]);
        }
        bool ok = (qr.Q.transpose() * qr.Q - Matrix::Identity(m, m)).norm() <= 1e-12 * m &&
                  (AP - qr.Q * qr.R).norm() <= 1e-12 * A.norm();
        for (Index i = 1; i < std::min(m, n); ++i) {
            ok = ok && std::abs(qr.R(i - 1, i - 1)) >= std::abs(qr.R(i, i));
        }
        qr_fail += ok ? 0 : 1;
    }

    // Solver properties on small random systems.
    int eig_fail = 0;
    int conj_fail = 0;
    int strategy_fail = 0;
    for (int k = 0; k < cases; ++k) {
        const std::size_t n = k % 4 == 3 ? 3 : 2;
        std::vector<unsigned> degs;
        if (n == 2) {
            degs = {1u + static_cast<unsigned>(k % 6), 1u + static_cast<unsigned>((k / 6) % 6)};
        } else {
            degs = {1u + static_cast<unsigned>(k % 3), 2, 1u + static_cast<unsigned>((k / 3) % 3)};
        }
        const auto sys = random_dense_system(n, degs, 20000 + k);
        const auto qs = compute_quotient_system(sys, BasisStrategy::qr_pivot());
        SolveOptions options;
        options.seed = k;
        const auto sols = extract_solutions(sys, qs, options);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<Complex> coords;
            for (const auto& p : sols.points) {
                coords.push_back(p[v]);
            }
            if (testutil::multiset_distance(coords, eigenvalues(qs.mult_matrices[v])) > 1e-6) {
                ++eig_fail;
                break;
            }
        }
        if (testutil::multiset_distance(sols.points, testutil::conjugated(sols.points)) > 1e-6) {
            ++conj_fail;
        }

        // Strategy consistency: bivariate, degrees <= 6.
        const std::vector<unsigned> bdegs{1u + static_cast<unsigned>(k % 6),
                                          1u + static_cast<unsigned>((k / 6 + k) % 6)};
        const auto bsys = random_dense_system(2, bdegs, 30000 + k);
        const auto qr = compute_quotient_system(bsys, BasisStrategy::qr_pivot());
        const auto block = compute_quotient_system(bsys, BasisStrategy::fixed(block_basis(bdegs)));
        for (std::size_t v = 0; v < 2; ++v) {
            if (testutil::multiset_distance(eigenvalues(qr.mult_matrices[v]),
                                           eigenvalues(block.mult_matrices[v])) > 1e-6) {
                ++strategy_fail;
                break;
            }
        }
    }
    o.pass = qr_fail == 0 && eig_fail == 0 && conj_fail == 0 && strategy_fail == 0;
    o.detail = "failures out of 100 each: pivoted QR " + std::to_string(qr_fail) +
               ", eigenvalue/coordinate " + std::to_string(eig_fail) + ", conjugate closure " +
               std::to_string(conj_fail) + ", strategy consistency " +
               std::to_string(strategy_fail);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked-example exactness", 1.0, worked_example},
        {2, "commutator metric, degrees (7,6)", 5.0, commutator_seven_six},
        {3, "condition-number separation, degrees (10,10)", 30.0, condition_separation},
        {4, "residual scaling, degrees 5/10/15/20", 120.0, residual_scaling},
        {5, "three variables, degrees (3,3,3)", 30.0, three_variables},
        {6, "Macaulay nullity equals Bezout number", 30.0, nullity_theorem},
        {7, "root vectors span the null space", 0.0, root_vectors},
        {8, "one Newton sweep reaches machine precision", 0.0, newton_refinement},
        {9, "property suites", 0.0, property_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_seconds > 0 && secs >= c.time_limit_seconds) {
            o.pass = false;
            o.detail += " [over time limit " + fmt("%.0f", c.time_limit_seconds) + " s]";
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s  criterion %d: %s -- %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
