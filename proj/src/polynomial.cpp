#include "macnf/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "macnf/errors.hpp"

namespace macnf {

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) {
        throw InvalidArgument("polynomial needs at least one variable");
    }
}

Polynomial::Polynomial(std::size_t nvars, TermMap terms) : Polynomial(nvars) {
    for (auto& [m, c] : terms) {
        add_term(m, c);
    }
}

Polynomial Polynomial::constant(std::size_t nvars, double value) {
    Polynomial p(nvars);
    p.add_term(Monomial::one(nvars), value);
    return p;
}

unsigned Polynomial::degree() const {
    if (terms_.empty()) {
        throw InvalidArgument("degree of the zero polynomial is undefined");
    }
    // Canonical order is graded, so the last term has maximal degree.
    return terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double value) {
    if (m.nvars() != nvars_) {
        throw InvalidArgument("monomial has " + std::to_string(m.nvars()) +
                              " variables, polynomial has " + std::to_string(nvars_));
    }
    if (value == 0.0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0.0) {
            terms_.erase(it);
        }
    }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    if (other.nvars_ != nvars_) {
        throw InvalidArgument("polynomial sum: variable count mismatch");
    }
    Polynomial out = *this;
    for (const auto& [m, c] : other.terms_) {
        out.add_term(m, c);
    }
    return out;
}

Polynomial Polynomial::operator*(double scale) const {
    Polynomial out(nvars_);
    if (scale == 0.0) {
        return out;
    }
    for (const auto& [m, c] : terms_) {
        out.add_term(m, c * scale);
    }
    return out;
}

Polynomial Polynomial::shifted(const Monomial& shift) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
        out.terms_.emplace(m * shift, c);
    }
    return out;
}

Polynomial Polynomial::abs_coefficients() const {
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) {
        c = std::abs(c);
    }
    return out;
}

PolySystem::PolySystem(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    if (polys_.empty()) {
        throw InvalidArgument("system has no equations");
    }
    const std::size_t n = polys_.size();
    degrees_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (polys_[i].nvars() != n) {
            throw InvalidArgument("system is not square: " + std::to_string(n) +
                                  " equations, equation " + std::to_string(i + 1) + " has " +
                                  std::to_string(polys_[i].nvars()) + " variables");
        }
        if (polys_[i].is_zero()) {
            throw InvalidArgument("equation " + std::to_string(i + 1) + " is the zero polynomial");
        }
        const unsigned d = polys_[i].degree();
        if (d == 0) {
            throw InvalidArgument("equation " + std::to_string(i + 1) + " is a nonzero constant");
        }
        degrees_.push_back(d);
    }
}

namespace {

template <typename T>
T evaluate_impl(const Polynomial& f, std::span<const T> z) {
    if (z.size() != f.nvars()) {
        throw InvalidArgument("evaluation point has " + std::to_string(z.size()) +
                              " coordinates, polynomial has " + std::to_string(f.nvars()) +
                              " variables");
    }
    if (f.is_zero()) {
        return T(0);
    }
    const unsigned max_deg = f.degree();
    // powers[v][e] = z_v^e
    std::vector<std::vector<T>> powers(z.size(), std::vector<T>(max_deg + 1, T(1)));
    for (std::size_t v = 0; v < z.size(); ++v) {
        for (unsigned e = 1; e <= max_deg; ++e) {
            powers[v][e] = powers[v][e - 1] * z[v];
        }
    }
    T sum(0);
    for (const auto& [m, c] : f.terms()) {
        T term(c);
        for (std::size_t v = 0; v < z.size(); ++v) {
            if (m[v] != 0) {
                term *= powers[v][m[v]];
            }
        }
        sum += term;
    }
    return sum;
}

}  // namespace

Complex evaluate(const Polynomial& f, std::span<const Complex> z) {
    return evaluate_impl<Complex>(f, z);
}

double evaluate(const Polynomial& f, std::span<const double> x) {
    return evaluate_impl<double>(f, x);
}

Polynomial differentiate(const Polynomial& f, std::size_t var) {
    if (var >= f.nvars()) {
        throw InvalidArgument("derivative variable index " + std::to_string(var + 1) +
                              " out of range");
    }
    Polynomial out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        if (m[var] == 0) {
            continue;
        }
        std::vector<unsigned> e(m.exponents().begin(), m.exponents().end());
        const double power = e[var];
        --e[var];
        out.add_term(Monomial(std::move(e)), power * c);
    }
    return out;
}

PolySystem random_dense_system(std::size_t nvars, std::span<const unsigned> degrees,
                               std::uint64_t seed) {
    if (nvars == 0) {
        throw InvalidArgument("random system needs at least one variable");
    }
    if (degrees.size() != nvars) {
        throw InvalidArgument("expected " + std::to_string(nvars) + " degrees, got " +
                              std::to_string(degrees.size()));
    }
    if (std::any_of(degrees.begin(), degrees.end(), [](unsigned d) { return d == 0; })) {
        throw InvalidArgument("every degree must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Polynomial> polys;
    polys.reserve(nvars);
    for (unsigned d : degrees) {
        Polynomial::TermMap terms;
        for (auto& m : enumerate_monomials(nvars, d)) {
            double c = 0.0;
            while (c == 0.0) {
                c = normal(rng);
            }
            terms.emplace(std::move(m), c);
        }
        polys.emplace_back(nvars, std::move(terms));
    }
    return PolySystem(std::move(polys));
}

double residual(const PolySystem& system, std::span<const Complex> z) {
    const std::size_t n = system.nvars();
    if (z.size() != n) {
        throw InvalidArgument("residual: point has " + std::to_string(z.size()) +
                              " coordinates, system has " + std::to_string(n) + " variables");
    }
    std::vector<double> z_abs(n);
    std::transform(z.begin(), z.end(), z_abs.begin(), [](Complex c) { return std::abs(c); });
    double total = 0.0;
    for (const auto& f : system.polys()) {
        const double num = std::abs(evaluate(f, z));
        const double den = evaluate(f.abs_coefficients(), std::span<const double>(z_abs)) + 1.0;
        total += num / den;
    }
    return total / static_cast<double>(n);
}

NewtonResult newton_refine(const PolySystem& system, std::span<const Complex> z, int max_iters) {
    const std::size_t n = system.nvars();
    if (z.size() != n) {
        throw InvalidArgument("newton_refine: dimension mismatch");
    }
    std::vector<std::vector<Polynomial>> jac;
    jac.reserve(n);
    for (const auto& f : system.polys()) {
        std::vector<Polynomial> row;
        row.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            row.push_back(differentiate(f, v));
        }
        jac.push_back(std::move(row));
    }

    NewtonResult result;
    result.point.assign(z.begin(), z.end());
    result.residual = residual(system, z);

    for (int it = 0; it < max_iters && result.residual > 0.0; ++it) {
        Eigen::MatrixXcd J(n, n);
        Eigen::VectorXcd F(n);
        for (std::size_t i = 0; i < n; ++i) {
            F(i) = evaluate(system[i], result.point);
            for (std::size_t j = 0; j < n; ++j) {
                J(i, j) = evaluate(jac[i][j], result.point);
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
        if (!lu.isInvertible() || lu.rcond() < std::numeric_limits<double>::epsilon()) {
            result.singular_jacobian = true;
            break;
        }
        const Eigen::VectorXcd step = lu.solve(F);
        ComplexPoint next = result.point;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] -= step(i);
        }
        const double r = residual(system, next);
        if (!(r < result.residual)) {
            break;
        }
        result.point = std::move(next);
        result.residual = r;
        result.iterations = it + 1;
    }
    return result;
}

}  // namespace macnf
