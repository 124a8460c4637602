#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "macnf/monomial.hpp"

namespace macnf {

using Complex = std::complex<double>;

/// A point of C^n.
using ComplexPoint = std::vector<Complex>;

/// Sparse multivariate polynomial with real coefficients.
///
/// Terms are kept in canonical monomial order and never hold an exact zero
/// coefficient, so `terms()` is the support S(f).
class Polynomial {
public:
    using TermMap = std::map<Monomial, double>;

    explicit Polynomial(std::size_t nvars);
    Polynomial(std::size_t nvars, TermMap terms);

    static Polynomial constant(std::size_t nvars, double value);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Maximum total degree over the support. Throws for the zero polynomial.
    unsigned degree() const;

    /// Coefficient of `m` (0 when absent).
    double coefficient(const Monomial& m) const;

    /// Adds `value` to the coefficient of `m`, dropping the term if it cancels.
    void add_term(const Monomial& m, double value);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator*(double scale) const;
    /// x^shift * f.
    Polynomial shifted(const Monomial& shift) const;
    /// Every coefficient replaced by its absolute value.
    Polynomial abs_coefficients() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::size_t nvars_;
    TermMap terms_;
};

/// Square system f_1 = ... = f_n = 0 of nonzero polynomials in n variables.
class PolySystem {
public:
    explicit PolySystem(std::vector<Polynomial> polys);

    std::size_t nvars() const noexcept { return polys_.size(); }
    const std::vector<Polynomial>& polys() const noexcept { return polys_; }
    const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
    const std::vector<unsigned>& degrees() const noexcept { return degrees_; }

private:
    std::vector<Polynomial> polys_;
    std::vector<unsigned> degrees_;
};

/// sum_alpha c_alpha z^alpha in complex arithmetic.
Complex evaluate(const Polynomial& f, std::span<const Complex> z);
double evaluate(const Polynomial& f, std::span<const double> x);

/// Formal partial derivative with respect to x_{var+1} (0-based `var`).
Polynomial differentiate(const Polynomial& f, std::size_t var);

/// Dense random system: every coefficient of every monomial of degree <= d_i
/// drawn from N(0, 1), in canonical monomial order, from a generator seeded
/// with `seed`.
PolySystem random_dense_system(std::size_t nvars, std::span<const unsigned> degrees,
                               std::uint64_t seed);

/// Mixed relative/absolute residual of z:
///   r_i = |f_i(z)| / (f_i,abs(|z|) + 1),   r = mean_i r_i
/// where f_i,abs has absolute-valued coefficients and |z| is the
/// componentwise modulus.
double residual(const PolySystem& system, std::span<const Complex> z);

struct NewtonResult {
    ComplexPoint point;
    double residual = 0.0;
    int iterations = 0;
    bool singular_jacobian = false;
};

/// Newton's method on the square system. Stops after `max_iters` steps, or
/// earlier when an iterate does not decrease the residual (that iterate is
/// discarded). The returned point never has a larger residual than `z`.
NewtonResult newton_refine(const PolySystem& system, std::span<const Complex> z,
                           int max_iters);

}  // namespace macnf
