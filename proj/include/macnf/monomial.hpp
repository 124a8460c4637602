#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace macnf {

/// Exponent vector x^alpha in n variables.
///
/// The canonical order sorts by total degree first; within one degree the
/// graded-lex leader (largest power of x1) comes first. For n = 2 the
/// ascending sequence is 1, x1, x2, x1^2, x1*x2, x2^2, x1^3, ...
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exponents);
    Monomial(std::initializer_list<unsigned> exponents);

    /// The constant monomial 1 in `nvars` variables.
    static Monomial one(std::size_t nvars);
    /// The monomial x_{var+1} (0-based `var`).
    static Monomial variable(std::size_t nvars, std::size_t var);

    std::size_t nvars() const noexcept { return exponents_.size(); }
    unsigned degree() const noexcept { return degree_; }
    unsigned operator[](std::size_t i) const { return exponents_[i]; }
    std::span<const unsigned> exponents() const noexcept { return exponents_; }

    Monomial operator*(const Monomial& other) const;
    /// Multiply by x_{var+1}.
    Monomial times_variable(std::size_t var) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

    /// "1", "x1", "x1^2*x3", ...
    std::string to_string() const;

private:
    std::vector<unsigned> exponents_;
    unsigned degree_ = 0;
};

/// All monomials in `nvars` variables of total degree <= max_degree in
/// canonical order. Length C(max_degree + nvars, nvars).
std::vector<Monomial> enumerate_monomials(std::size_t nvars, unsigned max_degree);

/// All monomials of total degree exactly `degree`, canonical order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

/// Binomial coefficient C(n, k) as an unsigned 64-bit integer. Throws on overflow.
unsigned long long binomial(unsigned long long n, unsigned long long k);

}  // namespace macnf
