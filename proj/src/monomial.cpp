#include "macnf/monomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "macnf/errors.hpp"

namespace macnf {

Monomial::Monomial(std::vector<unsigned> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0u)) {}

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::vector<unsigned>(exponents)) {}

Monomial Monomial::one(std::size_t nvars) {
    return Monomial(std::vector<unsigned>(nvars, 0u));
}

Monomial Monomial::variable(std::size_t nvars, std::size_t var) {
    return one(nvars).times_variable(var);
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (other.nvars() != nvars()) {
        throw InvalidArgument("monomial product: variable count mismatch");
    }
    Monomial out = *this;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        out.exponents_[i] += other.exponents_[i];
    }
    out.degree_ += other.degree_;
    return out;
}

Monomial Monomial::times_variable(std::size_t var) const {
    if (var >= nvars()) {
        throw InvalidArgument("variable index out of range");
    }
    Monomial out = *this;
    ++out.exponents_[var];
    ++out.degree_;
    return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) {
        return c;
    }
    // Larger exponent vector (lexicographically) sorts first within a degree.
    return std::lexicographical_compare_three_way(b.exponents_.begin(), b.exponents_.end(),
                                                  a.exponents_.begin(), a.exponents_.end());
}

std::string Monomial::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (exponents_[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += 'x' + std::to_string(i + 1);
        if (exponents_[i] > 1) {
            out += '^' + std::to_string(exponents_[i]);
        }
    }
    return out.empty() ? "1" : out;
}

namespace {

// Appends every exponent vector with `remaining` spread over positions
// [pos, n), largest power of the leading variable first.
void fill_degree(std::vector<unsigned>& current, std::size_t pos, unsigned remaining,
                 std::vector<Monomial>& out) {
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        out.emplace_back(current);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
    if (nvars == 0) {
        throw InvalidArgument("monomials need at least one variable");
    }
    std::vector<Monomial> out;
    std::vector<unsigned> current(nvars, 0u);
    fill_degree(current, 0, degree, out);
    return out;
}

std::vector<Monomial> enumerate_monomials(std::size_t nvars, unsigned max_degree) {
    std::vector<Monomial> out;
    out.reserve(binomial(max_degree + nvars, nvars));
    for (unsigned d = 0; d <= max_degree; ++d) {
        auto layer = monomials_of_degree(nvars, d);
        out.insert(out.end(), std::make_move_iterator(layer.begin()),
                   std::make_move_iterator(layer.end()));
    }
    return out;
}

unsigned long long binomial(unsigned long long n, unsigned long long k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned long long result = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        const unsigned long long factor = n - k + i;
        if (result > std::numeric_limits<unsigned long long>::max() / factor) {
            throw InvalidArgument("binomial coefficient overflows 64 bits");
        }
        result = result * factor / i;
    }
    return result;
}

}  // namespace macnf
