#include "macnf/macaulay.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "macnf/errors.hpp"

namespace macnf {

namespace {

void require_degrees(std::span<const unsigned> degrees, const char* what) {
    if (degrees.empty()) {
        throw InvalidArgument(std::string(what) + ": empty degree list");
    }
    if (std::any_of(degrees.begin(), degrees.end(), [](unsigned d) { return d == 0; })) {
        throw InvalidArgument(std::string(what) + ": every degree must be at least 1");
    }
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 0;
        for (unsigned e : m.exponents()) {
            h = h * 1000003u + e;
        }
        return h;
    }
};

}  // namespace

unsigned macaulay_degree(std::span<const unsigned> degrees) {
    require_degrees(degrees, "macaulay_degree");
    const unsigned sum = std::accumulate(degrees.begin(), degrees.end(), 0u);
    return sum - static_cast<unsigned>(degrees.size() - 1);
}

unsigned long long bezout_number(std::span<const unsigned> degrees) {
    require_degrees(degrees, "bezout_number");
    unsigned long long n = 1;
    for (unsigned d : degrees) {
        n *= d;
    }
    return n;
}

std::vector<Monomial> macaulay_columns(std::size_t nvars, unsigned t) {
    std::vector<Monomial> cols;
    cols.reserve(binomial(t + nvars, nvars));
    for (unsigned d = t + 1; d-- > 0;) {
        auto layer = monomials_of_degree(nvars, d);
        cols.insert(cols.end(), std::make_move_iterator(layer.begin()),
                    std::make_move_iterator(layer.end()));
    }
    return cols;
}

Index MacaulayMatrix::column_of(const Monomial& m) const {
    // Columns are grouped by descending degree, canonical order inside a
    // degree, so the position follows from counts alone.
    const std::size_t n = m.nvars();
    if (n == 0 || m.degree() > t || col_monomials.empty() || n != col_monomials.front().nvars()) {
        return -1;
    }
    auto first = col_monomials.begin();
    // Skip the layers of degree > deg(m).
    const unsigned long long before =
        binomial(t + n, n) - binomial(static_cast<unsigned long long>(m.degree()) + n, n);
    first += static_cast<std::ptrdiff_t>(before);
    const auto last = first + static_cast<std::ptrdiff_t>(
                                  binomial(static_cast<unsigned long long>(m.degree()) + n - 1,
                                           n - 1));
    auto it = std::lower_bound(first, last, m);
    if (it == last || *it != m) {
        return -1;
    }
    return static_cast<Index>(it - col_monomials.begin());
}

MacaulayMatrix build_macaulay(const PolySystem& system) {
    const std::size_t n = system.nvars();
    const auto& degrees = system.degrees();
    MacaulayMatrix mac;
    mac.t = macaulay_degree(degrees);
    mac.col_monomials = macaulay_columns(n, mac.t);
    mac.split = static_cast<Index>(binomial(mac.t + n - 1, n - 1));

    std::unordered_map<Monomial, Index, MonomialHash> index;
    index.reserve(mac.col_monomials.size());
    for (std::size_t j = 0; j < mac.col_monomials.size(); ++j) {
        index.emplace(mac.col_monomials[j], static_cast<Index>(j));
    }

    Index total_rows = 0;
    mac.row_shifts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        mac.row_shifts.push_back(enumerate_monomials(n, mac.t - degrees[i]));
        total_rows += static_cast<Index>(mac.row_shifts.back().size());
    }

    mac.matrix = Matrix::Zero(total_rows, static_cast<Index>(mac.col_monomials.size()));
    Index row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& shift : mac.row_shifts[i]) {
            for (const auto& [m, c] : system[i].terms()) {
                mac.matrix(row, index.at(m * shift)) = c;
            }
            ++row;
        }
    }
    return mac;
}

ComplexVector root_vector(std::span<const Complex> z, std::span<const Monomial> col_monomials) {
    ComplexVector v(static_cast<Index>(col_monomials.size()));
    unsigned max_deg = 0;
    for (const auto& m : col_monomials) {
        if (m.nvars() != z.size()) {
            throw InvalidArgument("root_vector: point dimension does not match monomials");
        }
        max_deg = std::max(max_deg, m.degree());
    }
    std::vector<std::vector<Complex>> powers(z.size(), std::vector<Complex>(max_deg + 1, 1.0));
    for (std::size_t k = 0; k < z.size(); ++k) {
        for (unsigned e = 1; e <= max_deg; ++e) {
            powers[k][e] = powers[k][e - 1] * z[k];
        }
    }
    for (std::size_t j = 0; j < col_monomials.size(); ++j) {
        Complex value = 1.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            value *= powers[k][col_monomials[j][k]];
        }
        v(static_cast<Index>(j)) = value;
    }
    return v;
}

void write_macaulay_csv(std::ostream& out, const MacaulayMatrix& mac) {
    out << "shift";
    for (const auto& m : mac.col_monomials) {
        out << ',' << m.to_string();
    }
    out << '\n';
    char buf[32];
    Index row = 0;
    for (std::size_t i = 0; i < mac.row_shifts.size(); ++i) {
        for (const auto& shift : mac.row_shifts[i]) {
            const std::string f = "f" + std::to_string(i + 1);
            out << (shift.degree() == 0 ? f : shift.to_string() + "*" + f);
            for (Index j = 0; j < mac.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", mac.matrix(row, j));
                out << ',' << buf;
            }
            out << '\n';
            ++row;
        }
    }
}

}  // namespace macnf
