#include "macnf/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "macnf/errors.hpp"

namespace macnf {

namespace {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial out(nvars_);
        skip_ws();
        if (at_end()) {
            throw ParseError("empty expression", pos_);
        }
        double sign = 1.0;
        // A leading sign belongs to the first term.
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        term(out, sign);
        while (true) {
            skip_ws();
            if (at_end()) {
                break;
            }
            const char op = peek();
            if (op != '+' && op != '-') {
                throw ParseError(std::string("expected '+' or '-', found '") + op + "'", pos_);
            }
            ++pos_;
            term(out, op == '-' ? -1.0 : 1.0);
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }

    void term(Polynomial& out, double sign) {
        skip_ws();
        if (at_end()) {
            throw ParseError("expected a term", pos_);
        }
        double coeff = 1.0;
        std::vector<unsigned> exps(nvars_, 0u);
        bool need_factor = true;
        if (peek() != 'x') {
            coeff = number();
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
            } else {
                need_factor = false;
            }
        }
        skip_ws();
        if (need_factor || (!at_end() && peek() == 'x')) {
            factor(exps);
            while (true) {
                skip_ws();
                if (at_end() || peek() != '*') {
                    break;
                }
                ++pos_;
                factor(exps);
            }
        }
        out.add_term(Monomial(std::move(exps)), sign * coeff);
    }

    double number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) {
            ++end;
        }
        const std::size_t digits_start = end;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) {
            ++end;
        }
        if (end == digits_start) {
            throw ParseError("expected a coefficient or variable", start);
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) {
                ++e;
            }
            if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                    ++e;
                }
                end = e;
            }
        }
        // from_chars rejects a leading '+'.
        const std::size_t parse_from = text_[start] == '+' ? start + 1 : start;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + parse_from, text_.data() + end, value);
        if (ec != std::errc() || ptr != text_.data() + end) {
            throw ParseError("malformed number '" + std::string(text_.substr(start, end - start)) +
                                 "'",
                             start);
        }
        if (!std::isfinite(value)) {
            throw ParseError("coefficient is not finite", start);
        }
        pos_ = end;
        return value;
    }

    unsigned integer(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc()) {
            throw ParseError(std::string("expected ") + what, start);
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    void factor(std::vector<unsigned>& exps) {
        skip_ws();
        if (at_end() || peek() != 'x') {
            throw ParseError("expected variable 'x<index>'", pos_);
        }
        ++pos_;
        const std::size_t index_pos = pos_;
        const unsigned index = integer("variable index");
        if (index == 0 || index > nvars_) {
            throw ParseError("variable x" + std::to_string(index) + " out of range (nvars = " +
                                 std::to_string(nvars_) + ")",
                             index_pos);
        }
        unsigned power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            power = integer("exponent");
        }
        exps[index - 1] += power;
    }

    std::string_view text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string format_coefficient(double c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return buf;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
    if (nvars == 0) {
        throw InvalidArgument("nvars must be positive");
    }
    return ExpressionParser(text, nvars).parse();
}

std::string format_polynomial(const Polynomial& f) {
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    // Highest degree first reads naturally.
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const double mag = std::abs(c);
        if (m.degree() == 0) {
            out += format_coefficient(mag);
        } else if (mag == 1.0) {
            out += m.to_string();
        } else {
            out += format_coefficient(mag) + "*" + m.to_string();
        }
        first = false;
    }
    return out;
}

PolySystem parse_system(std::string_view text) {
    std::size_t nvars = 0;
    bool have_header = false;
    std::vector<Polynomial> polys;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t nl = text.find('\n', offset);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(offset, nl - offset);
        const std::size_t line_start = offset;
        offset = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const std::string_view body = strip(line);
        if (body.empty()) {
            continue;
        }
        if (!have_header) {
            const auto eq = body.find('=');
            if (eq == std::string_view::npos || strip(body.substr(0, eq)) != "nvars") {
                throw ParseError("line " + std::to_string(line_no) + ": expected 'nvars = n'",
                                 line_start);
            }
            const auto value = strip(body.substr(eq + 1));
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), nvars);
            if (ec != std::errc() || ptr != value.data() + value.size() || nvars == 0) {
                throw ParseError("line " + std::to_string(line_no) + ": invalid variable count",
                                 line_start);
            }
            have_header = true;
            continue;
        }
        try {
            polys.push_back(parse_polynomial(body, nvars));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                             line_start + e.position());
        }
    }
    if (!have_header) {
        throw ParseError("missing 'nvars = n' header", 0);
    }
    if (polys.size() != nvars) {
        throw InvalidArgument("system declares " + std::to_string(nvars) + " variables but has " +
                              std::to_string(polys.size()) + " equations");
    }
    return PolySystem(std::move(polys));
}

PolySystem read_system_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open system file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

std::string format_system(const PolySystem& system) {
    std::string out = "nvars = " + std::to_string(system.nvars()) + "\n";
    for (const auto& f : system.polys()) {
        out += format_polynomial(f);
        out += '\n';
    }
    return out;
}

void write_system_file(const std::filesystem::path& path, const PolySystem& system) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write system file '" + path.string() + "'");
    }
    out << format_system(system);
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

}  // namespace macnf
