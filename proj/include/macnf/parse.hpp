#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "macnf/polynomial.hpp"

namespace macnf {

/// Parses an ASCII polynomial expression in the variables x1..x{nvars}.
///
///   expression  := term (('+'|'-') term)*
///   term        := [coefficient ['*']] factor ('*' factor)*  |  coefficient
///   factor      := 'x' index ['^' exponent]
///
/// Coefficients are decimal literals with optional sign and exponent
/// ("-1.5e-3"). Whitespace is ignored. Like terms are collected and exact
/// zeros dropped, so "0*x1 + 0" yields the zero polynomial.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

/// Inverse of parse_polynomial. Coefficients are written with 17
/// significant digits so that parsing the output reproduces them exactly.
std::string format_polynomial(const Polynomial& f);

/// System file: first non-comment line "nvars = n", then one polynomial per
/// non-empty line. '#' starts a comment running to end of line.
PolySystem parse_system(std::string_view text);
PolySystem read_system_file(const std::filesystem::path& path);

std::string format_system(const PolySystem& system);
void write_system_file(const std::filesystem::path& path, const PolySystem& system);

}  // namespace macnf
