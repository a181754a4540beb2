#pragma once

// Text formats.
//
// System file:
//   n N
//   then for each of the N polynomials:
//     m                      (term count)
//     e_1 ... e_n re im      (m lines)
//
// Points file:
//   k
//   then for each point, n lines "re im".
//
// '#' starts a comment, blank lines are ignored. Rational mode accepts `p`
// and `p/q` tokens only; float mode also accepts decimals `d.dddEe`.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polycert/polysys.hpp"

namespace polycert {

struct ParsedSystem {
  PolynomialSystem system;
  std::vector<std::string> warnings;
};

ParsedSystem parse_system(std::string_view text, const NumberContext& ctx);
ParsedSystem parse_system_file(const std::filesystem::path& path, const NumberContext& ctx);

std::vector<Point> parse_points(std::string_view text, std::size_t variables, const NumberContext& ctx);
std::vector<Point> parse_points_file(const std::filesystem::path& path, std::size_t variables,
                                     const NumberContext& ctx);

/// Canonical text of f in the system grammar; parse_system inverts it exactly.
std::string serialize_system(const PolynomialSystem& f);
/// Points in the points grammar; float coordinates use enough decimal digits
/// to round-trip at their precision.
std::string serialize_points(const std::vector<Point>& points);

/// Parses a number token in the given context (rational or float mode).
Scalar parse_coordinate(std::string_view re, std::string_view im, const NumberContext& ctx, std::size_t line = 0);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace polycert
