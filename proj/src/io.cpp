#include "polycert/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace polycert {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

// Non-empty, comment-stripped lines split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  const Line& next(std::string_view expecting) {
    if (pos_ >= lines_.size()) throw ParseError("unexpected end of input, expected " + std::string(expecting), last_line());
    return lines_[pos_++];
  }
  bool done() const { return pos_ >= lines_.size(); }
  std::size_t last_line() const { return lines_.empty() ? 0 : lines_[std::min(pos_, lines_.size() - 1)].number; }
  const Line& peek() const { return lines_[pos_]; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

unsigned long parse_count(const std::string& tok, std::size_t line, std::string_view what) {
  unsigned long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + tok + "'", line);
  }
  return v;
}

}  // namespace

Scalar parse_coordinate(std::string_view re, std::string_view im, const NumberContext& ctx, std::size_t line) {
  try {
    if (ctx.arithmetic == Arithmetic::rational) {
      for (std::string_view tok : {re, im}) {
        if (!is_rational_token(tok)) {
          throw ParseError("token '" + std::string(tok) + "' is not an integer or p/q (rational mode)", line);
        }
      }
      return GaussianRational{parse_rational(re), parse_rational(im)};
    }
    return BigComplex(BigFloat::parse(re, ctx.precision), BigFloat::parse(im, ctx.precision));
  } catch (const ParseError& e) {
    if (e.line() != 0 || line == 0) throw;
    throw ParseError(e.what(), line);
  }
}

ParsedSystem parse_system(std::string_view text, const NumberContext& ctx) {
  Cursor cur(tokenize(text));
  const Line& header = cur.next("'n N' header");
  if (header.tokens.size() != 2) throw ParseError("header must hold 'n N'", header.number);
  const std::size_t n = parse_count(header.tokens[0], header.number, "variable count");
  const std::size_t big_n = parse_count(header.tokens[1], header.number, "polynomial count");
  if (n == 0) throw ParseError("variable count must be positive", header.number);
  if (big_n == 0) throw ParseError("polynomial count must be positive", header.number);

  ParsedSystem out;
  std::vector<Polynomial> polys;
  polys.reserve(big_n);
  for (std::size_t p = 0; p < big_n; ++p) {
    const Line& count_line = cur.next("term count");
    if (count_line.tokens.size() != 1) throw ParseError("term count line must hold one integer", count_line.number);
    const std::size_t m = parse_count(count_line.tokens[0], count_line.number, "term count");
    std::vector<Monomial> terms;
    std::vector<std::size_t> term_lines;
    for (std::size_t t = 0; t < m; ++t) {
      const Line& term = cur.next("term line");
      if (term.tokens.size() != n + 2) {
        throw ParseError("term line needs " + std::to_string(n) + " exponents and 2 coefficient tokens", term.number);
      }
      Exponents exps(n);
      for (std::size_t j = 0; j < n; ++j) {
        exps[j] = static_cast<unsigned>(parse_count(term.tokens[j], term.number, "exponent"));
      }
      Scalar c = parse_coordinate(term.tokens[n], term.tokens[n + 1], ctx, term.number);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        if (terms[k].exponents == exps) {
          throw ParseError("duplicate exponent vector (first seen on line " + std::to_string(term_lines[k]) + ")",
                           term.number);
        }
      }
      if (c.is_zero()) {
        out.warnings.push_back("line " + std::to_string(term.number) + ": zero coefficient, term dropped");
      }
      terms.push_back({std::move(exps), std::move(c)});
      term_lines.push_back(term.number);
    }
    polys.emplace_back(n, std::move(terms));
  }
  if (!cur.done()) throw ParseError("trailing content after the last polynomial", cur.peek().number);
  out.system = PolynomialSystem(n, std::move(polys), ctx);
  return out;
}

ParsedSystem parse_system_file(const std::filesystem::path& path, const NumberContext& ctx) {
  return parse_system(read_text_file(path), ctx);
}

std::vector<Point> parse_points(std::string_view text, std::size_t variables, const NumberContext& ctx) {
  Cursor cur(tokenize(text));
  const Line& header = cur.next("point count");
  if (header.tokens.size() != 1) throw ParseError("first line must hold the point count", header.number);
  const std::size_t k = parse_count(header.tokens[0], header.number, "point count");
  std::vector<Point> points;
  points.reserve(k);
  for (std::size_t p = 0; p < k; ++p) {
    Point x;
    x.reserve(variables);
    for (std::size_t j = 0; j < variables; ++j) {
      if (cur.done()) {
        throw ParseError("expected " + std::to_string(k) + " points, found " + std::to_string(p), cur.last_line());
      }
      const Line& line = cur.next("coordinate");
      if (line.tokens.size() != 2) throw ParseError("coordinate line must hold 're im'", line.number);
      x.push_back(parse_coordinate(line.tokens[0], line.tokens[1], ctx, line.number));
    }
    points.push_back(std::move(x));
  }
  if (!cur.done()) {
    throw ParseError("more coordinates than " + std::to_string(k) + " points of dimension " + std::to_string(variables),
                     cur.peek().number);
  }
  return points;
}

std::vector<Point> parse_points_file(const std::filesystem::path& path, std::size_t variables,
                                     const NumberContext& ctx) {
  return parse_points(read_text_file(path), variables, ctx);
}

std::string serialize_system(const PolynomialSystem& f) {
  std::ostringstream out;
  out << f.variables() << ' ' << f.equations() << '\n';
  for (const Polynomial& p : f.polys()) {
    out << '\n' << p.terms().size() << '\n';
    for (const Monomial& m : p.terms()) {
      for (unsigned e : m.exponents) out << e << ' ';
      out << m.coefficient.to_string() << '\n';
    }
  }
  return out.str();
}

std::string serialize_points(const std::vector<Point>& points) {
  std::ostringstream out;
  out << points.size() << '\n';
  for (const Point& x : points) {
    out << '\n';
    for (const Scalar& c : x) out << c.to_string() << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polycert
