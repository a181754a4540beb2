#include "polycert/overdet.hpp"

#include "polycert/random.hpp"

namespace polycert {

std::size_t exact_rank(const Matrix& m) {
  Matrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(rank, pivot);
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar factor = a(r, col) / a(rank, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= factor * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

namespace {

Matrix draw_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, bool real_mode) {
  Matrix m(rows, cols, Scalar(GaussianRational{}));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Rational re = rng.rational();
      Rational im = real_mode ? Rational(0) : rng.rational();
      m(i, j) = GaussianRational{re, im};
    }
  }
  return m;
}

PolynomialSystem expand(const PolynomialSystem& f, const Matrix& r) {
  const NumberContext& ctx = f.context();
  std::vector<Polynomial> polys;
  polys.reserve(r.rows());
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::vector<Monomial> terms;
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const GaussianRational& entry = r(i, j).exact();
      Scalar c = Scalar::from_rational(entry.re, entry.im, ctx);
      for (const Monomial& m : f.polys()[j].terms()) terms.push_back({m.exponents, m.coefficient * c});
    }
    polys.push_back(Polynomial::combine(f.variables(), std::move(terms)));
  }
  return PolynomialSystem(f.variables(), std::move(polys), ctx);
}

OverdetVerdict make(OverdetVerdict::Kind kind, unsigned rounds, std::vector<CertInfo> infos) {
  OverdetVerdict v;
  v.kind = kind;
  v.rounds = rounds;
  v.infos = std::move(infos);
  return v;
}

}  // namespace

SquareSubsystems random_square_subsystems(const PolynomialSystem& f, unsigned count, std::uint64_t seed,
                                          bool real_mode) {
  if (!f.is_overdetermined()) throw UsageError("square subsystems need an overdetermined system (N > n)");
  if (count < 2) throw UsageError("at least two square subsystems are required");
  SquareSubsystems out;
  out.randomization.seed = seed;
  out.randomization.real_mode = real_mode;
  SplitMix64 rng(seed);
  while (out.systems.size() < count) {
    Matrix r = draw_matrix(rng, f.variables(), f.equations(), real_mode);
    if (exact_rank(r) != f.variables()) continue;
    PolynomialSystem sub = expand(f, r);
    // Cancellation down to a zero polynomial is a measure-zero event; redraw.
    if (sub.has_zero_polynomial()) continue;
    out.randomization.matrices.push_back(std::move(r));
    out.systems.push_back(std::move(sub));
  }
  return out;
}

OverdetVerdict overdet_certify_point(const SquareSubsystems& subsystems, const Point& x, const OverdetOptions& options) {
  using Kind = OverdetVerdict::Kind;
  const auto& systems = subsystems.systems;
  const unsigned slack = options.iteration.sqrt_slack;

  std::vector<CertInfo> initial;
  initial.reserve(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    initial.push_back(compute_abg(systems[i], x));
    if (!passes_alpha_test(initial.back())) {
      OverdetVerdict v = make(Kind::not_certified, 0, std::move(initial));
      v.subsystem = i;
      return v;
    }
  }

  std::vector<Point> tracks(systems.size(), x);
  std::vector<CertInfo> infos = initial;
  for (unsigned round = 0;; ++round) {
    std::vector<Rational> u;
    u.reserve(systems.size());
    for (std::size_t i = 0; i < systems.size(); ++i) {
      if (round > 0) infos[i] = compute_abg(systems[i], tracks[i]);
      if (!infos[i].beta_sq.is_finite()) {
        OverdetVerdict v = make(Kind::undecided, round, std::move(initial));
        v.subsystem = i;
        v.reason = "singular Jacobian on a subsystem track";
        return v;
      }
      u.push_back(sqrt_upper_bound(infos[i].beta_sq.value().to_rational(), slack));
    }

    bool all_within = true;
    std::pair<std::size_t, std::size_t> first_open{0, 0};
    for (std::size_t i = 0; i < systems.size(); ++i) {
      for (std::size_t j = i + 1; j < systems.size(); ++j) {
        Rational gap_sq = norm_sq_vector(subtract(tracks[i], tracks[j])).to_rational();
        Rational spread = u[i] + u[j];
        if (gap_sq > Rational(4) * spread * spread) {
          OverdetVerdict v = make(Kind::distinct_roots, round, std::move(initial));
          v.pair = {i, j};
          return v;
        }
        Rational w = sqrt_upper_bound(gap_sq, slack);
        if (!(w + Rational(2) * spread < options.delta) && all_within) {
          all_within = false;
          first_open = {i, j};
        }
      }
    }
    if (all_within) {
      OverdetVerdict v = make(Kind::within_delta, round, std::move(initial));
      v.pair = {0, 1};
      return v;
    }

    if (round >= options.iteration.newton_cap) {
      OverdetVerdict v = make(Kind::undecided, round, std::move(initial));
      v.pair = first_open;
      v.reason = "iteration cap";
      return v;
    }
    try {
      for (std::size_t i = 0; i < systems.size(); ++i) {
        tracks[i] = scheduled_newton_step(systems[i], tracks[i], options.iteration.schedule);
      }
    } catch (const PrecisionCeiling&) {
      OverdetVerdict v = make(Kind::undecided, round, std::move(initial));
      v.reason = "precision ceiling";
      v.precision_exhausted = true;
      return v;
    }
  }
}

OverdetResult overdet_certify(const PolynomialSystem& f, const std::vector<Point>& points,
                              const OverdetOptions& options) {
  if (sgn(options.delta) <= 0) throw UsageError("delta must be positive");
  OverdetResult result;
  result.subsystems = random_square_subsystems(f, options.count, options.seed, has_real_coefficients(f));
  result.verdicts.reserve(points.size());
  for (const Point& x : points) result.verdicts.push_back(overdet_certify_point(result.subsystems, x, options));
  return result;
}

std::string to_string(OverdetVerdict::Kind kind) {
  switch (kind) {
    case OverdetVerdict::Kind::within_delta:
      return "within-delta";
    case OverdetVerdict::Kind::distinct_roots:
      return "distinct-roots";
    case OverdetVerdict::Kind::not_certified:
      return "not-certified";
    case OverdetVerdict::Kind::undecided:
      return "undecided";
  }
  return "unknown";
}

}  // namespace polycert
