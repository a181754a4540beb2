#pragma once

// Heuristic validation for overdetermined systems f : C^n -> C^N, N > n.
// Each point is certified against several random square subsystems R_i o f;
// the Newton tracks of those subsystems are then compared either to prove the
// associated solutions differ or to bound their distance by delta.
//
// Nothing here certifies a solution of f itself.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polycert/certify.hpp"
#include "polycert/matrix.hpp"
#include "polycert/polysys.hpp"

namespace polycert {

struct Randomization {
  /// n x N matrices with exact rational (or Gaussian rational) entries.
  std::vector<Matrix> matrices;
  std::uint64_t seed = 0;
  bool real_mode = false;
};

struct SquareSubsystems {
  Randomization randomization;
  std::vector<PolynomialSystem> systems;
};

/// Rank of an exact (rational mode) matrix.
std::size_t exact_rank(const Matrix& m);

/// Draws `count` full-row-rank matrices R_i and expands R_i o f into canonical
/// sparse square systems. Throws UsageError unless N > n and count >= 2.
SquareSubsystems random_square_subsystems(const PolynomialSystem& f, unsigned count, std::uint64_t seed,
                                          bool real_mode);

struct OverdetVerdict {
  enum class Kind { within_delta, distinct_roots, not_certified, undecided };

  Kind kind = Kind::undecided;
  /// Newton rounds used on the subsystem tracks.
  unsigned rounds = 0;
  /// Failing subsystem for not_certified; deciding pair otherwise.
  std::size_t subsystem = 0;
  std::pair<std::size_t, std::size_t> pair{0, 0};
  std::string reason;
  bool precision_exhausted = false;
  /// Per-subsystem certificates at the input point (may be partial).
  std::vector<CertInfo> infos;
};

struct OverdetOptions {
  Rational delta{"1/10000000000"};
  unsigned count = 2;
  std::uint64_t seed = 0;
  IterationOptions iteration;
};

struct OverdetResult {
  SquareSubsystems subsystems;
  std::vector<OverdetVerdict> verdicts;
};

/// Verdict for a single point against prepared subsystems.
OverdetVerdict overdet_certify_point(const SquareSubsystems& subsystems, const Point& x, const OverdetOptions& options);

/// Randomization uses real matrices iff every coefficient of f is real.
OverdetResult overdet_certify(const PolynomialSystem& f, const std::vector<Point>& points,
                              const OverdetOptions& options = {});

std::string to_string(OverdetVerdict::Kind kind);

}  // namespace polycert
