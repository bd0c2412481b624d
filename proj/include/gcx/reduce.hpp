#ifndef GCX_REDUCE_HPP
#define GCX_REDUCE_HPP

#include <cstdint>
#include <vector>

#include "gcx/core.hpp"

namespace gcx {

// A linear form on R^k used to project a (k,n) sequence down to (k-1,n-1).
struct Functional {
  std::vector<Rat> w;  // k coefficients, not all zero

  Rat operator()(const std::vector<Rat>& col) const;
  Rat eval_column(const ExactMatrix& m, int col) const;
};

struct MoveType {
  bool type_two = false;
  int flipped_col = 0;  // for type II, the column whose omega-sign flips

  bool operator==(const MoveType&) const = default;
};

// Downstairs factorization of one upstairs type-I step:
// R1 = apply_move(R0, (j_down, t_down)) * diag(scale), with j_down = 0
// meaning a pure diagonal rescale (upstairs move at j = 1).
struct ReducedStep {
  int j_down = 0;
  Rat t_down;
  std::vector<Rat> scale;  // n-1 strictly positive diagonal entries
};

// Signals that an omega-root coincides with a minor root along some move,
// so the functional has to be re-drawn.
struct CoincidentRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidFunctional : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Picks omega with: omega(v_{s,j}) != 0 for all s,j; omega(v_{0,j}) > 0 for
// j > n-k; and no omega-root coinciding with any minor root along any move.
// Deterministic for a fixed seed. Throws on exhausted retry budget.
Functional choose_functional(const ConvexSeq& seq, std::uint64_t seed);

// Classifies the move between two consecutive matrices.
MoveType classify_move(const ExactMatrix& before, const ExactMatrix& after,
                       const MoveStep& mv, const Functional& omega);

// Splits every move at midpoints between consecutive event roots (over all
// minors and all omega-column observables) so that each resulting move
// carries at most one sign event. Preserves endpoints and nsc.
// Also fills `splits`, the number of pieces each original move became.
ConvexSeq refine(const ConvexSeq& seq, const Functional& omega,
                 std::vector<int>* splits = nullptr);

// Projects M to the (k-1) x (n-1) matrix of reduced vectors
// w_j = omega(v_{j+1}) (v_{j+1}/omega(v_{j+1}) - v_j/omega(v_j)),
// written in the pivot basis of ker omega (drop the coordinate of the
// largest index with nonzero omega coefficient).
ExactMatrix reduce_matrix(const ExactMatrix& m, const Functional& omega);

// Factorizes the downstairs step across one upstairs type-I move and
// verifies the reconstruction R1 = apply_move(R0, ...) * D exactly.
ReducedStep elementary_factor(const ExactMatrix& before,
                              const ExactMatrix& after, const MoveStep& mv,
                              const Functional& omega);

// Applies a positive diagonal column scaling (n entries).
ExactMatrix scale_columns(const ExactMatrix& m, const std::vector<Rat>& d);

// Reduces a maximal type-I run (matrices first..last of `mats`, with the
// corresponding entries of `moves`) to a genuine (k-1, n-1) convex sequence.
// Diagonal scalings are pushed to the right; pure-rescale steps are dropped.
// down_index_of[i] is the downstairs matrix index of mats[first + i].
ConvexSeq reduce_run(const std::vector<ExactMatrix>& mats,
                     const std::vector<MoveStep>& moves, int first, int last,
                     const Functional& omega,
                     std::vector<int>* down_index_of = nullptr);

}  // namespace gcx

#endif
