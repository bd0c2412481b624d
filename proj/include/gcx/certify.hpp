#ifndef GCX_CERTIFY_HPP
#define GCX_CERTIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcx/reduce.hpp"

namespace gcx {

// Weighted Iverson sum over omega-sign alternations:
// sum_{1 <= j < n} [omega(v_j) omega(v_{j+1}) < 0] * j.
// Brackets at j > n-k must be zero under the positivity invariant; a
// nonzero one is an internal error.
long pr_two(const ExactMatrix& m, const Functional& omega);

// Explicit k = 1 base: pr(M_s) = number of sign alternations between
// consecutive entries. Values lie in [0, n-1] and satisfy both prerank
// axioms along any k = 1 convex sequence.
std::vector<long> base_prerank_k1(const ConvexSeq& seq);

// Externally supplied base prerank (e.g. a sharper k = 2 construction).
// `eval` must return one value per derived matrix of the sequence; `range`
// bounds the values and becomes r_minus one level up.
struct BasePrerank {
  int base_k = 1;
  long range = 0;
  std::function<std::vector<long>(const ConvexSeq&)> eval;
};

// One recursion level of a prerank certificate. Indices below refer to the
// refined sequence at this level.
struct Certificate {
  int k = 0, n = 0;
  ConvexSeq refined;
  std::vector<int> splits;     // pieces per input move
  std::vector<int> input_pos;  // refined index of each input matrix
  std::vector<long> pr, pr_one_vals, pr_two_vals;  // per refined matrix

  // k >= 2 only:
  std::vector<Rat> omega;            // k coefficients
  std::vector<MoveType> move_types;  // per refined move
  long r_minus = 0;
  struct Run {
    int first = 0, last = 0;      // refined matrix interval of a type I run
    std::vector<int> down_index;  // downstairs index per run matrix
  };
  std::vector<Run> runs;
  std::vector<Certificate> children;  // one per run

  bool external_base = false;  // produced by a supplied BasePrerank

  // pr at the level's input-sequence matrices.
  long pr_at_input(int i) const { return pr[input_pos[i]]; }
};

// Builds a certificate for a generic convex sequence, recursing down to the
// k = 1 base (or to `base` when supplied and base->base_k is reached).
// Deterministic for a fixed seed. The result passes check_certificate;
// an internal axiom violation is fatal.
Certificate build_certificate(const ConvexSeq& seq, std::uint64_t seed,
                              const BasePrerank* base = nullptr);

struct CheckReport {
  bool ok = true;
  std::string rule;             // violated rule, e.g. "axiom2"
  std::string message;
  std::vector<int> level_path;  // run indices from the root level
  int step = -1;                // refined matrix/move index of the violation

  std::string describe() const;
};

// Independently re-verifies a certificate against the sequence with exact
// arithmetic: refinement validity, omega validity, move types, pr_II and
// downstairs recomputation, both prerank axioms, range containment, and
// nsc(seq) <= pr(M_0) - pr(M_ell). Failures are report outcomes.
CheckReport check_certificate(const ConvexSeq& seq, const Certificate& cert,
                              const BasePrerank* base = nullptr);

}  // namespace gcx

#endif
