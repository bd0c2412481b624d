#ifndef GCX_CORE_HPP
#define GCX_CORE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

// Thrown when an argument violates a documented precondition.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an internal invariant fails; indicates a bug, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// A k x n matrix of exact rationals. Columns are the vectors v_1..v_n.
// All indices in the public interface are 1-based.
class ExactMatrix {
 public:
  ExactMatrix(int k, int n);
  ExactMatrix(int k, int n, std::vector<Rat> row_major);

  int k() const { return k_; }
  int n() const { return n_; }

  const Rat& at(int row, int col) const;
  Rat& at(int row, int col);

  // Column col as a k-vector.
  std::vector<Rat> column(int col) const;

  bool operator==(const ExactMatrix& o) const = default;

 private:
  int k_, n_;
  std::vector<Rat> e_;  // row-major
};

// A positive elementary move: v_j <- v_j + t v_{j+1}, t > 0.
struct MoveStep {
  int j = 0;  // 1-based, 1 <= j <= n-1
  Rat t;      // strictly positive

  bool operator==(const MoveStep&) const = default;
};

// Initial matrix plus an ordered move list; M_0..M_ell are derived.
struct ConvexSeq {
  ExactMatrix initial{1, 2};
  std::vector<MoveStep> moves;

  int k() const { return initial.k(); }
  int n() const { return initial.n(); }
  std::size_t length() const { return moves.size(); }

  bool operator==(const ConvexSeq&) const = default;
};

// A strictly increasing k-subset of {1..n}.
struct IndexSet {
  std::vector<int> cols;

  bool operator==(const IndexSet&) const = default;
};

// All k-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> all_index_sets(int k, int n);

ExactMatrix apply_move(const ExactMatrix& m, const MoveStep& mv);

// Exact determinant of the columns selected by J (in increasing order).
Rat minor_det(const ExactMatrix& m, const IndexSet& j);

// m_bullet: the minor on columns {1..k}.
Rat leading_minor(const ExactMatrix& m);

// True iff every k x k minor is nonzero (membership in the generic set).
bool is_generic(const ExactMatrix& m);

// Derived matrices M_0..M_ell of a sequence.
std::vector<ExactMatrix> derive_matrices(const ConvexSeq& seq);

// Thrown by nsc when some leading minor is exactly zero; `step` identifies s.
struct ZeroLeadingMinor : std::runtime_error {
  int step;
  explicit ZeroLeadingMinor(int s)
      : std::runtime_error("leading minor vanishes at step " +
                           std::to_string(s)),
        step(s) {}
};

// Number of sign changes of the leading minor along the sequence.
int nsc(const ConvexSeq& seq);
int nsc(const std::vector<ExactMatrix>& mats);

// An observable that is affine in the move parameter: either a k x k minor
// or a linear functional applied to one column.
struct Observable {
  enum class Kind { Minor, Functional } kind;
  IndexSet minor_cols;            // Kind::Minor
  std::vector<Rat> functional_w;  // Kind::Functional
  int functional_col = 0;         // 1-based column the functional watches

  static Observable minor(IndexSet j) {
    return {Kind::Minor, std::move(j), {}, 0};
  }
  static Observable functional(std::vector<Rat> w, int col) {
    return {Kind::Functional, {}, std::move(w), col};
  }

  Rat eval(const ExactMatrix& m) const;
};

// All parameter values in (0, mv.t) where some observable vanishes,
// ascending, duplicates merged. Each observable is affine in the parameter,
// so each contributes at most one root. An observable that is identically
// zero along the move is an internal error (impossible on generic input).
std::vector<Rat> event_roots(const ExactMatrix& m, const MoveStep& mv,
                             const std::vector<Observable>& obs);

// Deterministic seeded generator of a generic convex sequence.
// Entries of the initial matrix are small integers, rejection-sampled until
// generic; move parameters are positive rationals adjusted off event roots
// so that every derived matrix is generic.
ConvexSeq random_convex_seq(int k, int n, int ell, std::uint64_t seed,
                            int magnitude = 5);

}  // namespace gcx

#endif
