#ifndef GCX_CURVE_HPP
#define GCX_CURVE_HPP

#include <optional>
#include <vector>

#include "gcx/core.hpp"
#include "gcx/poly.hpp"

namespace gcx {

// An n x n lower triangular matrix with unit diagonal, exact entries.
class UnipotentMatrix {
 public:
  explicit UnipotentMatrix(int n);  // identity
  UnipotentMatrix(int n, std::vector<Rat> row_major);  // validates shape

  int n() const { return n_; }
  const Rat& at(int row, int col) const;
  // Assignable entries are the strictly lower triangular ones.
  void set(int row, int col, Rat value);

  UnipotentMatrix operator*(const UnipotentMatrix& o) const;
  UnipotentMatrix inverse() const;
  bool operator==(const UnipotentMatrix&) const = default;

 private:
  int n_;
  std::vector<Rat> e_;
};

// exp(t l_j): identity plus t in entry (j+1, j).
UnipotentMatrix lambda_arc(int n, int j, const Rat& t);

// Bottom k rows of L as a k x n exact matrix.
ExactMatrix bottom_submatrix(const UnipotentMatrix& l, int k);

// One piecewise arc: constant positive subdiagonal coefficients and a
// positive duration.
struct CurveArc {
  std::vector<Rat> c;  // n-1 strictly positive coefficients
  Rat t_max;

  bool operator==(const CurveArc&) const = default;
};

// A piecewise nilpotent-exponential convex curve in the unipotent group.
struct CurveSpec {
  int n = 0, k = 0;
  UnipotentMatrix initial{2};
  std::vector<CurveArc> arcs;

  bool operator==(const CurveSpec&) const = default;
};

void validate(const CurveSpec& spec);

// A word in the standard generators a_i = (i, i+1) of S_n.
struct ReducedWord {
  std::vector<int> letters;  // 1-based generator indices

  bool operator==(const ReducedWord&) const = default;
};

// (1)(2,1)(3,2,1)...(n-1,...,1): the fixed reduced word for the longest
// permutation, of length n(n-1)/2.
ReducedWord canonical_eta_word(int n);

// True iff the word is reduced (length equals the inversion count of the
// permutation it spells).
bool is_reduced(const ReducedWord& w, int n);

// Matrix of exact polynomials in the arc parameter.
struct PolyMatrix {
  int n = 0;
  std::vector<Poly> e;  // row-major

  const Poly& at(int row, int col) const { return e[(row - 1) * n + (col - 1)]; }
  Poly& at(int row, int col) { return e[(row - 1) * n + (col - 1)]; }
};

// exp(t sum_j c_j l_j) by the finite nilpotent series; entry (r, q) has
// degree at most r - q.
PolyMatrix exp_arc(int n, const std::vector<Rat>& c);

// The same exponential evaluated at a rational parameter.
UnipotentMatrix exp_arc_at(int n, const std::vector<Rat>& c, const Rat& t);

// Curve point at local parameter t of the given arc (0-based arc index).
UnipotentMatrix curve_point(const CurveSpec& spec, int arc, const Rat& t);

// Leading minor of (prefix up to the arc) * exp_arc as one polynomial in
// the arc's local parameter. Degree is at most k(n-k).
Poly curve_minor_poly(const CurveSpec& spec, int arc);

// Number of distinct zeros of the leading minor along the curve. Roots are
// attributed to arcs in (left-open, right-closed] local coordinates; the
// global left endpoint is closed.
int nz(const CurveSpec& spec);

// Unique all-positive factorization of L along the canonical eta word, or
// nullopt when L is not totally positive (boundary included). Only the
// canonical word is supported.
std::optional<std::vector<Rat>> factor_pos_eta(const UnipotentMatrix& l,
                                               const ReducedWord& w);

// True iff L factors with all-positive parameters along the canonical word.
bool in_pos_eta(const UnipotentMatrix& l);

// Lemma-style bridge, curve to sequence: samples the zeros of the leading
// minor, brackets each with lambda_k(-eps), lambda_k(eps), and fills the
// gaps by factoring the connecting totally positive elements. The result
// satisfies nsc >= nz(spec).
ConvexSeq discretize_curve(const CurveSpec& spec);

// Bridge, sequence to curve: normalizes the sequence into the group, turns
// every move into one arc with the off-move coefficients set to a small
// exact delta, halved until all sample-point minor signs survive. The
// result satisfies nz >= nsc(seq).
CurveSpec continuize_seq(const ConvexSeq& seq);

}  // namespace gcx

#endif
