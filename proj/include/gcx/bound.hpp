#ifndef GCX_BOUND_HPP
#define GCX_BOUND_HPP

#include "gcx/rational.hpp"

namespace gcx {

// k(n-k): the conjectured sharp value of the maximal sign-change count.
long conjecture_bound(int k, int n);

// Explicit upper bound on nsc. For k > 2 the bound is strict
// (nsc < value): (n-k+1)^(2k-3) / 2^(k-3). The small cases are folded in
// for totality: k = 2 gives 2(n-2) and k = 1 gives n-1, both non-strict.
Rat theorem_bound(int k, int n);

// True iff theorem_bound(k, n) is a strict bound (nsc < value).
bool theorem_bound_strict(int k, int n);

// min(2^(3-k) (n-k+1)^(2k-3), 2^(3-n+k) (k+1)^(2(n-k)-3)), taking only the
// branches whose side is in the k > 2 regime; outside both regimes this is
// the minimum of the two folded theorem bounds.
Rat dual_bound(int k, int n);

// Certificate range recursion: T(1,n) = n-1,
// T(k,n) = (1 + (n-k)(n-k+1)/2) * T(k-1, n-1).
long constructive_bound(int k, int n);

}  // namespace gcx

#endif
