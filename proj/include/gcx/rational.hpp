#ifndef GCX_RATIONAL_HPP
#define GCX_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gcx {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) through arithmetic.
using Rat = mpq_class;

inline int sign(const Rat& x) { return sgn(x); }

// Parses "p", "-p" or "p/q". Throws on malformed input or q == 0.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

// The rational with the smallest denominator (then numerator) strictly
// between lo and hi, by Stern-Brocot descent. Keeps interval picks from
// compounding denominators along long computations.
Rat simplest_between(const Rat& lo, const Rat& hi);

}  // namespace gcx

#endif
