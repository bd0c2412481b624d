#ifndef GCX_POLY_HPP
#define GCX_POLY_HPP

#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

// Dense univariate polynomial over the rationals, coefficients ascending.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(Rat c);
  static Poly monomial(int degree, Rat c = Rat(1));

  // Degree of the zero polynomial is -1.
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& coeff(int i) const;
  const Rat& leading() const;

  Rat eval(const Rat& x) const;
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly operator-() const;
  bool operator==(const Poly&) const = default;

  // Euclidean division; returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  std::string str(const std::string& var = "t") const;

 private:
  std::vector<Rat> c_;  // no trailing zeros
  void trim();
};

// Number of distinct real roots of p in (a, b], by sign variations of the
// canonical Sturm chain (multiplicities do not matter).
int sturm_count(const Poly& p, const Rat& a, const Rat& b);

// Disjoint intervals (lo, hi], ascending, each containing exactly one
// distinct root of p in (a, b]; each narrower than `width`.
std::vector<std::pair<Rat, Rat>> isolate_roots(const Poly& p, const Rat& a,
                                               const Rat& b, const Rat& width);

}  // namespace gcx

#endif
