#include "gcx/bound.hpp"

#include "gcx/core.hpp"

namespace gcx {

namespace {

void check_range(int k, int n, const char* who) {
  if (!(0 < k && k < n))
    throw InvalidInput(std::string(who) + ": need 0 < k < n");
}

mpz_class zpow(long base, long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return r;
}

// (n-k+1)^(2k-3) / 2^(k-3) as an exact rational; for k = 2 the denominator
// exponent is -1, i.e. the value doubles.
Rat main_formula(int k, int n) {
  Rat r(zpow(n - k + 1, 2 * k - 3), k >= 3 ? zpow(2, k - 3) : mpz_class(1));
  if (k == 2) r *= 2;
  r.canonicalize();
  return r;
}

}  // namespace

long conjecture_bound(int k, int n) {
  check_range(k, n, "conjecture_bound");
  return long(k) * (n - k);
}

Rat theorem_bound(int k, int n) {
  check_range(k, n, "theorem_bound");
  if (k == 1) return Rat(n - 1);
  if (k == 2) return Rat(2 * (n - 2));
  return main_formula(k, n);
}

bool theorem_bound_strict(int k, int n) {
  check_range(k, n, "theorem_bound_strict");
  return k > 2;
}

Rat dual_bound(int k, int n) {
  check_range(k, n, "dual_bound");
  // Both orientations of the dual display; the plain theorem value stands
  // in when a side degenerates to k = 1.
  auto side = [n](int kk) {
    return kk >= 2 ? main_formula(kk, n) : Rat(n - 1);
  };
  return std::min(side(k), side(n - k));
}

long constructive_bound(int k, int n) {
  check_range(k, n, "constructive_bound");
  mpz_class t = n - k;  // T(1, n-k+1) = n-k
  for (int i = 2, m = n - k + 2; i <= k; ++i, ++m) {
    const long d = m - i;  // n' - k' at level (i, m)
    t *= 1 + d * (d + 1) / 2;
  }
  if (!t.fits_slong_p())
    throw InvalidInput("constructive_bound: value exceeds long range");
  return t.get_si();
}

}  // namespace gcx
