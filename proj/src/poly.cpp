#include "gcx/poly.hpp"

#include "gcx/core.hpp"

namespace gcx {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Rat c) { return Poly({std::move(c)}); }

Poly Poly::monomial(int degree, Rat c) {
  std::vector<Rat> v(degree + 1);
  v[degree] = std::move(c);
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
}

const Rat& Poly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= int(c_.size())) return zero;
  return c_[i];
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw InvalidInput("leading coefficient of zero polynomial");
  return c_.back();
}

Rat Poly::eval(const Rat& x) const {
  Rat v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * int(i);
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x = -x;
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Rat& c) const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x *= c;
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<Rat> rem = c_;
  std::vector<Rat> quo(c_.size() > d.c_.size() ? c_.size() - d.c_.size() + 1 : 1);
  const int dd = d.degree();
  for (int i = int(rem.size()) - 1; i >= dd; --i) {
    if (sign(rem[i]) == 0) continue;
    Rat f = rem[i] / d.leading();
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (sign(c_[i]) == 0) continue;
    if (!out.empty()) out += sign(c_[i]) > 0 ? " + " : " - ";
    else if (sign(c_[i]) < 0) out += "-";
    Rat a = abs(c_[i]);
    const bool unit = a == 1 && i > 0;
    if (!unit) out += rat_str(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

int variations(const std::vector<Poly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    const int s = sign(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int sturm_count(const Poly& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw InvalidInput("sturm_count: zero polynomial");
  if (!(a < b)) return 0;
  const auto chain = sturm_chain(p);
  return variations(chain, a) - variations(chain, b);
}

std::vector<std::pair<Rat, Rat>> isolate_roots(const Poly& p, const Rat& a,
                                               const Rat& b, const Rat& width) {
  if (p.is_zero()) throw InvalidInput("isolate_roots: zero polynomial");
  if (sign(width) <= 0) throw InvalidInput("isolate_roots: width must be > 0");
  std::vector<std::pair<Rat, Rat>> out;
  std::vector<std::pair<Rat, Rat>> work;
  if (a < b) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const int cnt = sturm_count(p, lo, hi);
    if (cnt == 0) continue;
    if (cnt == 1 && hi - lo < width) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rat mid = (lo + hi) / 2;
    // A root exactly at the midpoint stays in the left half (right-closed).
    work.emplace_back(mid, hi);
    work.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gcx
