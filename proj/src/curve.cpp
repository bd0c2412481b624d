#include "gcx/curve.hpp"

#include <algorithm>

namespace gcx {

UnipotentMatrix::UnipotentMatrix(int n) : n_(n), e_(std::size_t(n) * n) {
  if (n < 1) throw InvalidInput("UnipotentMatrix: n must be >= 1");
  for (int i = 0; i < n; ++i) e_[std::size_t(i) * n + i] = 1;
}

UnipotentMatrix::UnipotentMatrix(int n, std::vector<Rat> row_major)
    : n_(n), e_(std::move(row_major)) {
  if (n < 1 || e_.size() != std::size_t(n) * n)
    throw InvalidInput("UnipotentMatrix: bad entry count");
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) {
      auto& x = e_[std::size_t(r - 1) * n + (c - 1)];
      x.canonicalize();
      if (c > r && sign(x) != 0)
        throw InvalidInput("UnipotentMatrix: nonzero above the diagonal");
      if (c == r && x != 1)
        throw InvalidInput("UnipotentMatrix: diagonal entry is not 1");
    }
}

const Rat& UnipotentMatrix::at(int row, int col) const {
  if (row < 1 || row > n_ || col < 1 || col > n_)
    throw InvalidInput("UnipotentMatrix::at: index out of range");
  return e_[std::size_t(row - 1) * n_ + (col - 1)];
}

void UnipotentMatrix::set(int row, int col, Rat value) {
  if (!(1 <= col && col < row && row <= n_))
    throw InvalidInput("UnipotentMatrix::set: only strictly lower entries");
  value.canonicalize();
  e_[std::size_t(row - 1) * n_ + (col - 1)] = std::move(value);
}

UnipotentMatrix UnipotentMatrix::operator*(const UnipotentMatrix& o) const {
  if (n_ != o.n_) throw InvalidInput("UnipotentMatrix: size mismatch");
  UnipotentMatrix out(n_);
  for (int r = 1; r <= n_; ++r)
    for (int c = 1; c <= r; ++c) {
      Rat v = 0;
      for (int m = c; m <= r; ++m) v += at(r, m) * o.at(m, c);
      out.e_[std::size_t(r - 1) * n_ + (c - 1)] = v;
    }
  return out;
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  // Forward substitution column by column.
  UnipotentMatrix out(n_);
  for (int c = 1; c <= n_; ++c)
    for (int r = c + 1; r <= n_; ++r) {
      Rat v = 0;
      for (int m = c; m < r; ++m) v += at(r, m) * out.at(m, c);
      out.e_[std::size_t(r - 1) * n_ + (c - 1)] = -v;
    }
  return out;
}

UnipotentMatrix lambda_arc(int n, int j, const Rat& t) {
  if (j < 1 || j >= n) throw InvalidInput("lambda_arc: index out of range");
  UnipotentMatrix out(n);
  if (sign(t) != 0) out.set(j + 1, j, t);
  return out;
}

ExactMatrix bottom_submatrix(const UnipotentMatrix& l, int k) {
  const int n = l.n();
  if (k < 1 || k >= n) throw InvalidInput("bottom_submatrix: need 0 < k < n");
  ExactMatrix out(k, n);
  for (int r = 1; r <= k; ++r)
    for (int c = 1; c <= n; ++c) out.at(r, c) = l.at(n - k + r, c);
  return out;
}

void validate(const CurveSpec& spec) {
  if (!(0 < spec.k && spec.k < spec.n))
    throw InvalidInput("CurveSpec: need 0 < k < n");
  if (spec.initial.n() != spec.n) throw InvalidInput("CurveSpec: size mismatch");
  if (spec.arcs.empty()) throw InvalidInput("CurveSpec: needs at least one arc");
  for (const auto& arc : spec.arcs) {
    if (int(arc.c.size()) != spec.n - 1)
      throw InvalidInput("CurveSpec: arc coefficient count mismatch");
    for (const auto& c : arc.c)
      if (sign(c) <= 0)
        throw InvalidInput("CurveSpec: arc coefficients must be positive");
    if (sign(arc.t_max) <= 0)
      throw InvalidInput("CurveSpec: arc duration must be positive");
  }
}

ReducedWord canonical_eta_word(int n) {
  ReducedWord w;
  for (int r = 1; r < n; ++r)
    for (int i = r; i >= 1; --i) w.letters.push_back(i);
  return w;
}

bool is_reduced(const ReducedWord& w, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int a : w.letters) {
    if (a < 1 || a >= n) return false;
    std::swap(perm[a - 1], perm[a]);
  }
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions == int(w.letters.size());
}

PolyMatrix exp_arc(int n, const std::vector<Rat>& c) {
  if (int(c.size()) != n - 1)
    throw InvalidInput("exp_arc: coefficient count mismatch");
  for (const auto& x : c)
    if (sign(x) <= 0) throw InvalidInput("exp_arc: coefficients must be > 0");
  // X = sum_j c_j l_j; exp(tX) = sum_{p < n} t^p X^p / p!.
  std::vector<std::vector<Rat>> x(n, std::vector<Rat>(n));
  for (int j = 1; j < n; ++j) x[j][j - 1] = c[j - 1];
  PolyMatrix out;
  out.n = n;
  out.e.assign(std::size_t(n) * n, Poly());
  std::vector<std::vector<Rat>> term(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) term[i][i] = 1;
  for (int p = 0; p < n; ++p) {
    for (int r = 1; r <= n; ++r)
      for (int q = 1; q <= n; ++q)
        if (sign(term[r - 1][q - 1]) != 0)
          out.at(r, q) = out.at(r, q) + Poly::monomial(p, term[r - 1][q - 1]);
    // term <- term * X / (p+1)
    std::vector<std::vector<Rat>> next(n, std::vector<Rat>(n));
    for (int r = 0; r < n; ++r)
      for (int q = 0; q < n; ++q) {
        Rat v = 0;
        for (int m = 0; m < n; ++m) v += term[r][m] * x[m][q];
        next[r][q] = v / (p + 1);
      }
    term = std::move(next);
  }
  return out;
}

UnipotentMatrix exp_arc_at(int n, const std::vector<Rat>& c, const Rat& t) {
  const PolyMatrix pm = exp_arc(n, c);
  UnipotentMatrix out(n);
  for (int r = 2; r <= n; ++r)
    for (int q = 1; q < r; ++q) out.set(r, q, pm.at(r, q).eval(t));
  return out;
}

UnipotentMatrix curve_point(const CurveSpec& spec, int arc, const Rat& t) {
  validate(spec);
  if (arc < 0 || arc >= int(spec.arcs.size()))
    throw InvalidInput("curve_point: arc index out of range");
  if (sign(t) < 0 || t > spec.arcs[arc].t_max)
    throw InvalidInput("curve_point: parameter outside the arc");
  UnipotentMatrix g = spec.initial;
  for (int i = 0; i < arc; ++i)
    g = g * exp_arc_at(spec.n, spec.arcs[i].c, spec.arcs[i].t_max);
  return g * exp_arc_at(spec.n, spec.arcs[arc].c, t);
}

namespace {

Rat square_det(std::vector<std::vector<Rat>> a) {
  const int d = int(a.size());
  Rat det = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r)
      if (sign(a[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < d; ++r) {
      if (sign(a[r][c]) == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (int cc = c + 1; cc < d; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  return det;
}

Poly poly_det(const std::vector<std::vector<Poly>>& a) {
  const int d = int(a.size());
  if (d == 1) return a[0][0];
  Poly det;
  for (int r = 0; r < d; ++r) {
    if (a[r][0].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (int rr = 0; rr < d; ++rr) {
      if (rr == r) continue;
      sub.emplace_back(a[rr].begin() + 1, a[rr].end());
    }
    Poly term = a[r][0] * poly_det(sub);
    det = (r % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

Poly curve_minor_poly(const CurveSpec& spec, int arc) {
  validate(spec);
  if (arc < 0 || arc >= int(spec.arcs.size()))
    throw InvalidInput("curve_minor_poly: arc index out of range");
  UnipotentMatrix prefix = spec.initial;
  for (int i = 0; i < arc; ++i)
    prefix = prefix * exp_arc_at(spec.n, spec.arcs[i].c, spec.arcs[i].t_max);
  const PolyMatrix e = exp_arc(spec.n, spec.arcs[arc].c);
  const int n = spec.n;
  const int k = spec.k;
  // Lower-left k x k block of prefix * exp_arc.
  std::vector<std::vector<Poly>> block(k, std::vector<Poly>(k));
  for (int r = 1; r <= k; ++r)
    for (int c = 1; c <= k; ++c) {
      Poly v;
      for (int m = 1; m <= n; ++m) {
        const Rat& p = prefix.at(n - k + r, m);
        if (sign(p) != 0) v = v + e.at(m, c) * p;
      }
      block[r - 1][c - 1] = v;
    }
  return poly_det(block);
}

int nz(const CurveSpec& spec) {
  validate(spec);
  int total = 0;
  for (int a = 0; a < int(spec.arcs.size()); ++a) {
    const Poly p = curve_minor_poly(spec, a);
    if (p.is_zero())
      throw InvalidInput("nz: leading minor identically zero on an arc");
    if (a == 0 && sign(p.eval(Rat(0))) == 0) ++total;  // closed global left end
    total += sturm_count(p, Rat(0), spec.arcs[a].t_max);
  }
  return total;
}

std::optional<std::vector<Rat>> factor_pos_eta(const UnipotentMatrix& l,
                                               const ReducedWord& w) {
  const int n = l.n();
  if (!(w == canonical_eta_word(n)))
    throw InvalidInput("factor_pos_eta: only the canonical word is supported");

  // Peel blocks from the right: for the current trailing block
  // lambda_{d-1}(a_{d-1}) ... lambda_1(a_1), row d of the product telescopes
  // to P(d, j) = a_{d-1} ... a_j, so the parameters are entry ratios.
  UnipotentMatrix p = l;
  std::vector<std::vector<Rat>> blocks;
  for (int d = n; d >= 2; --d) {
    std::vector<Rat> a(d);  // a[1..d-1]
    for (int j = d - 1; j >= 1; --j) {
      const Rat denom = j == d - 1 ? Rat(1) : p.at(d, j + 1);
      if (sign(denom) == 0) return std::nullopt;
      a[j] = p.at(d, j) / denom;
      if (sign(a[j]) <= 0) return std::nullopt;
    }
    UnipotentMatrix block(n);
    for (int j = d - 1; j >= 1; --j) block = block * lambda_arc(n, j, a[j]);
    p = p * block.inverse();
    for (int c = 1; c < d; ++c)
      if (sign(p.at(d, c)) != 0)
        throw InternalError("factor_pos_eta: peeled row not cleared");
    blocks.emplace_back(a.begin() + 1, a.end());  // (a_1 .. a_{d-1})
  }
  if (!(p == UnipotentMatrix(n)))
    throw InternalError("factor_pos_eta: leftover after peeling");

  // Emit in word order: block r = (r, r-1, ..., 1), r ascending.
  std::vector<Rat> params;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) params.push_back(*jt);

  // Round-trip safety net.
  UnipotentMatrix rec(n);
  const auto word = canonical_eta_word(n);
  for (std::size_t i = 0; i < word.letters.size(); ++i)
    rec = rec * lambda_arc(n, word.letters[i], params[i]);
  if (!(rec == l)) throw InternalError("factor_pos_eta: reconstruction failed");
  return params;
}

bool in_pos_eta(const UnipotentMatrix& l) {
  return factor_pos_eta(l, canonical_eta_word(l.n())).has_value();
}

namespace {

struct RootLoc {
  int arc = 0;
  bool exact = false;
  Rat value;    // exact root
  Rat lo, hi;   // isolating interval otherwise
};

// All distinct roots of the leading minor along the curve, in curve order,
// isolated to at most `width` wide intervals.
std::vector<RootLoc> locate_roots(const CurveSpec& spec,
                                  const std::vector<Poly>& polys,
                                  const Rat& width) {
  std::vector<RootLoc> out;
  for (int a = 0; a < int(spec.arcs.size()); ++a) {
    const Poly& p = polys[a];
    if (p.is_zero())
      throw InvalidInput("discretize_curve: identically zero arc");
    if (a == 0 && sign(p.eval(Rat(0))) == 0)
      out.push_back({0, true, Rat(0), {}, {}});
    for (auto& [lo, hi] : isolate_roots(p, Rat(0), spec.arcs[a].t_max, width)) {
      RootLoc r;
      r.arc = a;
      if (sign(p.eval(hi)) == 0) {
        r.exact = true;
        r.value = hi;
      } else {
        r.lo = lo;
        r.hi = hi;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

ConvexSeq discretize_curve(const CurveSpec& spec) {
  validate(spec);
  const int n = spec.n;
  const int k = spec.k;
  std::vector<Poly> polys;
  for (int a = 0; a < int(spec.arcs.size()); ++a)
    polys.push_back(curve_minor_poly(spec, a));

  {  // no roots at all: a single generic sample suffices
    int r = 0;
    for (int a = 0; a < int(spec.arcs.size()); ++a) {
      if (polys[a].is_zero())
        throw InvalidInput("discretize_curve: identically zero arc");
      if (a == 0 && sign(polys[a].eval(Rat(0))) == 0) ++r;
      r += sturm_count(polys[a], Rat(0), spec.arcs[a].t_max);
    }
    if (r == 0) return ConvexSeq{bottom_submatrix(spec.initial, k), {}};
  }

  const auto word = canonical_eta_word(n);
  const int kAttempts = 48;
  Rat width = Rat(1, 4);
  Rat eps = Rat(1, 2);
  for (int attempt = 0; attempt < kAttempts;
       ++attempt, width /= 4, eps /= 2) {
    const auto roots = locate_roots(spec, polys, width);
    const int r = int(roots.size());

    // Group elements with the leading minor of the bottom block exactly zero,
    // close to the located curve points.
    std::vector<UnipotentMatrix> gs;
    bool bad = false;
    for (const auto& root : roots) {
      const Rat that = root.exact ? root.value : (root.lo + root.hi) / 2;
      UnipotentMatrix g = curve_point(spec, root.arc, that);
      if (attempt > 0) {
        // A degenerate sample (the bracketing minor vanishing alongside the
        // leading one, e.g. at a double root) is escaped by sliding forward
        // through the interior of the positive semigroup and re-projecting
        // onto the zero hypersurface below.
        g = g * exp_arc_at(n, std::vector<Rat>(n - 1, Rat(1)), eps / 2);
      }
      {
        // Project onto {leading minor = 0} by solving for one entry of the
        // bottom row; the minor is affine in each single entry. A no-op for
        // samples already exactly on the hypersurface.
        const ExactMatrix sub = bottom_submatrix(g, k);
        const Rat m = leading_minor(sub);
        bool fixed = false;
        for (int c = 1; c <= k && !fixed; ++c) {
          std::vector<std::vector<Rat>> cof;
          for (int rr = 1; rr < k; ++rr) {
            std::vector<Rat> row;
            for (int cc = 1; cc <= k; ++cc)
              if (cc != c) row.push_back(sub.at(rr, cc));
            cof.push_back(std::move(row));
          }
          Rat cdet = k == 1 ? Rat(1) : square_det(std::move(cof));
          if ((k + c) % 2 != 0) cdet = -cdet;
          if (sign(cdet) == 0) continue;
          g.set(n, c, g.at(n, c) - m / cdet);
          fixed = true;
        }
        if (!fixed || sign(leading_minor(bottom_submatrix(g, k))) != 0) {
          bad = true;
          break;
        }
      }
      gs.push_back(std::move(g));
    }
    if (bad) continue;

    // Brackets must straddle the zero and consecutive samples must stay
    // connected through the totally positive semigroup.
    ConvexSeq seq{bottom_submatrix(gs[0] * lambda_arc(n, k, -eps), k), {}};
    bool ok = true;
    for (int s = 0; s < r && ok; ++s) {
      const UnipotentMatrix a = gs[s] * lambda_arc(n, k, -eps);
      const UnipotentMatrix b = gs[s] * lambda_arc(n, k, eps);
      const int sa = sign(leading_minor(bottom_submatrix(a, k)));
      const int sb = sign(leading_minor(bottom_submatrix(b, k)));
      if (sa == 0 || sb == 0 || sa == sb) {
        ok = false;
        break;
      }
      seq.moves.push_back(MoveStep{k, 2 * eps});
      if (s + 1 < r) {
        const auto conn =
            factor_pos_eta(b.inverse() * (gs[s + 1] * lambda_arc(n, k, -eps)),
                           word);
        if (!conn) {
          ok = false;
          break;
        }
        for (std::size_t i = 0; i < word.letters.size(); ++i)
          seq.moves.push_back(MoveStep{word.letters[i], (*conn)[i]});
      }
    }
    if (!ok) continue;

    try {
      if (nsc(seq) < r)
        throw InternalError("discretize_curve: bracketed flips went missing");
    } catch (const ZeroLeadingMinor&) {
      continue;  // an intermediate fill step landed on a zero; tighten
    }
    return seq;
  }
  throw std::runtime_error("discretize_curve: bracketing budget exhausted");
}

CurveSpec continuize_seq(const ConvexSeq& seq) {
  const int k = seq.k();
  const int n = seq.n();
  const auto mats = derive_matrices(seq);

  // Normalize by row operations so the last k columns of M_0 become the
  // identity block; this scales every minor by the same factor, so all
  // leading-minor signs move in lockstep and nsc is untouched.
  std::vector<std::vector<Rat>> b(k, std::vector<Rat>(k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) b[r][c] = seq.initial.at(r + 1, n - k + 1 + c);
  // Gauss-Jordan inverse.
  std::vector<std::vector<Rat>> binv(k, std::vector<Rat>(k));
  {
    for (int i = 0; i < k; ++i) binv[i][i] = 1;
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int r = c; r < k; ++r)
        if (sign(b[r][c]) != 0) {
          piv = r;
          break;
        }
      if (piv < 0)
        throw InvalidInput("continuize_seq: sequence is not generic");
      std::swap(b[piv], b[c]);
      std::swap(binv[piv], binv[c]);
      Rat pv = b[c][c];
      for (int cc = 0; cc < k; ++cc) {
        b[c][cc] /= pv;
        binv[c][cc] /= pv;
      }
      for (int r = 0; r < k; ++r) {
        if (r == c || sign(b[r][c]) == 0) continue;
        Rat f = b[r][c];
        for (int cc = 0; cc < k; ++cc) {
          b[r][cc] -= f * b[c][cc];
          binv[r][cc] -= f * binv[c][cc];
        }
      }
    }
  }
  auto normalize = [&](const ExactMatrix& m) {
    ExactMatrix out(k, n);
    for (int r = 1; r <= k; ++r)
      for (int c = 1; c <= n; ++c) {
        Rat v = 0;
        for (int i = 1; i <= k; ++i) v += binv[r - 1][i - 1] * m.at(i, c);
        out.at(r, c) = v;
      }
    return out;
  };

  std::vector<int> target_sign;
  for (const auto& m : mats) {
    const int s = sign(leading_minor(normalize(m)));
    if (s == 0) throw InvalidInput("continuize_seq: leading minor vanishes");
    target_sign.push_back(s);
  }

  UnipotentMatrix start(n);
  {
    const ExactMatrix m0 = normalize(seq.initial);
    for (int r = 1; r <= k; ++r)
      for (int c = 1; c < n - k + r; ++c) start.set(n - k + r, c, m0.at(r, c));
  }

  CurveSpec spec;
  spec.n = n;
  spec.k = k;
  spec.initial = start;
  if (seq.moves.empty()) {
    CurveArc arc;
    arc.c.assign(n - 1, Rat(1));
    arc.t_max = 1;
    spec.arcs.push_back(std::move(arc));
    return spec;
  }

  const int kAttempts = 64;
  Rat delta = Rat(1, 2);
  for (int attempt = 0; attempt < kAttempts; ++attempt, delta /= 2) {
    spec.arcs.clear();
    for (const auto& mv : seq.moves) {
      CurveArc arc;
      arc.c.assign(n - 1, delta);
      arc.c[mv.j - 1] = mv.t;
      arc.t_max = 1;
      spec.arcs.push_back(std::move(arc));
    }
    // Junction minor signs must reproduce the sequence's sign pattern.
    UnipotentMatrix g = start;
    bool ok = true;
    for (std::size_t s = 0; s < spec.arcs.size(); ++s) {
      g = g * exp_arc_at(n, spec.arcs[s].c, Rat(1));
      if (sign(leading_minor(bottom_submatrix(g, k))) != target_sign[s + 1]) {
        ok = false;
        break;
      }
    }
    if (ok) return spec;
  }
  throw std::runtime_error("continuize_seq: perturbation budget exhausted");
}

}  // namespace gcx
