#include "gcx/core.hpp"

#include <algorithm>
#include <random>

namespace gcx {

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw InvalidInput("simplest_between: need lo < hi");
  if (sign(lo) < 0 && sign(hi) > 0) return Rat(0);
  if (sign(hi) <= 0) return -simplest_between(-hi, -lo);
  // 0 <= lo < hi. Take the smallest integer above lo when one fits;
  // otherwise recurse on the fractional parts, reciprocated.
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rat next(fl + 1);
  if (next < hi) return next;
  Rat a(fl);
  if (lo == a) {
    // Left end is an integer: a + 1/y for the smallest feasible y.
    const Rat q = 1 / (hi - a);
    mpz_class y;
    mpz_fdiv_q(y.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return a + Rat(1) / Rat(y + 1);
  }
  return a + 1 / simplest_between(1 / (hi - a), 1 / (lo - a));
}

ExactMatrix::ExactMatrix(int k, int n) : k_(k), n_(n), e_(std::size_t(k) * n) {
  if (!(0 < k && k < n)) throw InvalidInput("ExactMatrix requires 0 < k < n");
}

ExactMatrix::ExactMatrix(int k, int n, std::vector<Rat> row_major)
    : ExactMatrix(k, n) {
  if (row_major.size() != std::size_t(k) * n)
    throw InvalidInput("ExactMatrix: entry count mismatch");
  e_ = std::move(row_major);
  for (auto& x : e_) x.canonicalize();
}

const Rat& ExactMatrix::at(int row, int col) const {
  if (row < 1 || row > k_ || col < 1 || col > n_)
    throw InvalidInput("ExactMatrix::at: index out of range");
  return e_[std::size_t(row - 1) * n_ + (col - 1)];
}

Rat& ExactMatrix::at(int row, int col) {
  return const_cast<Rat&>(std::as_const(*this).at(row, col));
}

std::vector<Rat> ExactMatrix::column(int col) const {
  std::vector<Rat> v(k_);
  for (int i = 1; i <= k_; ++i) v[i - 1] = at(i, col);
  return v;
}

std::vector<IndexSet> all_index_sets(int k, int n) {
  std::vector<IndexSet> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(IndexSet{cur});
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int p = i + 1; p < k; ++p) cur[p] = cur[p - 1] + 1;
  }
  return out;
}

ExactMatrix apply_move(const ExactMatrix& m, const MoveStep& mv) {
  if (mv.j < 1 || mv.j >= m.n())
    throw InvalidInput("apply_move: move index out of range");
  if (sign(mv.t) <= 0) throw InvalidInput("apply_move: parameter must be > 0");
  ExactMatrix out = m;
  for (int i = 1; i <= m.k(); ++i)
    out.at(i, mv.j) = m.at(i, mv.j) + mv.t * m.at(i, mv.j + 1);
  return out;
}

namespace {

// Determinant of a square rational matrix by Gaussian elimination.
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
      a[r][c] = 0;
    }
  }
  return det;
}

}  // namespace

Rat minor_det(const ExactMatrix& m, const IndexSet& j) {
  const int k = m.k();
  if (int(j.cols.size()) != k) throw InvalidInput("minor: |J| != k");
  for (int i = 0; i < k; ++i) {
    if (j.cols[i] < 1 || j.cols[i] > m.n())
      throw InvalidInput("minor: column index out of range");
    if (i > 0 && j.cols[i] <= j.cols[i - 1])
      throw InvalidInput("minor: J must be strictly increasing");
  }
  std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) a[r][c] = m.at(r + 1, j.cols[c]);
  return square_det(std::move(a));
}

Rat leading_minor(const ExactMatrix& m) {
  IndexSet j;
  j.cols.resize(m.k());
  for (int i = 0; i < m.k(); ++i) j.cols[i] = i + 1;
  return minor_det(m, j);
}

bool is_generic(const ExactMatrix& m) {
  for (const auto& j : all_index_sets(m.k(), m.n()))
    if (sign(minor_det(m, j)) == 0) return false;
  return true;
}

std::vector<ExactMatrix> derive_matrices(const ConvexSeq& seq) {
  std::vector<ExactMatrix> out;
  out.reserve(seq.moves.size() + 1);
  out.push_back(seq.initial);
  for (const auto& mv : seq.moves) out.push_back(apply_move(out.back(), mv));
  return out;
}

int nsc(const std::vector<ExactMatrix>& mats) {
  std::vector<int> signs(mats.size());
  for (std::size_t s = 0; s < mats.size(); ++s) {
    signs[s] = sign(leading_minor(mats[s]));
    if (signs[s] == 0) throw ZeroLeadingMinor(int(s));
  }
  int count = 0;
  for (std::size_t s = 0; s + 1 < mats.size(); ++s)
    if (signs[s] * signs[s + 1] < 0) ++count;
  return count;
}

int nsc(const ConvexSeq& seq) { return nsc(derive_matrices(seq)); }

Rat Observable::eval(const ExactMatrix& m) const {
  if (kind == Kind::Minor) return minor_det(m, minor_cols);
  Rat v = 0;
  for (int i = 1; i <= m.k(); ++i) v += functional_w[i - 1] * m.at(i, functional_col);
  return v;
}

std::vector<Rat> event_roots(const ExactMatrix& m, const MoveStep& mv,
                             const std::vector<Observable>& obs) {
  if (sign(mv.t) <= 0) throw InvalidInput("event_roots: parameter must be > 0");
  // Each observable is affine in the parameter: value(tau) = a + (b-a) tau
  // where a, b are the values at tau = 0 and tau = 1.
  const ExactMatrix at_one = apply_move(m, MoveStep{mv.j, Rat(1)});
  std::vector<Rat> roots;
  for (const auto& o : obs) {
    const Rat a = o.eval(m);
    const Rat b = o.eval(at_one);
    if (a == b) {
      if (sign(a) == 0)
        throw InternalError("event_roots: observable identically zero");
      continue;
    }
    Rat root = a / (a - b);
    if (sign(root) > 0 && root < mv.t) roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

ConvexSeq random_convex_seq(int k, int n, int ell, std::uint64_t seed,
                            int magnitude) {
  if (!(0 < k && k < n)) throw InvalidInput("random_convex_seq: need 0 < k < n");
  if (ell < 0) throw InvalidInput("random_convex_seq: need ell >= 0");
  if (magnitude < 1) throw InvalidInput("random_convex_seq: need magnitude >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-magnitude, magnitude);

  const int kRejectBudget = 20000;
  ExactMatrix m(k, n);
  bool found = false;
  for (int tries = 0; tries < kRejectBudget; ++tries) {
    for (int r = 1; r <= k; ++r)
      for (int c = 1; c <= n; ++c) m.at(r, c) = entry(rng);
    if (is_generic(m)) {
      found = true;
      break;
    }
  }
  if (!found)
    throw std::runtime_error("random_convex_seq: rejection budget exhausted");

  ConvexSeq seq{m, {}};
  std::uniform_int_distribution<int> jdist(1, n - 1);
  std::uniform_int_distribution<int> num(1, 2 * magnitude);
  std::uniform_int_distribution<int> den(1, magnitude);
  ExactMatrix cur = m;
  for (int s = 0; s < ell; ++s) {
    bool placed = false;
    for (int tries = 0; tries < kRejectBudget; ++tries) {
      MoveStep mv{jdist(rng), Rat(num(rng), den(rng))};
      mv.t.canonicalize();
      ExactMatrix next = apply_move(cur, mv);
      if (!is_generic(next)) continue;
      seq.moves.push_back(mv);
      cur = std::move(next);
      placed = true;
      break;
    }
    if (!placed)
      throw std::runtime_error("random_convex_seq: move budget exhausted");
  }
  return seq;
}

}  // namespace gcx
