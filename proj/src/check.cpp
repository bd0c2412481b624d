#include "gcx/bound.hpp"
#include "gcx/certify.hpp"

// Independent certificate verification. This file deliberately re-derives
// every quantity from the certificate's stored data and the trusted core
// operations only; it shares no intermediate results with the builder.

namespace gcx {

namespace {

struct Ctx {
  std::vector<int> path;
  const BasePrerank* base = nullptr;
};

CheckReport fail(const Ctx& ctx, std::string rule, int step,
                 std::string message) {
  CheckReport r;
  r.ok = false;
  r.rule = std::move(rule);
  r.message = std::move(message);
  r.level_path = ctx.path;
  r.step = step;
  return r;
}

int omega_sign(const Certificate& cert, const ExactMatrix& m, int col) {
  Rat v = 0;
  for (int i = 1; i <= m.k(); ++i) v += cert.omega[i - 1] * m.at(i, col);
  return sign(v);
}

Rat omega_val(const Certificate& cert, const ExactMatrix& m, int col) {
  Rat v = 0;
  for (int i = 1; i <= m.k(); ++i) v += cert.omega[i - 1] * m.at(i, col);
  return v;
}

// Re-derivation of the projection formula, local to the checker.
ExactMatrix chk_reduce(const Certificate& cert, const ExactMatrix& m) {
  const int k = m.k();
  const int n = m.n();
  int q = k;
  while (q >= 1 && sign(cert.omega[q - 1]) == 0) --q;
  ExactMatrix out(k - 1, n - 1);
  for (int j = 1; j < n; ++j) {
    const Rat wa = omega_val(cert, m, j);
    const Rat wb = omega_val(cert, m, j + 1);
    int row = 1;
    for (int i = 1; i <= k; ++i) {
      if (i == q) continue;
      out.at(row, j) = m.at(i, j + 1) - wb * m.at(i, j) / wa;
      ++row;
    }
  }
  return out;
}

CheckReport check_level(const ConvexSeq& seq, const Certificate& cert,
                        Ctx& ctx);

CheckReport check_base_level(const ConvexSeq& seq, const Certificate& cert,
                             const std::vector<ExactMatrix>& mats, Ctx& ctx) {
  const int len = int(cert.refined.moves.size());
  std::vector<long> expect;
  if (cert.external_base && ctx.base && ctx.base->base_k == cert.k) {
    expect = ctx.base->eval(cert.refined);
  } else if (cert.k == 1) {
    for (const auto& m : mats) {
      long alt = 0;
      for (int j = 1; j < m.n(); ++j) {
        if (sign(m.at(1, j)) == 0 || sign(m.at(1, j + 1)) == 0)
          return fail(ctx, "base-zero-entry", -1, "zero entry at base level");
        if (sign(m.at(1, j)) * sign(m.at(1, j + 1)) < 0) ++alt;
      }
      expect.push_back(alt);
    }
  } else {
    return fail(ctx, "base-kind", -1,
                "external base certificate without a matching base hook");
  }
  const long range = cert.external_base ? ctx.base->range : cert.n - 1;
  for (int i = 0; i <= len; ++i) {
    if (cert.pr[i] != expect[i])
      return fail(ctx, "base-pr-mismatch", i, "stored base pr differs");
    if (cert.pr_one_vals[i] != cert.pr[i] || cert.pr_two_vals[i] != 0)
      return fail(ctx, "structure", i, "base level pr_I/pr_II malformed");
    if (cert.pr[i] < 0 || cert.pr[i] > range)
      return fail(ctx, "range", i, "base pr out of range");
  }
  return {};
}

CheckReport check_level(const ConvexSeq& seq, const Certificate& cert,
                        Ctx& ctx) {
  const int k = seq.k();
  const int n = seq.n();
  if (cert.k != k || cert.n != n)
    return fail(ctx, "structure", -1, "dimension mismatch");
  if (!(cert.refined.initial == seq.initial))
    return fail(ctx, "structure", -1, "refined initial matrix differs");

  // The refined move list must split the input moves exactly.
  if (cert.splits.size() != seq.moves.size())
    return fail(ctx, "structure", -1, "split count mismatch");
  {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
      if (cert.splits[i] < 1 ||
          pos + cert.splits[i] > cert.refined.moves.size())
        return fail(ctx, "structure", int(i), "bad split length");
      Rat total = 0;
      for (int p = 0; p < cert.splits[i]; ++p) {
        const auto& mv = cert.refined.moves[pos + p];
        if (mv.j != seq.moves[i].j || sign(mv.t) <= 0)
          return fail(ctx, "structure", int(pos + p),
                      "refined move is not a piece of the input move");
        total += mv.t;
      }
      if (total != seq.moves[i].t)
        return fail(ctx, "structure", int(i), "split pieces do not sum");
      pos += cert.splits[i];
    }
    if (pos != cert.refined.moves.size())
      return fail(ctx, "structure", -1, "unconsumed refined moves");
  }
  if (cert.input_pos.size() != seq.moves.size() + 1)
    return fail(ctx, "structure", -1, "input_pos size mismatch");
  {
    int pos = 0;
    for (std::size_t i = 0; i <= seq.moves.size(); ++i) {
      if (cert.input_pos[i] != pos)
        return fail(ctx, "structure", int(i), "input_pos mismatch");
      if (i < seq.moves.size()) pos += cert.splits[i];
    }
  }

  const auto mats = derive_matrices(cert.refined);
  const int len = int(cert.refined.moves.size());
  if (int(cert.pr.size()) != len + 1 ||
      int(cert.pr_one_vals.size()) != len + 1 ||
      int(cert.pr_two_vals.size()) != len + 1)
    return fail(ctx, "structure", -1, "pr array size mismatch");

  std::vector<int> msign(len + 1);
  for (int i = 0; i <= len; ++i) {
    msign[i] = sign(leading_minor(mats[i]));
    if (msign[i] == 0)
      return fail(ctx, "generic", i, "leading minor vanishes");
  }

  // Prerank axioms, checked against the stored pr values first so that a
  // tampered value is reported as an axiom violation at its step.
  for (int s = 0; s < len; ++s) {
    if (cert.pr[s] < cert.pr[s + 1])
      return fail(ctx, "axiom1", s, "pr increases across a move");
    if (msign[s] * msign[s + 1] < 0 && cert.pr[s] <= cert.pr[s + 1])
      return fail(ctx, "axiom2", s,
                  "pr not strictly decreasing across a sign change");
  }

  // nsc of the input sequence against the certified range.
  {
    int changes = 0;
    for (std::size_t i = 0; i + 1 < cert.input_pos.size(); ++i)
      if (msign[cert.input_pos[i]] * msign[cert.input_pos[i + 1]] < 0)
        ++changes;
    if (changes > cert.pr.front() - cert.pr.back())
      return fail(ctx, "nsc-bound", -1,
                  "nsc exceeds pr(M_0) - pr(M_ell)");
  }
  const long total_range = constructive_bound(k, n);
  for (int i = 0; i <= len; ++i)
    if (cert.pr[i] < 0 || cert.pr[i] > total_range)
      return fail(ctx, "range", i, "pr outside [0, constructive_bound]");

  if (k == 1 || cert.external_base)
    return check_base_level(seq, cert, mats, ctx);

  // omega validity.
  if (int(cert.omega.size()) != k)
    return fail(ctx, "omega", -1, "omega size mismatch");
  bool any = false;
  for (const auto& c : cert.omega) any = any || sign(c) != 0;
  if (!any) return fail(ctx, "omega", -1, "omega is zero");
  for (int i = 0; i <= len; ++i)
    for (int j = 1; j <= n; ++j)
      if (omega_sign(cert, mats[i], j) == 0)
        return fail(ctx, "omega", i, "omega vanishes on a column");
  for (int i = 0; i <= len; ++i)
    for (int j = n - k + 1; j <= n; ++j)
      if (omega_sign(cert, mats[i], j) <= 0)
        return fail(ctx, "omega", i, "omega positivity fails on tail columns");

  // Move types.
  if (int(cert.move_types.size()) != len)
    return fail(ctx, "structure", -1, "move type count mismatch");
  for (int s = 0; s < len; ++s) {
    const int j = cert.refined.moves[s].j;
    bool flip = false;
    for (int c = 1; c <= n; ++c) {
      if (omega_sign(cert, mats[s], c) != omega_sign(cert, mats[s + 1], c)) {
        if (c != j)
          return fail(ctx, "type", s, "omega flip at an unmoved column");
        flip = true;
      }
    }
    if (flip != cert.move_types[s].type_two ||
        (flip && cert.move_types[s].flipped_col != j))
      return fail(ctx, "type", s, "stored move type differs");
    if (flip && msign[s] != msign[s + 1])
      return fail(ctx, "type", s, "type II move flips the leading minor");
  }

  // pr_II recomputation and structural identity.
  if (cert.r_minus != constructive_bound(k - 1, n - 1))
    return fail(ctx, "structure", -1, "r_minus mismatch");
  const long two_cap = long(n - k + 1) * (n - k) / 2;
  for (int i = 0; i <= len; ++i) {
    long two = 0;
    for (int j = 1; j < n; ++j)
      if (omega_sign(cert, mats[i], j) * omega_sign(cert, mats[i], j + 1) < 0) {
        if (j > n - k)
          return fail(ctx, "omega", i, "alternation beyond column n-k");
        two += j;
      }
    if (two != cert.pr_two_vals[i])
      return fail(ctx, "pr2-mismatch", i, "stored pr_II differs");
    if (two < 0 || two > two_cap)
      return fail(ctx, "range", i, "pr_II out of range");
    if (cert.pr_one_vals[i] < 0 || cert.pr_one_vals[i] > cert.r_minus)
      return fail(ctx, "range", i, "pr_I out of range");
    if (cert.pr[i] != cert.pr_one_vals[i] + cert.pr_two_vals[i] * cert.r_minus)
      return fail(ctx, "structure", i, "pr != pr_I + pr_II * r_minus");
  }

  // Type I runs and downstairs recursion.
  if (cert.runs.size() != cert.children.size())
    return fail(ctx, "structure", -1, "run/child count mismatch");
  std::size_t r = 0;
  int start = 0;
  for (int s = 0; s <= len; ++s) {
    if (s < len && !cert.move_types[s].type_two) continue;
    if (r >= cert.runs.size())
      return fail(ctx, "structure", s, "missing run record");
    const auto& run = cert.runs[r];
    if (run.first != start || run.last != s)
      return fail(ctx, "structure", s, "run boundaries differ");
    if (int(run.down_index.size()) != run.last - run.first + 1)
      return fail(ctx, "structure", s, "down_index size mismatch");

    // Recompute the downstairs sequence from first principles.
    ConvexSeq down{chk_reduce(cert, mats[run.first]), {}};
    ExactMatrix bare = down.initial;
    std::vector<Rat> diag(n - 1, Rat(1));
    std::vector<int> down_idx{0};
    for (int i = run.first; i < run.last; ++i) {
      const int j = cert.refined.moves[i].j;
      const Rat w0 = omega_val(cert, mats[i], j);
      const Rat w1 = omega_val(cert, mats[i + 1], j);
      const Rat alpha = w1 / w0;
      if (sign(alpha) <= 0)
        return fail(ctx, "type", i, "type I move with omega sign flip");
      if (j == 1) {
        diag[0] /= alpha;
      } else {
        MoveStep dm{j - 1,
                    cert.refined.moves[i].t / alpha * diag[j - 1] / diag[j - 2]};
        down.moves.push_back(dm);
        bare = apply_move(bare, dm);
        diag[j - 2] *= alpha;
        diag[j - 1] /= alpha;
      }
      down_idx.push_back(int(down.moves.size()));
      if (!(scale_columns(bare, diag) == chk_reduce(cert, mats[i + 1])))
        return fail(ctx, "reduction", i,
                    "downstairs factorization identity fails");
    }
    if (down_idx != run.down_index)
      return fail(ctx, "structure", run.first, "down_index differs");

    // pr_I must equal the child certificate's pr at the mapped matrices.
    const auto& child = cert.children[r];
    for (int i = run.first; i <= run.last; ++i) {
      const int di = run.down_index[i - run.first];
      if (di < 0 || di >= int(child.input_pos.size()))
        return fail(ctx, "structure", i, "down index out of range");
      if (cert.pr_one_vals[i] != child.pr_at_input(di))
        return fail(ctx, "pr1-mismatch", i,
                    "stored pr_I differs from child certificate");
    }

    ctx.path.push_back(int(r));
    CheckReport sub = check_level(down, child, ctx);
    ctx.path.pop_back();
    if (!sub.ok) return sub;
    ++r;
    start = s + 1;
  }
  if (r != cert.runs.size())
    return fail(ctx, "structure", -1, "extra run records");
  return {};
}

}  // namespace

CheckReport check_certificate(const ConvexSeq& seq, const Certificate& cert,
                              const BasePrerank* base) {
  Ctx ctx;
  ctx.base = base;
  try {
    return check_level(seq, cert, ctx);
  } catch (const std::exception& e) {
    return fail(ctx, "exception", -1, e.what());
  }
}

}  // namespace gcx
