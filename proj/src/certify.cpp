#include "gcx/certify.hpp"

#include "gcx/bound.hpp"

namespace gcx {

long pr_two(const ExactMatrix& m, const Functional& omega) {
  const int n = m.n();
  const int k = m.k();
  long total = 0;
  std::vector<int> s(n + 1);
  for (int j = 1; j <= n; ++j) {
    s[j] = sign(omega.eval_column(m, j));
    if (s[j] == 0) throw InvalidFunctional("pr_two: omega vanishes on a column");
  }
  for (int j = 1; j < n; ++j) {
    if (s[j] * s[j + 1] < 0) {
      if (j > n - k)
        throw InternalError("pr_two: nonzero bracket beyond n-k");
      total += j;
    }
  }
  return total;
}

std::vector<long> base_prerank_k1(const ConvexSeq& seq) {
  if (seq.k() != 1) throw InvalidInput("base_prerank_k1: requires k = 1");
  const auto mats = derive_matrices(seq);
  std::vector<long> out;
  out.reserve(mats.size());
  for (const auto& m : mats) {
    long alt = 0;
    for (int j = 1; j < m.n(); ++j) {
      const int a = sign(m.at(1, j));
      const int b = sign(m.at(1, j + 1));
      if (a == 0 || b == 0)
        throw InvalidInput("base_prerank_k1: zero entry");
      if (a * b < 0) ++alt;
    }
    out.push_back(alt);
  }
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Signals that the current omega draw leads to a dead end (non-generic
// downstairs sequence); the caller re-draws.
struct RedrawNeeded {};

Certificate build_level(const ConvexSeq& seq, std::uint64_t seed,
                        const BasePrerank* base);

Certificate build_base(const ConvexSeq& seq, const BasePrerank* base) {
  Certificate cert;
  cert.k = seq.k();
  cert.n = seq.n();
  cert.refined = seq;
  cert.splits.assign(seq.moves.size(), 1);
  cert.input_pos.resize(seq.moves.size() + 1);
  for (std::size_t i = 0; i < cert.input_pos.size(); ++i)
    cert.input_pos[i] = int(i);
  if (base && base->base_k == seq.k()) {
    cert.external_base = true;
    cert.pr = base->eval(seq);
    if (cert.pr.size() != seq.moves.size() + 1)
      throw InvalidInput("external base prerank: wrong value count");
  } else {
    cert.pr = base_prerank_k1(seq);
  }
  cert.pr_one_vals = cert.pr;
  cert.pr_two_vals.assign(cert.pr.size(), 0);
  cert.r_minus = 0;
  return cert;
}

Certificate build_with_omega(const ConvexSeq& seq, const Functional& omega,
                             std::uint64_t seed, const BasePrerank* base) {
  const int k = seq.k();
  const int n = seq.n();

  Certificate cert;
  cert.k = k;
  cert.n = n;
  cert.omega = omega.w;
  cert.refined = refine(seq, omega, &cert.splits);
  cert.input_pos.resize(seq.moves.size() + 1);
  {
    int pos = 0;
    cert.input_pos[0] = 0;
    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
      pos += cert.splits[i];
      cert.input_pos[i + 1] = pos;
    }
  }

  const auto mats = derive_matrices(cert.refined);
  const int len = int(cert.refined.moves.size());
  cert.move_types.reserve(len);
  for (int s = 0; s < len; ++s) {
    cert.move_types.push_back(
        classify_move(mats[s], mats[s + 1], cert.refined.moves[s], omega));
    if (cert.move_types.back().type_two &&
        sign(leading_minor(mats[s])) != sign(leading_minor(mats[s + 1])))
      throw InternalError("build_certificate: type II move flips the minor");
  }

  cert.r_minus = constructive_bound(k - 1, n - 1);
  cert.pr_two_vals.resize(len + 1);
  for (int i = 0; i <= len; ++i) cert.pr_two_vals[i] = pr_two(mats[i], omega);

  // Maximal type I runs partition the refined matrices.
  int start = 0;
  for (int s = 0; s <= len; ++s) {
    if (s < len && !cert.move_types[s].type_two) continue;
    Certificate::Run run;
    run.first = start;
    run.last = s;
    ConvexSeq down = reduce_run(mats, cert.refined.moves, run.first, run.last,
                                omega, &run.down_index);
    for (const auto& dm : derive_matrices(down))
      if (!is_generic(dm)) throw RedrawNeeded{};
    cert.children.push_back(
        build_level(down, mix(seed, cert.runs.size()), base));
    cert.runs.push_back(std::move(run));
    start = s + 1;
  }

  cert.pr_one_vals.resize(len + 1);
  cert.pr.resize(len + 1);
  for (std::size_t r = 0; r < cert.runs.size(); ++r) {
    const auto& run = cert.runs[r];
    for (int i = run.first; i <= run.last; ++i) {
      cert.pr_one_vals[i] =
          cert.children[r].pr_at_input(run.down_index[i - run.first]);
      cert.pr[i] = cert.pr_one_vals[i] + cert.pr_two_vals[i] * cert.r_minus;
    }
  }
  return cert;
}

Certificate build_level(const ConvexSeq& seq, std::uint64_t seed,
                        const BasePrerank* base) {
  if (seq.k() == 1 || (base && base->base_k == seq.k()))
    return build_base(seq, base);

  const int kRedrawBudget = 64;
  for (int attempt = 0; attempt < kRedrawBudget; ++attempt) {
    const Functional omega = choose_functional(seq, mix(seed, 1000 + attempt));
    try {
      return build_with_omega(seq, omega, mix(seed, attempt), base);
    } catch (const CoincidentRoots&) {
    } catch (const RedrawNeeded&) {
    }
  }
  throw std::runtime_error("build_certificate: functional re-draw budget exhausted");
}

}  // namespace

Certificate build_certificate(const ConvexSeq& seq, std::uint64_t seed,
                              const BasePrerank* base) {
  Certificate cert = build_level(seq, seed, base);
  const CheckReport rep = check_certificate(seq, cert, base);
  if (!rep.ok)
    throw InternalError("build_certificate: result fails verification: " +
                        rep.describe());
  return cert;
}

std::string CheckReport::describe() const {
  if (ok) return "pass";
  std::string s = "fail[" + rule + "]";
  if (!level_path.empty()) {
    s += " level ";
    for (std::size_t i = 0; i < level_path.size(); ++i)
      s += (i ? "." : "") + std::to_string(level_path[i]);
  }
  if (step >= 0) s += " step " + std::to_string(step);
  s += ": " + message;
  return s;
}

}  // namespace gcx
