#include "gcx/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <thread>

#include "gcx/bound.hpp"

namespace gcx {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string canonical_seq_string(const ConvexSeq& seq) {
  std::string s = std::to_string(seq.k()) + "x" + std::to_string(seq.n()) + ";";
  for (int r = 1; r <= seq.k(); ++r)
    for (int c = 1; c <= seq.n(); ++c)
      s += rat_str(seq.initial.at(r, c)) + ",";
  s += ";";
  for (const auto& mv : seq.moves)
    s += std::to_string(mv.j) + ":" + rat_str(mv.t) + ",";
  return s;
}

// Root of the affine minor value along the move, in (0, inf).
std::optional<Rat> minor_root(const ExactMatrix& m, int j, const IndexSet& J) {
  const Rat a = minor_det(m, J);
  const Rat b = minor_det(apply_move(m, MoveStep{j, Rat(1)}), J);
  if (a == b) return std::nullopt;
  Rat root = a / (a - b);
  if (sign(root) > 0) return root;
  return std::nullopt;
}

// All positive minor roots along a move at j, ascending.
std::vector<Rat> all_minor_roots(const ExactMatrix& m, int j,
                                 const std::vector<IndexSet>& subsets) {
  std::vector<Rat> roots;
  for (const auto& J : subsets)
    if (auto r = minor_root(m, j, J)) roots.push_back(*r);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// Parameter just beyond `root`: the simplest rational before the next
// event root (or past the last one). Simple parameters keep the matrix
// entries small along long schedules.
Rat beyond(const std::vector<Rat>& roots, const Rat& root) {
  for (const auto& r : roots)
    if (r > root) return simplest_between(root, r);
  return simplest_between(root, root + 2);
}

struct RestartResult {
  ConvexSeq seq{ExactMatrix(1, 2), {}};
  int best_nsc = -1;
  long proposals = 0;
  std::uint64_t stream = 0;
};

// J with column j replaced by j+1 (the slope minor of the move at j).
IndexSet shifted(const IndexSet& J, int j) {
  IndexSet out = J;
  for (int& c : out.cols)
    if (c == j) c = j + 1;
  std::sort(out.cols.begin(), out.cols.end());
  return out;
}

// Candidate move indices: j in J with j+1 not in J.
std::vector<int> movable(const IndexSet& J, int n) {
  std::vector<int> out;
  for (int j : J.cols)
    if (j < n &&
        std::find(J.cols.begin(), J.cols.end(), j + 1) == J.cols.end())
      out.push_back(j);
  return out;
}

// Walks the slope-minor tree towards a move whose banking makes m_J
// flippable: if some slope minor already opposes m_J, banking that move
// flips m_J directly; otherwise recurse into a slope minor to flip it
// first. Column sums grow strictly along the recursion, so it terminates.
// With probability `deep` the direct flip is deferred in favour of
// recharging deeper minors first; pure greed leaves flips on the table.
std::optional<std::pair<IndexSet, int>> cascade_step(const ExactMatrix& m,
                                                     const IndexSet& J,
                                                     std::mt19937_64& rng,
                                                     double deep) {
  auto js = movable(J, m.n());
  if (js.empty()) return std::nullopt;
  const int sj = sign(minor_det(m, J));
  std::shuffle(js.begin(), js.end(), rng);
  const bool explore =
      deep > 0 && std::uniform_real_distribution<double>(0, 1)(rng) < deep;
  if (!explore)
    for (int j : js)
      if (sign(minor_det(m, shifted(J, j))) != sj)
        return std::make_pair(J, j);
  for (int j : js)
    if (auto deeper = cascade_step(m, shifted(J, j), rng, deep)) return deeper;
  if (explore)
    for (int j : js)
      if (sign(minor_det(m, shifted(J, j))) != sj)
        return std::make_pair(J, j);
  return std::nullopt;
}

// A wound-spiral start: consecutive columns advance by almost a half-turn,
// so the chase dynamics can sweep many times before reaching the absorbing
// uniformly-signed state. Pairs of rows are rotation powers (distinct
// Pythagorean angles); an odd final row alternates sign. Entries get seeded
// noise until the matrix is generic.
std::optional<ExactMatrix> spiral_initial(int k, int n,
                                          std::mt19937_64& rng) {
  // (sin, cos_abs, hyp): rotation by pi - asin(sin/hyp).
  static constexpr std::array<std::array<long, 3>, 4> kTriples = {
      {{9, 40, 41}, {5, 12, 13}, {7, 24, 25}, {20, 21, 29}}};
  ExactMatrix m(k, n);
  for (int p = 0; p + 1 < k; p += 2) {
    const auto& tr = kTriples[(p / 2) % kTriples.size()];
    const Rat c(-tr[1], tr[2]), s(tr[0], tr[2]);
    Rat x(1), y(0);
    for (int col = 1; col <= n; ++col) {
      m.at(p + 1, col) = x;
      m.at(p + 2, col) = y;
      const Rat nx = c * x - s * y;
      y = s * x + c * y;
      x = nx;
    }
  }
  if (k % 2 == 1)
    for (int col = 1; col <= n; ++col)
      m.at(k, col) = (col % 2 == 1) ? 1 : -1;
  std::uniform_int_distribution<long> noise(-3, 3);
  for (int tries = 0; tries < 32; ++tries) {
    ExactMatrix cand = m;
    if (tries > 0)
      for (int r = 1; r <= k; ++r)
        for (int col = 1; col <= n; ++col) {
          Rat p(noise(rng), 1009);
          p.canonicalize();
          cand.at(r, col) += p;
        }
    if (is_generic(cand)) return cand;
  }
  return std::nullopt;
}

RestartResult run_restart(const SearchConfig& cfg, int restart) {
  const std::uint64_t stream = mix(cfg.seed, std::uint64_t(restart));
  std::mt19937_64 rng(stream);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto subsets = all_index_sets(cfg.k, cfg.n);
  IndexSet lead;
  for (int i = 1; i <= cfg.k; ++i) lead.cols.push_back(i);

  RestartResult res;
  res.stream = stream;
  long used = 0;
  std::uint64_t episode = 0;
  const bool anneal = cfg.strategy == SearchStrategy::Anneal;
  while (used < cfg.budget) {
    ++episode;
    ConvexSeq seq{ExactMatrix(cfg.k, cfg.n), {}};
    std::optional<ExactMatrix> spiral;
    if (anneal && episode % 2 == 1) spiral = spiral_initial(cfg.k, cfg.n, rng);
    if (spiral)
      seq.initial = std::move(*spiral);
    else
      seq = random_convex_seq(cfg.k, cfg.n, 0, mix(stream, episode),
                              cfg.magnitude);
    ExactMatrix cur = seq.initial;
    int cur_nsc = 0;
    if (res.best_nsc < 0) {
      res.best_nsc = 0;
      res.seq = seq;
    }
    while (used < cfg.budget && int(seq.moves.size()) < cfg.max_length) {
      ++used;
      // Cooling schedule: exploration fades as the budget burns down.
      const double heat = 1.0 - double(used) / double(cfg.budget);
      const double temp = anneal ? 0.02 + 0.08 * heat : 0.0;
      const double deep = anneal ? 0.10 + 0.15 * heat : 0.0;

      const int lead_sign = sign(leading_minor(cur));

      // Bank: cross the exact root of m_J along the move at j, stopping at
      // the midpoint to the next event root so the result stays generic.
      auto bank = [&](const IndexSet& J, int j) -> bool {
        const auto root = minor_root(cur, j, J);
        if (!root) return false;
        const MoveStep mv{j, beyond(all_minor_roots(cur, j, subsets), *root)};
        ExactMatrix next = apply_move(cur, mv);
        if (!is_generic(next)) return false;
        seq.moves.push_back(mv);
        cur = std::move(next);
        return true;
      };

      bool applied = false;
      bool stuck = false;
      if (unit(rng) >= temp) {
        if (auto step = cascade_step(cur, lead, rng, deep))
          applied = bank(step->first, step->second);
        else
          stuck = true;  // uniform signs over the whole slope tree: terminal
      }
      if (!applied && !stuck) {
        // Anneal noise (or a failed bank): a random generic move.
        const int j = std::uniform_int_distribution<int>(1, cfg.n - 1)(rng);
        Rat t(std::uniform_int_distribution<int>(1, 4 * cfg.magnitude)(rng),
              std::uniform_int_distribution<int>(1, 2 * cfg.magnitude)(rng));
        t.canonicalize();
        ExactMatrix next = apply_move(cur, MoveStep{j, t});
        if (is_generic(next)) {
          seq.moves.push_back(MoveStep{j, t});
          cur = std::move(next);
          applied = true;
        }
      }
      if (applied && sign(leading_minor(cur)) != lead_sign) ++cur_nsc;
      if (stuck) break;  // fresh episode: no flip is reachable any more
      if (cur_nsc > res.best_nsc) {
        res.best_nsc = cur_nsc;
        res.seq = seq;
        if (cfg.target && res.best_nsc >= *cfg.target) {
          res.proposals = used;
          return res;
        }
      }
    }
  }
  res.proposals = used;
  return res;
}

}  // namespace

Witness maximize_nsc(const SearchConfig& cfg, std::ostream* progress) {
  if (!(0 < cfg.k && cfg.k < cfg.n))
    throw InvalidInput("maximize_nsc: need 0 < k < n");
  if (cfg.budget <= 0) throw InvalidInput("maximize_nsc: budget must be > 0");
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<RestartResult> results(cfg.restarts);
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) results[r] = run_restart(cfg, r);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int r = t; r < cfg.restarts; r += threads)
          results[r] = run_restart(cfg, r);
      });
    for (auto& th : pool) th.join();
  }

  // Deterministic merge: max nsc, then shorter sequence, then the
  // lexicographically smallest serialization.
  int best = -1;
  int best_running = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& c = results[r];
    if (progress) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      best_running = std::max(best_running, c.best_nsc);
      *progress << r << "," << c.proposals << "," << best_running << "," << ms
                << "\n";
    }
    if (best < 0) {
      best = r;
      continue;
    }
    const auto& b = results[best];
    if (c.best_nsc != b.best_nsc) {
      if (c.best_nsc > b.best_nsc) best = r;
      continue;
    }
    if (c.seq.moves.size() != b.seq.moves.size()) {
      if (c.seq.moves.size() < b.seq.moves.size()) best = r;
      continue;
    }
    if (canonical_seq_string(c.seq) < canonical_seq_string(b.seq)) best = r;
  }

  Witness w;
  w.seq = results[best].seq;
  w.achieved_nsc = results[best].best_nsc;
  w.config = cfg;
  w.seed = results[best].stream;

  if (theorem_bound_strict(cfg.k, cfg.n) &&
      Rat(w.achieved_nsc) >= theorem_bound(cfg.k, cfg.n))
    throw RedAlert("search reached the strict theorem bound: bug signal");
  return w;
}

WitnessReport verify_witness(const Witness& w) {
  WitnessReport rep;
  for (const auto& mv : w.seq.moves)
    if (sign(mv.t) <= 0) {
      rep.ok = false;
      rep.message = "convexity violation: non-positive move parameter";
      return rep;
    }
  std::vector<ExactMatrix> mats;
  try {
    mats = derive_matrices(w.seq);
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.message = std::string("invalid sequence: ") + e.what();
    return rep;
  }
  for (std::size_t s = 0; s < mats.size(); ++s)
    if (!is_generic(mats[s])) {
      rep.ok = false;
      rep.message = "matrix " + std::to_string(s) + " is not generic";
      return rep;
    }
  rep.recomputed_nsc = nsc(mats);
  if (rep.recomputed_nsc != w.achieved_nsc) {
    rep.ok = false;
    rep.message = "stored nsc " + std::to_string(w.achieved_nsc) +
                  " != recomputed " + std::to_string(rep.recomputed_nsc);
    return rep;
  }
  const int k = w.seq.k(), n = w.seq.n();
  if (theorem_bound_strict(k, n) &&
      Rat(rep.recomputed_nsc) >= theorem_bound(k, n)) {
    rep.ok = false;
    rep.message = "nsc reaches the strict theorem bound (red alert)";
    return rep;
  }
  if (rep.recomputed_nsc > conjecture_bound(k, n)) {
    rep.conjecture_counterexample = true;
    rep.message = "conjecture counterexample candidate";
  }
  return rep;
}

std::string witness_digest(const Witness& w) {
  const std::string s = canonical_seq_string(w.seq) + "#" +
                        std::to_string(w.achieved_nsc);
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gcx
