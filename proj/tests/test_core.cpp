#include <vector>

#include "doctest.h"
#include "gcx/core.hpp"

using namespace gcx;

namespace {

ExactMatrix mat(int k, int n, const std::vector<std::string>& entries) {
  std::vector<Rat> e;
  for (const auto& s : entries) e.push_back(parse_rat(s));
  return ExactMatrix(k, n, std::move(e));
}

// Columns (1,0),(0,1),(1,1).
ExactMatrix m23() { return mat(2, 3, {"1", "0", "1", "0", "1", "1"}); }

}  // namespace

TEST_CASE("apply_move arithmetic") {
  auto m = mat(1, 2, {"-1", "1"});
  auto r = apply_move(m, {1, Rat(2)});
  CHECK(r.at(1, 1) == 1);
  CHECK(r.at(1, 2) == 1);

  r = apply_move(m, {1, Rat(1)});
  CHECK(r.at(1, 1) == 0);  // root case, leaves the generic set

  auto m2 = apply_move(m23(), {2, Rat(1)});
  CHECK(m2.at(1, 1) == 1);
  CHECK(m2.at(2, 1) == 0);
  CHECK(m2.at(1, 2) == 1);
  CHECK(m2.at(2, 2) == 2);
  CHECK(m2.at(1, 3) == 1);
  CHECK(m2.at(2, 3) == 1);
}

TEST_CASE("apply_move rejects bad input") {
  auto m = m23();
  CHECK_THROWS_AS(apply_move(m, {3, Rat(1)}), InvalidInput);
  CHECK_THROWS_AS(apply_move(m, {0, Rat(1)}), InvalidInput);
  CHECK_THROWS_AS(apply_move(m, {1, Rat(0)}), InvalidInput);
  CHECK_THROWS_AS(apply_move(m, {1, Rat(-1)}), InvalidInput);
}

TEST_CASE("minor values") {
  auto m = m23();
  CHECK(minor_det(m, {{1, 2}}) == 1);
  CHECK(minor_det(m, {{2, 3}}) == -1);
  CHECK(minor_det(m, {{1, 3}}) == 1);
  CHECK_THROWS_AS(minor_det(m, {{2, 1}}), InvalidInput);
  CHECK_THROWS_AS(minor_det(m, {{1, 2, 3}}), InvalidInput);
}

TEST_CASE("leading minor") {
  CHECK(leading_minor(m23()) == 1);
  CHECK(leading_minor(mat(1, 2, {"-1", "1"})) == -1);
  CHECK(leading_minor(mat(1, 2, {"0", "1"})) == 0);
}

TEST_CASE("genericity") {
  CHECK(is_generic(m23()));
  CHECK_FALSE(is_generic(mat(2, 3, {"1", "0", "1", "0", "1", "0"})));
  CHECK_FALSE(is_generic(mat(1, 3, {"1", "0", "2"})));
}

TEST_CASE("nsc basics") {
  ConvexSeq s1{mat(1, 2, {"-1", "1"}), {{1, Rat(2)}}};
  CHECK(nsc(s1) == 1);
  ConvexSeq s2{mat(1, 2, {"1", "1"}), {{1, Rat(5)}}};
  CHECK(nsc(s2) == 0);
  ConvexSeq s0{mat(1, 2, {"-1", "1"}), {}};
  CHECK(nsc(s0) == 0);  // degenerate length

  ConvexSeq bad{mat(1, 2, {"-1", "1"}), {{1, Rat(1)}}};
  CHECK_THROWS_AS(nsc(bad), ZeroLeadingMinor);
  try {
    nsc(bad);
  } catch (const ZeroLeadingMinor& e) {
    CHECK(e.step == 1);
  }
}

TEST_CASE("event roots of affine observables") {
  auto m = mat(1, 2, {"-1", "1"});
  auto lead = Observable::minor({{1}});
  auto roots = event_roots(m, {1, Rat(2)}, {lead});
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == 1);

  auto p = mat(1, 2, {"1", "1"});
  CHECK(event_roots(p, {1, Rat(2)}, {lead}).empty());

  // det((0,1)+t(1,1),(1,1)) = -1 for all t: no roots on (0,1).
  CHECK(event_roots(m23(), {2, Rat(1)}, {Observable::minor({{2, 3}})}).empty());
}

TEST_CASE("minor invariance under moves not touching J") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto seq = random_convex_seq(2, 4, 3, seed);
    auto mats = derive_matrices(seq);
    for (std::size_t s = 0; s < seq.moves.size(); ++s) {
      const int j = seq.moves[s].j;
      for (const auto& J : all_index_sets(2, 4)) {
        const bool in_j = std::find(J.cols.begin(), J.cols.end(), j) != J.cols.end();
        const bool in_j1 =
            std::find(J.cols.begin(), J.cols.end(), j + 1) != J.cols.end();
        if (!in_j || in_j1)
          CHECK(minor_det(mats[s], J) == minor_det(mats[s + 1], J));
      }
    }
  }
}

TEST_CASE("leading minor is affine in t and constant for j > k") {
  auto seq = random_convex_seq(2, 5, 0, 3);
  const auto& m = seq.initial;
  for (int j = 1; j < 5; ++j) {
    const Rat a = leading_minor(m);
    const Rat b = leading_minor(apply_move(m, {j, Rat(1)}));
    const Rat c = leading_minor(apply_move(m, {j, Rat(2)}));
    CHECK(c - b == b - a);  // affine
    if (j > 2) CHECK(a == b);
  }
}

TEST_CASE("moves at the same index compose additively") {
  auto m = m23();
  for (int j = 1; j <= 2; ++j) {
    auto lhs = apply_move(apply_move(m, {j, Rat(1, 3)}), {j, Rat(2, 5)});
    auto rhs = apply_move(m, {j, Rat(1, 3) + Rat(2, 5)});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("nsc invariant under fixed positive diagonal scaling") {
  auto seq = random_convex_seq(2, 4, 8, 11);
  std::vector<Rat> d{Rat(2), Rat(1, 3), Rat(5), Rat(7, 2)};
  auto mats = derive_matrices(seq);
  std::vector<ExactMatrix> scaled;
  for (const auto& m : mats) {
    ExactMatrix sm = m;
    for (int c = 1; c <= 4; ++c)
      for (int r = 1; r <= 2; ++r) sm.at(r, c) = m.at(r, c) * d[c - 1];
    scaled.push_back(sm);
  }
  CHECK(nsc(mats) == nsc(scaled));
}

TEST_CASE("event_roots bracketing cross-check") {
  // Roots returned are exactly where sign changes happen: evaluate at
  // midpoints between consecutive roots and at the ends.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto seq = random_convex_seq(2, 4, 1, seed + 100);
    const auto& m = seq.initial;
    const MoveStep mv{seq.moves[0].j, Rat(10)};
    std::vector<Observable> obs;
    for (const auto& J : all_index_sets(2, 4)) obs.push_back(Observable::minor(J));
    auto roots = event_roots(m, mv, obs);
    std::vector<Rat> samples{Rat(0)};
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i + 1 < roots.size())
        samples.push_back((roots[i] + roots[i + 1]) / 2);
      else
        samples.push_back((roots[i] + mv.t) / 2);
    }
    // Between consecutive samples there is exactly one listed root, and some
    // observable changes sign across it.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      bool flipped = false;
      for (const auto& o : obs) {
        auto a = i == 0 ? o.eval(m)
                        : o.eval(apply_move(m, {mv.j, samples[i]}));
        auto b = o.eval(apply_move(m, {mv.j, samples[i + 1]}));
        if (sign(a) * sign(b) < 0) flipped = true;
      }
      CHECK(flipped);
    }
  }
}

TEST_CASE("random_convex_seq contract") {
  auto s0 = random_convex_seq(1, 3, 0, 7);
  CHECK(s0.moves.empty());
  CHECK(is_generic(s0.initial));

  auto s1 = random_convex_seq(2, 4, 10, 1);
  auto mats = derive_matrices(s1);
  CHECK(mats.size() == 11);
  for (const auto& m : mats) CHECK(is_generic(m));

  auto s2 = random_convex_seq(2, 4, 10, 1);
  CHECK(s1 == s2);  // determinism
}
