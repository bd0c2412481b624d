#include <sstream>

#include "doctest.h"
#include "gcx/search.hpp"

using namespace gcx;

namespace {

SearchConfig cfg(int k, int n, long budget, int restarts,
                 std::uint64_t seed) {
  SearchConfig c;
  c.k = k;
  c.n = n;
  c.budget = budget;
  c.restarts = restarts;
  c.seed = seed;
  c.target = k * (n - k);
  return c;
}

}  // namespace

TEST_CASE("search reaches the dimension target on small shapes") {
  auto w13 = maximize_nsc(cfg(1, 3, 4000, 4, 1));
  CHECK(w13.achieved_nsc >= 2);
  CHECK(nsc(w13.seq) == w13.achieved_nsc);

  auto w24 = maximize_nsc(cfg(2, 4, 20000, 4, 1));
  CHECK(w24.achieved_nsc >= 4);
  CHECK(nsc(w24.seq) == w24.achieved_nsc);
}

TEST_CASE("search is deterministic for a fixed seed") {
  const auto a = maximize_nsc(cfg(2, 4, 3000, 3, 42));
  const auto b = maximize_nsc(cfg(2, 4, 3000, 3, 42));
  CHECK(a.achieved_nsc == b.achieved_nsc);
  CHECK(a.seq == b.seq);
  CHECK(a.seed == b.seed);

  const auto c = maximize_nsc(cfg(2, 4, 3000, 3, 43));
  CHECK(c.achieved_nsc >= 0);  // a different stream still yields a witness
}

TEST_CASE("result does not depend on the thread count") {
  auto one = cfg(2, 4, 2500, 4, 7);
  auto four = one;
  one.threads = 1;
  four.threads = 4;
  const auto a = maximize_nsc(one);
  const auto b = maximize_nsc(four);
  CHECK(a.achieved_nsc == b.achieved_nsc);
  CHECK(a.seq == b.seq);
}

TEST_CASE("progress stream emits well-formed csv rows") {
  std::ostringstream progress;
  maximize_nsc(cfg(1, 3, 500, 2, 5), &progress);
  std::istringstream in(progress.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    long restart, proposals, best, ms;
    char c1, c2, c3;
    std::istringstream row(line);
    REQUIRE((row >> restart >> c1 >> proposals >> c2 >> best >> c3 >> ms));
    CHECK(c1 == ',');
    CHECK(c2 == ',');
    CHECK(c3 == ',');
    CHECK(restart >= 0);
    CHECK(best >= 0);
    ++rows;
  }
  CHECK(rows >= 1);
}

TEST_CASE("verify_witness accepts the genuine article") {
  const auto w = maximize_nsc(cfg(1, 4, 4000, 3, 9));
  const auto rep = verify_witness(w);
  CHECK(rep.ok);
  CHECK(rep.recomputed_nsc == w.achieved_nsc);
  CHECK_FALSE(rep.conjecture_counterexample);
}

TEST_CASE("verify_witness rejects tampering") {
  auto w = maximize_nsc(cfg(2, 4, 8000, 3, 11));
  REQUIRE(w.achieved_nsc >= 1);

  SUBCASE("inflated nsc claim") {
    auto bad = w;
    bad.achieved_nsc += 1;
    CHECK_FALSE(verify_witness(bad).ok);
  }
  SUBCASE("negated move parameter breaks convexity") {
    auto bad = w;
    REQUIRE_FALSE(bad.seq.moves.empty());
    bad.seq.moves[0].t = -bad.seq.moves[0].t;
    CHECK_FALSE(verify_witness(bad).ok);
  }
}

TEST_CASE("witness digest is stable and content-sensitive") {
  const auto w = maximize_nsc(cfg(1, 3, 1000, 2, 13));
  const auto d = witness_digest(w);
  CHECK(d.size() == 16);
  CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(witness_digest(w) == d);

  auto other = w;
  other.achieved_nsc += 1;
  CHECK(witness_digest(other) != d);
}
