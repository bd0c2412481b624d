#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "gcx/certify.hpp"
#include "gcx/io.hpp"

using namespace gcx;

TEST_CASE("sequence json round-trips bit-exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto seq = random_convex_seq(2, 4, 5, seed);
    const auto text = seq_to_json(seq);
    const auto back = seq_from_json(text);
    CHECK(back == seq);
    CHECK(seq_to_json(back) == text);
  }
}

TEST_CASE("rationals travel as strings") {
  const ConvexSeq seq{ExactMatrix(1, 2, {Rat(1, 3), Rat(-7, 2)}),
                      {MoveStep{1, Rat(5, 4)}}};
  const auto text = seq_to_json(seq);
  CHECK(text.find("\"1/3\"") != std::string::npos);
  CHECK(text.find("\"-7/2\"") != std::string::npos);
  CHECK(text.find("\"5/4\"") != std::string::npos);
  CHECK(seq_from_json(text) == seq);
}

TEST_CASE("certificate json round-trips and still checks") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int k = 1 + int(seed % 3);
    const auto seq = random_convex_seq(k, k + 2, 5, seed);
    const auto cert = build_certificate(seq, seed);
    const auto back = cert_from_json(cert_to_json(cert));
    CHECK(back.pr == cert.pr);
    CHECK(back.refined == cert.refined);
    CHECK(back.omega == cert.omega);
    CHECK(back.r_minus == cert.r_minus);
    CHECK(check_certificate(seq, back).ok);
    CHECK(cert_to_json(back) == cert_to_json(cert));
  }
}

TEST_CASE("witness json round-trips") {
  SearchConfig cfg;
  cfg.k = 1;
  cfg.n = 3;
  cfg.budget = 500;
  cfg.restarts = 2;
  cfg.seed = 3;
  const auto w = maximize_nsc(cfg);
  const auto back = witness_from_json(witness_to_json(w));
  CHECK(back.seq == w.seq);
  CHECK(back.achieved_nsc == w.achieved_nsc);
  CHECK(back.seed == w.seed);
  CHECK(witness_digest(back) == witness_digest(w));
}

TEST_CASE("curve json round-trips and honors the identity shorthand") {
  CurveSpec spec;
  spec.n = 3;
  spec.k = 2;
  spec.initial = UnipotentMatrix(3);
  spec.arcs.push_back(CurveArc{{Rat(1), Rat(1, 2)}, Rat(5)});
  const auto text = curve_to_json(spec);
  CHECK(text.find("\"identity\"") != std::string::npos);
  CHECK(curve_from_json(text) == spec);

  const auto parsed = curve_from_json(
      R"({"n":3,"k":2,"initial":"identity","arcs":[{"c":["1","1"],"t_max":"5"}]})");
  CHECK(parsed.initial == UnipotentMatrix(3));
  CHECK(parsed.arcs.size() == 1);
  CHECK(parsed.arcs[0].t_max == 5);

  spec.initial.set(3, 1, Rat(2, 7));
  CHECK(curve_from_json(curve_to_json(spec)) == spec);
}

TEST_CASE("unipotent matrix json accepts bare and wrapped forms") {
  UnipotentMatrix l(2);
  l.set(2, 1, Rat(3));
  const auto back = unipotent_from_json(unipotent_to_json(l));
  CHECK(back == l);
  CHECK(unipotent_from_json(R"({"matrix":[["1","0"],["3","1"]]})") == l);
}

TEST_CASE("malformed documents raise InvalidInput") {
  CHECK_THROWS_AS(seq_from_json("not json"), InvalidInput);
  CHECK_THROWS_AS(seq_from_json(R"({"k":2,"n":4})"), InvalidInput);
  CHECK_THROWS_AS(seq_from_json(R"({"k":2,"n":1,"initial":[]})"), InvalidInput);
  // Non-string rationals are rejected rather than rounded.
  CHECK_THROWS_AS(
      seq_from_json(R"({"k":1,"n":2,"initial":[[0.5,"1"]],"moves":[]})"),
      InvalidInput);
  // Non-positive move parameters violate convexity.
  CHECK_THROWS_AS(seq_from_json(
                      R"({"k":1,"n":2,"initial":[["1","1"]],
                          "moves":[{"j":1,"t":"-2"}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(cert_from_json("[]"), InvalidInput);
  CHECK_THROWS_AS(witness_from_json("{}"), InvalidInput);
  CHECK_THROWS_AS(curve_from_json(R"({"n":3,"k":2,"initial":"id","arcs":[]})"),
                  InvalidInput);
  CHECK_THROWS_AS(unipotent_from_json(R"([["1","2"],["0","1"]])"),
                  InvalidInput);
}

TEST_CASE("witness archive writes under GCX_WITNESS_DIR") {
  const auto dir =
      std::filesystem::temp_directory_path() / "gcx-io-test-witnesses";
  std::filesystem::remove_all(dir);
  setenv("GCX_WITNESS_DIR", dir.c_str(), 1);

  SearchConfig cfg;
  cfg.k = 1;
  cfg.n = 3;
  cfg.budget = 500;
  cfg.restarts = 2;
  cfg.seed = 4;
  const auto w = maximize_nsc(cfg);
  const auto path = archive_witness(w);
  CHECK(path == (dir / (witness_digest(w) + ".json")).string());
  const auto back = witness_from_json(read_file(path));
  CHECK(back.seq == w.seq);

  unsetenv("GCX_WITNESS_DIR");
  CHECK(witness_dir() == "witnesses");
  std::filesystem::remove_all(dir);
}
