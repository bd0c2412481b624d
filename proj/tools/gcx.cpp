// gcx: exact computations on convex sequences of matrices.
//
// Subcommands: nsc, certify, check, bound, search, verify, reduce,
// curve {zeros|discretize|lift|factor}, selftest.
// Exit codes: 0 success, 2 bad input, 3 certificate check failure,
// 4 search target not reached, 5 internal invariant violation.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gcx/bound.hpp"
#include "gcx/certify.hpp"
#include "gcx/core.hpp"
#include "gcx/curve.hpp"
#include "gcx/io.hpp"
#include "gcx/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCheck = 3;
constexpr int kExitTarget = 4;
constexpr int kExitInternal = 5;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    gcx::write_file(out_path, text);
}

int cmd_bound(int k, int n, const std::string& kind, int table_max,
              bool csv) {
  auto one = [&](int kk, int nn) -> std::string {
    if (kind == "conjecture")
      return std::to_string(gcx::conjecture_bound(kk, nn));
    if (kind == "theorem") return gcx::rat_str(gcx::theorem_bound(kk, nn));
    if (kind == "dual") return gcx::rat_str(gcx::dual_bound(kk, nn));
    if (kind == "constructive")
      return std::to_string(gcx::constructive_bound(kk, nn));
    throw gcx::InvalidInput("unknown bound kind: " + kind);
  };
  if (table_max == 0) {
    std::cout << one(k, n) << "\n";
    return kExitOk;
  }
  if (csv) std::cout << "k,n," << kind << "\n";
  for (int nn = 2; nn <= table_max; ++nn)
    for (int kk = 1; kk < nn; ++kk) {
      if (csv)
        std::cout << kk << "," << nn << "," << one(kk, nn) << "\n";
      else {
        std::ostringstream line;
        line << "k=" << kk << " n=" << nn << "  " << kind << "="
             << one(kk, nn);
        std::cout << line.str() << "\n";
      }
    }
  return kExitOk;
}

int cmd_search(gcx::SearchConfig cfg, const std::string& out,
               bool want_progress, bool archive) {
  gcx::Witness w = gcx::maximize_nsc(cfg, want_progress ? &std::cerr : nullptr);
  const auto rep = gcx::verify_witness(w);
  if (!rep.ok) throw gcx::InternalError("search witness failed verification: " +
                                        rep.message);
  std::cerr << "best nsc " << w.achieved_nsc << " (conjecture bound "
            << gcx::conjecture_bound(cfg.k, cfg.n) << ")\n";
  if (rep.conjecture_counterexample) {
    std::cerr << "conjecture counterexample candidate; certifying and "
                 "archiving\n";
    gcx::build_certificate(w.seq, cfg.seed);
    std::cerr << "archived " << gcx::archive_witness(w) << "\n";
  } else if (archive) {
    std::cerr << "archived " << gcx::archive_witness(w) << "\n";
  }
  emit(gcx::witness_to_json(w), out);
  if (cfg.target && w.achieved_nsc < *cfg.target) return kExitTarget;
  return kExitOk;
}

int cmd_reduce(const std::string& in, const std::string& out,
               std::uint64_t seed) {
  const auto seq = gcx::seq_from_json(gcx::read_file(in));
  if (seq.k() < 2)
    throw gcx::InvalidInput("reduce: need k >= 2 (k = 1 is the base level)");
  const auto cert = gcx::build_certificate(seq, seed);
  std::ostringstream ss;
  ss << "{\n  \"omega\": [";
  for (std::size_t i = 0; i < cert.omega.size(); ++i)
    ss << (i ? ", " : "") << "\"" << gcx::rat_str(cert.omega[i]) << "\"";
  ss << "],\n  \"move_types\": [";
  for (std::size_t i = 0; i < cert.move_types.size(); ++i)
    ss << (i ? ", " : "") << "\""
       << (cert.move_types[i].type_two ? "II" : "I") << "\"";
  ss << "],\n  \"runs\": [\n";
  for (std::size_t r = 0; r < cert.runs.size(); ++r) {
    std::istringstream child(gcx::seq_to_json(cert.children[r].refined, 2));
    ss << "    ";
    std::string line;
    bool first = true;
    while (std::getline(child, line)) {
      if (!first) ss << "\n    ";
      ss << line;
      first = false;
    }
    ss << (r + 1 < cert.runs.size() ? ",\n" : "\n");
  }
  ss << "  ]\n}\n";
  emit(ss.str(), out);
  return kExitOk;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cerr << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };
  using namespace gcx;
  check(rat_str(theorem_bound(3, 6)) == "64", "theorem_bound(3,6) == 64");
  check(conjecture_bound(3, 6) == 9, "conjecture_bound(3,6) == 9");
  check(rat_str(dual_bound(4, 6)) == "10", "dual_bound(4,6) == 10");
  check(constructive_bound(2, 4) == 8, "constructive_bound(2,4) == 8");
  for (std::uint64_t s = 1; s <= 20 && failures == 0; ++s) {
    const auto seq = random_convex_seq(2 + int(s % 2), 5, 8, s);
    const auto cert = build_certificate(seq, s);
    const auto rep = check_certificate(seq, cert);
    check(rep.ok, "certificate round-trip seed " + std::to_string(s));
    const int changes = nsc(seq);
    check(changes <= cert.pr_at_input(0) -
                         cert.pr_at_input(int(seq.length())),
          "nsc bounded by prerank drop, seed " + std::to_string(s));
  }
  for (std::uint64_t s = 1; s <= 10 && failures == 0; ++s) {
    const auto w = random_convex_seq(1, 4, 6, 900 + s);
    const auto spec = continuize_seq(w);
    check(nz(spec) >= nsc(w), "nz(continuize) >= nsc, seed " +
                                  std::to_string(s));
  }
  {
    SearchConfig cfg;
    cfg.k = 1;
    cfg.n = 3;
    cfg.budget = 2000;
    cfg.restarts = 2;
    cfg.seed = 7;
    const auto w = maximize_nsc(cfg);
    check(w.achieved_nsc == 2, "search reaches nsc = 2 for (1,3)");
    check(verify_witness(w).ok, "search witness verifies");
  }
  std::cerr << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? kExitOk : kExitInternal;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact convex-sequence computations"};
  app.require_subcommand(1);

  std::string in, out, cert_path, kind = "conjecture", strategy = "anneal";
  int k = 0, n = 0, table_max = 0, restarts = 8, max_length = 256,
      magnitude = 4, threads = 1, target = -1;
  long budget = 100000;
  std::uint64_t seed = 0;
  bool csv = false, progress = false, archive = false;

  auto* c_nsc = app.add_subcommand("nsc", "count leading-minor sign changes");
  c_nsc->add_option("-i,--in", in, "sequence JSON")->required();

  auto* c_cert = app.add_subcommand("certify", "build a prerank certificate");
  c_cert->add_option("-i,--in", in)->required();
  c_cert->add_option("-o,--out", out);
  c_cert->add_option("--seed", seed);

  auto* c_check = app.add_subcommand("check", "verify a certificate");
  c_check->add_option("-i,--in", in)->required();
  c_check->add_option("-c,--cert", cert_path)->required();

  auto* c_bound = app.add_subcommand("bound", "print bounds");
  c_bound->add_option("--k", k);
  c_bound->add_option("--n", n);
  c_bound->add_option("--kind", kind)
      ->check(CLI::IsMember({"conjecture", "theorem", "dual", "constructive"}));
  c_bound->add_option("--table", table_max, "emit a table up to n = N_MAX");
  c_bound->add_flag("--csv", csv);

  auto* c_search = app.add_subcommand("search", "maximize nsc heuristically");
  c_search->add_option("--k", k)->required();
  c_search->add_option("--n", n)->required();
  c_search->add_option("--budget", budget);
  c_search->add_option("--restarts", restarts);
  c_search->add_option("--seed", seed);
  c_search->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"greedy", "anneal"}));
  c_search->add_option("--target", target);
  c_search->add_option("--max-length", max_length);
  c_search->add_option("--magnitude", magnitude);
  c_search->add_option("--threads", threads);
  c_search->add_option("-o,--out", out);
  c_search->add_flag("--progress", progress, "CSV progress on stderr");
  c_search->add_flag("--archive", archive, "store in the witness library");

  auto* c_verify = app.add_subcommand("verify", "re-verify a stored witness");
  c_verify->add_option("-i,--in", in)->required();
  c_verify->add_option("--seed", seed);

  auto* c_reduce = app.add_subcommand("reduce", "project one level down");
  c_reduce->add_option("-i,--in", in)->required();
  c_reduce->add_option("-o,--out", out);
  c_reduce->add_option("--seed", seed);

  auto* c_curve = app.add_subcommand("curve", "convex curve operations");
  c_curve->require_subcommand(1);
  auto* c_zeros = c_curve->add_subcommand("zeros", "count leading-minor zeros");
  c_zeros->add_option("-i,--in", in)->required();
  auto* c_disc = c_curve->add_subcommand("discretize", "curve to sequence");
  c_disc->add_option("-i,--in", in)->required();
  c_disc->add_option("-o,--out", out);
  auto* c_lift = c_curve->add_subcommand("lift", "sequence to curve");
  c_lift->add_option("-i,--in", in)->required();
  c_lift->add_option("-o,--out", out);
  auto* c_factor = c_curve->add_subcommand("factor",
                                           "positive factorization of a "
                                           "unipotent matrix");
  c_factor->add_option("-i,--in", in)->required();

  auto* c_self = app.add_subcommand("selftest", "run the built-in checks");
  (void)c_self;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  if (c_nsc->parsed()) {
    const auto seq = gcx::seq_from_json(gcx::read_file(in));
    std::cout << gcx::nsc(seq) << "\n";
    return kExitOk;
  }
  if (c_cert->parsed()) {
    const auto seq = gcx::seq_from_json(gcx::read_file(in));
    const auto cert = gcx::build_certificate(seq, seed);
    emit(gcx::cert_to_json(cert), out);
    std::cerr << "pr drop " << cert.pr_at_input(0) << " -> "
              << cert.pr_at_input(int(seq.length())) << "\n";
    return kExitOk;
  }
  if (c_check->parsed()) {
    const auto seq = gcx::seq_from_json(gcx::read_file(in));
    const auto cert = gcx::cert_from_json(gcx::read_file(cert_path));
    const auto rep = gcx::check_certificate(seq, cert);
    if (!rep.ok) {
      std::cerr << rep.describe() << "\n";
      return kExitCheck;
    }
    std::cout << "certificate ok\n";
    return kExitOk;
  }
  if (c_bound->parsed()) {
    if (table_max == 0 && !(0 < k && k < n))
      throw gcx::InvalidInput("bound: need 0 < k < n (or --table)");
    return cmd_bound(k, n, kind, table_max, csv);
  }
  if (c_search->parsed()) {
    gcx::SearchConfig cfg;
    cfg.k = k;
    cfg.n = n;
    cfg.budget = budget;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.strategy = strategy == "greedy" ? gcx::SearchStrategy::Greedy
                                        : gcx::SearchStrategy::Anneal;
    cfg.max_length = max_length;
    cfg.magnitude = magnitude;
    cfg.threads = threads;
    if (target >= 0) cfg.target = target;
    return cmd_search(cfg, out, progress, archive);
  }
  if (c_verify->parsed()) {
    const auto w = gcx::witness_from_json(gcx::read_file(in));
    const auto rep = gcx::verify_witness(w);
    if (!rep.ok) {
      std::cerr << rep.message << "\n";
      return kExitCheck;
    }
    std::cout << "witness ok: nsc " << rep.recomputed_nsc << "\n";
    if (rep.conjecture_counterexample) {
      std::cerr << "conjecture counterexample candidate; certifying and "
                   "archiving\n";
      gcx::build_certificate(w.seq, seed);
      std::cerr << "archived " << gcx::archive_witness(w) << "\n";
    }
    return kExitOk;
  }
  if (c_reduce->parsed()) return cmd_reduce(in, out, seed);
  if (c_zeros->parsed()) {
    const auto spec = gcx::curve_from_json(gcx::read_file(in));
    std::cout << gcx::nz(spec) << "\n";
    return kExitOk;
  }
  if (c_disc->parsed()) {
    const auto spec = gcx::curve_from_json(gcx::read_file(in));
    emit(gcx::seq_to_json(gcx::discretize_curve(spec)), out);
    return kExitOk;
  }
  if (c_lift->parsed()) {
    const auto seq = gcx::seq_from_json(gcx::read_file(in));
    emit(gcx::curve_to_json(gcx::continuize_seq(seq)), out);
    return kExitOk;
  }
  if (c_factor->parsed()) {
    const auto l = gcx::unipotent_from_json(gcx::read_file(in));
    const auto params =
        gcx::factor_pos_eta(l, gcx::canonical_eta_word(l.n()));
    if (!params) {
      std::cerr << "not totally positive along the canonical word\n";
      return kExitCheck;
    }
    std::cout << "[";
    for (std::size_t i = 0; i < params->size(); ++i)
      std::cout << (i ? ", " : "") << "\"" << gcx::rat_str((*params)[i])
                << "\"";
    std::cout << "]\n";
    return kExitOk;
  }
  if (c_self->parsed()) return cmd_selftest();
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const gcx::RedAlert& e) {
    std::cerr << "red alert: " << e.what() << "\n";
    return kExitInternal;
  } catch (const gcx::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const gcx::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
