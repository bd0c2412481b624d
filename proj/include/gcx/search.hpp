#ifndef GCX_SEARCH_HPP
#define GCX_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "gcx/core.hpp"

namespace gcx {

enum class SearchStrategy { Greedy, Anneal };

struct SearchConfig {
  int k = 0, n = 0;
  long budget = 100000;  // move proposals per restart
  int restarts = 8;
  std::uint64_t seed = 0;
  SearchStrategy strategy = SearchStrategy::Anneal;
  int max_length = 256;  // moves per candidate sequence
  int magnitude = 4;     // initial-matrix entry bound
  std::optional<int> target;  // stop early when reached
  int threads = 1;
};

struct Witness {
  ConvexSeq seq{ExactMatrix(1, 2), {}};
  int achieved_nsc = 0;
  SearchConfig config;
  std::uint64_t seed = 0;  // provenance: the restart stream that found it
};

// Raised when a witness reaches the strict theorem bound, which would
// contradict the upper-bound theorem; treated as a bug signal (exit 5).
struct RedAlert : std::logic_error {
  using std::logic_error::logic_error;
};

// Seeded heuristic maximization of nsc. Deterministic for a fixed config,
// independent of the thread count: restart streams are derived from
// hash(seed, restart) and merged by max nsc with a lexicographic tie-break.
// `progress`, when given, receives CSV lines (restart, proposals, best_nsc,
// elapsed_ms).
Witness maximize_nsc(const SearchConfig& cfg, std::ostream* progress = nullptr);

struct WitnessReport {
  bool ok = true;
  std::string message;
  int recomputed_nsc = 0;
  bool conjecture_counterexample = false;
};

// Re-validates convexity and genericity, recomputes nsc, and compares it
// against the stored value and the bounds.
WitnessReport verify_witness(const Witness& w);

// Canonical serialization hash used for content-addressed witness files.
std::string witness_digest(const Witness& w);

}  // namespace gcx

#endif
