#include "gcx/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gcx {

using nlohmann::json;

namespace {

json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from(const json& j, const char* what) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw InvalidInput(std::string(what) + ": rationals must be strings");
}

json matrix_json(const ExactMatrix& m) {
  json rows = json::array();
  for (int r = 1; r <= m.k(); ++r) {
    json row = json::array();
    for (int c = 1; c <= m.n(); ++c) row.push_back(rat_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix matrix_from(const json& j, int k, int n) {
  if (!j.is_array() || int(j.size()) != k)
    throw InvalidInput("matrix: expected " + std::to_string(k) + " rows");
  std::vector<Rat> e;
  e.reserve(std::size_t(k) * n);
  for (const auto& row : j) {
    if (!row.is_array() || int(row.size()) != n)
      throw InvalidInput("matrix: expected rows of " + std::to_string(n) +
                         " entries");
    for (const auto& x : row) e.push_back(rat_from(x, "matrix entry"));
  }
  return ExactMatrix(k, n, std::move(e));
}

json seq_json(const ConvexSeq& seq) {
  json j;
  j["k"] = seq.k();
  j["n"] = seq.n();
  j["initial"] = matrix_json(seq.initial);
  json moves = json::array();
  for (const auto& mv : seq.moves)
    moves.push_back({{"j", mv.j}, {"t", rat_json(mv.t)}});
  j["moves"] = std::move(moves);
  return j;
}

ConvexSeq seq_from(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("n") ||
      !j.contains("initial"))
    throw InvalidInput("sequence: need k, n, initial");
  const int k = j.at("k").get<int>(), n = j.at("n").get<int>();
  if (!(0 < k && k < n)) throw InvalidInput("sequence: need 0 < k < n");
  ConvexSeq seq{matrix_from(j.at("initial"), k, n), {}};
  if (j.contains("moves"))
    for (const auto& m : j.at("moves")) {
      MoveStep mv{m.at("j").get<int>(), rat_from(m.at("t"), "move t")};
      if (mv.j < 1 || mv.j >= n) throw InvalidInput("move index out of range");
      if (sign(mv.t) <= 0) throw InvalidInput("move parameter must be > 0");
      seq.moves.push_back(std::move(mv));
    }
  return seq;
}

json cert_json(const Certificate& c) {
  json j;
  j["k"] = c.k;
  j["n"] = c.n;
  j["refined"] = seq_json(c.refined);
  j["splits"] = c.splits;
  j["input_pos"] = c.input_pos;
  j["pr"] = c.pr;
  j["pr_one"] = c.pr_one_vals;
  j["pr_two"] = c.pr_two_vals;
  j["external_base"] = c.external_base;
  if (c.k >= 2) {
    json om = json::array();
    for (const auto& w : c.omega) om.push_back(rat_json(w));
    j["omega"] = std::move(om);
    json mt = json::array();
    for (const auto& t : c.move_types)
      mt.push_back({{"type", t.type_two ? "II" : "I"},
                    {"flipped_col", t.flipped_col}});
    j["move_types"] = std::move(mt);
    j["r_minus"] = c.r_minus;
    json runs = json::array();
    for (std::size_t i = 0; i < c.runs.size(); ++i)
      runs.push_back({{"first", c.runs[i].first},
                      {"last", c.runs[i].last},
                      {"down_index", c.runs[i].down_index},
                      {"child", cert_json(c.children[i])}});
    j["runs"] = std::move(runs);
  }
  return j;
}

Certificate cert_from(const json& j) {
  Certificate c;
  c.k = j.at("k").get<int>();
  c.n = j.at("n").get<int>();
  c.refined = seq_from(j.at("refined"));
  c.splits = j.at("splits").get<std::vector<int>>();
  c.input_pos = j.at("input_pos").get<std::vector<int>>();
  c.pr = j.at("pr").get<std::vector<long>>();
  c.pr_one_vals = j.at("pr_one").get<std::vector<long>>();
  c.pr_two_vals = j.at("pr_two").get<std::vector<long>>();
  c.external_base = j.value("external_base", false);
  if (c.k >= 2) {
    for (const auto& x : j.at("omega")) c.omega.push_back(rat_from(x, "omega"));
    for (const auto& t : j.at("move_types")) {
      MoveType mt;
      mt.type_two = t.at("type").get<std::string>() == "II";
      mt.flipped_col = t.at("flipped_col").get<int>();
      c.move_types.push_back(mt);
    }
    c.r_minus = j.at("r_minus").get<long>();
    for (const auto& r : j.at("runs")) {
      Certificate::Run run;
      run.first = r.at("first").get<int>();
      run.last = r.at("last").get<int>();
      run.down_index = r.at("down_index").get<std::vector<int>>();
      c.runs.push_back(std::move(run));
      c.children.push_back(cert_from(r.at("child")));
    }
  }
  return c;
}

json config_json(const SearchConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["budget"] = cfg.budget;
  j["restarts"] = cfg.restarts;
  j["seed"] = std::to_string(cfg.seed);
  j["strategy"] = cfg.strategy == SearchStrategy::Anneal ? "anneal" : "greedy";
  j["max_length"] = cfg.max_length;
  j["magnitude"] = cfg.magnitude;
  if (cfg.target) j["target"] = *cfg.target;
  return j;
}

SearchConfig config_from(const json& j) {
  SearchConfig cfg;
  cfg.k = j.at("k").get<int>();
  cfg.n = j.at("n").get<int>();
  cfg.budget = j.value("budget", cfg.budget);
  cfg.restarts = j.value("restarts", cfg.restarts);
  if (j.contains("seed")) cfg.seed = std::stoull(j.at("seed").get<std::string>());
  cfg.strategy = j.value("strategy", "anneal") == std::string("greedy")
                     ? SearchStrategy::Greedy
                     : SearchStrategy::Anneal;
  cfg.max_length = j.value("max_length", cfg.max_length);
  cfg.magnitude = j.value("magnitude", cfg.magnitude);
  if (j.contains("target")) cfg.target = j.at("target").get<int>();
  return cfg;
}

json unipotent_json(const UnipotentMatrix& l) {
  json rows = json::array();
  for (int r = 1; r <= l.n(); ++r) {
    json row = json::array();
    for (int c = 1; c <= l.n(); ++c) row.push_back(rat_json(l.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

UnipotentMatrix unipotent_from(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("unipotent matrix: expected rows");
  const int n = int(j.size());
  std::vector<Rat> e;
  e.reserve(std::size_t(n) * n);
  for (const auto& row : j) {
    if (!row.is_array() || int(row.size()) != n)
      throw InvalidInput("unipotent matrix: must be square");
    for (const auto& x : row) e.push_back(rat_from(x, "matrix entry"));
  }
  return UnipotentMatrix(n, std::move(e));  // validates unit lower triangular
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("malformed JSON");
  return j;
}

}  // namespace

std::string seq_to_json(const ConvexSeq& seq, int indent) {
  return seq_json(seq).dump(indent) + "\n";
}

ConvexSeq seq_from_json(const std::string& text) {
  try {
    return seq_from(parse(text));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("sequence JSON: ") + e.what());
  }
}

std::string cert_to_json(const Certificate& cert, int indent) {
  return cert_json(cert).dump(indent) + "\n";
}

Certificate cert_from_json(const std::string& text) {
  try {
    return cert_from(parse(text));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("certificate JSON: ") + e.what());
  }
}

std::string witness_to_json(const Witness& w, int indent) {
  json j;
  j["seq"] = seq_json(w.seq);
  j["nsc"] = w.achieved_nsc;
  j["seed"] = std::to_string(w.seed);
  j["config"] = config_json(w.config);
  j["digest"] = witness_digest(w);
  return j.dump(indent) + "\n";
}

Witness witness_from_json(const std::string& text) {
  try {
    const json j = parse(text);
    Witness w;
    w.seq = seq_from(j.at("seq"));
    w.achieved_nsc = j.at("nsc").get<int>();
    if (j.contains("seed")) w.seed = std::stoull(j.at("seed").get<std::string>());
    if (j.contains("config")) w.config = config_from(j.at("config"));
    return w;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("witness JSON: ") + e.what());
  }
}

std::string curve_to_json(const CurveSpec& spec, int indent) {
  json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  bool ident = true;
  for (int r = 1; r <= spec.n && ident; ++r)
    for (int c = 1; c < r; ++c)
      if (sign(spec.initial.at(r, c)) != 0) {
        ident = false;
        break;
      }
  if (ident)
    j["initial"] = "identity";
  else
    j["initial"] = unipotent_json(spec.initial);
  json arcs = json::array();
  for (const auto& arc : spec.arcs) {
    json c = json::array();
    for (const auto& x : arc.c) c.push_back(rat_json(x));
    arcs.push_back({{"c", std::move(c)}, {"t_max", rat_json(arc.t_max)}});
  }
  j["arcs"] = std::move(arcs);
  return j.dump(indent) + "\n";
}

CurveSpec curve_from_json(const std::string& text) {
  try {
    const json j = parse(text);
    CurveSpec spec;
    spec.n = j.at("n").get<int>();
    spec.k = j.at("k").get<int>();
    if (spec.n < 2) throw InvalidInput("curve: need n >= 2");
    const auto& init = j.at("initial");
    if (init.is_string()) {
      if (init.get<std::string>() != "identity")
        throw InvalidInput("curve: initial must be \"identity\" or a matrix");
      spec.initial = UnipotentMatrix(spec.n);
    } else {
      spec.initial = unipotent_from(init);
      if (spec.initial.n() != spec.n)
        throw InvalidInput("curve: initial matrix size mismatch");
    }
    for (const auto& a : j.at("arcs")) {
      CurveArc arc;
      for (const auto& x : a.at("c")) arc.c.push_back(rat_from(x, "arc c"));
      arc.t_max = rat_from(a.at("t_max"), "t_max");
      spec.arcs.push_back(std::move(arc));
    }
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("curve JSON: ") + e.what());
  }
}

std::string unipotent_to_json(const UnipotentMatrix& l, int indent) {
  return unipotent_json(l).dump(indent) + "\n";
}

UnipotentMatrix unipotent_from_json(const std::string& text) {
  try {
    json j = parse(text);
    if (j.is_object() && j.contains("matrix")) j = j.at("matrix");
    return unipotent_from(j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("matrix JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

std::string witness_dir() {
  if (const char* env = std::getenv("GCX_WITNESS_DIR")) return env;
  return "witnesses";
}

std::string archive_witness(const Witness& w) {
  const std::string dir = witness_dir();
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + witness_digest(w) + ".json";
  write_file(path, witness_to_json(w));
  return path;
}

}  // namespace gcx
