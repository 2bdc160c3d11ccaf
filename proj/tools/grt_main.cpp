// Command-line front end. Talks to the library exclusively through the C API
// in grt.h; file I/O, flag parsing and run manifests live here.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grt.h"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { grt_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct OwnedTensor {
  grt_tensor* p = nullptr;
  ~OwnedTensor() { grt_tensor_free(p); }
};

// library status -> process exit code
int status_exit(int status) {
  switch (status) {
    case GRT_STATUS_OK: return kExitPass;
    case GRT_STATUS_NUMERIC_FAILURE:
    case GRT_STATUS_NOT_CONVERGED: return kExitNotConverged;
    default: return kExitUsage;
  }
}

int fail(int status, const char* doing) {
  std::fprintf(stderr, "grt: %s: %s\n", doing, grt_last_error());
  return status_exit(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string digest_of(const std::string& bytes) {
  OwnedString hex;
  if (grt_digest(bytes.data(), bytes.size(), &hex.p) != GRT_STATUS_OK)
    throw std::runtime_error(grt_last_error());
  return hex.str();
}

// every CSV written by the tool gets <out>.manifest.json next to it
void write_manifest(const std::string& out_path, const std::string& command,
                    unsigned long long seed,
                    const std::map<std::string, std::string>& input_digests,
                    double wall_ms) {
  json m;
  m["command"] = command;
  m["seed"] = seed;
  m["tool_version"] = grt_version();
  m["inputs"] = input_digests;
  m["wall_ms"] = wall_ms;
  write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

int env_threads() {
  const char* v = std::getenv("GRT_THREADS");
  if (v == nullptr || v[0] == '\0') return 0;
  return std::atoi(v);
}

OwnedTensor load_tensor(const std::string& path) {
  OwnedTensor t;
  std::string text = read_file(path);
  int status = grt_tensor_from_json(text.c_str(), &t.p);
  if (status != GRT_STATUS_OK)
    throw std::runtime_error(std::string("'") + path + "': " + grt_last_error());
  return t;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::fputs((text + "\n").c_str(), stdout);
  else
    write_file(out_path, text + "\n");
}

// clique subsets of the given constraint input, sizes 1..floor(n/2); the
// expected answer of an exhaustive faithfulness scan
std::set<std::vector<int>> expected_faithful(const json& g) {
  int n = g.at("n").get<int>();
  if (n > 12) throw std::runtime_error("--faithful supports at most 12 legs");
  std::vector<std::vector<int>> vertex_sets;
  std::vector<int> labels;
  bool hyper = g.contains("hyperedges");
  if (hyper) {
    for (const auto& e : g.at("hyperedges"))
      vertex_sets.push_back(e.get<std::vector<int>>());
    std::set<int> seen;
    for (const auto& e : vertex_sets) seen.insert(e.begin(), e.end());
    labels.assign(seen.begin(), seen.end());
  } else {
    for (int v = 1; v <= n; ++v) labels.push_back(v);
  }

  auto is_clique = [&](const std::vector<int>& s) {
    if (hyper) {
      for (const auto& e : vertex_sets) {
        bool inside = true;
        for (int v : s)
          inside = inside && std::find(e.begin(), e.end(), v) != e.end();
        if (inside) return true;
      }
      return false;
    }
    auto adjacent = [&](int u, int v) {
      for (const auto& e : g.at("edges"))
        if ((e[0] == u && e[1] == v) || (e[0] == v && e[1] == u)) return true;
      return false;
    };
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        if (!adjacent(s[i], s[j])) return false;
    return true;
  };

  std::set<std::vector<int>> out;
  int m = static_cast<int>(labels.size());
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) s.push_back(labels[static_cast<size_t>(i)]);
    if (static_cast<int>(s.size()) > n / 2) continue;
    if (is_clique(s)) out.insert(s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-constrained tensor toolkit"};
  app.require_subcommand(1);
  std::string command_line = join_args(argc, argv);
  auto t_start = std::chrono::steady_clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t_start)
        .count();
  };

  // catalog / expand ----------------------------------------------------
  std::string family, out_path;
  double p_theta = 0.0, p_a = 0.05, p_jc = 0.3;
  int p_j = 0, p_k = 0, p_plus = 0, p_n = 5, p_d = 2, p_rim = 6;
  unsigned long long p_seed = 1;
  bool list_families = false;

  CLI::App* cat = app.add_subcommand("catalog", "construct a named tensor");
  cat->add_option("--family", family, "family name (see --list)");
  cat->add_flag("--list", list_families, "list families and parameters");
  CLI::Option* o_theta = cat->add_option("--theta", p_theta, "penta-ame angle");
  CLI::Option* o_a = cat->add_option("--a", p_a, "family parameter a");
  CLI::Option* o_j = cat->add_option("--j", p_j, "sign branch j (0|1)");
  CLI::Option* o_k = cat->add_option("--k", p_k, "sign branch k (0|1)");
  CLI::Option* o_plus = cat->add_flag("--plus-branch", p_plus, "companion branch");
  CLI::Option* o_n = cat->add_option("--n", p_n, "size parameter");
  CLI::Option* o_d = cat->add_option("--d", p_d, "local dimension");
  CLI::Option* o_rim = cat->add_option("--rim", p_rim, "wheel rim size");
  CLI::Option* o_jc = cat->add_option("--j-coupling", p_jc, "dual-unitary coupling");
  CLI::Option* o_seed_cat = cat->add_option("--seed", p_seed, "gate RNG seed");
  cat->add_option("--out", out_path, "write tensor JSON here (default stdout)");
  bool record_only = false;
  cat->add_flag("--record", record_only, "print the solution record instead");

  std::string expand_slots, expand_components;
  CLI::App* exp = app.add_subcommand("expand", "symmetric tensor from components");
  exp->add_option("--slots", expand_slots, "'pentagon' (8) or 'hexagon' (13)");
  exp->add_option("--components", expand_components, "comma-separated values");
  exp->add_option("--family", family, "build a catalog family instead");
  exp->add_option("--theta", p_theta, "penta-ame angle");
  exp->add_option("--a", p_a, "family parameter a");
  exp->add_option("--j", p_j, "sign branch j");
  exp->add_option("--k", p_k, "sign branch k");
  exp->add_option("--out", out_path, "write tensor JSON here (default stdout)");

  // verify ---------------------------------------------------------------
  std::string tensor_path, graph_path;
  double tol = 1e-8;
  bool faithful = false;
  CLI::App* ver = app.add_subcommand("verify", "check a constraint (hyper)graph");
  ver->add_option("--tensor", tensor_path, "tensor JSON file")->required();
  ver->add_option("--graph", graph_path,
                  "graph/hypergraph JSON file, or a builtin name "
                  "(k5, c5, wheel6, hex-triangles)")
      ->required();
  ver->add_option("--tol", tol, "proportionality tolerance (default 1e-8)");
  ver->add_flag("--faithful", faithful,
                "also demand that no other subset passes");

  // entropy ---------------------------------------------------------------
  CLI::App* ent = app.add_subcommand("entropy", "Renyi-2 deficit profile");
  ent->add_option("--tensor", tensor_path, "tensor JSON file")->required();

  // solve ------------------------------------------------------------------
  int restarts = 200, max_iterations = 500, threads = env_threads();
  double cost_threshold = 1e-18, classify_tol = 1e-6;
  bool no_polish = false;
  CLI::App* sol = app.add_subcommand("solve", "multi-start hexagon search");
  sol->add_option("--restarts", restarts, "number of restarts (default 200)");
  sol->add_option("--seed", p_seed, "base RNG seed (default 1)");
  sol->add_option("--max-iterations", max_iterations, "BFGS cap per restart");
  sol->add_option("--cost-threshold", cost_threshold, "acceptance cut");
  sol->add_flag("--no-polish", no_polish, "skip the Gauss-Newton polish");
  sol->add_option("--classify-tol", classify_tol, "family matching tolerance");
  sol->add_option("--threads", threads, "worker threads (0 = auto)");
  sol->add_option("--out", out_path, "CSV output path")->required();

  // node / dimension ---------------------------------------------------------
  std::vector<int> legs = {1, 3};
  std::string tiling = "6,4";
  int rotation_grid = 0;
  CLI::App* nod = app.add_subcommand("node", "transfer node spectrum");
  nod->add_option("--tensor", tensor_path, "tensor JSON file")->required();
  nod->add_option("--legs", legs, "in and out leg labels")->expected(2);
  nod->add_option("--tiling", tiling, "'6,4' or '5,4' (default 6,4)");
  nod->add_option("--rotation-grid", rotation_grid,
                  "emit a |lambda2| scan over this many rotation angles");
  nod->add_option("--out", out_path, "output path (default stdout)");

  double lambda2 = -1.0;
  CLI::App* dim = app.add_subcommand("dimension", "scaling dimension from lambda2");
  dim->add_option("--lambda2", lambda2, "second eigenvalue modulus");
  dim->add_option("--tensor", tensor_path, "tensor JSON file (alternative)");
  dim->add_option("--legs", legs, "in and out leg labels")->expected(2);
  dim->add_option("--tiling", tiling, "'6,4' or '5,4' (default 6,4)");

  // correlate -------------------------------------------------------------
  std::string net_name = "depth1-6-4", probes, method = "path";
  bool audit = false;
  CLI::App* cor = app.add_subcommand("correlate", "boundary correlators");
  cor->add_option("--net", net_name, "depth1-6-4 or depth2-6-4");
  cor->add_option("--tensor", tensor_path, "tile tensor JSON file");
  cor->add_option("--probes", probes, "e.g. Z@3,Z@17 (ops X Y Z I)");
  cor->add_option("--method", method, "path or brute (default path)");
  cor->add_flag("--audit", audit, "print the exhaustive path audit instead");

  // violin -----------------------------------------------------------------
  long samples = 100;
  bool shared = false;
  CLI::App* vio = app.add_subcommand("violin", "Haar-leg scaling dimensions");
  vio->add_option("--samples", samples, "number of samples");
  vio->add_option("--seed", p_seed, "RNG seed");
  vio->add_flag("--shared", shared, "one unitary shared by all legs");
  vio->add_option("--threads", threads, "worker threads (0 = auto)");
  vio->add_option("--out", out_path, "CSV output path")->required();

  // frame ---------------------------------------------------------------
  CLI::App* fra = app.add_subcommand("frame", "build and verify a gate frame");
  fra->add_option("--n", p_n, "number of wires (4..7)");
  fra->add_option("--j-coupling", p_jc, "coupling of the dual-unitary gates");
  fra->add_option("--seed", p_seed, "gate RNG seed");
  fra->add_option("--out", out_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "grt: %s\n", e.what());
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return kExitUsage;
  }

  try {
    if (cat->parsed() || (exp->parsed() && !family.empty())) {
      if (list_families) {
        OwnedString text;
        int status = grt_catalog_list(&text.p);
        if (status != GRT_STATUS_OK) return fail(status, "catalog list");
        emit(text.str(), out_path);
        return kExitPass;
      }
      if (family.empty()) {
        std::fprintf(stderr, "grt: catalog needs --family or --list\n");
        return kExitUsage;
      }
      json params = json::object();
      if (cat->parsed()) {
        if (o_theta->count()) params["theta"] = p_theta;
        if (o_a->count()) params["a"] = p_a;
        if (o_j->count()) params["j"] = p_j;
        if (o_k->count()) params["k"] = p_k;
        if (o_plus->count()) params["plus_branch"] = p_plus;
        if (o_n->count()) params["n"] = p_n;
        if (o_d->count()) params["d"] = p_d;
        if (o_rim->count()) params["rim"] = p_rim;
        if (o_jc->count()) params["j_coupling"] = p_jc;
        if (o_seed_cat->count()) params["seed"] = static_cast<double>(p_seed);
      } else {
        // expand --family path: forward the family parameters
        if (exp->count("--theta")) params["theta"] = p_theta;
        if (exp->count("--a")) params["a"] = p_a;
        if (exp->count("--j")) params["j"] = p_j;
        if (exp->count("--k")) params["k"] = p_k;
      }
      OwnedTensor t;
      OwnedString record;
      int status =
          grt_catalog(family.c_str(), params.dump().c_str(), &t.p, &record.p);
      if (status != GRT_STATUS_OK) return fail(status, "catalog");
      if (record_only) {
        emit(record.str(), out_path);
      } else {
        OwnedString text;
        status = grt_tensor_to_json(t.p, &text.p);
        if (status != GRT_STATUS_OK) return fail(status, "serialize");
        emit(text.str(), out_path);
      }
      return kExitPass;
    }

    if (exp->parsed()) {
      if (expand_slots.empty() || expand_components.empty()) {
        std::fprintf(stderr,
                     "grt: expand needs --slots and --components (or --family)\n");
        return kExitUsage;
      }
      std::vector<double> values;
      std::stringstream ss(expand_components);
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
      OwnedTensor t;
      int status = grt_expand_components(expand_slots.c_str(), values.data(),
                                         static_cast<int>(values.size()), &t.p);
      if (status != GRT_STATUS_OK) return fail(status, "expand");
      OwnedString text;
      status = grt_tensor_to_json(t.p, &text.p);
      if (status != GRT_STATUS_OK) return fail(status, "serialize");
      emit(text.str(), out_path);
      return kExitPass;
    }

    if (ver->parsed()) {
      OwnedTensor t = load_tensor(tensor_path);
      std::string graph_text;
      if (graph_path.find('{') == std::string::npos &&
          !std::ifstream(graph_path).good()) {
        OwnedString builtin;
        int status = grt_builtin_graph(graph_path.c_str(), &builtin.p);
        if (status != GRT_STATUS_OK) return fail(status, "builtin graph");
        graph_text = builtin.str();
      } else {
        graph_text = read_file(graph_path);
      }
      json g = json::parse(graph_text);
      bool hyper = g.contains("hyperedges");
      int pass = 0;
      OwnedString report;
      int status = hyper ? grt_verify_hypergraph(t.p, graph_text.c_str(), tol,
                                                 &pass, &report.p)
                         : grt_verify_graph(t.p, graph_text.c_str(), tol, &pass,
                                            &report.p);
      if (status != GRT_STATUS_OK) return fail(status, "verify");
      json out = json::parse(report.str());
      bool ok = pass != 0;
      if (faithful) {
        OwnedString found_text;
        status = grt_faithful_hypergraph(t.p, tol, &found_text.p);
        if (status != GRT_STATUS_OK) return fail(status, "faithful scan");
        json found = json::parse(found_text.str());
        std::set<std::vector<int>> got;
        for (const auto& e : found.at("hyperedges"))
          got.insert(e.get<std::vector<int>>());
        std::set<std::vector<int>> want = expected_faithful(g);
        json extra = json::array(), missing = json::array();
        for (const auto& s : got)
          if (want.find(s) == want.end()) extra.push_back(s);
        for (const auto& s : want)
          if (got.find(s) == got.end()) missing.push_back(s);
        bool fpass = extra.empty() && missing.empty();
        out["faithful"] =
            json{{"pass", fpass}, {"extra", extra}, {"missing", missing}};
        ok = ok && fpass;
      }
      std::fputs((out.dump(2) + "\n").c_str(), stdout);
      return ok ? kExitPass : kExitCheckFailed;
    }

    if (ent->parsed()) {
      OwnedTensor t = load_tensor(tensor_path);
      OwnedString profile;
      int status = grt_entropy_profile(t.p, &profile.p);
      if (status != GRT_STATUS_OK) return fail(status, "entropy");
      std::fputs((profile.str() + "\n").c_str(), stdout);
      return kExitPass;
    }

    if (sol->parsed()) {
      json opts;
      opts["seed"] = p_seed;
      opts["restarts"] = restarts;
      opts["max_iterations"] = max_iterations;
      opts["cost_threshold"] = cost_threshold;
      opts["polish"] = !no_polish;
      opts["classify_tol"] = classify_tol;
      opts["threads"] = threads;
      OwnedString csv, summary;
      int status = grt_solve(opts.dump().c_str(), &csv.p, &summary.p);
      if (status != GRT_STATUS_OK) return fail(status, "solve");
      write_file(out_path, csv.str());
      write_manifest(out_path, command_line, p_seed, {}, wall_ms());
      json s = json::parse(summary.str());
      std::fputs((summary.str() + "\n").c_str(), stdout);
      return s.at("accepted").get<long>() > 0 ? kExitPass : kExitNotConverged;
    }

    if (nod->parsed()) {
      std::string tensor_text = read_file(tensor_path);
      OwnedTensor t;
      int status = grt_tensor_from_json(tensor_text.c_str(), &t.p);
      if (status != GRT_STATUS_OK) return fail(status, "parse tensor");
      if (rotation_grid > 0) {
        OwnedString csv;
        status = grt_rotation_scan(t.p, rotation_grid, &csv.p);
        if (status != GRT_STATUS_OK) return fail(status, "rotation scan");
        if (out_path.empty()) {
          std::fputs(csv.str().c_str(), stdout);
        } else {
          write_file(out_path, csv.str());
          write_manifest(out_path, command_line, 0,
                         {{tensor_path, digest_of(tensor_text)}}, wall_ms());
        }
        return kExitPass;
      }
      int n_gon = 6, k = 4;
      if (std::sscanf(tiling.c_str(), "%d,%d", &n_gon, &k) != 2) {
        std::fprintf(stderr, "grt: --tiling wants 'n,k'\n");
        return kExitUsage;
      }
      OwnedString spec;
      status = grt_node_spectrum(t.p, legs[0], legs[1], n_gon, k, &spec.p);
      if (status != GRT_STATUS_OK) return fail(status, "node");
      emit(spec.str(), out_path);
      return kExitPass;
    }

    if (dim->parsed()) {
      int n_gon = 6, k = 4;
      if (std::sscanf(tiling.c_str(), "%d,%d", &n_gon, &k) != 2) {
        std::fprintf(stderr, "grt: --tiling wants 'n,k'\n");
        return kExitUsage;
      }
      double l2 = lambda2;
      if (l2 < 0.0) {
        if (tensor_path.empty()) {
          std::fprintf(stderr, "grt: dimension needs --lambda2 or --tensor\n");
          return kExitUsage;
        }
        OwnedTensor t = load_tensor(tensor_path);
        OwnedString spec;
        int status = grt_node_spectrum(t.p, legs[0], legs[1], n_gon, k, &spec.p);
        if (status != GRT_STATUS_OK) return fail(status, "node");
        l2 = json::parse(spec.str()).at("lambda_abs").at(1).get<double>();
      }
      double delta = 0.0;
      int status = grt_scaling_dimension(l2, n_gon, k, &delta);
      if (status != GRT_STATUS_OK) return fail(status, "dimension");
      std::printf("%.15g\n", delta);
      return kExitPass;
    }

    if (cor->parsed()) {
      if (audit) {
        OwnedString report;
        int status = grt_network_audit(net_name.c_str(), &report.p);
        if (status != GRT_STATUS_OK) return fail(status, "audit");
        std::fputs((report.str() + "\n").c_str(), stdout);
        return kExitPass;
      }
      if (tensor_path.empty() || probes.empty()) {
        std::fprintf(stderr, "grt: correlate needs --tensor and --probes\n");
        return kExitUsage;
      }
      OwnedTensor t = load_tensor(tensor_path);
      OwnedString result;
      int status = grt_correlator(net_name.c_str(), t.p, probes.c_str(),
                                  method.c_str(), &result.p);
      if (status != GRT_STATUS_OK) return fail(status, "correlate");
      std::fputs((result.str() + "\n").c_str(), stdout);
      return kExitPass;
    }

    if (vio->parsed()) {
      OwnedString csv;
      int status =
          grt_violin(samples, p_seed, shared ? 1 : 0, threads, &csv.p);
      if (status != GRT_STATUS_OK) return fail(status, "violin");
      write_file(out_path, csv.str());
      write_manifest(out_path, command_line, p_seed, {}, wall_ms());
      return kExitPass;
    }

    if (fra->parsed()) {
      OwnedString report;
      int status = grt_frame_report(p_n, p_jc, p_seed, &report.p);
      if (status != GRT_STATUS_OK) return fail(status, "frame");
      json r = json::parse(report.str());
      emit(report.str(), out_path);
      return r.at("neighbors_pass").get<bool>() ? kExitPass : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "grt: %s\n", e.what());
    return kExitUsage;
  }

  std::fprintf(stderr, "%s\n", app.help().c_str());
  return kExitUsage;
}
