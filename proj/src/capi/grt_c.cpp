#include "grt.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "core/catalog.hpp"
#include "core/graph.hpp"
#include "core/holography.hpp"
#include "core/io_json.hpp"
#include "core/network.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"

using nlohmann::json;

struct grt_tensor {
  grt::DenseTensor t;
};

namespace {

thread_local std::string g_last_error;

char* alloc_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** slot, const std::string& s) {
  if (slot != nullptr) *slot = alloc_string(s);
}

template <typename F>
int wrap(F&& fn) {
  try {
    fn();
    return GRT_STATUS_OK;
  } catch (const grt::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GRT_STATUS_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw grt::Error(grt::Errc::bad_argument, what);
}

json profile_json(const grt::EntropyProfile& p) {
  return json{{"d013", p.d013}, {"d014", p.d014}, {"d123", p.d123},
              {"d124", p.d124}, {"d135", p.d135}, {"normalization", p.normalization}};
}

json record_json(const grt::SolutionRecord& rec) {
  json j;
  j["family"] = grt::family_name(rec.family);
  json params = json::object();
  for (const auto& [name, value] : rec.parameters) params[name] = value;
  j["parameters"] = params;
  j["components"] = rec.components;
  if (rec.has_profile) j["profile"] = profile_json(rec.profile);
  return j;
}

const grt::NetworkSpec& named_network(const std::string& name) {
  static const grt::NetworkSpec d1 = grt::depth1_network();
  static const grt::NetworkSpec d2 = grt::depth2_network();
  if (name == "depth1-6-4") return d1;
  if (name == "depth2-6-4") return d2;
  throw grt::Error(grt::Errc::bad_argument,
                   "unknown network '" + name + "' (depth1-6-4, depth2-6-4)");
}

grt::Matrix probe_matrix(char op) {
  grt::Matrix m(2, 2);
  switch (op) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << grt::Cx(0, 0), grt::Cx(0, -1), grt::Cx(0, 1), grt::Cx(0, 0); break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'I': m << 1, 0, 0, 1; break;
    default:
      throw grt::Error(grt::Errc::bad_argument,
                       std::string("unknown probe operator '") + op + "'");
  }
  return m;
}

// "Z@3,Z@17" -> ordered (boundary index, matrix) list
std::vector<std::pair<int, grt::Matrix>> parse_probes(const std::string& text) {
  std::vector<std::pair<int, grt::Matrix>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    size_t at = item.find('@');
    require(item.size() >= 3 && at == 1, "probe format is <op>@<boundary index>");
    char op = static_cast<char>(std::toupper(static_cast<unsigned char>(item[0])));
    int b;
    try {
      b = std::stoi(item.substr(at + 1));
    } catch (const std::exception&) {
      throw grt::Error(grt::Errc::bad_argument, "bad boundary index in probe list");
    }
    out.emplace_back(b, probe_matrix(op));
    pos = end + 1;
  }
  require(!out.empty(), "empty probe list");
  return out;
}

double json_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_number(), "option fields must be numeric");
  return j[key].get<double>();
}

}  // namespace

extern "C" {

const char* grt_version(void) { return "1.0.0"; }

const char* grt_last_error(void) { return g_last_error.c_str(); }

void grt_string_free(char* s) { std::free(s); }

void grt_tensor_free(grt_tensor* t) { delete t; }

int grt_tensor_from_json(const char* text, grt_tensor** out) {
  return wrap([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new grt_tensor{grt::tensor_from_json(text)};
  });
}

int grt_tensor_to_json(const grt_tensor* t, char** out_json) {
  return wrap([&] {
    require(t != nullptr && out_json != nullptr, "null argument");
    put_string(out_json, grt::tensor_to_json(t->t));
  });
}

int grt_digest(const char* bytes, unsigned long long length, char** out_hex) {
  return wrap([&] {
    require((bytes != nullptr || length == 0) && out_hex != nullptr, "null argument");
    put_string(out_hex, grt::content_digest(
                            std::string(bytes, static_cast<size_t>(length))));
  });
}

int grt_catalog(const char* family, const char* params_json,
                grt_tensor** out_tensor, char** out_record_json) {
  return wrap([&] {
    require(family != nullptr, "null family");
    json params = json::object();
    if (params_json != nullptr && params_json[0] != '\0') {
      params = json::parse(params_json, nullptr, false);
      if (params.is_discarded())
        throw grt::Error(grt::Errc::bad_format, "params_json is not valid JSON");
    }
    std::string name = family;

    grt::DenseTensor tensor({1}, 1);
    json rec;
    if (name == "penta-ame") {
      grt::SolutionRecord r = grt::pentagonal_ame(json_number(params, "theta", 0.0));
      tensor = std::move(r.tensor);
      rec = record_json(r);
    } else if (name == "penta-isolated") {
      grt::SolutionRecord r = grt::pentagonal_isolated();
      tensor = std::move(r.tensor);
      rec = record_json(r);
    } else if (name == "hex-type1") {
      grt::SolutionRecord r = grt::hexagonal_type1(
          json_number(params, "a", 0.05),
          static_cast<int>(json_number(params, "j", 0)),
          static_cast<int>(json_number(params, "k", 0)),
          json_number(params, "plus_branch", 0) != 0);
      tensor = std::move(r.tensor);
      rec = record_json(r);
    } else if (name == "hex-type3") {
      grt::SolutionRecord r = grt::hexagonal_type3(json_number(params, "a", 0.0));
      tensor = std::move(r.tensor);
      rec = record_json(r);
    } else if (name == "hex-p2a" || name == "hex-p2b") {
      grt::SolutionRecord r = grt::hexagonal_p2(name == "hex-p2a" ? 'A' : 'B');
      tensor = std::move(r.tensor);
      rec = record_json(r);
    } else if (name == "ghz") {
      int n = static_cast<int>(json_number(params, "n", 3));
      int d = static_cast<int>(json_number(params, "d", 2));
      tensor = grt::ghz_tensor(n, d);
      rec = json{{"family", "ghz"}, {"parameters", {{"n", n}, {"d", d}}}};
    } else if (name == "ame62") {
      tensor = grt::ame_6_2();
      rec = json{{"family", "ame62"}, {"parameters", json::object()}};
    } else if (name == "wheel") {
      int rim = static_cast<int>(json_number(params, "rim", 6));
      tensor = grt::wheel_state(rim);
      rec = json{{"family", "wheel"}, {"parameters", {{"rim", rim}}}};
    } else if (name == "frame") {
      int n = static_cast<int>(json_number(params, "n", 5));
      double j = json_number(params, "j_coupling", 0.3);
      uint64_t seed = static_cast<uint64_t>(json_number(params, "seed", 1));
      tensor = grt::frame_tensor(n, grt::frame_gates(n, j, seed));
      rec = json{{"family", "frame"},
                 {"parameters",
                  {{"n", n}, {"j_coupling", j}, {"seed", static_cast<double>(seed)}}}};
    } else if (name == "combined") {
      tensor = grt::combined_pentagon_perfect();
      rec = json{{"family", "combined"}, {"parameters", json::object()}};
    } else {
      throw grt::Error(grt::Errc::bad_argument, "unknown family '" + name + "'");
    }

    if (out_tensor != nullptr) *out_tensor = new grt_tensor{std::move(tensor)};
    put_string(out_record_json, rec.dump(2));
  });
}

int grt_catalog_list(char** out_json) {
  return wrap([&] {
    require(out_json != nullptr, "null argument");
    json list = json::array();
    auto add = [&](const char* family, json params, const char* notes) {
      list.push_back(json{{"family", family}, {"parameters", std::move(params)},
                          {"notes", notes}});
    };
    add("penta-ame", {{"theta", "angle in [0, 2pi)"}},
        "five-qubit complete-graph family");
    add("penta-isolated", json::object(), "imperfect pentagon point");
    add("hex-type1",
        {{"a", "0 < a < sqrt(2)/16"}, {"j", "0|1"}, {"k", "0|1"},
         {"plus_branch", "0|1"}},
        "one-parameter hexagon family");
    add("hex-type3", {{"a", "-3 sqrt(2)/16 < a < sqrt(2)/16"}},
        "hexagon family with d013 = 0");
    add("hex-p2a", json::object(), "isolated hexagon point A");
    add("hex-p2b", json::object(), "isolated hexagon point B");
    add("ghz", {{"n", "legs"}, {"d", "local dimension"}}, "GHZ state");
    add("ame62", json::object(), "six-qubit perfect tensor");
    add("wheel", {{"rim", "ring size >= 3"}}, "wheel graph state, hub leg 1");
    add("frame",
        {{"n", "wires, 4..7"}, {"j_coupling", "dual-unitary coupling"},
         {"seed", "gate RNG seed"}},
        "planar dual-unitary weave on n ququart pairs");
    add("combined", json::object(),
        "pentagon sharing each leg with a six-qubit perfect tensor");
    put_string(out_json, list.dump(2));
  });
}

int grt_expand_components(const char* slots, const double* components, int count,
                          grt_tensor** out_tensor) {
  return wrap([&] {
    require(slots != nullptr && components != nullptr && out_tensor != nullptr,
            "null argument");
    std::vector<double> values(components, components + std::max(count, 0));
    std::string which = slots;
    grt::DenseTensor t({1}, 1);
    if (which == "pentagon") {
      require(count == 8, "pentagon takes 8 components");
      t = grt::pentagon_expand(values);
    } else if (which == "hexagon") {
      require(count == 13, "hexagon takes 13 components");
      t = grt::hexagon_expand(values);
    } else {
      throw grt::Error(grt::Errc::bad_argument,
                       "slots must be 'pentagon' or 'hexagon'");
    }
    *out_tensor = new grt_tensor{std::move(t)};
  });
}

int grt_builtin_graph(const char* name, char** out_json) {
  return wrap([&] {
    require(name != nullptr && out_json != nullptr, "null argument");
    std::string which = name;
    if (which == "k5") {
      grt::ConstraintGraph g;
      g.n = 5;
      for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) g.edges.emplace_back(i, j);
      put_string(out_json, grt::graph_to_json(g));
    } else if (which == "c5") {
      grt::ConstraintGraph g;
      g.n = 5;
      for (int i = 1; i <= 5; ++i) g.edges.emplace_back(i, i % 5 + 1);
      put_string(out_json, grt::graph_to_json(g));
    } else if (which == "wheel6") {
      put_string(out_json, grt::graph_to_json(grt::wheel_graph(6)));
    } else if (which == "hex-triangles") {
      grt::ConstraintHypergraph h;
      h.n = 7;
      for (int i = 1; i <= 6; ++i) h.hyperedges.push_back({0, i, i % 6 + 1});
      h.validate();
      put_string(out_json, grt::hypergraph_to_json(h));
    } else {
      throw grt::Error(grt::Errc::bad_argument,
                       "unknown builtin '" + which +
                           "' (k5, c5, wheel6, hex-triangles)");
    }
  });
}

int grt_verify_graph(const grt_tensor* t, const char* graph_json, double tol,
                     int* out_pass, char** out_report_json) {
  return wrap([&] {
    require(t != nullptr && graph_json != nullptr, "null argument");
    grt::ConstraintGraph g = grt::graph_from_json(graph_json);
    grt::CheckReport report = grt::check_graph_constrained(t->t, g, tol);
    if (out_pass != nullptr) *out_pass = report.pass ? 1 : 0;
    put_string(out_report_json, report.to_json());
  });
}

int grt_verify_hypergraph(const grt_tensor* t, const char* hypergraph_json,
                          double tol, int* out_pass, char** out_report_json) {
  return wrap([&] {
    require(t != nullptr && hypergraph_json != nullptr, "null argument");
    grt::ConstraintHypergraph h = grt::hypergraph_from_json(hypergraph_json);
    grt::CheckReport report = grt::check_hypergraph_constrained(t->t, h, tol);
    if (out_pass != nullptr) *out_pass = report.pass ? 1 : 0;
    put_string(out_report_json, report.to_json());
  });
}

int grt_faithful_hypergraph(const grt_tensor* t, double tol, char** out_json) {
  return wrap([&] {
    require(t != nullptr && out_json != nullptr, "null argument");
    put_string(out_json, grt::hypergraph_to_json(grt::faithful_hypergraph(t->t, tol)));
  });
}

int grt_entropy_profile(const grt_tensor* t, char** out_json) {
  return wrap([&] {
    require(t != nullptr && out_json != nullptr, "null argument");
    put_string(out_json, profile_json(grt::entropy_profile(t->t)).dump(2));
  });
}

int grt_node_spectrum(const grt_tensor* t, int leg_in, int leg_out, int n_gon,
                      int k, char** out_json) {
  return wrap([&] {
    require(t != nullptr && out_json != nullptr, "null argument");
    grt::TransferNode node = grt::node_matrix(t->t, leg_in, leg_out);
    grt::TilingSpec tiling = grt::tiling_spec(n_gon, k);
    json j;
    j["leg_in"] = node.leg_in;
    j["leg_out"] = node.leg_out;
    j["leading_raw"] = {node.leading_raw.real(), node.leading_raw.imag()};
    json spectrum = json::array(), lambda_abs = json::array(), delta = json::array();
    for (size_t i = 0; i < node.spectrum.size(); ++i) {
      const grt::Cx& v = node.spectrum[i];
      spectrum.push_back({v.real(), v.imag()});
      lambda_abs.push_back(std::abs(v));
      double d = grt::scaling_dimension(std::abs(v), tiling);
      if (std::isfinite(d))
        delta.push_back(d);
      else
        delta.push_back(nullptr);
    }
    j["spectrum"] = spectrum;
    j["lambda_abs"] = lambda_abs;
    j["delta"] = delta;
    j["mu"] = tiling.mu;
    put_string(out_json, j.dump(2));
  });
}

int grt_scaling_dimension(double lambda2, int n_gon, int k, double* out_delta) {
  return wrap([&] {
    require(out_delta != nullptr, "null argument");
    *out_delta = grt::scaling_dimension(lambda2, grt::tiling_spec(n_gon, k));
  });
}

int grt_rotation_scan(const grt_tensor* t, int grid_points, char** out_csv) {
  return wrap([&] {
    require(t != nullptr && out_csv != nullptr, "null argument");
    std::string csv = "phi,lambda2_13,lambda2_14\n";
    for (const grt::RotationScanRow& row :
         grt::rotation_spectrum_scan(t->t, grid_points)) {
      csv += grt::format_double(row.phi) + ',' + grt::format_double(row.lambda2_13) +
             ',' + grt::format_double(row.lambda2_14) + '\n';
    }
    put_string(out_csv, csv);
  });
}

int grt_correlator(const char* net_name, const grt_tensor* t, const char* probes,
                   const char* method, char** out_json) {
  return wrap([&] {
    require(net_name != nullptr && t != nullptr && probes != nullptr &&
                method != nullptr && out_json != nullptr,
            "null argument");
    const grt::NetworkSpec& net = named_network(net_name);
    auto parsed = parse_probes(probes);
    for (const auto& [b, m] : parsed)
      require(b >= 0 && b < net.boundary_count(), "boundary index out of range");
    std::string how = method;

    grt::CorrelatorResult result;
    if (how == "brute") {
      std::map<int, grt::Matrix> pm;
      for (const auto& [b, m] : parsed) {
        require(pm.find(b) == pm.end(), "duplicate boundary index in probes");
        pm[b] = m;
      }
      result = grt::brute_force_correlator(net, t->t, pm);
    } else if (how == "path") {
      if (parsed.size() == 2) {
        auto paths = grt::enumerate_paths(net, parsed[0].first, parsed[1].first);
        if (paths.empty()) {
          result.value = grt::Cx(0.0, 0.0);
          result.method = "path";
        } else if (paths.size() > 1) {
          throw grt::Error(grt::Errc::unsupported,
                           "multiple paths between this pair");
        } else {
          result = grt::two_point_path(t->t, paths[0], parsed[0].second,
                                       parsed[1].second);
        }
      } else if (parsed.size() == 3) {
        auto layout = grt::find_three_point(net, parsed[0].first, parsed[1].first,
                                            parsed[2].first);
        if (!layout) {
          result.value = grt::Cx(0.0, 0.0);
          result.method = "path";
        } else {
          result = grt::three_point_path(
              t->t, layout->trunk, layout->branch,
              parsed[static_cast<size_t>(layout->probe_order[0])].second,
              parsed[static_cast<size_t>(layout->probe_order[1])].second,
              parsed[static_cast<size_t>(layout->probe_order[2])].second);
        }
      } else {
        throw grt::Error(grt::Errc::unsupported,
                         "path method handles 2 or 3 probes");
      }
    } else {
      throw grt::Error(grt::Errc::bad_argument, "method must be 'path' or 'brute'");
    }

    json j;
    j["network"] = net.name;
    j["probes"] = probes;
    j["method"] = result.method;
    j["value_re"] = result.value.real();
    j["value_im"] = result.value.imag();
    j["path_tiles"] = result.path_tiles;
    j["path_bonds"] = result.path_bonds;
    put_string(out_json, j.dump(2));
  });
}

int grt_network_audit(const char* net_name, char** out_json) {
  return wrap([&] {
    require(net_name != nullptr && out_json != nullptr, "null argument");
    const grt::NetworkSpec& net = named_network(net_name);
    grt::NetworkAudit audit = grt::audit_paths(net);
    json j;
    j["network"] = net.name;
    j["tiles"] = net.tile_count();
    j["boundary_legs"] = net.boundary_count();
    j["max_paths_per_pair"] = audit.max_paths_per_pair;
    j["connected_pairs"] = audit.connected_pairs;
    j["total_pairs"] = audit.total_pairs;
    j["tripod_triples"] = audit.tripod_triples;
    j["triangle_triples"] = audit.triangle_triples;
    put_string(out_json, j.dump(2));
  });
}

int grt_solve(const char* options_json, char** out_csv, char** out_summary_json) {
  return wrap([&] {
    grt::SolveOptions opt;
    if (options_json != nullptr && options_json[0] != '\0') {
      json j = json::parse(options_json, nullptr, false);
      if (j.is_discarded())
        throw grt::Error(grt::Errc::bad_format, "options_json is not valid JSON");
      opt.seed = static_cast<uint64_t>(json_number(j, "seed", 1));
      opt.restarts = static_cast<int>(json_number(j, "restarts", opt.restarts));
      opt.max_iterations =
          static_cast<int>(json_number(j, "max_iterations", opt.max_iterations));
      opt.cost_threshold = json_number(j, "cost_threshold", opt.cost_threshold);
      if (j.contains("polish")) opt.polish = j["polish"].get<bool>();
      opt.classify_tol = json_number(j, "classify_tol", opt.classify_tol);
      opt.threads = static_cast<int>(json_number(j, "threads", opt.threads));
    }
    std::vector<grt::SolverHit> hits = grt::solve_hexagonal(opt);
    put_string(out_csv, grt::scan_csv(hits));
    if (out_summary_json != nullptr) {
      std::map<std::string, int> families;
      for (const auto& h : hits) ++families[grt::family_name(h.record.family)];
      json summary;
      summary["seed"] = opt.seed;
      summary["restarts"] = opt.restarts;
      summary["accepted"] = hits.size();
      summary["families"] = families;
      put_string(out_summary_json, summary.dump(2));
    }
  });
}

int grt_solver_cost(const double* components, int count, double* out_cost) {
  return wrap([&] {
    require(components != nullptr && out_cost != nullptr, "null argument");
    *out_cost = grt::solver_cost(
        std::vector<double>(components, components + std::max(count, 0)));
  });
}

int grt_solver_gradient(const double* components, int count, double* out_gradient) {
  return wrap([&] {
    require(components != nullptr && out_gradient != nullptr, "null argument");
    std::vector<double> g = grt::solver_gradient(
        std::vector<double>(components, components + std::max(count, 0)));
    std::copy(g.begin(), g.end(), out_gradient);
  });
}

int grt_violin(long samples, unsigned long long seed, int shared, int threads,
               char** out_csv) {
  return wrap([&] {
    require(out_csv != nullptr, "null argument");
    int nt = threads;
    if (nt <= 0)
      nt = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<grt::ViolinRow> rows =
        grt::violin_sample(samples, seed, shared != 0, nt);
    std::string csv = "sample,delta2,delta3\n";
    for (const grt::ViolinRow& r : rows) {
      csv += std::to_string(r.sample) + ',' + grt::format_double(r.delta2) + ',' +
             grt::format_double(r.delta3) + '\n';
    }
    put_string(out_csv, csv);
  });
}

int grt_frame_report(int n, double j_coupling, unsigned long long seed,
                     char** out_report_json) {
  return wrap([&] {
    require(out_report_json != nullptr, "null argument");
    grt::DenseTensor f = grt::frame_tensor(n, grt::frame_gates(n, j_coupling, seed));
    put_string(out_report_json, grt::verify_frame(f, n).to_json());
  });
}

}  // extern "C"
