#include "core/io_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/graph.hpp"

namespace grt {

using nlohmann::json;

std::string tensor_to_json(const DenseTensor& t) {
  json j;
  j["order"] = t.order();
  j["dims"] = t.dims();
  if (t.label_base() == 0) j["label_base"] = 0;
  json coeffs = json::array();
  for (const Cx& c : t.coeffs()) coeffs.push_back(json::array({c.real(), c.imag()}));
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

DenseTensor tensor_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_format, std::string("tensor JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("order") || !j.contains("dims") || !j.contains("coeffs"))
    throw Error(Errc::bad_format, "tensor JSON must have order, dims, coeffs");
  const int order = j["order"].get<int>();
  std::vector<int> dims = j["dims"].get<std::vector<int>>();
  if (static_cast<int>(dims.size()) != order)
    throw Error(Errc::bad_format, "dims length must equal order");
  int base = 1;
  if (j.contains("label_base")) base = j["label_base"].get<int>();
  DenseTensor t(dims, base);
  const auto& coeffs = j["coeffs"];
  if (!coeffs.is_array() || coeffs.size() != t.size())
    throw Error(Errc::bad_format, "coeffs length must equal the product of dims");
  size_t i = 0;
  for (const auto& entry : coeffs) {
    if (!entry.is_array() || entry.size() != 2)
      throw Error(Errc::bad_format, "each coefficient must be [re, im]");
    t.coeffs()[i++] = Cx(entry[0].get<double>(), entry[1].get<double>());
  }
  return t;
}

std::string graph_to_json(const ConstraintGraph& g) {
  json j;
  j["n"] = g.n;
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.first, e.second}));
  j["edges"] = std::move(edges);
  return j.dump();
}

ConstraintGraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_format, std::string("graph JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw Error(Errc::bad_format, "graph JSON must have n and edges");
  ConstraintGraph g;
  g.n = j["n"].get<int>();
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw Error(Errc::bad_format, "each edge must be [i, j]");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  g.validate();
  return g;
}

std::string hypergraph_to_json(const ConstraintHypergraph& h) {
  json j;
  j["n"] = h.n;
  json hes = json::array();
  for (const auto& e : h.hyperedges) hes.push_back(e);
  j["hyperedges"] = std::move(hes);
  return j.dump();
}

ConstraintHypergraph hypergraph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_format, std::string("hypergraph JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("hyperedges"))
    throw Error(Errc::bad_format, "hypergraph JSON must have n and hyperedges");
  ConstraintHypergraph h;
  h.n = j["n"].get<int>();
  for (const auto& e : j["hyperedges"]) h.hyperedges.push_back(e.get<std::vector<int>>());
  h.validate();
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_argument, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::bad_argument, "cannot write file: " + path);
  out << content;
}

std::string content_digest(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace grt
