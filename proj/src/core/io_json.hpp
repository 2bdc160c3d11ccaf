// JSON serialization for tensors and constraint (hyper)graphs, plus the CSV
// and manifest helpers shared by the command-line tools.
#pragma once

#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace grt {

struct ConstraintGraph;
struct ConstraintHypergraph;

// {"order": n, "dims": [...], "coeffs": [[re, im], ...]} with coefficients
// row-major, first index slowest. "label_base" (0|1) is optional, default 1.
std::string tensor_to_json(const DenseTensor& t);
DenseTensor tensor_from_json(const std::string& text);

// {"n": n, "edges": [[i, j], ...]}
std::string graph_to_json(const ConstraintGraph& g);
ConstraintGraph graph_from_json(const std::string& text);

// {"n": n, "hyperedges": [[...], ...]}
std::string hypergraph_to_json(const ConstraintHypergraph& h);
ConstraintHypergraph hypergraph_from_json(const std::string& text);

// Shortest representation that parses back to the same double (17 significant
// digits are always enough).
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit content digest, hex encoded; used in run manifests.
std::string content_digest(const std::string& bytes);

}  // namespace grt
