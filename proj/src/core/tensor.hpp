// Dense tensors with a small number of legs, stored row-major (first index
// slowest), plus the three views used throughout: state vector, operator
// across a bipartition, and reduced density matrix.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace grt {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Error carrying a stable code for the C API boundary.
enum class Errc {
  bad_argument = 1,
  bad_format = 2,
  dimension_mismatch = 3,
  numeric_failure = 4,
  not_converged = 5,
  unsupported = 6,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Legs are addressed by label. Generic tensors use labels 1..n; tensors with
// a distinguished bulk leg (hexagonal family, appendix constructions) use
// labels 0..n-1 with the bulk leg stored first and label_base = 0.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(std::vector<int> dims, int label_base = 1);

  int order() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int axis) const { return dims_[static_cast<size_t>(axis)]; }
  int label_base() const { return label_base_; }
  void set_label_base(int b);

  std::vector<Cx>& coeffs() { return coeffs_; }
  const std::vector<Cx>& coeffs() const { return coeffs_; }
  size_t size() const { return coeffs_.size(); }

  int axis_of_label(int label) const;
  std::vector<int> axes_of_labels(const std::vector<int>& labels) const;

  size_t flat_index(const std::vector<int>& multi) const;
  Cx& at(const std::vector<int>& multi) { return coeffs_[flat_index(multi)]; }
  const Cx& at(const std::vector<int>& multi) const { return coeffs_[flat_index(multi)]; }

  double norm2() const;  // sum |coeff|^2
  DenseTensor conjugate() const;
  void scale(Cx factor);

  // T'[..., i, ...] = sum_j M(i, j) T[..., j, ...] on one axis.
  DenseTensor apply_axis_matrix(int axis, const Matrix& m) const;

 private:
  std::vector<int> dims_;
  std::vector<size_t> strides_;
  std::vector<Cx> coeffs_;
  int label_base_ = 1;
};

// Sorted kept labels; the complement is traced.
struct Bipartition {
  std::vector<int> kept;
};

struct DensityMatrix {
  Matrix rho;
  Bipartition source;
};

struct ProportionalityReport {
  bool proportional = false;
  Cx constant{};
  double max_deviation = 0.0;  // max-abs entrywise deviation from constant*I
};

// Operator view across a bipartition: rows = kept multi-index, cols = traced
// multi-index, both row-major in ascending label order.
Matrix as_operator(const DenseTensor& t, const Bipartition& b);

// rho[kept,kept'] = sum_traced T[kept,traced] conj(T[kept',traced]).
DensityMatrix reduce(const DenseTensor& t, const Bipartition& b);

// Pairwise contraction. pairs = (label in t1, label in t2); remaining t1 legs
// come first in the result, then remaining t2 legs, original order kept.
// The result uses labels 1..order.
DenseTensor contract(const DenseTensor& t1, const DenseTensor& t2,
                     const std::vector<std::pair<int, int>>& pairs);

// Deviation from constant*I measured relative to |constant|.
ProportionalityReport proportional_to_identity(const Matrix& m, double tol);

// Tensor product; t1's legs first. Result labels 1..order.
DenseTensor tensor_product(const DenseTensor& t1, const DenseTensor& t2);

// Rearrange legs: new axis k holds old axis perm[k].
DenseTensor permute_axes(const DenseTensor& t, const std::vector<int>& perm);

}  // namespace grt
