#include "core/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace grt {

namespace {

void check_labels_sorted_unique(const std::vector<int>& labels) {
  for (size_t i = 1; i < labels.size(); ++i)
    if (labels[i] <= labels[i - 1])
      throw Error(Errc::bad_argument, "labels must be sorted and unique");
}

}  // namespace

DenseTensor::DenseTensor(std::vector<int> dims, int label_base)
    : dims_(std::move(dims)), label_base_(label_base) {
  if (label_base_ != 0 && label_base_ != 1)
    throw Error(Errc::bad_argument, "label base must be 0 or 1");
  size_t total = 1;
  for (int d : dims_) {
    if (d < 1) throw Error(Errc::bad_argument, "leg dimension must be >= 1");
    total *= static_cast<size_t>(d);
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<size_t>(dims_[i + 1]);
  coeffs_.assign(total, Cx(0.0, 0.0));
}

void DenseTensor::set_label_base(int b) {
  if (b != 0 && b != 1) throw Error(Errc::bad_argument, "label base must be 0 or 1");
  label_base_ = b;
}

int DenseTensor::axis_of_label(int label) const {
  int axis = label - label_base_;
  if (axis < 0 || axis >= order())
    throw Error(Errc::bad_argument, "leg label " + std::to_string(label) + " out of range");
  return axis;
}

std::vector<int> DenseTensor::axes_of_labels(const std::vector<int>& labels) const {
  std::vector<int> axes;
  axes.reserve(labels.size());
  for (int l : labels) axes.push_back(axis_of_label(l));
  return axes;
}

size_t DenseTensor::flat_index(const std::vector<int>& multi) const {
  if (multi.size() != dims_.size())
    throw Error(Errc::bad_argument, "multi-index order mismatch");
  size_t idx = 0;
  for (size_t i = 0; i < multi.size(); ++i) {
    if (multi[i] < 0 || multi[i] >= dims_[i])
      throw Error(Errc::bad_argument, "multi-index out of range");
    idx += strides_[i] * static_cast<size_t>(multi[i]);
  }
  return idx;
}

double DenseTensor::norm2() const {
  double s = 0.0;
  for (const Cx& c : coeffs_) s += std::norm(c);
  return s;
}

DenseTensor DenseTensor::conjugate() const {
  DenseTensor out = *this;
  for (Cx& c : out.coeffs_) c = std::conj(c);
  return out;
}

void DenseTensor::scale(Cx factor) {
  for (Cx& c : coeffs_) c *= factor;
}

DenseTensor DenseTensor::apply_axis_matrix(int axis, const Matrix& m) const {
  if (axis < 0 || axis >= order()) throw Error(Errc::bad_argument, "axis out of range");
  const int d = dims_[static_cast<size_t>(axis)];
  if (m.rows() != d || m.cols() != d)
    throw Error(Errc::dimension_mismatch, "axis matrix must be d x d");
  DenseTensor out(dims_, label_base_);
  const size_t stride = strides_[static_cast<size_t>(axis)];
  const size_t block = stride * static_cast<size_t>(d);
  const size_t nblocks = coeffs_.size() / block;
  for (size_t b = 0; b < nblocks; ++b) {
    const size_t base = b * block;
    for (size_t off = 0; off < stride; ++off) {
      for (int i = 0; i < d; ++i) {
        Cx acc(0.0, 0.0);
        for (int j = 0; j < d; ++j)
          acc += m(i, j) * coeffs_[base + static_cast<size_t>(j) * stride + off];
        out.coeffs_[base + static_cast<size_t>(i) * stride + off] = acc;
      }
    }
  }
  return out;
}

Matrix as_operator(const DenseTensor& t, const Bipartition& b) {
  check_labels_sorted_unique(b.kept);
  if (b.kept.empty()) throw Error(Errc::bad_argument, "bipartition must keep at least one leg");
  std::vector<int> kept_axes = t.axes_of_labels(b.kept);
  std::vector<char> is_kept(static_cast<size_t>(t.order()), 0);
  for (int a : kept_axes) is_kept[static_cast<size_t>(a)] = 1;
  std::vector<int> traced_axes;
  for (int a = 0; a < t.order(); ++a)
    if (!is_kept[static_cast<size_t>(a)]) traced_axes.push_back(a);

  size_t dk = 1, dt = 1;
  for (int a : kept_axes) dk *= static_cast<size_t>(t.dim(a));
  for (int a : traced_axes) dt *= static_cast<size_t>(t.dim(a));

  Matrix m(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dt));
  std::vector<int> multi(static_cast<size_t>(t.order()), 0);
  // walk kept (row-major over kept axes) x traced (row-major over traced axes)
  std::vector<int> kdims, tdims;
  for (int a : kept_axes) kdims.push_back(t.dim(a));
  for (int a : traced_axes) tdims.push_back(t.dim(a));
  std::vector<int> kidx(kept_axes.size(), 0), tidx(traced_axes.size(), 0);
  for (size_t r = 0; r < dk; ++r) {
    for (size_t i = 0; i < kept_axes.size(); ++i)
      multi[static_cast<size_t>(kept_axes[i])] = kidx[i];
    std::fill(tidx.begin(), tidx.end(), 0);
    for (size_t c = 0; c < dt; ++c) {
      for (size_t i = 0; i < traced_axes.size(); ++i)
        multi[static_cast<size_t>(traced_axes[i])] = tidx[i];
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t.at(multi);
      for (int i = static_cast<int>(tidx.size()) - 1; i >= 0; --i) {
        if (++tidx[static_cast<size_t>(i)] < tdims[static_cast<size_t>(i)]) break;
        tidx[static_cast<size_t>(i)] = 0;
      }
    }
    for (int i = static_cast<int>(kidx.size()) - 1; i >= 0; --i) {
      if (++kidx[static_cast<size_t>(i)] < kdims[static_cast<size_t>(i)]) break;
      kidx[static_cast<size_t>(i)] = 0;
    }
  }
  return m;
}

DensityMatrix reduce(const DenseTensor& t, const Bipartition& b) {
  Matrix m = as_operator(t, b);
  DensityMatrix out;
  out.rho = m * m.adjoint();
  out.source = b;
  return out;
}

DenseTensor contract(const DenseTensor& t1, const DenseTensor& t2,
                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<char> used1(static_cast<size_t>(t1.order()), 0);
  std::vector<char> used2(static_cast<size_t>(t2.order()), 0);
  std::vector<int> c1, c2;
  for (auto [l1, l2] : pairs) {
    int a1 = t1.axis_of_label(l1), a2 = t2.axis_of_label(l2);
    if (used1[static_cast<size_t>(a1)] || used2[static_cast<size_t>(a2)])
      throw Error(Errc::bad_argument, "leg paired twice in contraction");
    if (t1.dim(a1) != t2.dim(a2))
      throw Error(Errc::dimension_mismatch, "contracted legs must have equal dimension");
    used1[static_cast<size_t>(a1)] = used2[static_cast<size_t>(a2)] = 1;
    c1.push_back(a1);
    c2.push_back(a2);
  }
  std::vector<int> r1, r2;
  for (int a = 0; a < t1.order(); ++a)
    if (!used1[static_cast<size_t>(a)]) r1.push_back(a);
  for (int a = 0; a < t2.order(); ++a)
    if (!used2[static_cast<size_t>(a)]) r2.push_back(a);

  // reshape both to (rest, contracted) and multiply
  auto to_matrix = [](const DenseTensor& t, const std::vector<int>& rest,
                      const std::vector<int>& con) {
    std::vector<int> perm = rest;
    perm.insert(perm.end(), con.begin(), con.end());
    DenseTensor p = permute_axes(t, perm);
    size_t dr = 1, dc = 1;
    for (int a : rest) dr *= static_cast<size_t>(t.dim(a));
    for (int a : con) dc *= static_cast<size_t>(t.dim(a));
    Eigen::Map<const Matrix> mm(p.coeffs().data(), static_cast<Eigen::Index>(dc),
                                static_cast<Eigen::Index>(dr));
    // row-major (rest, con) equals column-major (con, rest)
    return Matrix(mm);
  };
  Matrix m1 = to_matrix(t1, r1, c1);  // (con x rest1) column-major view
  Matrix m2 = to_matrix(t2, r2, c2);

  std::vector<int> odims;
  for (int a : r1) odims.push_back(t1.dim(a));
  for (int a : r2) odims.push_back(t2.dim(a));
  DenseTensor out(odims, 1);
  Matrix prod = m1.transpose() * m2;  // (rest1 x rest2)
  // row-major result: rest1 slowest = row index of prod
  for (Eigen::Index i = 0; i < prod.rows(); ++i)
    for (Eigen::Index j = 0; j < prod.cols(); ++j)
      out.coeffs()[static_cast<size_t>(i) * static_cast<size_t>(prod.cols()) +
                   static_cast<size_t>(j)] = prod(i, j);
  return out;
}

ProportionalityReport proportional_to_identity(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error(Errc::bad_argument, "matrix must be square");
  ProportionalityReport rep;
  const Eigen::Index d = m.rows();
  rep.constant = m.trace() / static_cast<double>(d);
  if (std::abs(rep.constant) == 0.0)
    throw Error(Errc::numeric_failure, "zero trace: proportionality constant undefined");
  double dev = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Cx want = (i == j) ? rep.constant : Cx(0.0, 0.0);
      dev = std::max(dev, std::abs(m(i, j) - want));
    }
  rep.max_deviation = dev;
  rep.proportional = dev <= tol * std::abs(rep.constant);
  return rep;
}

DenseTensor tensor_product(const DenseTensor& t1, const DenseTensor& t2) {
  std::vector<int> odims = t1.dims();
  odims.insert(odims.end(), t2.dims().begin(), t2.dims().end());
  DenseTensor out(odims, 1);
  const size_t n2 = t2.size();
  for (size_t i = 0; i < t1.size(); ++i)
    for (size_t j = 0; j < n2; ++j) out.coeffs()[i * n2 + j] = t1.coeffs()[i] * t2.coeffs()[j];
  return out;
}

DenseTensor permute_axes(const DenseTensor& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.order())
    throw Error(Errc::bad_argument, "permutation size mismatch");
  std::vector<int> odims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) odims[k] = t.dim(perm[k]);
  DenseTensor out(odims, t.label_base());
  std::vector<int> omulti(perm.size(), 0), imulti(perm.size(), 0);
  const size_t total = t.size();
  for (size_t flat = 0; flat < total; ++flat) {
    for (size_t k = 0; k < perm.size(); ++k)
      imulti[static_cast<size_t>(perm[k])] = omulti[k];
    out.coeffs()[out.flat_index(omulti)] = t.at(imulti);
    for (int k = static_cast<int>(perm.size()) - 1; k >= 0; --k) {
      if (++omulti[static_cast<size_t>(k)] < odims[static_cast<size_t>(k)]) break;
      omulti[static_cast<size_t>(k)] = 0;
    }
  }
  return out;
}

}  // namespace grt
