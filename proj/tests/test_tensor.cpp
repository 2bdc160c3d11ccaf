#include <doctest.h>

#include "core/tensor.hpp"

using namespace grt;

TEST_CASE("storage is row-major with the first index slowest") {
  DenseTensor t({2, 3});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) t.at({i, j}) = Cx(10.0 * i + j, 0.0);
  CHECK(t.coeffs()[0] == Cx(0.0, 0.0));
  CHECK(t.coeffs()[2] == Cx(2.0, 0.0));
  CHECK(t.coeffs()[3] == Cx(10.0, 0.0));
  CHECK(t.coeffs()[5] == Cx(12.0, 0.0));
  CHECK(t.size() == 6);
  CHECK(t.order() == 2);
}

TEST_CASE("labels address axes through the label base") {
  DenseTensor t({2, 2, 2}, 1);
  CHECK(t.axis_of_label(1) == 0);
  CHECK(t.axis_of_label(3) == 2);
  CHECK_THROWS_AS((void)t.axis_of_label(0), Error);
  CHECK_THROWS_AS((void)t.axis_of_label(4), Error);

  DenseTensor b({2, 2}, 0);
  CHECK(b.axis_of_label(0) == 0);
  CHECK(b.axis_of_label(1) == 1);
  CHECK_THROWS_AS((void)b.axis_of_label(2), Error);

  CHECK(t.axes_of_labels({3, 1}) == std::vector<int>{2, 0});
}

TEST_CASE("contract over one pair reproduces the matrix product") {
  DenseTensor a({2, 3}), b({3, 2});
  Matrix ma(2, 3), mb(3, 2);
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j, ++k) {
      a.at({i, j}) = Cx(k + 1, -k);
      ma(i, j) = Cx(k + 1, -k);
    }
  k = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j, ++k) {
      b.at({i, j}) = Cx(2.0 * k, k + 0.5);
      mb(i, j) = Cx(2.0 * k, k + 0.5);
    }
  DenseTensor c = contract(a, b, {{2, 1}});
  Matrix mc = ma * mb;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(c.at({i, j}) - mc(i, j)) < 1e-14);
  CHECK(c.label_base() == 1);
}

TEST_CASE("contract validates dimensions and labels") {
  DenseTensor a({2, 3}), b({4, 2});
  CHECK_THROWS_AS(contract(a, b, {{2, 1}}), Error);   // 3 vs 4
  CHECK_THROWS_AS(contract(a, b, {{5, 1}}), Error);   // no such label
  CHECK_THROWS_AS(contract(a, b, {{1, 2}, {1, 2}}), Error);  // repeated label
}

TEST_CASE("tensor product concatenates legs in order") {
  DenseTensor a({2}), b({3});
  a.at({0}) = 2.0;
  a.at({1}) = 3.0;
  b.at({0}) = 5.0;
  b.at({1}) = 7.0;
  b.at({2}) = 11.0;
  DenseTensor p = tensor_product(a, b);
  CHECK(p.dims() == std::vector<int>{2, 3});
  CHECK(p.at({1, 2}) == Cx(33.0, 0.0));
  CHECK(p.at({0, 1}) == Cx(14.0, 0.0));
}

TEST_CASE("permute_axes places old axis perm[k] at new axis k") {
  DenseTensor t({2, 3, 4});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 4; ++l) t.at({i, j, l}) = Cx(100.0 * i + 10.0 * j + l, 0.0);
  DenseTensor p = permute_axes(t, {2, 0, 1});
  CHECK(p.dims() == std::vector<int>{4, 2, 3});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 4; ++l) CHECK(p.at({l, i, j}) == t.at({i, j, l}));
  CHECK_THROWS_AS(permute_axes(t, {0, 1}), Error);
}

TEST_CASE("as_operator splits kept rows from traced columns in label order") {
  DenseTensor t({2, 2, 2});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) t.at({i, j, l}) = Cx(4.0 * i + 2.0 * j + l, 0.0);
  Matrix m = as_operator(t, {{2}});  // keep middle leg
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  // columns run over (leg1, leg3) row-major
  CHECK(m(0, 0) == Cx(0.0, 0.0));
  CHECK(m(0, 1) == Cx(1.0, 0.0));
  CHECK(m(0, 2) == Cx(4.0, 0.0));
  CHECK(m(1, 3) == Cx(7.0, 0.0));
  CHECK_THROWS_AS(as_operator(t, {{2, 1}}), Error);  // unsorted
  CHECK_THROWS_AS(as_operator(t, {{0}}), Error);     // bad label
}

TEST_CASE("reduce equals the operator view times its adjoint") {
  DenseTensor t({2, 2, 2});
  int k = 0;
  for (auto& c : t.coeffs()) c = Cx(std::cos(1.0 + k), std::sin(0.5 * k)), ++k;
  DensityMatrix dm = reduce(t, {{1, 3}});
  Matrix v = as_operator(t, {{1, 3}});
  Matrix want = v * v.adjoint();
  CHECK((dm.rho - want).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(dm.rho.rows() == 4);
  CHECK(std::abs(dm.rho.trace().real() - t.norm2()) < 1e-12);
}

TEST_CASE("proportionality test uses a relative deviation") {
  Matrix big = 4096.0 * Matrix::Identity(8, 8);
  big(3, 3) += 4096.0 * 1e-14;
  ProportionalityReport rep = proportional_to_identity(big, 1e-10);
  CHECK(rep.proportional);
  CHECK(std::abs(rep.constant.real() - 4096.0) < 1e-9);

  Matrix off = Matrix::Identity(4, 4);
  off(0, 1) = 0.5;
  CHECK_FALSE(proportional_to_identity(off, 1e-10).proportional);

  Matrix skew = Matrix::Identity(2, 2);
  skew(1, 1) = 2.0;
  CHECK_FALSE(proportional_to_identity(skew, 1e-10).proportional);
}

TEST_CASE("apply_axis_matrix acts on a single axis") {
  DenseTensor t({2, 2});
  t.at({0, 0}) = 1.0;
  t.at({0, 1}) = 2.0;
  t.at({1, 0}) = 3.0;
  t.at({1, 1}) = 4.0;
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  DenseTensor s = t.apply_axis_matrix(0, m);  // swap first index
  CHECK(s.at({0, 0}) == Cx(3.0, 0.0));
  CHECK(s.at({0, 1}) == Cx(4.0, 0.0));
  CHECK(s.at({1, 0}) == Cx(1.0, 0.0));

  // unitaries preserve the norm on any axis
  Matrix h(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  DenseTensor u = t.apply_axis_matrix(1, h);
  CHECK(std::abs(u.norm2() - t.norm2()) < 1e-12);
  CHECK_THROWS_AS(t.apply_axis_matrix(2, m), Error);
  Matrix bad(3, 3);
  CHECK_THROWS_AS(t.apply_axis_matrix(0, bad), Error);
}

TEST_CASE("conjugate and scale") {
  DenseTensor t({2});
  t.at({0}) = Cx(1.0, 2.0);
  t.at({1}) = Cx(-3.0, 0.5);
  DenseTensor c = t.conjugate();
  CHECK(c.at({0}) == Cx(1.0, -2.0));
  t.scale(Cx(0.0, 1.0));
  CHECK(t.at({0}) == Cx(-2.0, 1.0));
  CHECK(std::abs(t.norm2() - (5.0 + 9.25)) < 1e-12);
}

TEST_CASE("constructor rejects non-positive leg dimensions") {
  CHECK_THROWS_AS(DenseTensor({0, 2}), Error);
  CHECK_THROWS_AS(DenseTensor({2, -1}), Error);
  CHECK_THROWS_AS(DenseTensor({2, 2}, 3), Error);
}
