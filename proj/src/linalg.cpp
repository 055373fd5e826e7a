// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/linalg.hpp"

#include <algorithm>

namespace symred::linalg {

namespace {

int rank_from_singular_values(const Eigen::VectorXd& s, double rel_tol, double scale = 0.0) {
  if (s.size() == 0) return 0;
  const double smax = std::max(s.maxCoeff(), scale);
  if (!(smax > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * smax) ++r;
  }
  return r;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol, double scale) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return rank_from_singular_values(svd.singularValues(), rel_tol, scale);
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& a, double rel_tol) {
  return column_basis(a, rel_tol, 0.0);
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& a, double rel_tol, double scale) {
  if (a.size() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol, scale);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd intersection_basis(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   double tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return Eigen::MatrixXd(n, 0);
  // Principal vectors: singular values of A^T B equal to 1 mark shared
  // directions; the corresponding left vectors A u span the intersection.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b, Eigen::ComputeFullU);
  const Eigen::VectorXd& s = svd.singularValues();
  int k = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1.0 - tol) ++k;
  }
  return a * svd.matrixU().leftCols(k);
}

int intersection_dimension(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.cols() == 0 || b.cols() == 0) return 0;
  Eigen::MatrixXd joined(a.rows(), a.cols() + b.cols());
  joined << a, b;
  const int sum_dim = numerical_rank(joined, tol);
  return static_cast<int>(a.cols() + b.cols()) - sum_dim;
}

}  // namespace symred::linalg
