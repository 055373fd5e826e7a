// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace symred::linalg {

/// Number of singular values above `rel_tol * sigma_max`. Exactly-zero and
/// empty matrices have rank 0.
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol);

/// Rank of a product whose factors have norm product `scale`: singular values
/// above `rel_tol * max(scale, sigma_max)` count. Rounding noise in an exactly
/// zero product stays below the cutoff.
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol, double scale);

/// Orthonormal basis of the column space (columns of the result).
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& a, double rel_tol);
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& a, double rel_tol, double scale);

/// Orthonormal basis of the null space of `a` (n columns for an m x n matrix
/// of rank r give n - r basis vectors).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol);

/// Orthonormal basis of span(A) intersected with span(B), where A and B have
/// orthonormal columns.
Eigen::MatrixXd intersection_basis(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   double tol);

/// dim(span A) + dim(span B) - dim(span A + span B) for orthonormal A, B.
int intersection_dimension(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol);

}  // namespace symred::linalg
