/*
 * Copyright 2026 The elecxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Weighted ridge regression with an unpenalized intercept.

#ifndef ELECXAI_RIDGE_HPP_
#define ELECXAI_RIDGE_HPP_

#include <cmath>

#include <Eigen/Dense>

#include "elecxai/common.hpp"

namespace elecxai {

template <typename Scalar>
struct RidgeFit {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
  Scalar intercept = 0;
};

// Minimizes sum_i w_i (y_i - b - x_i . beta)^2 + lambda ||beta||^2.
//
// The data are centred on their weighted means (which removes the intercept
// from the penalty) and the penalized least-squares problem is solved as the
// stacked system [sqrt(W) Xc; sqrt(lambda) I] beta = [sqrt(W) yc; 0] with
// column-pivoting Householder QR, so the normal matrix is never formed.
template <typename DerivedX, typename DerivedY, typename DerivedW>
RidgeFit<typename DerivedX::Scalar> WeightedRidge(const Eigen::MatrixBase<DerivedX>& x,
                                                  const Eigen::MatrixBase<DerivedY>& y,
                                                  const Eigen::MatrixBase<DerivedW>& w,
                                                  typename DerivedX::Scalar lambda) {
  using Scalar = typename DerivedX::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (y.size() != n || w.size() != n) {
    throw InvalidArgument("ridge inputs differ in length");
  }
  if (!(lambda > 0)) throw InvalidArgument("ridge penalty must be positive");
  if ((w.array() < 0).any()) throw InvalidArgument("ridge weights must be non-negative");
  const Scalar total = w.sum();
  if (!(total > 0)) throw InvalidArgument("ridge weights sum to zero");

  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> x_mean = (w.transpose() * x) / total;
  const Scalar y_mean = w.dot(y) / total;
  const Vector root_w = w.array().sqrt().matrix();

  Matrix stacked(n + d, d);
  stacked.topRows(n) = root_w.asDiagonal() * (x.rowwise() - x_mean);
  stacked.bottomRows(d) = Matrix::Identity(d, d) * std::sqrt(lambda);
  Vector rhs = Vector::Zero(n + d);
  rhs.head(n) = root_w.asDiagonal() * (y.array() - y_mean).matrix();

  RidgeFit<Scalar> fit;
  fit.coefficients = stacked.colPivHouseholderQr().solve(rhs);
  fit.intercept = y_mean - (x_mean * fit.coefficients)(0);
  return fit;
}

}  // namespace elecxai

#endif  // ELECXAI_RIDGE_HPP_
