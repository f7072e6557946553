// Copyright 2026 The Tailkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <limits>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tailkit/error.hpp"
#include "tailkit/random.hpp"

namespace tailkit {

// Generative-quality metrics over externally computed features: FID from
// feature matrices, Inception Score from class-probability rows, CLIP score
// from paired embeddings. Inputs are samples-by-dimension, one row per image.

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct GaussianStats {
  Vector<Scalar> mean;
  Matrix<Scalar> covariance;
};

/// Column means and unbiased (n - 1) covariance, symmetrized.
template <typename Derived>
GaussianStats<typename Derived::Scalar> gaussian_stats(const Eigen::MatrixBase<Derived>& features) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = features.rows();
  if (n < 2) throw ValidationError("need at least 2 samples to estimate a covariance");
  if (!features.allFinite()) throw ValidationError("feature matrix holds non-finite values");

  GaussianStats<Scalar> stats;
  stats.mean = features.colwise().mean().transpose();
  const Matrix<Scalar> centered = features.rowwise() - stats.mean.transpose();
  const Matrix<Scalar> s = (centered.transpose() * centered) / Scalar(n - 1);
  stats.covariance = (s + s.transpose()) / Scalar(2);
  return stats;
}

namespace detail {

/// Eigenvalues of a symmetric matrix with tiny negative ones zeroed.
/// Anything below -1e-6 * ||m||_F is a real indefiniteness and throws.
/// `clamped` is raised when a clamp exceeded 1e-10 * |trace|.
template <typename Scalar>
Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> psd_eigen(const Matrix<Scalar>& m,
                                                        const char* what, bool& clamped) {
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(std::string("eigendecomposition failed for ") + what);
  }
  const Scalar fail_tol = Scalar(1e-6) * m.norm();
  const Scalar note_tol = Scalar(1e-10) * std::abs(m.trace());
  const Scalar lowest = m.rows() > 0 ? solver.eigenvalues().minCoeff() : Scalar(0);
  if (lowest < -fail_tol) {
    throw NumericalError(std::string(what) + " is not positive semidefinite (eigenvalue " +
                         std::to_string(static_cast<double>(lowest)) + ")");
  }
  if (lowest < -note_tol) clamped = true;
  return solver;
}

/// Square roots of the eigenvalues, with everything under the numerical
/// rank floor (eps * d * max eigenvalue) treated as an exact zero. Without
/// the floor, rounding noise on a null space turns into sqrt(eps)-sized
/// error after the root.
template <typename Scalar>
Vector<Scalar> rank_floored_sqrt(const Vector<Scalar>& eigenvalues) {
  if (eigenvalues.size() == 0) return eigenvalues;
  const Scalar top = std::max(Scalar(0), eigenvalues.maxCoeff());
  const Scalar floor =
      std::numeric_limits<Scalar>::epsilon() * Scalar(eigenvalues.size()) * top;
  return eigenvalues.unaryExpr([floor](Scalar v) { return v > floor ? std::sqrt(v) : Scalar(0); });
}

}  // namespace detail

/// Symmetric PSD square root V sqrt(max(L, 0)) V^T.
template <typename Scalar>
Matrix<Scalar> psd_sqrt(const Matrix<Scalar>& m, bool* clamped = nullptr) {
  bool flag = false;
  const auto solver = detail::psd_eigen<Scalar>(m, "matrix", flag);
  if (clamped) *clamped = *clamped || flag;
  const Vector<Scalar> root = detail::rank_floored_sqrt<Scalar>(solver.eigenvalues());
  return solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().transpose();
}

template <typename Scalar>
struct FidResult {
  Scalar value = 0;
  // An eigenvalue or the final score needed clamping beyond rounding noise.
  bool clamped = false;
};

/// Frechet distance between two Gaussians:
///   ||mu_r - mu_g||^2 + Tr(S_r) + Tr(S_g) - 2 Tr((S_r^1/2 S_g S_r^1/2)^1/2)
/// The cross term uses the symmetric form so only self-adjoint
/// eigendecompositions are involved.
template <typename Scalar>
FidResult<Scalar> fid(const GaussianStats<Scalar>& real, const GaussianStats<Scalar>& gen) {
  const Eigen::Index d = real.mean.size();
  if (gen.mean.size() != d || real.covariance.rows() != d || real.covariance.cols() != d ||
      gen.covariance.rows() != d || gen.covariance.cols() != d) {
    throw ValidationError("FID inputs have mismatched dimensions");
  }

  FidResult<Scalar> result;
  bool clamped = false;
  detail::psd_eigen<Scalar>(gen.covariance, "generated covariance", clamped);
  const Matrix<Scalar> root_r = psd_sqrt<Scalar>(real.covariance, &clamped);
  Matrix<Scalar> cross = root_r * gen.covariance * root_r;
  cross = (cross + cross.transpose()) / Scalar(2);
  const auto solver = detail::psd_eigen<Scalar>(cross, "covariance product", clamped);
  const Scalar trace_root = detail::rank_floored_sqrt<Scalar>(solver.eigenvalues()).sum();

  const Scalar mean_term = (real.mean - gen.mean).squaredNorm();
  Scalar value =
      mean_term + real.covariance.trace() + gen.covariance.trace() - Scalar(2) * trace_root;
  if (value < Scalar(0)) {
    if (value < Scalar(-1e-8)) clamped = true;
    value = Scalar(0);
  }
  result.value = value;
  result.clamped = clamped;
  return result;
}

template <typename Scalar>
struct InceptionScore {
  Scalar mean = 0;
  // Population standard deviation across splits.
  Scalar std = 0;
};

inline constexpr double kProbRowTolerance = 1e-6;

/// Throws ValidationError naming the first row that is not a probability
/// distribution (entries in [0, 1], sum within kProbRowTolerance of 1).
template <typename Derived>
void validate_probabilities(const Eigen::MatrixBase<Derived>& probs) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const auto row = probs.row(i);
    if (!row.allFinite() || (row.array() < Scalar(0)).any() || (row.array() > Scalar(1)).any()) {
      throw ValidationError("probability row " + std::to_string(i) + " has entries outside [0, 1]",
                            std::to_string(i));
    }
    if (std::abs(static_cast<double>(row.sum()) - 1.0) > kProbRowTolerance) {
      throw ValidationError("probability row " + std::to_string(i) + " does not sum to 1",
                            std::to_string(i));
    }
  }
}

/// exp(mean_i KL(p_i || p_bar)) per split, with 0 log 0 = 0.
///
/// With one split rows are used in order. With more, rows are first
/// permuted by a Fisher-Yates shuffle seeded with `seed`, then split k
/// takes positions [k n / splits, (k + 1) n / splits).
template <typename Derived>
InceptionScore<typename Derived::Scalar> inception_score(const Eigen::MatrixBase<Derived>& probs,
                                                         Eigen::Index splits, std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = probs.rows();
  if (splits < 1) throw ArgumentError("splits must be at least 1");
  if (n < splits) throw ArgumentError("fewer probability rows than splits");
  validate_probabilities(probs);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  if (splits > 1) {
    SplitMix64 rng(seed);
    shuffle(std::span(order), rng);
  }

  std::vector<Scalar> scores;
  scores.reserve(static_cast<std::size_t>(splits));
  for (Eigen::Index k = 0; k < splits; ++k) {
    const Eigen::Index begin = k * n / splits;
    const Eigen::Index end = (k + 1) * n / splits;
    const Eigen::Index count = end - begin;

    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> marginal =
        Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Zero(probs.cols());
    for (Eigen::Index r = begin; r < end; ++r) marginal += probs.row(order[r]);
    marginal /= Scalar(count);

    Scalar kl_sum = 0;
    for (Eigen::Index r = begin; r < end; ++r) {
      const auto row = probs.row(order[r]);
      for (Eigen::Index c = 0; c < probs.cols(); ++c) {
        const Scalar p = row(c);
        if (p > Scalar(0)) kl_sum += p * (std::log(p) - std::log(marginal(c)));
      }
    }
    // KL is non-negative; a negative mean is rounding noise.
    const Scalar mean_kl = std::max(Scalar(0), kl_sum / Scalar(count));
    scores.push_back(std::exp(mean_kl));
  }

  InceptionScore<Scalar> out;
  for (Scalar s : scores) out.mean += s;
  out.mean /= Scalar(scores.size());
  for (Scalar s : scores) out.std += (s - out.mean) * (s - out.mean);
  out.std = std::sqrt(out.std / Scalar(scores.size()));
  return out;
}

enum class ClipScale {
  // 100 * cos
  kHundred,
  // 2.5 * cos, as in the reference-free CLIPScore formulation
  kHesselW,
};

inline double clip_scale_factor(ClipScale scale) {
  return scale == ClipScale::kHundred ? 100.0 : 2.5;
}

/// Mean over pairs of c * max(cos(img_i, txt_i), 0). Rows are normalized
/// internally; zero-norm rows throw, naming the matrix and row.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar clip_score(const Eigen::MatrixBase<DerivedA>& image_emb,
                                     const Eigen::MatrixBase<DerivedB>& text_emb,
                                     ClipScale scale = ClipScale::kHundred) {
  using Scalar = typename DerivedA::Scalar;
  if (image_emb.rows() != text_emb.rows() || image_emb.cols() != text_emb.cols()) {
    throw ValidationError("image and text embeddings have different shapes");
  }
  if (image_emb.rows() == 0) throw ValidationError("no embedding pairs");
  if (!image_emb.allFinite() || !text_emb.allFinite()) {
    throw ValidationError("embeddings hold non-finite values");
  }

  const Scalar c = static_cast<Scalar>(clip_scale_factor(scale));
  Scalar total = 0;
  for (Eigen::Index i = 0; i < image_emb.rows(); ++i) {
    const Scalar ni = image_emb.row(i).norm();
    const Scalar nt = text_emb.row(i).norm();
    if (!(ni > Scalar(0))) {
      throw ValidationError("image embedding row " + std::to_string(i) + " has zero norm",
                            std::to_string(i));
    }
    if (!(nt > Scalar(0))) {
      throw ValidationError("text embedding row " + std::to_string(i) + " has zero norm",
                            std::to_string(i));
    }
    const Scalar cosine = (image_emb.row(i) / ni).dot(text_emb.row(i) / nt);
    total += c * std::max(cosine, Scalar(0));
  }
  return total / Scalar(image_emb.rows());
}

}  // namespace tailkit
