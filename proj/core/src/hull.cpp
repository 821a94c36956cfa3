#include "symflow/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "symflow/error.hpp"

namespace symflow {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double cross(const VectorXd& o, const VectorXd& a, const VectorXd& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

double segment_distance(const VectorXd& p, const VectorXd& a, const VectorXd& b) {
  const VectorXd ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

std::vector<VectorXd> dedup(std::vector<VectorXd> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const VectorXd& a, const VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<VectorXd> out;
  for (auto& p : pts)
    if (out.empty() || (p - out.back()).lpNorm<Eigen::Infinity>() > tol) out.push_back(std::move(p));
  return out;
}

}  // namespace

VectorXd min_norm_point(const std::vector<VectorXd>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "min_norm_point of an empty set");
  double max_norm2 = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    max_norm2 = std::max(max_norm2, points[i].squaredNorm());
    if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;
  }
  std::vector<std::size_t> S{start};
  std::vector<double> lambda{1.0};
  VectorXd x = points[start];

  for (int outer = 0; outer < 10000; ++outer) {
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = x.dot(points[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= tol * std::max(1.0, max_norm2)) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 10000; ++minor) {
      const auto m = static_cast<Eigen::Index>(S.size());
      MatrixXd P(x.size(), m);
      for (Eigen::Index c = 0; c < m; ++c) P.col(c) = points[S[static_cast<std::size_t>(c)]];
      MatrixXd A = MatrixXd::Zero(m + 1, m + 1);
      A.topLeftCorner(m, m) = P.transpose() * P;
      A.block(0, m, m, 1).setOnes();
      A.block(m, 0, 1, m).setOnes();
      VectorXd rhs = VectorXd::Zero(m + 1);
      rhs(m) = 1.0;
      const VectorXd sol = A.completeOrthogonalDecomposition().solve(rhs);
      const VectorXd alpha = sol.head(m);
      if ((alpha.array() > 1e-15).all()) {
        lambda.assign(alpha.data(), alpha.data() + m);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index c = 0; c < m; ++c) {
        const double l = lambda[static_cast<std::size_t>(c)];
        if (alpha(c) <= 1e-15 && l - alpha(c) > 0.0) theta = std::min(theta, l / (l - alpha(c)));
      }
      for (Eigen::Index c = 0; c < m; ++c) {
        auto& l = lambda[static_cast<std::size_t>(c)];
        l += theta * (alpha(c) - l);
      }
      // Drop the points whose weight reached zero.
      std::vector<std::size_t> keepS;
      std::vector<double> keepL;
      for (std::size_t c = 0; c < S.size(); ++c)
        if (lambda[c] > 1e-15) {
          keepS.push_back(S[c]);
          keepL.push_back(lambda[c]);
        }
      if (keepS.size() == S.size()) {
        // Numerical stall: drop the smallest weight.
        const auto it = std::min_element(keepL.begin(), keepL.end());
        keepS.erase(keepS.begin() + (it - keepL.begin()));
        keepL.erase(it);
      }
      const double total = std::accumulate(keepL.begin(), keepL.end(), 0.0);
      for (auto& l : keepL) l /= total;
      S = std::move(keepS);
      lambda = std::move(keepL);
    }
    x.setZero();
    for (std::size_t c = 0; c < S.size(); ++c) x += lambda[c] * points[S[c]];
  }
  return x;
}

ConvexHull::ConvexHull(const std::vector<VectorXd>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "convex hull of an empty set");
  ambient_ = static_cast<int>(points.front().size());
  origin_ = points.front();
  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  const double span_tol = tol * scale;

  // Gram-Schmidt (two passes) over differences to find the affine span.
  std::vector<VectorXd> cols;
  for (const auto& p : points) {
    if (static_cast<int>(cols.size()) == ambient_) break;
    VectorXd r = p - origin_;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) r -= q.dot(r) * q;
    const double n = r.norm();
    if (n > span_tol) cols.push_back(r / n);
  }
  basis_.resize(ambient_, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) basis_.col(static_cast<Eigen::Index>(c)) = cols[c];

  std::vector<VectorXd> local;
  local.reserve(points.size());
  for (const auto& p : points) local.push_back(basis_.transpose() * (p - origin_));
  local = dedup(std::move(local), span_tol);

  const int r = affine_dim();
  if (r == 0) {
    local_ = {VectorXd::Zero(0)};
  } else if (r == 1) {
    auto [lo, hi] = std::minmax_element(local.begin(), local.end(),
                                        [](const VectorXd& a, const VectorXd& b) { return a(0) < b(0); });
    local_ = {*lo, *hi};
  } else if (r == 2) {
    // Andrew's monotone chain on the lexicographically sorted points.
    std::vector<VectorXd> hull(2 * local.size());
    std::size_t h = 0;
    for (const auto& p : local) {
      while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= span_tol * span_tol) --h;
      hull[h++] = p;
    }
    for (std::size_t i = local.size() - 1, lower = h + 1; i-- > 0;) {
      while (h >= lower && cross(hull[h - 2], hull[h - 1], local[i]) <= span_tol * span_tol) --h;
      hull[h++] = local[i];
    }
    hull.resize(h - 1);
    local_ = std::move(hull);
  } else {
    for (std::size_t i = 0; i < local.size(); ++i) {
      std::vector<VectorXd> others;
      others.reserve(local.size() - 1);
      for (std::size_t j = 0; j < local.size(); ++j)
        if (j != i) others.push_back(local[j] - local[i]);
      if (others.empty() || min_norm_point(others).norm() > span_tol) local_.push_back(local[i]);
    }
  }
  for (const auto& y : local_) vertices_.push_back(origin_ + basis_ * y);
}

double ConvexHull::distance(const VectorXd& x) const {
  if (x.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  const VectorXd z = x - origin_;
  const VectorXd y = basis_.transpose() * z;
  const double perp = (z - basis_ * y).norm();
  double inside = 0.0;
  const int r = affine_dim();
  if (r == 1) {
    inside = std::max({0.0, local_[0](0) - y(0), y(0) - local_[1](0)});
  } else if (r == 2) {
    bool in = true;
    const std::size_t n = local_.size();
    for (std::size_t i = 0; i < n && in; ++i) in = cross(local_[i], local_[(i + 1) % n], y) >= 0.0;
    if (!in) {
      inside = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) inside = std::min(inside, segment_distance(y, local_[i], local_[(i + 1) % n]));
    }
  } else if (r >= 3) {
    std::vector<VectorXd> shifted;
    shifted.reserve(local_.size());
    for (const auto& v : local_) shifted.push_back(v - y);
    inside = min_norm_point(shifted).norm();
  }
  return std::hypot(perp, inside);
}

}  // namespace symflow
