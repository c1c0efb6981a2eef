#pragma once

#include "monokit/geometry.hpp"

#include <random>
#include <vector>

namespace testsupport {

using monokit::Halfspace;
using monokit::Mat;
using monokit::Vec;

/// Vertices of a bounded H-polyhedron by solving every d-subset of rows.
inline std::vector<Vec> brute_vertices(int d, const std::vector<Halfspace>& rows) {
  std::vector<Vec> out;
  const int m = static_cast<int>(rows.size());
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (m < d) return out;
  while (true) {
    Mat a(d, d);
    Vec b(d);
    for (int i = 0; i < d; ++i) {
      a.row(i) = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].normal.transpose();
      b[i] = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].offset;
    }
    Eigen::FullPivLU<Mat> lu(a);
    if (lu.rank() == d) {
      Vec x = lu.solve(b);
      bool ok = true;
      for (const auto& r : rows)
        if (r.normal.dot(x) > r.offset + 1e-9 * r.normal.norm()) ok = false;
      bool dup = false;
      for (const auto& v : out)
        if ((v - x).norm() < 1e-9) dup = true;
      if (ok && !dup) out.push_back(x);
    }
    int k = d - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - d + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline Vec random_vec(std::mt19937_64& rng, int d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = u(rng);
  return v;
}

inline bool same_point_set(const std::vector<Vec>& a, const std::vector<Vec>& b, double eps) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b)
      if ((x - y).norm() <= eps) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace testsupport
