#include "monokit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace monokit {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits zero_set(const std::vector<Vec>& processed, const Vec& r, double eps) {
  Bits bits((processed.size() + 63) / 64, 0);
  for (std::size_t j = 0; j < processed.size(); ++j)
    if (std::abs(processed[j].dot(r)) <= eps) bits[j / 64] |= std::uint64_t{1} << (j % 64);
  return bits;
}

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

Bits bit_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

void dedupe(std::vector<Vec>& vs, double eps) {
  std::vector<Vec> out;
  out.reserve(vs.size());
  for (auto& v : vs) {
    bool dup = false;
    for (const auto& w : out)
      if ((v - w).lpNorm<Eigen::Infinity>() <= eps * std::max(1.0, v.lpNorm<Eigen::Infinity>())) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(v));
  }
  vs = std::move(out);
}

Vec homogenize(const Vec& x, double last) {
  Vec out(x.size() + 1);
  out.head(x.size()) = x;
  out[x.size()] = last;
  return out;
}

}  // namespace

ConeGenerators cone_generators(const std::vector<Vec>& constraint_rows, int ambient) {
  const double eps = tol();
  ConeGenerators g;
  for (int i = 0; i < ambient; ++i) g.lines.push_back(Vec::Unit(ambient, i));
  std::vector<Vec> processed;
  processed.reserve(constraint_rows.size());

  for (const Vec& raw : constraint_rows) {
    const double norm = raw.norm();
    if (norm <= eps) continue;
    const Vec a = raw / norm;

    int best = -1;
    double best_abs = eps;
    for (std::size_t k = 0; k < g.lines.size(); ++k) {
      const double v = std::abs(a.dot(g.lines[k]));
      if (v > best_abs) {
        best_abs = v;
        best = static_cast<int>(k);
      }
    }

    if (best >= 0) {
      Vec l = g.lines[static_cast<std::size_t>(best)];
      g.lines.erase(g.lines.begin() + best);
      double al = a.dot(l);
      if (al > 0) {
        l = -l;
        al = -al;
      }
      for (auto& m : g.lines) {
        m -= (a.dot(m) / al) * l;
        m.normalize();
      }
      std::vector<Vec> rays;
      for (auto& r : g.rays) {
        Vec rr = r - (a.dot(r) / al) * l;
        if (rr.norm() > eps) rays.push_back(rr.normalized());
      }
      rays.push_back(l.normalized());
      g.rays = std::move(rays);
      processed.push_back(a);
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Vec> next;
    for (std::size_t k = 0; k < g.rays.size(); ++k) {
      const double v = a.dot(g.rays[k]);
      if (v > eps)
        pos.push_back(k);
      else if (v < -eps)
        neg.push_back(k), next.push_back(g.rays[k]);
      else
        next.push_back(g.rays[k]);
    }
    if (pos.empty()) {
      processed.push_back(a);
      continue;
    }
    std::vector<Bits> zs;
    zs.reserve(g.rays.size());
    for (const auto& r : g.rays) zs.push_back(zero_set(processed, r, eps));
    const long need = static_cast<long>(ambient) - static_cast<long>(g.lines.size()) - 2;
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = bit_and(zs[p], zs[q]);
        if (static_cast<long>(popcount(common)) < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < g.rays.size() && adjacent; ++r)
          if (r != p && r != q && subset_of(common, zs[r])) adjacent = false;
        if (!adjacent) continue;
        Vec fresh = a.dot(g.rays[p]) * g.rays[q] - a.dot(g.rays[q]) * g.rays[p];
        if (fresh.norm() > eps) next.push_back(fresh.normalized());
      }
    }
    dedupe(next, 1e-8);
    g.rays = std::move(next);
    processed.push_back(a);
  }
  return g;
}

// ---------------------------------------------------------------------------

Polyhedron Polyhedron::from_h(int dim, std::vector<Halfspace> rows) {
  Polyhedron p;
  p.dim_ = dim;
  for (auto& row : rows) {
    require_dim(row.normal, dim, "halfspace normal");
    const double n = row.normal.norm();
    if (n <= tol()) throw Error(Errc::DegenerateRow, "halfspace with zero normal");
    if (std::abs(n - 1.0) > 1e-15) {
      row.normal /= n;
      row.offset /= n;
    }
  }
  p.rows_ = std::move(rows);
  p.compute_generators();
  return p;
}

void Polyhedron::compute_generators() {
  const double eps = tol();
  std::vector<Vec> cons;
  cons.reserve(rows_.size() + 1);
  for (const auto& row : rows_) cons.push_back(homogenize(row.normal, -row.offset));
  cons.push_back(homogenize(Vec::Zero(dim_), -1.0));
  const ConeGenerators g = cone_generators(cons, dim_ + 1);

  vertices_.clear();
  rays_.clear();
  for (const auto& l : g.lines) {
    Vec x = l.head(dim_);
    if (x.norm() > eps) {
      rays_.push_back(x.normalized());
      rays_.push_back(-x.normalized());
    }
  }
  for (const auto& r : g.rays) {
    const double s = r[dim_];
    Vec x = r.head(dim_);
    if (s > eps)
      vertices_.push_back(x / s);
    else if (x.norm() > eps)
      rays_.push_back(x.normalized());
  }
  empty_ = vertices_.empty();
  if (empty_) {
    rays_.clear();
    return;
  }
  dedupe(vertices_, 1e-9);
  dedupe(rays_, 1e-8);
}

Polyhedron Polyhedron::from_generators(int dim, std::vector<Vec> vertices, std::vector<Vec> rays) {
  const double eps = tol();
  for (const auto& v : vertices) require_dim(v, dim, "vertex");
  for (const auto& r : rays) require_dim(r, dim, "ray");
  if (vertices.empty()) return empty(dim);

  std::vector<Vec> cons;
  for (const auto& v : vertices) cons.push_back(homogenize(v, 1.0));
  for (const auto& r : rays)
    if (r.norm() > eps) cons.push_back(homogenize(r, 0.0));
  const ConeGenerators g = cone_generators(cons, dim + 1);

  // Equations of the affine hull come from the lineality space of the polar.
  std::vector<Halfspace> eqs;
  for (const auto& l : g.lines) {
    Vec h = l.head(dim);
    const double hn = h.norm();
    if (hn <= eps) continue;
    eqs.push_back({h / hn, -l[dim] / hn});
  }
  Mat eq_basis;
  if (!eqs.empty()) {
    Mat e(dim, static_cast<Eigen::Index>(eqs.size()));
    for (std::size_t i = 0; i < eqs.size(); ++i) e.col(static_cast<Eigen::Index>(i)) = eqs[i].normal;
    Eigen::JacobiSVD<Mat> svd(e, Eigen::ComputeThinU);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-9) ++rank;
    eq_basis = svd.matrixU().leftCols(rank);
  }
  const Vec& v0 = vertices.front();

  std::vector<Halfspace> rows;
  for (const auto& eq : eqs) {
    rows.push_back(eq);
    rows.push_back({-eq.normal, -eq.offset});
  }
  for (const auto& r : g.rays) {
    Vec h = r.head(dim);
    double offset = -r[dim];
    if (eq_basis.cols() > 0) {
      Vec par = eq_basis * (eq_basis.transpose() * h);
      offset -= par.dot(v0);
      h -= par;
    }
    const double hn = h.norm();
    if (hn <= 1e-9) continue;
    rows.push_back({h / hn, offset / hn});
  }
  std::vector<Halfspace> unique_rows;
  for (auto& row : rows) {
    bool dup = false;
    for (const auto& u : unique_rows)
      if ((u.normal - row.normal).norm() <= 1e-9 && std::abs(u.offset - row.offset) <= 1e-9) dup = true;
    if (!dup) unique_rows.push_back(row);
  }
  Polyhedron p;
  p.dim_ = dim;
  p.rows_ = std::move(unique_rows);
  p.compute_generators();
  return p;
}

Polyhedron Polyhedron::empty(int dim) {
  Polyhedron p;
  p.dim_ = dim;
  p.empty_ = true;
  if (dim > 0) {
    p.rows_.push_back({Vec::Unit(dim, 0), -1.0});
    p.rows_.push_back({-Vec::Unit(dim, 0), 0.0});
  }
  return p;
}

Polyhedron Polyhedron::whole(int dim) { return from_h(dim, {}); }

Polyhedron Polyhedron::point(const Vec& x) {
  return from_generators(static_cast<int>(x.size()), {x}, {});
}

Polyhedron Polyhedron::cone(int dim, std::vector<Vec> rays) {
  return from_generators(dim, {Vec::Zero(dim)}, std::move(rays));
}

Polyhedron Polyhedron::box(int dim, double lo, double hi) {
  std::vector<Halfspace> rows;
  for (int i = 0; i < dim; ++i) {
    rows.push_back({Vec::Unit(dim, i), hi});
    rows.push_back({-Vec::Unit(dim, i), -lo});
  }
  return from_h(dim, std::move(rows));
}

bool Polyhedron::contains(const Vec& x, double slack) const {
  if (empty_) return false;
  require_dim(x, dim_, "point");
  for (const auto& row : rows_)
    if (row.normal.dot(x) > row.offset + slack) return false;
  return true;
}

bool Polyhedron::recedes(const Vec& r) const {
  if (empty_) return true;
  const double slack = tol() * std::max(1.0, r.norm());
  for (const auto& row : rows_)
    if (row.normal.dot(r) > slack) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& other) const {
  if (other.is_empty()) return true;
  if (empty_) return false;
  const double slack = tol() * 10;
  for (const auto& v : other.vertices())
    if (!contains(v, slack * std::max(1.0, v.norm()))) return false;
  for (const auto& r : other.rays())
    if (!recedes(r)) return false;
  return true;
}

std::vector<bool> Polyhedron::implicit_rows() const {
  std::vector<bool> out(rows_.size(), false);
  if (empty_) return out;
  const double eps = tol() * 10;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    bool tight = true;
    for (const auto& v : vertices_)
      if (std::abs(rows_[i].normal.dot(v) - rows_[i].offset) > eps * std::max(1.0, v.norm())) tight = false;
    for (const auto& r : rays_)
      if (std::abs(rows_[i].normal.dot(r)) > eps) tight = false;
    out[i] = tight;
  }
  return out;
}

Mat Polyhedron::affine_directions() const {
  if (empty_) return Mat(dim_, 0);
  std::vector<Vec> cols;
  for (std::size_t i = 1; i < vertices_.size(); ++i) cols.push_back(vertices_[i] - vertices_[0]);
  for (const auto& r : rays_) cols.push_back(r);
  if (cols.empty()) return Mat(dim_, 0);
  Mat m(dim_, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = cols[i];
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const double scale = std::max(1.0, svd.singularValues().size() ? svd.singularValues()[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9 * scale) ++rank;
  return svd.matrixU().leftCols(rank);
}

int Polyhedron::affine_dim() const {
  if (empty_) return -1;
  return static_cast<int>(affine_directions().cols());
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim() != dim_) throw Error(Errc::DimensionMismatch, "intersect");
  if (empty_ || other.is_empty()) return empty(dim_);
  std::vector<Halfspace> rows = rows_;
  rows.insert(rows.end(), other.rows().begin(), other.rows().end());
  return from_h(dim_, std::move(rows));
}

Polyhedron Polyhedron::minkowski_sum(const Polyhedron& other) const {
  if (other.dim() != dim_) throw Error(Errc::DimensionMismatch, "minkowski_sum");
  if (empty_ || other.is_empty()) return empty(dim_);
  std::vector<Vec> vs;
  for (const auto& a : vertices_)
    for (const auto& b : other.vertices()) vs.push_back(a + b);
  std::vector<Vec> rs = rays_;
  rs.insert(rs.end(), other.rays().begin(), other.rays().end());
  dedupe(vs, 1e-9);
  dedupe(rs, 1e-8);
  return from_generators(dim_, std::move(vs), std::move(rs));
}

Polyhedron Polyhedron::linear_image(const Mat& m) const {
  const int out = static_cast<int>(m.rows());
  if (m.cols() != dim_) throw Error(Errc::DimensionMismatch, "linear_image");
  if (empty_) return empty(out);
  std::vector<Vec> vs, rs;
  for (const auto& v : vertices_) vs.push_back(m * v);
  for (const auto& r : rays_) {
    Vec mr = m * r;
    if (mr.norm() > tol()) rs.push_back(mr);
  }
  dedupe(vs, 1e-9);
  return from_generators(out, std::move(vs), std::move(rs));
}

Polyhedron Polyhedron::translated(const Vec& shift) const {
  require_dim(shift, dim_, "shift");
  if (empty_) return empty(dim_);
  Polyhedron p = *this;
  for (auto& row : p.rows_) row.offset += row.normal.dot(shift);
  for (auto& v : p.vertices_) v += shift;
  return p;
}

double Polyhedron::support(const Vec& c) const {
  if (empty_) return -kInf;
  const double slack = tol() * std::max(1.0, c.norm());
  for (const auto& r : rays_)
    if (c.dot(r) > slack) return kInf;
  double best = -kInf;
  for (const auto& v : vertices_) best = std::max(best, c.dot(v));
  return best;
}

const Vec* Polyhedron::argmax(const Vec& c) const {
  if (empty_ || support(c) == kInf) return nullptr;
  const Vec* best = nullptr;
  double value = -kInf;
  for (const auto& v : vertices_)
    if (c.dot(v) > value) value = c.dot(v), best = &v;
  return best;
}

// ---------------------------------------------------------------------------

bool ExtInterval::is_singleton() const {
  return !empty && std::isfinite(lo) && std::isfinite(hi) && hi - lo <= tol();
}

bool ExtInterval::same(const ExtInterval& other, double slack) const {
  if (empty || other.empty) return empty == other.empty;
  auto close = [slack](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= slack * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  };
  return close(lo, other.lo) && close(hi, other.hi);
}

}  // namespace monokit
