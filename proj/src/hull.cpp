#include "cvxsec/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace cvxsec {

namespace {

struct SimplexFacet {
  std::vector<int> verts;      // d point indices
  std::vector<int> neighbors;  // neighbors[i] shares the ridge opposite verts[i]
  Vec normal;
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

constexpr double kSliver = 100.0;
constexpr double kMerge = 10.0;

class QuickHull {
 public:
  QuickHull(const std::vector<Vec>& pts, double eps) : pts_(pts), d_(static_cast<int>(pts[0].size())), eps_(eps) {}

  void run() {
    initial_simplex();
    std::vector<int> pending;
    for (std::size_t f = 0; f < facets_.size(); ++f) pending.push_back(static_cast<int>(f));
    for (std::size_t head = 0; head < pending.size(); ++head) {
      const int f = pending[head];
      if (!facets_[f].alive || facets_[f].outside.empty()) continue;
      const int apex = furthest(facets_[f]);
      const auto created = add_point(f, apex);
      pending.insert(pending.end(), created.begin(), created.end());
    }
  }

  std::vector<SimplexFacet> facets_;
  Vec interior_;

 private:
  double dist(const SimplexFacet& f, int p) const { return f.normal.dot(pts_[p]) - f.offset; }

  // File p under the candidate facet it lies furthest above. Taking the first
  // facet instead can file it under one it is only rounding-noise above, and
  // it would be lost when that facet is replaced.
  void assign(int p, const std::vector<int>& candidates) {
    int best = -1;
    double bd = eps_;
    for (int f : candidates) {
      const double dp = dist(facets_[f], p);
      if (dp > bd) {
        bd = dp;
        best = f;
      }
    }
    if (best >= 0) facets_[best].outside.push_back(p);
  }

  // Distance from point p to the affine span of the ridge opposite verts[t].
  double ridge_distance(const SimplexFacet& f, int t, int p) const {
    std::vector<int> r;
    for (int i = 0; i < d_; ++i)
      if (i != t) r.push_back(f.verts[i]);
    Vec w = pts_[p] - pts_[r[0]];
    if (r.size() == 1) return w.norm();
    Mat diff(d_, static_cast<Eigen::Index>(r.size()) - 1);
    for (std::size_t i = 1; i < r.size(); ++i) diff.col(static_cast<Eigen::Index>(i) - 1) = pts_[r[i]] - pts_[r[0]];
    const Eigen::HouseholderQR<Mat> qr(diff);
    const Mat q = qr.householderQ() * Mat::Identity(d_, diff.cols());
    return (w - q * (q.transpose() * w)).norm();
  }

  int furthest(const SimplexFacet& f) const {
    int best = f.outside.front();
    double bd = dist(f, best);
    for (int p : f.outside) {
      const double dp = dist(f, p);
      if (dp > bd) {
        bd = dp;
        best = p;
      }
    }
    return best;
  }

  void orient(SimplexFacet& f) const {
    Mat diff(d_, d_ - 1);
    for (int i = 1; i < d_; ++i) diff.col(i - 1) = pts_[f.verts[i]] - pts_[f.verts[0]];
    if (d_ == 1) {
      f.normal = Vec::Ones(1);
    } else {
      Eigen::JacobiSVD<Mat> svd(diff, Eigen::ComputeFullU);
      f.normal = svd.matrixU().col(d_ - 1);
    }
    f.offset = f.normal.dot(pts_[f.verts[0]]);
    if (f.normal.dot(interior_) - f.offset > 0) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
  }

  void initial_simplex() {
    const int m = static_cast<int>(pts_.size());
    std::vector<int> chosen;
    int lo = 0, hi = 0;
    for (int i = 1; i < m; ++i) {
      if (pts_[i](0) < pts_[lo](0)) lo = i;
      if (pts_[i](0) > pts_[hi](0)) hi = i;
    }
    if (lo == hi) throw DegenerateError("point set is lower-dimensional");
    chosen = {lo, hi};
    Mat basis(d_, 0);
    auto extend_basis = [&](const Vec& v) {
      Vec w = v;
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = 0; j < basis.cols(); ++j) w -= basis.col(j).dot(w) * basis.col(j);
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = w.normalized();
    };
    extend_basis(pts_[hi] - pts_[lo]);
    while (static_cast<int>(chosen.size()) < d_ + 1) {
      int best = -1;
      double bd = eps_;
      for (int i = 0; i < m; ++i) {
        Vec w = pts_[i] - pts_[lo];
        w -= basis * (basis.transpose() * w);
        const double len = w.norm();
        if (len > bd) {
          bd = len;
          best = i;
        }
      }
      if (best < 0) throw DegenerateError("point set is lower-dimensional");
      chosen.push_back(best);
      extend_basis(pts_[best] - pts_[lo]);
    }

    interior_ = Vec::Zero(d_);
    for (int c : chosen) interior_ += pts_[c];
    interior_ /= d_ + 1;

    for (int i = 0; i <= d_; ++i) {
      SimplexFacet f;
      for (int j = 0; j <= d_; ++j)
        if (j != i) f.verts.push_back(chosen[j]);
      // Neighbor opposite verts[t] is the facet omitting that vertex instead.
      for (int j = 0; j <= d_; ++j)
        if (j != i) f.neighbors.push_back(j);
      orient(f);
      facets_.push_back(std::move(f));
    }
    std::vector<char> used(m, 0);
    for (int c : chosen) used[c] = 1;
    std::vector<int> all(facets_.size());
    std::iota(all.begin(), all.end(), 0);
    for (int p = 0; p < m; ++p)
      if (!used[p]) assign(p, all);
  }

  std::vector<int> add_point(int start, int apex) {
    // Visible region by flood fill from the facet that owns the apex. A facet
    // the apex (nearly) lies on is also taken when the apex is close to the
    // shared ridge's affine span; keeping it would create a sliver facet whose
    // normal is rounding noise.
    std::vector<int> visible{start};
    std::vector<char> is_visible(facets_.size(), 0);
    is_visible[start] = 1;
    for (std::size_t h = 0; h < visible.size(); ++h) {
      const auto& fv = facets_[visible[h]];
      for (int t = 0; t < d_; ++t) {
        const int nb = fv.neighbors[t];
        if (is_visible[nb] || !facets_[nb].alive) continue;
        const double dn = dist(facets_[nb], apex);
        if (dn > eps_ || (dn > -kSliver * eps_ && ridge_distance(fv, t, apex) < kSliver * eps_)) {
          is_visible[nb] = 1;
          visible.push_back(nb);
        }
      }
    }

    std::vector<int> created;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int fv : visible) {
      for (int i = 0; i < d_; ++i) {
        const int nb = facets_[fv].neighbors[i];
        if (is_visible[nb]) continue;
        SimplexFacet nf;
        nf.verts = facets_[fv].verts;
        nf.verts[i] = apex;
        nf.neighbors.assign(d_, -1);
        nf.neighbors[i] = nb;
        orient(nf);
        const int id = static_cast<int>(facets_.size());
        auto& nbf = facets_[nb];
        for (int t = 0; t < d_; ++t)
          if (nbf.neighbors[t] == fv) nbf.neighbors[t] = id;
        facets_.push_back(std::move(nf));
        is_visible.push_back(0);
        created.push_back(id);
        // Ridges through the apex pair up among the new facets.
        for (int t = 0; t < d_; ++t) {
          if (t == i) continue;
          std::vector<int> key;
          for (int s = 0; s < d_; ++s)
            if (s != t) key.push_back(facets_[id].verts[s]);
          std::sort(key.begin(), key.end());
          auto it = open_ridges.find(key);
          if (it == open_ridges.end()) {
            open_ridges.emplace(std::move(key), std::make_pair(id, t));
          } else {
            facets_[id].neighbors[t] = it->second.first;
            facets_[it->second.first].neighbors[it->second.second] = id;
            open_ridges.erase(it);
          }
        }
      }
    }
    if (!open_ridges.empty()) throw std::runtime_error("hull: inconsistent horizon");

    for (int fv : visible) {
      facets_[fv].alive = false;
      for (int p : facets_[fv].outside) {
        if (p != apex) assign(p, created);
      }
      facets_[fv].outside.clear();
    }
    return created;
  }

  const std::vector<Vec>& pts_;
  int d_;
  double eps_;
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

HullResult hull_1d(const std::vector<Vec>& pts) {
  double lo = pts[0](0), hi = pts[0](0);
  for (const auto& p : pts) {
    lo = std::min(lo, p(0));
    hi = std::max(hi, p(0));
  }
  HullResult r;
  r.dim = 1;
  r.vertices = {Vec::Constant(1, lo), Vec::Constant(1, hi)};
  r.facets = {{Vec::Constant(1, -1.0), -lo}, {Vec::Constant(1, 1.0), hi}};
  r.tri_points = r.vertices;
  r.boundary = {{0}, {1}};
  r.interior = Vec::Constant(1, 0.5 * (lo + hi));
  return r;
}

}  // namespace

std::vector<Vec> dedup_points(const std::vector<Vec>& points, double tol) {
  std::vector<Vec> sorted = points;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  std::vector<Vec> out;
  for (const auto& p : sorted) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (p(0) - (*it)(0) > tol) break;
      if ((p - *it).norm() < tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

AffineHull affine_hull(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw DomainError("affine hull of empty set");
  const int n = static_cast<int>(points[0].size());
  AffineHull ah;
  ah.origin = points[0];
  Mat diffs(n, static_cast<Eigen::Index>(points.size()));
  double extent = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    diffs.col(static_cast<Eigen::Index>(i)) = points[i] - points[0];
    extent = std::max(extent, points[i].cwiseAbs().maxCoeff());
  }
  if (diffs.cols() <= 1) {
    ah.basis = Mat(n, 0);
    return ah;
  }
  Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(1.0, extent)) ++rank;
  ah.basis = svd.matrixU().leftCols(rank);
  return ah;
}

HullResult convex_hull(const std::vector<Vec>& input, double tol) {
  if (input.empty()) throw DegenerateError("hull of empty point set");
  const int d = static_cast<int>(input[0].size());
  double extent = 1.0;
  for (const auto& p : input) extent = std::max(extent, p.cwiseAbs().maxCoeff());
  const double eps = tol * extent;
  std::vector<Vec> pts = dedup_points(input, eps);
  if (static_cast<int>(pts.size()) < d + 1) throw DegenerateError("too few points for a full-dimensional hull");
  if (d == 1) return hull_1d(pts);

  QuickHull qh(pts, eps);
  qh.run();

  std::vector<int> alive;
  for (std::size_t f = 0; f < qh.facets_.size(); ++f)
    if (qh.facets_[f].alive) alive.push_back(static_cast<int>(f));

  // Merge adjacent simplicial facets when each one's far vertex lies on the
  // other's plane. Comparing normals instead fails for thin facets.
  auto far_vertex = [&](const auto& a, const auto& b) {
    for (int v : b.verts)
      if (std::find(a.verts.begin(), a.verts.end(), v) == a.verts.end()) return v;
    return b.verts.front();
  };
  auto plane_dist = [&](const auto& f, int v) { return std::abs(f.normal.dot(pts[v]) - f.offset); };
  std::vector<int> parent(qh.facets_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (int f : alive) {
    const auto& sf = qh.facets_[f];
    for (int nb : sf.neighbors) {
      const auto& nf = qh.facets_[nb];
      if (plane_dist(sf, far_vertex(sf, nf)) < kMerge * eps && plane_dist(nf, far_vertex(nf, sf)) < kMerge * eps)
        parent[find_root(parent, f)] = find_root(parent, nb);
    }
  }

  HullResult r;
  r.dim = d;
  std::map<int, int> group_index;
  std::vector<std::vector<int>> group_members;
  for (int f : alive) {
    const int root = find_root(parent, f);
    auto [it, fresh] = group_index.emplace(root, static_cast<int>(group_members.size()));
    if (fresh) group_members.emplace_back();
    group_members[it->second].push_back(f);
  }
  for (const auto& members : group_members) {
    std::vector<int> gv;
    for (int f : members) gv.insert(gv.end(), qh.facets_[f].verts.begin(), qh.facets_[f].verts.end());
    std::sort(gv.begin(), gv.end());
    gv.erase(std::unique(gv.begin(), gv.end()), gv.end());
    Vec normal = qh.facets_[members.front()].normal;
    if (members.size() > 1) {
      // Least-squares plane through all group vertices.
      Vec mean = Vec::Zero(d);
      for (int v : gv) mean += pts[v];
      mean /= static_cast<double>(gv.size());
      Mat centered(d, static_cast<Eigen::Index>(gv.size()));
      for (std::size_t i = 0; i < gv.size(); ++i) centered.col(static_cast<Eigen::Index>(i)) = pts[gv[i]] - mean;
      Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
      normal = svd.matrixU().col(d - 1);
      if (normal.dot(qh.interior_ - mean) > 0) normal = -normal;
    }
    double offset = -std::numeric_limits<double>::infinity();
    for (int v : gv) offset = std::max(offset, normal.dot(pts[v]));
    r.facets.push_back({normal, offset});
  }

  // Points used by the boundary triangulation, and which facets touch each.
  std::map<int, int> used;
  std::vector<std::vector<int>> incident;
  for (std::size_t g = 0; g < group_members.size(); ++g)
    for (int f : group_members[g])
      for (int v : qh.facets_[f].verts) {
        auto [it, fresh] = used.emplace(v, static_cast<int>(incident.size()));
        if (fresh) incident.emplace_back();
        auto& inc = incident[it->second];
        if (inc.empty() || inc.back() != static_cast<int>(g)) inc.push_back(static_cast<int>(g));
      }

  std::map<int, int> tri_index;
  for (const auto& [pt, slot] : used) {
    tri_index[pt] = static_cast<int>(r.tri_points.size());
    r.tri_points.push_back(pts[pt]);
    auto groups = incident[slot];
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    Mat normals(d, static_cast<Eigen::Index>(groups.size()));
    for (std::size_t i = 0; i < groups.size(); ++i) normals.col(static_cast<Eigen::Index>(i)) = r.facets[groups[i]].normal;
    if (static_cast<int>(groups.size()) >= d && orthonormal_span(normals, 1e-7).cols() == d) r.vertices.push_back(pts[pt]);
  }
  for (int f : alive) {
    std::vector<int> s;
    for (int v : qh.facets_[f].verts) s.push_back(tri_index.at(v));
    r.boundary.push_back(std::move(s));
  }
  std::sort(r.vertices.begin(), r.vertices.end(), lex_less);
  r.interior = Vec::Zero(d);
  for (const auto& v : r.vertices) r.interior += v;
  r.interior /= static_cast<double>(r.vertices.size());
  return r;
}

}  // namespace cvxsec
