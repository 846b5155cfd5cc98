#include "toric/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toric {

namespace {

Eigen::Vector2d rot90(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

std::vector<Eigen::Vector2d> local_generators(const ToricInclusion& ti,
                                              const Eigen::Vector2d& X) {
  std::vector<Eigen::Vector2d> gens;
  for (const auto& u : ti.fan->unit_normals()) {
    Eigen::Vector2d h = u;
    double d = h.dot(X);
    if (std::abs(d) <= ti.delta) {
      gens.push_back(h);
      gens.push_back(-h);
    } else {
      gens.push_back(d > 0 ? Eigen::Vector2d(-h) : h);
    }
  }
  return gens;
}

RegionCertificate verify_segments(
    const ToricInclusion& ti,
    const std::vector<std::tuple<Eigen::Vector2d, Eigen::Vector2d, Eigen::Vector2d>>& segs,
    double tol) {
  RegionCertificate cert;
  for (const auto& [P, Q, nu] : segs) {
    Eigen::Vector2d dirv = Q - P;
    std::vector<double> cuts{0.0, 1.0};
    for (const auto& h : ti.fan->unit_normals()) {
      double dh = dirv.dot(h);
      if (std::abs(dh) < 1e-14) continue;
      for (double c : {-ti.delta, 0.0, ti.delta}) {
        double t = (c - P.dot(h)) / dh;
        if (t > 1e-12 && t < 1 - 1e-12) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double lo = cuts[i], hi = cuts[i + 1];
      RegionCertificate::Subsegment sub;
      sub.a = P + lo * dirv;
      sub.b = P + hi * dirv;
      sub.outward_normal = nu;
      Eigen::Vector2d mid = P + 0.5 * (lo + hi) * dirv;
      sub.generators = local_generators(ti, mid);
      // the signature must be constant across the subsegment
      auto sig_at = [&](double t) {
        std::vector<int> s;
        for (const auto& h : ti.fan->unit_normals()) {
          double d = (P + t * dirv).dot(h);
          s.push_back(std::abs(d) <= ti.delta ? 0 : (d > 0 ? 1 : -1));
        }
        return s;
      };
      double eta = 1e-7 * (hi - lo);
      std::vector<int> sm = sig_at(0.5 * (lo + hi));
      if (sig_at(lo + eta) != sm || sig_at(hi - eta) != sm)
        cert.note = "subsegment signature not constant";
      for (const auto& gvec : sub.generators)
        sub.max_dot = std::max(sub.max_dot, gvec.dot(nu));
      cert.max_value = std::max(cert.max_value, sub.max_dot);
      cert.subsegments.push_back(std::move(sub));
    }
  }
  cert.verified = cert.max_value <= tol && cert.note.empty();
  return cert;
}

void require_2d_hyperplane(const ToricInclusion& ti) {
  if (!ti.hyperplane_generated())
    throw std::invalid_argument("regions require a hyperplane-generated inclusion");
  if (ti.fan->dimension() != 2)
    throw std::invalid_argument("regions require dimension 2");
}

// boundary rays and sector bisectors of the 2D fan, sorted by angle
std::vector<Eigen::Vector2d> sweep_directions(const ToricInclusion& ti) {
  std::vector<double> angles;
  for (const auto& h : ti.fan->unit_normals()) {
    Eigen::Vector2d u = rot90(Eigen::Vector2d(h));
    angles.push_back(std::atan2(u.y(), u.x()));
    angles.push_back(std::atan2(-u.y(), -u.x()));
  }
  if (angles.empty())
    for (int j = 0; j < 8; ++j) angles.push_back(j * M_PI / 4 - M_PI);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               angles.end());
  std::vector<double> all = angles;
  for (size_t i = 0; i < angles.size(); ++i) {
    double a = angles[i];
    double b = angles[(i + 1) % angles.size()];
    double gap = b - a;
    if (gap <= 0) gap += 2 * M_PI;
    all.push_back(std::remainder(a + gap / 2, 2 * M_PI));
  }
  std::sort(all.begin(), all.end());
  std::vector<Eigen::Vector2d> dirs;
  for (double a : all) dirs.push_back({std::cos(a), std::sin(a)});
  return dirs;
}

PolygonRegion polygon_at_scale(const std::vector<Eigen::Vector2d>& dirs, double tau) {
  size_t M = dirs.size();
  PolygonRegion region;
  region.tau = tau;
  for (size_t j = 0; j < M; ++j) {
    const Eigen::Vector2d& a = dirs[j];
    const Eigen::Vector2d& b = dirs[(j + 1) % M];
    double det = cross2(a, b);
    if (std::abs(det) < 1e-12)
      throw std::logic_error("degenerate consecutive sweep directions");
    // solve a.X = tau, b.X = tau
    region.vertices.push_back(
        Eigen::Vector2d((tau * b.y() - tau * a.y()) / det, (tau * a.x() - tau * b.x()) / det));
  }
  for (size_t j = 0; j < M; ++j) region.outward_normals.push_back(dirs[(j + 1) % M]);
  return region;
}

std::vector<std::tuple<Eigen::Vector2d, Eigen::Vector2d, Eigen::Vector2d>> polygon_segments(
    const PolygonRegion& region) {
  std::vector<std::tuple<Eigen::Vector2d, Eigen::Vector2d, Eigen::Vector2d>> segs;
  size_t M = region.vertices.size();
  for (size_t j = 0; j < M; ++j)
    segs.push_back({region.vertices[j], region.vertices[(j + 1) % M],
                    region.outward_normals[j]});
  return segs;
}

}  // namespace

RegionCertificate verify_region(const ToricInclusion& ti, const PolygonRegion& region,
                                double tol) {
  require_2d_hyperplane(ti);
  if (region.vertices.size() < 3 || region.vertices.size() != region.outward_normals.size())
    throw std::invalid_argument("degenerate polygon");
  return verify_segments(ti, polygon_segments(region), tol);
}

PolygonRegion build_region(const ToricInclusion& ti, double tau) {
  require_2d_hyperplane(ti);
  if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
  std::vector<Eigen::Vector2d> dirs = sweep_directions(ti);
  RegionCertificate last;
  double t = tau;
  for (int attempt = 0; attempt < 8; ++attempt, t *= 2) {
    PolygonRegion region = polygon_at_scale(dirs, t);
    last = verify_region(ti, region, 1e-10);
    if (last.verified) return region;
  }
  throw std::runtime_error("region construction failed after 8 retries; max generator.normal = " +
                           std::to_string(last.max_value) + " " + last.note);
}

SeparatingCurve build_separating_curve(const ToricInclusion& ti, double box, BoxSide side) {
  require_2d_hyperplane(ti);
  Eigen::Vector2d d;
  switch (side) {
    case BoxSide::lower_left: d = {-1, -1}; break;
    case BoxSide::lower_right: d = {1, -1}; break;
    case BoxSide::upper_left: d = {-1, 1}; break;
    case BoxSide::upper_right: d = {1, 1}; break;
  }
  d.normalize();
  std::vector<Eigen::Vector2d> all = sweep_directions(ti);
  std::vector<Eigen::Vector2d> dirs;
  for (const auto& v : all)
    if (v.dot(d) > 1e-9) dirs.push_back(v);
  if (dirs.empty()) dirs.push_back(d);
  std::sort(dirs.begin(), dirs.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(cross2(d, a), d.dot(a)) < std::atan2(cross2(d, b), d.dot(b));
  });

  double tau = box / 3;
  for (int attempt = 0; attempt < 8; ++attempt, tau = std::max(tau / 2, ti.delta * 1.5)) {
    // chain of lines nu_j . X = tau, tangent direction rot90(nu_j)
    size_t M = dirs.size();
    std::vector<Eigen::Vector2d> pts;
    auto box_span = [&](const Eigen::Vector2d& nu, double& slo, double& shi) {
      Eigen::Vector2d p = tau * nu, tv = rot90(nu);
      slo = -1e18;
      shi = 1e18;
      for (int c = 0; c < 2; ++c) {
        if (std::abs(tv[c]) < 1e-14) continue;
        double t1 = (-box - p[c]) / tv[c], t2 = (box - p[c]) / tv[c];
        slo = std::max(slo, std::min(t1, t2));
        shi = std::min(shi, std::max(t1, t2));
      }
    };
    double slo0, shi0, slo1, shi1;
    box_span(dirs.front(), slo0, shi0);
    box_span(dirs.back(), slo1, shi1);
    pts.push_back(tau * dirs.front() + slo0 * rot90(dirs.front()));
    for (size_t j = 0; j + 1 < M; ++j) {
      const Eigen::Vector2d& a = dirs[j];
      const Eigen::Vector2d& b = dirs[j + 1];
      double det = cross2(a, b);
      pts.push_back({(tau * b.y() - tau * a.y()) / det, (tau * a.x() - tau * b.x()) / det});
    }
    pts.push_back(tau * dirs.back() + shi1 * rot90(dirs.back()));

    std::vector<std::tuple<Eigen::Vector2d, Eigen::Vector2d, Eigen::Vector2d>> segs;
    for (size_t j = 0; j + 1 < pts.size(); ++j)
      segs.push_back({pts[j], pts[j + 1], dirs[j]});
    RegionCertificate cert = verify_segments(ti, segs, 1e-10);
    if (cert.verified || attempt == 7) {
      if (!cert.verified)
        throw std::runtime_error("separating-curve construction failed; max generator.normal = " +
                                 std::to_string(cert.max_value) + " " + cert.note);
      SeparatingCurve curve;
      curve.points = pts;
      curve.outward_normals = dirs;
      curve.certificate = std::move(cert);
      return curve;
    }
  }
  throw std::runtime_error("separating-curve construction failed");
}

std::vector<Eigen::Vector2d> to_xspace(const std::vector<Eigen::Vector2d>& polyline,
                                       int samples_per_segment, bool closed) {
  if (samples_per_segment < 2) throw std::invalid_argument("need at least 2 samples per segment");
  std::vector<Eigen::Vector2d> out;
  size_t nseg = closed ? polyline.size() : polyline.size() - 1;
  for (size_t s = 0; s < nseg; ++s) {
    const Eigen::Vector2d& a = polyline[s];
    const Eigen::Vector2d& b = polyline[(s + 1) % polyline.size()];
    int first = (s == 0) ? 0 : 1;
    for (int i = first; i < samples_per_segment; ++i) {
      double t = (double)i / (samples_per_segment - 1);
      if (closed && s + 1 == nseg && i == samples_per_segment - 1) break;
      Eigen::Vector2d p = a + t * (b - a);
      out.push_back(p.array().exp());
    }
  }
  return out;
}

}  // namespace toric
