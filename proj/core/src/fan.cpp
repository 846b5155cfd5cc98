#include "toric/fan.hpp"

#include <algorithm>
#include <stdexcept>

namespace toric {

namespace {

std::vector<Constraint> constraints_for(const QMat& dirs, const SignVector& sv) {
  std::vector<Constraint> cons;
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (sv[i] == 0)
      cons.push_back({dirs[i], true});
    else
      cons.push_back({scaled(dirs[i], Rational(sv[i])), false});
  }
  return cons;
}

// A sign vector is realizable iff the relative interior of its candidate
// cone actually achieves the strict signs. The sum of the extreme rays is a
// relative interior point (lineality directions are orthogonal to every
// normal involved, so they contribute nothing to the dot products).
bool realizable_sign_vector(int n, const QMat& dirs, const SignVector& sv) {
  QMat L, R;
  double_description(n, constraints_for(dirs, sv), L, R);
  QVec probe = zero_vec(n);
  for (const auto& r : R) probe = add(probe, r);
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (sv[i] == 0) continue;
    Rational d = dot(dirs[i], probe);
    if (sv[i] > 0 ? d <= 0 : d >= 0) return false;
  }
  return true;
}

}  // namespace

HyperplaneFan fan_from_hyperplanes(const QMat& normals) {
  HyperplaneFan fan;
  if (normals.empty()) throw std::invalid_argument("empty hyperplane set");
  fan.n_ = (int)normals[0].size();
  for (const auto& h : normals) {
    if (is_zero(h)) throw std::invalid_argument("zero hyperplane normal");
    QVec d = primitive_up_to_sign(h);
    if (std::find(fan.dirs_.begin(), fan.dirs_.end(), d) == fan.dirs_.end())
      fan.dirs_.push_back(d);
  }
  for (const auto& d : fan.dirs_) {
    Eigen::VectorXd u = to_eigen(d);
    fan.units_.push_back(u / u.norm());
  }
  int m = (int)fan.dirs_.size();
  if (m > 14) throw std::invalid_argument("too many hyperplanes for sign-vector enumeration");
  SignVector sv(m, -1);
  while (true) {
    if (realizable_sign_vector(fan.n_, fan.dirs_, sv)) fan.realizable_.push_back(sv);
    int i = 0;
    for (; i < m; ++i) {
      if (sv[i] < 1) {
        ++sv[i];
        break;
      }
      sv[i] = -1;
    }
    if (i == m) break;
  }
  std::sort(fan.realizable_.begin(), fan.realizable_.end());
  return fan;
}

HyperplaneFan empty_fan(int n) {
  HyperplaneFan fan;
  fan.n_ = n;
  fan.realizable_.push_back({});
  return fan;
}

bool HyperplaneFan::is_realizable(const SignVector& sv) const {
  return std::binary_search(realizable_.begin(), realizable_.end(), sv);
}

Cone HyperplaneFan::cone_of(const SignVector& sv) const {
  if (sv.size() != dirs_.size())
    throw std::invalid_argument("sign vector length mismatch");
  if (!is_realizable(sv)) throw std::invalid_argument("sign vector not realizable");
  return Cone::from_constraints(n_, constraints_for(dirs_, sv));
}

SignVector HyperplaneFan::sign_vector_of(const QVec& x) const {
  SignVector sv(dirs_.size());
  for (size_t i = 0; i < dirs_.size(); ++i) {
    Rational d = dot(dirs_[i], x);
    sv[i] = d > 0 ? 1 : (d < 0 ? -1 : 0);
  }
  return sv;
}

SignVector HyperplaneFan::sign_vector_of(const Eigen::VectorXd& x, double tol) const {
  SignVector sv(dirs_.size());
  for (size_t i = 0; i < dirs_.size(); ++i) {
    double d = units_[i].dot(x);
    sv[i] = d > tol ? 1 : (d < -tol ? -1 : 0);
  }
  return sv;
}

std::vector<Cone> HyperplaneFan::all_cones() const {
  std::vector<Cone> cones;
  cones.reserve(realizable_.size());
  for (const auto& sv : realizable_) cones.push_back(cone_of(sv));
  return cones;
}

}  // namespace toric
