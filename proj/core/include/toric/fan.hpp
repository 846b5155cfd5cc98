#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <vector>

#include "toric/cone.hpp"
#include "toric/rational.hpp"

namespace toric {

// entries in {-1, 0, +1}, one per fan normal
using SignVector = std::vector<int>;

// Complete fan generated by a set of hyperplanes through the origin.
// Normals are kept as primitive rational direction vectors (deduplicated up
// to sign); unit-length floating versions are derived for distance work.
class HyperplaneFan {
 public:
  int dimension() const { return n_; }
  const QMat& normal_dirs() const { return dirs_; }
  const std::vector<Eigen::VectorXd>& unit_normals() const { return units_; }
  int num_hyperplanes() const { return (int)dirs_.size(); }

  const std::vector<SignVector>& realizable() const { return realizable_; }
  bool is_realizable(const SignVector& sv) const;

  // Cone {x : sv_i (x . h_i) >= 0, with equality where sv_i = 0}.
  Cone cone_of(const SignVector& sv) const;

  SignVector sign_vector_of(const QVec& x) const;                    // exact
  SignVector sign_vector_of(const Eigen::VectorXd& x, double tol) const;

  // All fan cones, one per realizable sign vector (same order).
  std::vector<Cone> all_cones() const;

  friend HyperplaneFan fan_from_hyperplanes(const QMat& normals);
  friend HyperplaneFan empty_fan(int n);

 private:
  int n_ = 0;
  QMat dirs_;
  std::vector<Eigen::VectorXd> units_;
  std::vector<SignVector> realizable_;
};

HyperplaneFan fan_from_hyperplanes(const QMat& normals);
// Trivial fan {R^n}: no hyperplanes, every evaluation yields the zero cone.
HyperplaneFan empty_fan(int n);

}  // namespace toric

#endif
