#ifndef TORIC_CONE_HPP
#define TORIC_CONE_HPP

#include <optional>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

// Linear constraint through the origin: normal . x >= 0, or = 0.
struct Constraint {
  QVec normal;
  bool equality = false;
};

// Polyhedral cone with exact rational arithmetic. Either representation may
// be supplied; the other is derived on demand via the double description
// method. Lines are represented as pairs of opposite rays in the generator
// list.
class Cone {
 public:
  explicit Cone(int dimension) : n_(dimension) {}

  static Cone from_generators(int n, QMat generators);
  static Cone from_constraints(int n, std::vector<Constraint> constraints);
  static Cone full_space(int n);
  static Cone origin_only(int n);

  int dimension() const { return n_; }

  // Canonical generators: lineality lines expanded to +/- ray pairs,
  // followed by the extreme rays of the pointed part, all primitive.
  const QMat& generators() const;
  const std::vector<Constraint>& constraints() const;

  // Lineality basis and extreme rays (pointed part), canonical.
  const QMat& lineality() const;
  const QMat& extreme_rays() const;

  Cone polar() const;

  bool contains(const QVec& v) const;                       // exact
  bool contains(const Eigen::VectorXd& v, double tol) const;

  // Euclidean projection of X onto the cone (floating point).
  struct Projection {
    Eigen::VectorXd point;
    double distance;
  };
  Projection project(const Eigen::VectorXd& X) const;

  bool is_subset_of(const Cone& other) const;  // exact, via generators
  bool equals(const Cone& other) const;        // mutual inclusion

  bool is_full_space() const;
  bool is_origin_only() const;

 private:
  void ensure_canonical() const;
  void ensure_constraints() const;

  int n_;
  mutable std::optional<QMat> raw_generators_;
  mutable std::optional<std::vector<Constraint>> constraints_;
  mutable std::optional<QMat> lineality_;
  mutable std::optional<QMat> extreme_rays_;
  mutable std::optional<QMat> canonical_generators_;
};

Cone sum(const Cone& a, const Cone& b);
Cone intersect(const Cone& a, const Cone& b);

// rays/lineality of {x : constraints hold}; the workhorse behind the
// representation conversions. Exposed for tests.
void double_description(int n, const std::vector<Constraint>& constraints,
                        QMat& lineality_out, QMat& rays_out);

}  // namespace toric

#endif
