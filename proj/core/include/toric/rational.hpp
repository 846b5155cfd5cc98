#ifndef TORIC_RATIONAL_HPP
#define TORIC_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// ---- parsing / conversion ----

// Accepts "p/q", integers, and decimal literals ("-0.25"); all parsed exactly.
Rational parse_rational(const std::string& text);

// Exact value of the double (doubles are dyadic rationals).
Rational rational_from_double(double value);

double to_double(const Rational& q);
Eigen::VectorXd to_eigen(const QVec& v);
QVec from_eigen(const Eigen::VectorXd& v);

std::string to_string(const Rational& q);

// ---- vector arithmetic ----

Rational dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scaled(const QVec& a, const Rational& c);
QVec negated(const QVec& a);
bool is_zero(const QVec& a);
QVec zero_vec(int n);

// Scales to coprime integer entries, preserving direction.
QVec primitive(const QVec& v);
// primitive() with the first nonzero entry made positive (line representative).
QVec primitive_up_to_sign(const QVec& v);

// ---- exact linear algebra ----

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// Basis of {x : m x = 0}, each row of m a constraint normal.
QMat nullspace(const QMat& m, int n);

// Least-norm style solve is not needed; this solves m x = b exactly if
// consistent, returning empty optional otherwise.
bool solve_consistent(QMat m, QVec b, QVec& out, int n);

}  // namespace toric

#endif
