#include "toric/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace toric {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  // strip whitespace
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer p(s.substr(0, slash));
    Integer q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(p, q);
  }
  auto dotpos = s.find('.');
  auto epos = s.find_first_of("eE");
  if (dotpos == std::string::npos && epos == std::string::npos) {
    return Rational(Integer(s));
  }
  // decimal, possibly with exponent
  long long exp10 = 0;
  if (epos != std::string::npos) {
    exp10 = std::stoll(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  dotpos = s.find('.');
  std::string digits = s;
  long long frac_len = 0;
  if (dotpos != std::string::npos) {
    frac_len = (long long)(s.size() - dotpos - 1);
    digits = s.substr(0, dotpos) + s.substr(dotpos + 1);
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal '" + text + "'");
  // leading zeros would be read as an octal prefix
  std::string sign;
  if (digits[0] == '+' || digits[0] == '-') {
    if (digits[0] == '-') sign = "-";
    digits.erase(digits.begin());
  }
  size_t nz = digits.find_first_not_of('0');
  digits = (nz == std::string::npos) ? "0" : digits.substr(nz);
  Integer p(sign + digits);
  Rational r(p);
  long long net = exp10 - frac_len;
  Integer ten(10);
  if (net > 0) {
    r *= Rational(boost::multiprecision::pow(ten, (unsigned)net));
  } else if (net < 0) {
    r /= Rational(boost::multiprecision::pow(ten, (unsigned)(-net)));
  }
  return r;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  if (value == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5,1)
  // 53 bits of mantissa
  long long m = (long long)std::ldexp(mant, 53);
  exp -= 53;
  Rational r(m);
  Integer two(2);
  if (exp > 0)
    r *= Rational(boost::multiprecision::pow(two, (unsigned)exp));
  else if (exp < 0)
    r /= Rational(boost::multiprecision::pow(two, (unsigned)(-exp)));
  return r;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Eigen::VectorXd to_eigen(const QVec& v) {
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

QVec from_eigen(const Eigen::VectorXd& v) {
  QVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = rational_from_double(v[i]);
  return out;
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scaled(const QVec& a, const Rational& c) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

QVec negated(const QVec& a) { return scaled(a, Rational(-1)); }

bool is_zero(const QVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

QVec zero_vec(int n) { return QVec(n, Rational(0)); }

QVec primitive(const QVec& v) {
  // common denominator, then gcd of numerators
  Integer den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  Integer g = 0;
  for (const auto& x : v) {
    Integer num = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(num));
  }
  if (g == 0) return zero_vec((int)v.size());
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rational(den, g);
  return out;
}

QVec primitive_up_to_sign(const QVec& v) {
  QVec p = primitive(v);
  for (const auto& x : p) {
    if (x > 0) return p;
    if (x < 0) return negated(p);
  }
  return p;
}

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = (int)m.size(), cols = (int)m[0].size();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    Rational inv = Rational(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMat m) { return (int)rref(m).size(); }

QMat nullspace(const QMat& m_in, int n) {
  QMat m = m_in;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  QMat basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    QVec v = zero_vec(n);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      if (r < m.size()) v[pivots[r]] = -m[r][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

bool solve_consistent(QMat m, QVec b, QVec& out, int n) {
  // augment and eliminate
  for (size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  std::vector<int> pivots = rref(m);
  // inconsistent iff a pivot landed in the augmented column
  for (int c : pivots)
    if (c == n) return false;
  out = zero_vec(n);
  for (size_t r = 0; r < pivots.size(); ++r) out[pivots[r]] = m[r][n];
  return true;
}

}  // namespace toric
