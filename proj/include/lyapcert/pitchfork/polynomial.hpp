#pragma once

#include <vector>

#include "lyapcert/core/interval.hpp"

namespace lyapcert {

// Real polynomial sum_k c[k] x^k with interval coefficients.
struct Polynomial {
  std::vector<Interval> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<Interval> coeffs) : c(std::move(coeffs)) {}

  int degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
      if (!(c[k].lo() == 0.0 && c[k].hi() == 0.0)) return k;
    return -1;
  }
  bool is_even() const {
    for (std::size_t k = 1; k < c.size(); k += 2)
      if (!(c[k].lo() == 0.0 && c[k].hi() == 0.0)) return false;
    return true;
  }
  Interval coeff(std::size_t k) const { return k < c.size() ? c[k] : Interval(0.0); }

  Interval operator()(const Interval& x) const {
    Interval r(0.0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) r = r * x + c[k];
    return r;
  }
  double eval_mid(double x) const {
    double r = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) r = r * x + c[k].mid();
    return r;
  }

  Polynomial derivative() const {
    Polynomial d;
    for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(Interval(static_cast<double>(k)) * c[k]);
    return d;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Interval(0.0));
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Polynomial operator*(const Interval& s, const Polynomial& a) {
    Polynomial r = a;
    for (auto& v : r.c) v = s * v;
    return r;
  }
};

// Mean-value enclosure of p over x; usually much tighter than Horner on
// narrow x.
inline Interval mean_value_eval(const Polynomial& p, const Polynomial& dp, const Interval& x) {
  const double m = x.mid();
  const Interval centered = p(Interval(m)) + dp(x) * (x - Interval(m));
  const Interval direct = p(x);
  return intersect(centered, direct);
}

}  // namespace lyapcert
