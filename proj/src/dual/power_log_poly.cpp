#include "seclab/dual/power_log_poly.hpp"

#include <algorithm>
#include <cmath>

namespace seclab::dual {

namespace {

double ipow(double x, int e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

}  // namespace

PowerLogPoly::PowerLogPoly(std::initializer_list<PowerLogTerm> terms) : terms_(terms) { normalize(); }

PowerLogPoly::PowerLogPoly(std::vector<PowerLogTerm> terms) : terms_(std::move(terms)) { normalize(); }

PowerLogPoly PowerLogPoly::polynomial(const std::vector<double>& coeffs) {
  std::vector<PowerLogTerm> t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) t.push_back({static_cast<int>(i), 0, coeffs[i]});
  return PowerLogPoly(std::move(t));
}

void PowerLogPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const PowerLogTerm& a, const PowerLogTerm& b) {
    return a.power != b.power ? a.power < b.power : a.log_power < b.log_power;
  });
  std::vector<PowerLogTerm> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().power == t.power && merged.back().log_power == t.log_power)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const PowerLogTerm& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);
}

double PowerLogPoly::operator()(double x) const {
  if (terms_.empty()) return 0.0;
  const double L = std::log(x);
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coef * ipow(x, t.power) * ipow(L, t.log_power);
  return sum;
}

PowerLogPoly PowerLogPoly::shifted(int dpower) const {
  PowerLogPoly out = *this;
  for (auto& t : out.terms_) t.power += dpower;
  return out;
}

PowerLogPoly PowerLogPoly::derivative() const {
  // d/dx x^a L^p = a x^{a-1} L^p + p x^{a-1} L^{p-1}
  std::vector<PowerLogTerm> out;
  for (const auto& t : terms_) {
    if (t.power != 0) out.push_back({t.power - 1, t.log_power, t.coef * t.power});
    if (t.log_power != 0) out.push_back({t.power - 1, t.log_power - 1, t.coef * t.log_power});
  }
  return PowerLogPoly(std::move(out));
}

PowerLogPoly PowerLogPoly::antiderivative() const {
  std::vector<PowerLogTerm> out;
  for (const auto& t : terms_) {
    if (t.power == -1) {
      out.push_back({0, t.log_power + 1, t.coef / (t.log_power + 1)});
      continue;
    }
    // x^{a+1} sum_i (-1)^i p!/(p-i)! L^{p-i} / (a+1)^{i+1}
    const double a1 = t.power + 1;
    double factor = t.coef / a1;
    for (int i = 0; i <= t.log_power; ++i) {
      out.push_back({t.power + 1, t.log_power - i, factor});
      factor *= -static_cast<double>(t.log_power - i) / a1;
    }
  }
  return PowerLogPoly(std::move(out));
}

PowerLogPoly operator+(const PowerLogPoly& a, const PowerLogPoly& b) {
  std::vector<PowerLogTerm> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return PowerLogPoly(std::move(t));
}

PowerLogPoly operator-(const PowerLogPoly& a, const PowerLogPoly& b) { return a + (-1.0) * b; }

PowerLogPoly operator*(double s, const PowerLogPoly& p) {
  PowerLogPoly out = p;
  for (auto& t : out.terms_) t.coef *= s;
  out.normalize();
  return out;
}

}  // namespace seclab::dual
