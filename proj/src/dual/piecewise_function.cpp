#include "seclab/dual/piecewise_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace seclab::dual {

PiecewiseFunction::PiecewiseFunction(std::vector<Segment> segments) {
  for (auto& s : segments) {
    if (!(s.lo <= s.hi)) throw std::invalid_argument("PiecewiseFunction: segment with lo > hi");
    if (s.lo == s.hi) continue;
    if (!segments_.empty() && segments_.back().hi != s.lo)
      throw std::invalid_argument("PiecewiseFunction: segments are not contiguous");
    segments_.push_back(std::move(s));
  }
}

double PiecewiseFunction::lower() const { return segments_.empty() ? 0.0 : segments_.front().lo; }
double PiecewiseFunction::upper() const { return segments_.empty() ? 0.0 : segments_.back().hi; }

std::vector<double> PiecewiseFunction::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : segments_) out.push_back(s.lo);
  if (!segments_.empty()) out.push_back(segments_.back().hi);
  return out;
}

double PiecewiseFunction::operator()(double x) const {
  if (segments_.empty() || x < lower() || x > upper()) return 0.0;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const Segment& s) { return v < s.lo; });
  --it;
  return it->f(x);
}

double PiecewiseFunction::integral(double a, double b, int inv_power) const {
  if (b < a) return -integral(b, a, inv_power);
  double sum = 0.0;
  for (const auto& s : segments_) {
    const double lo = std::max(a, s.lo);
    const double hi = std::min(b, s.hi);
    if (lo >= hi) continue;
    const PowerLogPoly F = s.f.shifted(-inv_power).antiderivative();
    sum += F(hi) - F(lo);
  }
  return sum;
}

PiecewiseFunction PiecewiseFunction::restricted(double lo, double hi) const {
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    const double a = std::max(lo, s.lo);
    const double b = std::min(hi, s.hi);
    if (a < b) out.push_back({a, b, s.f});
  }
  return PiecewiseFunction(std::move(out));
}

namespace {

PiecewiseFunction combine(const PiecewiseFunction& a, const PiecewiseFunction& b, double sign) {
  if (a.empty() && b.empty()) return {};
  std::vector<double> cuts = a.breakpoints();
  const auto bb = b.breakpoints();
  cuts.insert(cuts.end(), bb.begin(), bb.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto piece_of = [](const PiecewiseFunction& f, double lo, double hi) -> PowerLogPoly {
    const double mid = 0.5 * (lo + hi);
    for (const auto& s : f.segments())
      if (s.lo <= mid && mid <= s.hi) return s.f;
    return {};
  };
  std::vector<PiecewiseFunction::Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.push_back({cuts[i], cuts[i + 1], piece_of(a, cuts[i], cuts[i + 1]) + sign * piece_of(b, cuts[i], cuts[i + 1])});
  return PiecewiseFunction(std::move(out));
}

}  // namespace

PiecewiseFunction operator+(const PiecewiseFunction& a, const PiecewiseFunction& b) { return combine(a, b, 1.0); }
PiecewiseFunction operator-(const PiecewiseFunction& a, const PiecewiseFunction& b) { return combine(a, b, -1.0); }

}  // namespace seclab::dual
