#include "seclab/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seclab/errors.hpp"

namespace seclab::lp {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const DenseLp& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.rows), n_(lp.cols), total_(lp.cols + lp.rows) {
    if (lp.a.size() != m_ * n_ || lp.b.size() != m_ || lp.c.size() != n_)
      throw std::invalid_argument("solve_revised_simplex: inconsistent dimensions");
    for (double v : lp.b)
      if (v < 0) throw std::invalid_argument("solve_revised_simplex: negative right-hand side");
    basis_.resize(m_);
    is_basic_.assign(total_, 0);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = n_ + r;
      is_basic_[n_ + r] = 1;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
    xb_ = lp.b;
    y_.resize(m_);
    u_.resize(m_);
  }

  SimplexResult run() {
    SimplexResult res;
    bool confirmed = false;
    std::size_t since_refactor = 0;
    while (res.iterations < opt_.max_iterations) {
      if (since_refactor >= opt_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      compute_duals();
      const std::size_t q = price();
      if (q == kNone) {
        if (!confirmed && since_refactor > 0) {
          refactor();
          since_refactor = 0;
          confirmed = true;
          continue;
        }
        res.status = LpStatus::optimal;
        break;
      }
      confirmed = false;
      column_times_binv(q);
      const std::size_t r = ratio_test();
      if (r == kNone) {
        res.status = LpStatus::unbounded;
        break;
      }
      pivot(r, q);
      ++since_refactor;
      ++res.iterations;
    }
    finish(res);
    return res;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double cost(std::size_t j) const { return j < n_ ? lp_.c[j] : 0.0; }

  double reduced_cost(std::size_t j) const {
    if (j >= n_) return -y_[j - n_];
    const double* col = &lp_.a[j * m_];
    double s = lp_.c[j];
    for (std::size_t i = 0; i < m_; ++i) s -= y_[i] * col[i];
    return s;
  }

  void compute_duals() {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost(basis_[r]);
      if (cb == 0.0) continue;
      const double* row = &binv_[r * m_];
      for (std::size_t i = 0; i < m_; ++i) y_[i] += cb * row[i];
    }
  }

  std::size_t price() {
    if (bland_) {
      for (std::size_t j = 0; j < total_; ++j)
        if (!is_basic_[j] && reduced_cost(j) > opt_.pricing_tol) return j;
      return kNone;
    }
    const std::size_t block = std::max<std::size_t>(64, total_ / 8);
    for (std::size_t scanned = 0; scanned < total_; scanned += block) {
      std::size_t best = kNone;
      double best_d = opt_.pricing_tol;
      for (std::size_t t = 0; t < block && scanned + t < total_; ++t) {
        const std::size_t j = (offset_ + scanned + t) % total_;
        if (is_basic_[j]) continue;
        const double d = reduced_cost(j);
        if (d > best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best != kNone) {
        offset_ = (offset_ + scanned + block) % total_;
        return best;
      }
    }
    return kNone;
  }

  void column_times_binv(std::size_t q) {
    if (q >= n_) {
      const std::size_t i = q - n_;
      for (std::size_t r = 0; r < m_; ++r) u_[r] = binv_[r * m_ + i];
      return;
    }
    const double* col = &lp_.a[q * m_];
    for (std::size_t r = 0; r < m_; ++r) {
      const double* row = &binv_[r * m_];
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += row[i] * col[i];
      u_[r] = s;
    }
  }

  std::size_t ratio_test() const {
    std::size_t best = kNone;
    double best_t = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m_; ++r) {
      if (u_[r] <= opt_.pivot_tol) continue;
      const double t = std::max(0.0, xb_[r]) / u_[r];
      if (t < best_t - 1e-12) {
        best = r;
        best_t = t;
      } else if (std::abs(t - best_t) <= 1e-12 && best != kNone) {
        const bool prefer = bland_ ? basis_[r] < basis_[best] : u_[r] > u_[best];
        if (prefer) best = r;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q) {
    const double piv = u_[r];
    const double theta = std::max(0.0, xb_[r]) / piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      xb_[i] -= theta * u_[i];
      if (std::abs(xb_[i]) < 1e-13) xb_[i] = 0.0;
    }
    xb_[r] = theta;

    double* prow = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u_[i] == 0.0) continue;
      const double f = u_[i];
      double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    is_basic_[basis_[r]] = 0;
    basis_[r] = q;
    is_basic_[q] = 1;

    if (theta < 1e-12) {
      if (++degenerate_run_ > opt_.stall_limit) bland_ = true;
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
  }

  // Rebuild the basis inverse by Gauss-Jordan elimination with partial pivoting.
  void refactor() {
    std::vector<double> bmat(m_ * m_, 0.0);  // row-major
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = basis_[r];
      if (j >= n_) {
        bmat[(j - n_) * m_ + r] = 1.0;
      } else {
        for (std::size_t i = 0; i < m_; ++i) bmat[i * m_ + r] = lp_.a[j * m_ + i];
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t p = col;
      for (std::size_t i = col + 1; i < m_; ++i)
        if (std::abs(bmat[i * m_ + col]) > std::abs(bmat[p * m_ + col])) p = i;
      if (std::abs(bmat[p * m_ + col]) < 1e-12) throw NumericalError("simplex: singular basis during refactorization");
      if (p != col)
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(bmat[p * m_ + k], bmat[col * m_ + k]);
          std::swap(inv[p * m_ + k], inv[col * m_ + k]);
        }
      const double d = bmat[col * m_ + col];
      for (std::size_t k = 0; k < m_; ++k) {
        bmat[col * m_ + k] /= d;
        inv[col * m_ + k] /= d;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double f = bmat[i * m_ + col];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          bmat[i * m_ + k] -= f * bmat[col * m_ + k];
          inv[i * m_ + k] -= f * inv[col * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += binv_[r * m_ + i] * lp_.b[i];
      if (s < -1e-7) throw NumericalError("simplex: numerical stall, basic solution became infeasible");
      xb_[r] = std::max(0.0, s);
    }
  }

  void finish(SimplexResult& res) {
    compute_duals();
    res.x.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) res.x[basis_[r]] = xb_[r];
    res.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) res.objective += lp_.c[j] * res.x[j];
    res.duals = y_;
    res.dual_objective = 0.0;
    for (std::size_t i = 0; i < m_; ++i) res.dual_objective += lp_.b[i] * y_[i];
  }

  const DenseLp& lp_;
  SimplexOptions opt_;
  std::size_t m_, n_, total_;
  std::vector<std::size_t> basis_;
  std::vector<char> is_basic_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_, y_, u_;
  std::size_t offset_ = 0;
  std::size_t degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace

SimplexResult solve_revised_simplex(const DenseLp& lp, const SimplexOptions& options) {
  return RevisedSimplex(lp, options).run();
}

ExactSimplexResult solve_exact_simplex(const ExactLp& lp, std::size_t max_iterations) {
  using exact::Rational;
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n)
    throw std::invalid_argument("solve_exact_simplex: inconsistent dimensions");
  const std::size_t w = n + m + 1;  // structural, slack, rhs
  std::vector<mpq_class> t(m * w);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.b[i] < Rational()) throw std::invalid_argument("solve_exact_simplex: negative right-hand side");
    for (std::size_t j = 0; j < n; ++j) t[i * w + j] = lp.a[i * n + j].raw();
    t[i * w + n + i] = 1;
    t[i * w + n + m] = lp.b[i].raw();
  }
  std::vector<mpq_class> d(n + m + 1);  // reduced costs; d[n+m] = -objective
  for (std::size_t j = 0; j < n; ++j) d[j] = lp.c[j].raw();
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  ExactSimplexResult res;
  while (true) {
    if (res.iterations >= max_iterations) {
      res.status = LpStatus::iteration_limit;
      break;
    }
    std::size_t q = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (sgn(d[j]) > 0) {
        q = j;
        break;
      }
    if (q == n + m) {
      res.status = LpStatus::optimal;
      break;
    }
    std::size_t r = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      const mpq_class& piv = t[i * w + q];
      if (sgn(piv) <= 0) continue;
      mpq_class ratio = t[i * w + n + m] / piv;
      if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
        r = i;
        best = ratio;
      }
    }
    if (r == m) {
      res.status = LpStatus::unbounded;
      break;
    }
    const mpq_class piv = t[r * w + q];
    for (std::size_t k = 0; k < w; ++k) t[r * w + k] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const mpq_class f = t[i * w + q];
      if (sgn(f) == 0) continue;
      for (std::size_t k = 0; k < w; ++k)
        if (sgn(t[r * w + k]) != 0) t[i * w + k] -= f * t[r * w + k];
    }
    const mpq_class f = d[q];
    for (std::size_t k = 0; k < w; ++k)
      if (sgn(t[r * w + k]) != 0) d[k] -= f * t[r * w + k];
    basis[r] = q;
    ++res.iterations;
  }

  res.x.assign(n, Rational());
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = Rational(t[i * w + n + m]);
  for (std::size_t j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
  res.duals.assign(m, Rational());
  for (std::size_t i = 0; i < m; ++i) {
    res.duals[i] = Rational(mpq_class(-d[n + i]));
    res.dual_objective += lp.b[i] * res.duals[i];
  }
  return res;
}

}  // namespace seclab::lp
