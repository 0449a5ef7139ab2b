#include "seclab/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "seclab/dual/dual_general.hpp"
#include "seclab/errors.hpp"
#include "seclab/lp/finite_lp.hpp"
#include "seclab/sim/simulate.hpp"
#include "seclab/theta/theta_gen.hpp"

namespace seclab::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonConfig {
  int J = 1;
  int K = 1;
  std::string format = "text";
  std::string output;
};

struct ThresholdsConfig {
  bool exact = false;
  int precision = 64;
};

struct DualCheckConfig {
  double tolerance = 1e-8;
  int grid = 2000;
  double perturb = 0.0;
  std::string perturb_entry = "1,1";
  std::string dump;
};

struct FiniteLpConfig {
  std::string n_list = "10,50,200";
  bool exact = false;
  std::string export_lp;
  unsigned threads = 0;
};

struct SimulateConfig {
  int n = 10000;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string engine = "skipping";
};

struct ReportConfig {
  std::string out_dir = ".";
};

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void emit(const CommonConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + cfg.output + "'");
  f << text;
  if (!f) throw IoError("failed writing output file '" + cfg.output + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  f << text;
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

unsigned resolve_threads(unsigned requested) {
  const unsigned cap = default_threads();
  return requested == 0 ? cap : std::min(requested, cap);
}

json tau_json(const dual::ThresholdMatrix& tau) {
  json rows = json::array();
  for (int j = 1; j <= tau.J(); ++j) {
    json row = json::array();
    for (int k = 1; k <= tau.K(); ++k) row.push_back(tau(j, k));
    rows.push_back(row);
  }
  return rows;
}

// thresholds ---------------------------------------------------------------

int cmd_thresholds(const CommonConfig& c, const ThresholdsConfig& t, std::ostream& out) {
  if (t.precision < 16) throw std::invalid_argument("--precision must be >= 16 bits");
  const auto bits = static_cast<mpfr_prec_t>(t.precision);
  const int digits = std::max(6, static_cast<int>(t.precision * 0.30103) - 1);
  std::ostringstream s;
  json j;
  j["J"] = c.J;
  j["K"] = c.K;

  if (c.K == 1) {
    const theta::ThetaSequence ts = theta::generate_thetas(c.J);
    const auto th = theta::thresholds(ts, bits);
    const auto payoff = theta::payoff_k1(ts, bits);
    j["thetas"] = json::array();
    j["thresholds"] = json::array();
    for (int i = 1; i <= ts.J(); ++i) {
      j["thetas"].push_back(ts[i].to_string());
      j["thresholds"].push_back(th[static_cast<std::size_t>(i - 1)].to_double());
    }
    j["payoff"] = payoff.to_double();
    if (c.format == "json") {
      s << j.dump(2) << "\n";
    } else if (c.format == "csv") {
      s << "j,theta,threshold\n";
      for (int i = 1; i <= ts.J(); ++i)
        s << i << "," << ts[i].to_string() << "," << th[static_cast<std::size_t>(i - 1)].to_fixed(digits) << "\n";
    } else {
      s << "(J,K) = (" << c.J << ",1)\n";
      for (int i = 1; i <= ts.J(); ++i) {
        s << "  t_" << i << " = " << th[static_cast<std::size_t>(i - 1)].to_fixed(digits);
        if (t.exact) s << "   theta_" << i << " = " << ts[i].to_string();
        s << "\n";
      }
      s << "payoff = " << payoff.to_fixed(6) << "\n";
    }
    emit(c, out, s.str());
    return kOk;
  }

  const dual::DualCertificateJK cert = dual::construct_dual(c.J, c.K);
  const double payoff = dual::payoff_jk(cert.tau);
  j["tau"] = tau_json(cert.tau);
  j["payoff"] = payoff;
  if (c.format == "json") {
    s << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    s << "j,k,tau\n";
    for (int a = 1; a <= c.J; ++a)
      for (int b = 1; b <= c.K; ++b) s << a << "," << b << "," << fixed(cert.tau(a, b), 12) << "\n";
  } else {
    s << "(J,K) = (" << c.J << "," << c.K << ")\n";
    for (int a = 1; a <= c.J; ++a) {
      s << "  j=" << a << ":";
      for (int b = c.K; b >= 1; --b) s << "  tau_" << a << "," << b << " = " << fixed(cert.tau(a, b), 6);
      s << "\n";
    }
    s << "payoff = " << fixed(payoff, 6) << "\n";
  }
  emit(c, out, s.str());
  return kOk;
}

// dual-check ---------------------------------------------------------------

json certificate_dump(const dual::DualCertificateJK& cert, int grid) {
  json d;
  d["J"] = cert.J();
  d["K"] = cert.K();
  d["tau"] = tau_json(cert.tau);
  d["functions"] = json::array();
  for (int j = 1; j <= cert.J(); ++j)
    for (int k = 1; k <= cert.K(); ++k) {
      const auto& f = cert.q_fn(j, k);
      json e;
      e["j"] = j;
      e["k"] = k;
      e["breakpoints"] = f.breakpoints();
      json xs = json::array(), qs = json::array();
      for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        xs.push_back(x);
        qs.push_back(f(x));
      }
      e["x"] = std::move(xs);
      e["q"] = std::move(qs);
      d["functions"].push_back(std::move(e));
    }
  return d;
}

int cmd_dual_check(const CommonConfig& c, const DualCheckConfig& d, std::ostream& out) {
  if (d.grid < 10) throw std::invalid_argument("--grid must be >= 10");
  if (!(d.tolerance > 0)) throw std::invalid_argument("--tolerance must be positive");
  dual::DualCertificateJK cert = dual::construct_dual(c.J, c.K);
  if (d.perturb != 0.0) {
    int pj = 0, pk = 0;
    if (std::sscanf(d.perturb_entry.c_str(), "%d,%d", &pj, &pk) != 2 || pj < 1 || pj > c.J || pk < 1 || pk > c.K)
      throw std::invalid_argument("--perturb-entry must be 'j,k' within the threshold matrix");
    cert.tau(pj, pk) += d.perturb;
  }
  dual::VerifyOptions vo;
  vo.grid = d.grid;
  vo.tolerance = d.tolerance;
  const dual::CertificateReport rep = dual::verify_certificate(cert, vo);

  json j;
  j["J"] = c.J;
  j["K"] = c.K;
  j["passed"] = rep.passed;
  j["max_equality_residual"] = rep.max_equality_residual;
  j["min_slack"] = rep.min_slack;
  j["max_threshold_value"] = rep.max_threshold_value;
  j["dual_objective"] = rep.dual_objective;
  j["payoff"] = rep.payoff;
  j["objective_gap"] = rep.objective_gap;
  j["grid_points"] = rep.grid_points;
  if (rep.first_violation) {
    const auto& v = *rep.first_violation;
    j["violation"] = {{"constraint", v.constraint}, {"j", v.j}, {"k", v.k}, {"x", v.x}, {"residual", v.residual}};
  } else {
    j["violation"] = nullptr;
  }

  bool exact_ok = true;
  theta::K1CheckReport k1;
  if (c.K == 1 && d.perturb == 0.0) {
    const auto ts = theta::generate_thetas(c.J);
    k1 = theta::check_certificate_k1(theta::build_dual_certificate(ts), ts);
    exact_ok = k1.passed;
    j["exact_k1"] = {{"passed", k1.passed},
                     {"zeros_exact", k1.zeros_exact},
                     {"ones_exact", k1.ones_exact},
                     {"max_recursion_error", k1.max_recursion_error},
                     {"min_feasibility_slack", k1.min_feasibility_slack}};
  }
  const bool passed = rep.passed && exact_ok;
  const double worst = std::max({rep.max_equality_residual, rep.max_threshold_value, std::max(0.0, -rep.min_slack)});

  std::ostringstream s;
  if (c.format == "json") {
    s << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    s << "metric,value\n"
      << "passed," << (passed ? 1 : 0) << "\n"
      << "max_equality_residual," << sci(rep.max_equality_residual) << "\n"
      << "min_slack," << sci(rep.min_slack) << "\n"
      << "max_threshold_value," << sci(rep.max_threshold_value) << "\n"
      << "dual_objective," << fixed(rep.dual_objective, 12) << "\n"
      << "payoff," << fixed(rep.payoff, 12) << "\n"
      << "objective_gap," << sci(rep.objective_gap) << "\n";
  } else {
    s << "dual certificate (J,K) = (" << c.J << "," << c.K << "): " << (passed ? "PASS" : "FAIL") << "\n"
      << "  worst residual      " << sci(worst) << "\n"
      << "  equality residual   " << sci(rep.max_equality_residual) << "\n"
      << "  min slack           " << sci(rep.min_slack) << "\n"
      << "  q at thresholds     " << sci(rep.max_threshold_value) << "\n"
      << "  dual objective      " << fixed(rep.dual_objective, 9) << " vs payoff " << fixed(rep.payoff, 9) << "\n";
    if (c.K == 1 && d.perturb == 0.0)
      s << "  exact q_j(t_j) = 0  " << (k1.zeros_exact ? "exact" : "NOT exact") << "\n";
    if (rep.first_violation) {
      const auto& v = *rep.first_violation;
      s << "  first violation: " << v.constraint << " at j=" << v.j << " k=" << v.k << " x=" << fixed(v.x, 9)
        << " residual " << sci(v.residual) << "\n";
    }
  }
  emit(c, out, s.str());
  if (!d.dump.empty()) write_file(d.dump, certificate_dump(cert, d.grid).dump(1) + "\n");
  return passed ? kOk : kViolation;
}

// finite-lp ----------------------------------------------------------------

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--n expects a comma-separated list of positive integers");
    }
    if (used != item.size() || v < 1) throw std::invalid_argument("--n expects a comma-separated list of positive integers");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--n must not be empty");
  return out;
}

double continuous_optimum(int J, int K) {
  if (K == 1) return theta::payoff_k1(theta::generate_thetas(J)).to_double();
  return dual::payoff_jk(dual::construct_dual(J, K).tau);
}

int cmd_finite_lp(const CommonConfig& c, const FiniteLpConfig& f, std::ostream& out) {
  const std::vector<int> ns = parse_n_list(f.n_list);
  for (int n : ns) lp::build_lp(n, c.J, c.K);  // size checks before any solve
  const double cp = continuous_optimum(c.J, c.K);
  const auto rows = lp::convergence_experiment(c.J, c.K, ns, cp, resolve_threads(f.threads));
  std::vector<std::string> exact_values;
  if (f.exact)
    for (int n : ns) {
      const auto sol = lp::solve_lp(lp::build_lp(n, c.J, c.K), lp::SolveMode::exact);
      if (sol.status != lp::LpStatus::optimal) throw NumericalError("exact simplex did not reach optimality");
      exact_values.push_back(sol.exact_objective->to_string());
    }
  if (!f.export_lp.empty()) {
    std::ostringstream lpfile;
    lp::write_lp_format(lp::build_lp(ns.back(), c.J, c.K), lpfile);
    write_file(f.export_lp, lpfile.str());
  }

  std::ostringstream s;
  if (c.format == "json") {
    json j;
    j["J"] = c.J;
    j["K"] = c.K;
    j["cp_star"] = cp;
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json r = {{"n", rows[i].n}, {"optimum", rows[i].optimum}, {"gap", rows[i].gap}, {"duality_gap", rows[i].duality_gap}};
      if (f.exact) r["exact_optimum"] = exact_values[i];
      j["rows"].push_back(r);
    }
    s << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    s << "n,optimum,cp_star,gap,duality_gap" << (f.exact ? ",exact_optimum" : "") << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      s << rows[i].n << "," << fixed(rows[i].optimum, 12) << "," << fixed(cp, 12) << "," << fixed(rows[i].gap, 12) << ","
        << sci(rows[i].duality_gap);
      if (f.exact) s << "," << exact_values[i];
      s << "\n";
    }
  } else {
    s << "LP_n(" << c.J << "," << c.K << ")   continuous optimum " << fixed(cp, 6) << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      s << "  n = " << std::setw(5) << rows[i].n << "   P*_n = " << fixed(rows[i].optimum, 6) << "   gap = " << fixed(rows[i].gap, 6);
      if (f.exact) s << "   exact = " << exact_values[i];
      s << "\n";
    }
  }
  emit(c, out, s.str());
  return kOk;
}

// simulate -----------------------------------------------------------------

json sim_json(const sim::SimReport& r) {
  return {{"J", r.J},         {"K", r.K},           {"n", r.n},
          {"trials", r.trials}, {"seed", r.seed},   {"mean", r.mean},
          {"stderr", r.stderr_}, {"ci99", {r.ci_lo, r.ci_hi}}};
}

int cmd_simulate(const CommonConfig& c, const SimulateConfig& sc, std::ostream& out) {
  if (sc.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (sc.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  sim::MonteCarloOptions mo;
  mo.threads = resolve_threads(sc.threads);
  mo.engine = sc.engine == "explicit" ? sim::Engine::explicit_instances : sim::Engine::potential_skipping;
  dual::ThresholdMatrix tau;
  if (c.K == 1) {
    const auto th = theta::thresholds(theta::generate_thetas(c.J));
    tau = dual::ThresholdMatrix(c.J, 1);
    for (int j = 1; j <= c.J; ++j) tau(j, 1) = th[static_cast<std::size_t>(j - 1)].to_double();
  } else {
    tau = dual::construct_dual(c.J, c.K).tau;
  }
  const sim::SimReport r = sim::monte_carlo(tau, sc.n, sc.trials, sc.seed, mo);
  std::ostringstream s;
  if (c.format == "json") {
    s << sim_json(r).dump(2) << "\n";
  } else if (c.format == "csv") {
    s << "J,K,n,trials,seed,mean,stderr,ci99_lo,ci99_hi\n"
      << r.J << "," << r.K << "," << r.n << "," << r.trials << "," << r.seed << "," << fixed(r.mean, 8) << ","
      << fixed(r.stderr_, 8) << "," << fixed(r.ci_lo, 8) << "," << fixed(r.ci_hi, 8) << "\n";
  } else {
    s << "simulated (J,K) = (" << r.J << "," << r.K << "), n = " << r.n << ", trials = " << r.trials << ", seed = " << r.seed
      << "\n  mean payoff " << fixed(r.mean, 6) << "  (stderr " << fixed(r.stderr_, 6) << ")\n  99% CI [" << fixed(r.ci_lo, 6)
      << ", " << fixed(r.ci_hi, 6) << "]\n  threshold payoff " << fixed(dual::payoff_jk(tau), 6) << "\n";
  }
  emit(c, out, s.str());
  return kOk;
}

// report -------------------------------------------------------------------

int cmd_report(const CommonConfig& c, const ReportConfig& rc, std::ostream& out) {
  std::ostringstream table1;
  table1 << "J,payoff,theta_J,theta_J_decimal\n";
  const auto ts = theta::generate_thetas(8);
  json jt = json::array();
  for (int J = 1; J <= 8; ++J) {
    theta::ThetaSequence prefix{std::vector<exact::Rational>(ts.thetas.begin(), ts.thetas.begin() + J)};
    const std::string payoff = theta::payoff_k1(prefix).to_fixed(6);
    const double theta_dec = ts[J].to_double();
    table1 << J << "," << payoff << "," << ts[J].to_string() << "," << fixed(theta_dec, 12) << "\n";
    jt.push_back({{"J", J}, {"payoff", payoff}, {"theta", ts[J].to_string()}});
  }

  const auto c12 = dual::closed_form_12();
  const auto c22 = dual::closed_form_22();
  std::ostringstream thm;
  thm << "J,K,quantity,value\n"
      << "1,2,tau_1_2," << fixed(c12.tau12, 6) << "\n"
      << "1,2,tau_1_1," << fixed(c12.tau11, 6) << "\n"
      << "1,2,payoff," << fixed(c12.payoff, 6) << "\n"
      << "2,2,tau_2_2," << fixed(c22.tau22, 6) << "\n"
      << "2,2,tau_2_1," << fixed(c22.tau21, 6) << "\n"
      << "2,2,payoff," << fixed(c22.payoff, 6) << "\n";

  const std::filesystem::path dir(rc.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + rc.out_dir + "'");
  write_file(dir / "table1.csv", table1.str());
  write_file(dir / "theorem_k2.csv", thm.str());

  std::ostringstream s;
  if (c.format == "json") {
    json j;
    j["table1"] = jt;
    j["theorem_k2"] = {{"tau_1_2", c12.tau12}, {"tau_1_1", c12.tau11}, {"payoff_1_2", c12.payoff},
                       {"tau_2_2", c22.tau22}, {"tau_2_1", c22.tau21}, {"payoff_2_2", c22.payoff}};
    s << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    s << table1.str();
  } else {
    s << "wrote " << (dir / "table1.csv").string() << " and " << (dir / "theorem_k2.csv").string() << "\n\n"
      << table1.str() << "\n" << thm.str();
  }
  emit(c, out, s.str());
  return kOk;
}

void add_common(CLI::App* sub, CommonConfig& c, bool needs_jk) {
  if (needs_jk) {
    sub->add_option("--J", c.J, "number of quotas")->check(CLI::Range(1, 64));
    sub->add_option("--K", c.K, "number of top ranks that count")->check(CLI::Range(1, 64));
  }
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--output", c.output, "write to this file instead of stdout");
}

}  // namespace

unsigned default_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SECRETARY_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threshold algorithms, dual certificates and finite LPs for the (J,K)-secretary problem",
               "secretary-lab"};
  app.require_subcommand(1);

  CommonConfig common;
  ThresholdsConfig tcfg;
  DualCheckConfig dcfg;
  FiniteLpConfig fcfg;
  SimulateConfig scfg;
  ReportConfig rcfg;

  auto* th = app.add_subcommand("thresholds", "optimal thresholds and payoff");
  add_common(th, common, true);
  th->add_flag("--exact", tcfg.exact, "print exact theta fractions (K = 1)");
  th->add_option("--precision", tcfg.precision, "MPFR precision in bits for K = 1");

  auto* dc = app.add_subcommand("dual-check", "construct and verify the dual certificate");
  add_common(dc, common, true);
  dc->add_option("--tolerance", dcfg.tolerance, "pointwise tolerance");
  dc->add_option("--grid", dcfg.grid, "verification grid size");
  dc->add_option("--perturb", dcfg.perturb, "add this amount to one threshold before verifying");
  dc->add_option("--perturb-entry", dcfg.perturb_entry, "threshold to perturb as j,k");
  dc->add_option("--dump", dcfg.dump, "write the certificate as JSON to this path");

  auto* fl = app.add_subcommand("finite-lp", "solve LP_n and compare with the continuous optimum");
  add_common(fl, common, true);
  fl->add_option("--n", fcfg.n_list, "comma-separated instance sizes");
  fl->add_flag("--exact", fcfg.exact, "also solve in exact rational arithmetic");
  fl->add_option("--export-lp", fcfg.export_lp, "write the largest instance in LP format");
  fl->add_option("--threads", fcfg.threads, "worker threads (0 = default)");

  auto* sm = app.add_subcommand("simulate", "Monte Carlo estimate of the threshold algorithm payoff");
  add_common(sm, common, true);
  sm->add_option("--n", scfg.n, "items per instance");
  sm->add_option("--trials", scfg.trials, "number of instances");
  sm->add_option("--seed", scfg.seed, "random seed");
  sm->add_option("--threads", scfg.threads, "worker threads (0 = default)");
  sm->add_option("--engine", scfg.engine, "trial engine")->check(CLI::IsMember({"skipping", "explicit"}));

  auto* rp = app.add_subcommand("report", "write the K = 1 payoff table and the K = 2 closed forms as CSV");
  add_common(rp, common, false);
  rp->add_option("--out-dir", rcfg.out_dir, "directory for table1.csv and theorem_k2.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (th->parsed()) return cmd_thresholds(common, tcfg, out);
    if (dc->parsed()) return cmd_dual_check(common, dcfg, out);
    if (fl->parsed()) return cmd_finite_lp(common, fcfg, out);
    if (sm->parsed()) return cmd_simulate(common, scfg, out);
    if (rp->parsed()) return cmd_report(common, rcfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace seclab::cli
