#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "parse.hpp"
#include "pbergman/analysis.hpp"
#include "pbergman/errors.hpp"
#include "pbergman/parallel.hpp"
#include "pbergman/suites.hpp"

namespace pb = pbergman;
using namespace pbergman::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 1;
constexpr int kExitFailed = 2;

struct RunConfig {
  std::string domain = "disc";
  std::vector<std::string> p_list;  // comma lists are split by CLI11
  std::string p_grid;
  std::vector<std::string> z;
  std::string w;
  std::string X;
  int degree = 20;
  int degree_2d = 12;
  int radial_order = 0;
  int angular_order = 0;
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string out = "-";
  int threads = pb::default_thread_count();
  bool reproducible = false;
  int samples = 100000;
  double alpha = 3.0;
  std::string input;
  std::vector<double> radii{0.02, 0.04, 0.08};
  std::string suite;
};

// Everything parsed once the flags are in.
struct Setup {
  pb::Domain domain;
  int degree = 0;
  std::vector<double> ps;
  std::vector<pb::Point> zs;
};

pb::Domain domain_of(const RunConfig& c) { return pb::make_domain(pb::parse_domain_spec(c.domain)); }

int degree_for(const RunConfig& c, const pb::Domain& d) { return d.dimension == 1 ? c.degree : c.degree_2d; }

std::vector<double> p_values(const RunConfig& c) {
  if (!c.p_grid.empty() && !c.p_list.empty()) throw pb::ParameterError("give either --p or --p-grid, not both");
  std::vector<double> ps;
  if (!c.p_grid.empty()) {
    ps = parse_range(c.p_grid);
  } else {
    for (const auto& s : c.p_list) ps.push_back(parse_complex(s).real());
  }
  if (ps.empty()) throw pb::ParameterError("no exponent given (--p or --p-grid)");
  for (double p : ps) pb::check_exponent(p);
  return ps;
}

pb::Point checked_point(const std::string& text, const pb::Domain& d, const char* what) {
  pb::Point z = parse_point(text, d.dimension);
  if (!pb::contains(d, z)) throw pb::DomainError(std::string(what) + " " + text + " is not inside the domain");
  return z;
}

Setup setup(const RunConfig& c, bool need_points = true) {
  Setup s;
  s.domain = domain_of(c);
  s.degree = degree_for(c, s.domain);
  if (s.degree < 0 || s.degree > pb::kMaxDegree)
    throw pb::ParameterError("degree must lie in [0, " + std::to_string(pb::kMaxDegree) + "]");
  s.ps = p_values(c);
  for (const auto& t : c.z) s.zs.push_back(checked_point(t, s.domain, "point"));
  if (need_points && s.zs.empty()) s.zs.push_back(pb::Point::Zero(s.domain.dimension));
  return s;
}

pb::Model model_for(const RunConfig& c, const Setup& s) {
  pb::Model m = pb::make_model(s.domain, s.degree, c.radial_order, c.angular_order);
  m.options.tolerance = c.tol;
  m.options.max_iterations = c.max_iter;
  return m;
}

Eigen::VectorXcd direction(const RunConfig& c, int dimension) {
  if (c.X.empty()) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dimension);
    e[0] = 1.0;
    return e;
  }
  Eigen::VectorXcd X = parse_point(c.X, dimension);
  if (X.norm() == 0.0) throw pb::ParameterError("direction --X must be nonzero");
  return X;
}

std::string multi_index(const pb::MultiIndex& a) {
  std::string out;
  for (std::size_t j = 0; j < a.size(); ++j) out += (j ? " " : "") + std::to_string(a[j]);
  return out;
}

// "alpha:re,im" triples in basis order, separated by ';'.
std::string coefficients(const pb::PolyFun& f) {
  std::string out;
  for (Eigen::Index k = 0; k < f.basis->size(); ++k)
    out += (k ? ";" : "") + multi_index(f.basis->index(k)) + ":" + format_complex(f.coefficients[k]);
  return out;
}

void base_meta(Table& t, const RunConfig& c, const Setup& s, const char* command) {
  t.meta["command"] = command;
  t.meta["domain"] = pb::format_domain_spec(s.domain);
  t.meta["degree"] = s.degree;
  t.meta["tolerance"] = c.tol;
  if (!c.reproducible) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    t.meta["generated"] = buf;
  }
}

void emit(const Table& t, const RunConfig& c) {
  std::string body;
  if (c.format == "json") {
    body = to_json(t);
  } else {
    const std::string comment = t.meta.contains("generated") ? "generated " + t.meta["generated"].get<std::string>() : "";
    body = to_csv(t, comment);
  }
  write_output(c.out, body);
}

// Every (z, p) pair in input order: z outer, p inner.
template <class Fn>
void for_each_pair(const Setup& s, int threads, Fn&& fn) {
  const std::size_t np = s.ps.size();
  pb::parallel_for(s.zs.size() * np, threads, [&](std::size_t i) { fn(i, s.zs[i / np], s.ps[i % np]); });
}

int cmd_kernel(const RunConfig& c) {
  const Setup s = setup(c);
  const pb::Model m = model_for(c, s);
  std::vector<pb::SolveReport> reports(s.zs.size() * s.ps.size());
  for_each_pair(s, c.threads, [&](std::size_t i, const pb::Point& z, double p) {
    reports[i] = pb::solve_point_minimizer(m.quad, m.basis, p, z, m.options);
  });
  Table t;
  t.columns = {"z", "p", "m_p", "K_p", "kkt_residual", "iterations", "converged"};
  bool ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const double p = s.ps[i % s.ps.size()];
    t.add_row({format_point(r.point), p, r.optimal_value, pb::kernel_diag(r, p), r.kkt_residual, r.iterations,
               r.converged});
    ok = ok && r.converged;
  }
  base_meta(t, c, s, "kernel");
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

int cmd_offdiag(const RunConfig& c) {
  const Setup s = setup(c);
  if (c.w.empty()) throw pb::ParameterError("offdiag needs --w");
  const pb::Point w = checked_point(c.w, s.domain, "point");
  const pb::Model m = model_for(c, s);
  // One solve at w per exponent; the minimizer there gives every K_p(z, w).
  std::vector<pb::SolveReport> at_w(s.ps.size());
  pb::parallel_for(s.ps.size(), c.threads, [&](std::size_t j) {
    at_w[j] = pb::solve_point_minimizer(m.quad, m.basis, s.ps[j], w, m.options);
  });
  Table t;
  t.columns = {"z", "w", "p", "m_zw_re", "m_zw_im", "K_zw_re", "K_zw_im", "K_w", "kkt_residual", "converged"};
  bool ok = true;
  for (const auto& z : s.zs) {
    for (std::size_t j = 0; j < s.ps.size(); ++j) {
      const double p = s.ps[j];
      const pb::OffDiagonal od = pb::offdiagonal(at_w[j], p, z);
      t.add_row({format_point(z), format_point(w), p, od.m.real(), od.m.imag(), od.K.real(), od.K.imag(),
                 pb::kernel_diag(at_w[j], p), at_w[j].kkt_residual, at_w[j].converged});
      ok = ok && at_w[j].converged;
    }
  }
  base_meta(t, c, s, "offdiag");
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

int cmd_metric(const RunConfig& c) {
  const Setup s = setup(c);
  const Eigen::VectorXcd X = direction(c, s.domain.dimension);
  const pb::Model m = model_for(c, s);
  std::vector<pb::MetricResult> results(s.zs.size() * s.ps.size());
  for_each_pair(s, c.threads, [&](std::size_t i, const pb::Point& z, double p) {
    results[i] = pb::solve_metric(m.quad, m.basis, p, z, X, m.options);
  });
  Table t;
  t.columns = {"z", "X", "p", "B_p", "K_p", "dual_value", "kkt_residual", "converged", "maximizer"};
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const bool conv = r.point_solve.converged && r.dual_solve.converged;
    t.add_row({format_point(r.point_solve.point), format_point(X), s.ps[i % s.ps.size()], r.metric, r.kernel,
               r.dual_value, std::max(r.point_solve.kkt_residual, r.dual_solve.kkt_residual), conv,
               coefficients(r.maximizer)});
    ok = ok && conv;
  }
  base_meta(t, c, s, "metric");
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

int cmd_project(const RunConfig& c) {
  const Setup s = setup(c, false);
  if (c.input.empty()) throw pb::ParameterError("project needs --input");
  const SampleSource src = parse_input(c.input, s.domain.dimension);
  const pb::Model m = model_for(c, s);
  Eigen::VectorXcd samples(m.quad.size());
  for (Eigen::Index q = 0; q < m.quad.size(); ++q) samples[q] = src.fn(m.quad.node(q));
  std::vector<pb::ProjectionResult> results(s.ps.size());
  pb::parallel_for(s.ps.size(), c.threads, [&](std::size_t j) {
    results[j] = pb::project_lp(m.quad, m.basis, s.ps[j], samples, m.options);
  });
  Table t;
  t.columns = {"p", "distance", "residual", "iterations", "converged", "coefficients"};
  bool ok = true;
  for (std::size_t j = 0; j < results.size(); ++j) {
    const auto& r = results[j];
    t.add_row({s.ps[j], r.distance, r.variational_residual, r.iterations, r.converged, coefficients(r.projection)});
    ok = ok && r.converged;
  }
  base_meta(t, c, s, "project");
  t.meta["input"] = src.label;
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

int cmd_scan(const RunConfig& c) {
  const Setup s = setup(c);
  if (s.zs.size() != 1) throw pb::ParameterError("scan takes exactly one --z");
  const pb::Model m = model_for(c, s);
  pb::ScanOptions so;
  so.threads = c.threads;
  if (!c.w.empty()) so.w = checked_point(c.w, s.domain, "point");
  if (!c.X.empty()) so.X = direction(c, s.domain.dimension);
  const pb::ScanTable scan = pb::p_scan(m, s.zs.front(), s.ps, so);
  Table t = scan_table(scan);
  base_meta(t, c, s, "scan");
  emit(t, c);
  return scan.flag("converged") ? kExitOk : kExitFailed;
}

int cmd_levi(const RunConfig& c) {
  const Setup s = setup(c);
  const Eigen::VectorXcd X = direction(c, s.domain.dimension);
  const pb::Model m = model_for(c, s);
  // levi_estimate threads over the circle points, so pairs run in sequence.
  Table t;
  t.columns = {"z", "X", "p", "levi", "bound", "margin", "passed"};
  bool ok = true;
  for_each_pair(s, 1, [&](std::size_t, const pb::Point& z, double p) {
    const pb::CheckResult r = pb::check_levi_bounds(m, p, z, X, 1e-2, c.threads);
    t.add_row({format_point(z), format_point(X), p, r.lhs.real(), r.rhs.real(), r.margin, r.passed});
    ok = ok && r.passed;
  });
  base_meta(t, c, s, "levi");
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

int cmd_verify(const RunConfig& c) {
  pb::SuiteOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.threads = c.threads;
  opts.degree = c.degree;
  opts.degree_2d = c.degree_2d;
  opts.alpha = c.alpha;
  opts.tolerance = c.tol;
  const auto reports = pb::run_suite(c.suite, opts);
  std::vector<std::pair<std::string, pb::CheckResult>> rows;
  bool ok = true;
  for (const auto& rep : reports) {
    for (const auto& chk : rep.checks) rows.emplace_back(rep.suite, chk);
    std::cerr << rep.suite << ": " << rep.checks.size() - rep.failures() << " passed, " << rep.failures()
              << " failed\n";
    for (const auto& chk : rep.checks)
      if (!chk.passed) std::cerr << "  FAIL " << chk.name << " [" << chk.inputs << "] margin " << chk.margin << "\n";
    ok = ok && rep.passed();
  }
  Table t = check_table(rows);
  t.meta["command"] = "verify";
  t.meta["suite"] = c.suite;
  t.meta["seed"] = c.seed;
  t.meta["samples"] = c.samples;
  t.meta["alpha"] = c.alpha;
  if (!c.reproducible) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    t.meta["generated"] = buf;
  }
  emit(t, c);
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"p-Bergman kernels, metrics and projections on Reinhardt model domains"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file supplying any flag; command-line flags win");

  app.add_option("--domain", c.domain, "disc, ball:n, polydisc:n, bidisc, thullen:alpha, profile:R0,R1,...")
      ->capture_default_str();
  app.add_option("--p", c.p_list, "exponents, comma separated")->delimiter(',');
  app.add_option("--p-grid", c.p_grid, "start:stop:linear|geometric:count");
  app.add_option("--z", c.z, "point(s): coordinates 're,im' joined by ';'; repeatable");
  app.add_option("--w", c.w, "second point for offdiag and scan");
  app.add_option("--X", c.X, "direction for metric, scan and levi (default e1)");
  app.add_option("--degree", c.degree, "basis degree on one-dimensional domains")->capture_default_str();
  app.add_option("--degree-2d", c.degree_2d, "basis degree on domains of dimension >= 2")->capture_default_str();
  app.add_option("--radial-order", c.radial_order, "Gauss-Legendre order per radius (0: from degree)")
      ->capture_default_str();
  app.add_option("--angular-order", c.angular_order, "angles per circle (0: from degree)")->capture_default_str();
  app.add_option("--tol", c.tol, "solver KKT tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-iter", c.max_iter, "solver iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output file, '-' for stdout")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (default PBERGMAN_THREADS or 1)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--reproducible", c.reproducible, "omit the timestamp from the output");
  app.add_option("--samples", c.samples, "random samples per inequality branch")->capture_default_str();
  app.add_option("--alpha", c.alpha, "Thullen exponent for verify")->capture_default_str();
  app.add_option("--input", c.input, "conjz, conjz^k, |z|^k or a coefficient file");
  app.add_option("--radii", c.radii, "circle radii for levi")->delimiter(',');

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Sub subs[] = {
      {"kernel", "K_p(z) and m_p(z) at each point and exponent", cmd_kernel},
      {"offdiag", "m_p(z, w) and K_p(z, w) for fixed --w", cmd_offdiag},
      {"metric", "B_p(z; X) with the maximizer", cmd_metric},
      {"project", "best L^p approximation of --input by holomorphic polynomials", cmd_project},
      {"scan", "m_p, K_p and normalized K_p over a p grid", cmd_scan},
      {"levi", "Levi form of log K_p against its lower bound", cmd_levi},
  };
  int (*chosen)(const RunConfig&) = nullptr;
  for (const auto& s : subs) {
    app.add_subcommand(s.name, s.help)->fallthrough()->callback([&chosen, run = s.run] { chosen = run; });
  }
  auto* verify = app.add_subcommand("verify", "run a check battery: " + [] {
    std::string names;
    for (const auto& n : pb::suite_names()) names += n + ", ";
    return names + "all";
  }());
  verify->fallthrough();
  verify->add_option("suite", c.suite, "suite name")->required();
  verify->callback([&chosen] { chosen = cmd_verify; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    return chosen(c);
  } catch (const pb::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const pb::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitBadConfig;
}
