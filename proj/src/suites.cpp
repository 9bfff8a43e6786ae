#include "pbergman/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "pbergman/errors.hpp"
#include "pbergman/parallel.hpp"

namespace pbergman {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Point point(std::initializer_list<Complex> c) {
  Point z(static_cast<Eigen::Index>(c.size()));
  Eigen::Index j = 0;
  for (Complex v : c) z[j++] = v;
  return z;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult identity(std::string name, std::string inputs, Complex lhs, Complex rhs, double tol) {
  return decide(std::move(name), std::move(inputs), lhs, rhs, rel(lhs, rhs), tol, Relation::Identity);
}

Model model(const Domain& d, int degree, const SuiteOptions& opts) {
  Model m = make_model(d, degree);
  m.options.tolerance = opts.tolerance;
  return m;
}

SolveReport solve(const Model& m, double p, const Point& z) {
  return solve_point_minimizer(m.quad, m.basis, p, z, m.options);
}

Complex random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * kPi * u(rng));
}

// Collapses many samples of one check into a single result: the worst
// sample (smallest margin relative to the size of its terms) is reported,
// and the first failing one if any failed.
CheckResult summarize(const std::string& name, const std::vector<CheckResult>& runs) {
  std::size_t failures = 0;
  const CheckResult* shown = nullptr;
  double worst = 0.0;
  for (const auto& r : runs) {
    if (!r.passed) {
      if (failures++ == 0) shown = &r;
      continue;
    }
    const double scaled = r.margin / (std::abs(r.lhs) + std::abs(r.rhs) + 1e-300);
    if (failures == 0 && (!shown || scaled < worst)) {
      shown = &r;
      worst = scaled;
    }
  }
  if (!shown) throw ParameterError("no samples for " + name);
  CheckResult out = *shown;
  out.name = name;
  out.passed = failures == 0;
  out.note = std::to_string(failures) + " of " + std::to_string(runs.size()) + " samples failed; shown: " +
             (failures ? "first failure" : "smallest relative margin") + (shown->note.empty() ? "" : "; " + shown->note);
  return out;
}

std::vector<CheckResult> inequalities(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // p ranges per branch
  const std::pair<double, double> range[5] = {{2.0, 8.0}, {1.0, 2.0}, {2.0, 8.0}, {1.0, 2.0}, {1.0, 1.0}};
  for (int which = 1; which <= 5; ++which) {
    std::vector<CheckResult> runs;
    runs.reserve(opts.samples);
    for (int s = 0; s < opts.samples; ++s) {
      const Complex a = random_in_disc(rng, 10.0), b = random_in_disc(rng, 10.0);
      double p = range[which - 1].first + (range[which - 1].second - range[which - 1].first) * u(rng);
      if (which == 3 && p == 2.0) p = 2.5;
      if (which == 4 && p == 1.0) p = 1.5;
      runs.push_back(check_elementary_inequality(which, a, b, p));
    }
    out.push_back(summarize("elementary_inequality_" + std::to_string(which), runs));
  }
  std::vector<CheckResult> runs;
  runs.reserve(opts.samples);
  for (int s = 0; s < opts.samples; ++s) {
    const Complex a = random_in_disc(rng, 10.0), b = random_in_disc(rng, 10.0);
    runs.push_back(check_basic_identity(a, b, 1.0 + 7.0 * u(rng)));
  }
  out.push_back(summarize("basic_identity", runs));

  const A1Verification a1 = verify_a1_constant(400);
  auto r = at_least("a1_constant", "grid=400^3", a1.min_ratio, kA1, 0.0);
  r.note = "smallest grid ratio";
  out.push_back(r);
  return out;
}

std::vector<CheckResult> kernels(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Model disc = model(make_disc(), opts.degree, opts);
  const Model ball = model(make_ball(2), opts.degree_2d, opts);
  const Model bidisc = model(make_polydisc(2), opts.degree_2d, opts);
  const Model thullen = model(make_thullen(opts.alpha), opts.degree_2d, opts);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0};

  // closed forms on the disc and the ball
  struct Case {
    const Model* m;
    Point z, w;
  };
  std::vector<Case> cases;
  for (Point z : {point({0.0}), point({0.3}), point({std::polar(0.5, 1.0)})})
    cases.push_back({&disc, z, point({Complex(-0.2, 0.1)})});
  for (Point z : {point({0.0, 0.0}), point({0.2, Complex(0.0, 0.1)})})
    cases.push_back({&ball, z, point({Complex(0.1, -0.1), 0.15})});
  std::vector<std::pair<std::size_t, double>> jobs;
  for (std::size_t c = 0; c < cases.size(); ++c)
    for (double p : ps) jobs.emplace_back(c, p);
  std::vector<SolveReport> at_z(jobs.size()), at_w(jobs.size());
  parallel_for(jobs.size(), opts.threads, [&](std::size_t i) {
    const Case& c = cases[jobs[i].first];
    at_z[i] = solve(*c.m, jobs[i].second, c.z);
    at_w[i] = solve(*c.m, jobs[i].second, c.w);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Case& c = cases[jobs[i].first];
    const double p = jobs[i].second;
    const Domain& d = c.m->domain();
    const std::string in = format_domain_spec(d) + " p=" + fmt(p) + " z=" + describe(c.z);
    out.push_back(identity("closed_form_diag", in, kernel_diag(at_z[i], p), model_kernel(d, p, c.z, c.z).real(), 1e-6));
    out.push_back(identity("closed_form_offdiag", in + " w=" + describe(c.w), offdiagonal(at_w[i], p, c.z).K,
                           model_kernel(d, p, c.z, c.w), 1e-6));
    out.push_back(at_least("h_function", in + " w=" + describe(c.w), h_function(at_z[i], at_w[i], p), 0.0,
                           1e-8 * (kernel_diag(at_z[i], p) + kernel_diag(at_w[i], p))));
    out.push_back(check_holder_offdiag(at_z[i], at_w[i], p));
    out.push_back(check_triangle(at_z[i], at_w[i], p));
  }

  // K_p(0) = 1 / |Omega|
  for (const Model* m : {&disc, &bidisc, &ball, &thullen})
    for (double p : {1.0, 2.0, 4.0}) {
      const Point z0 = Point::Zero(m->quad.dimension());
      out.push_back(identity("origin_kernel", format_domain_spec(m->domain()) + " p=" + fmt(p),
                             kernel_diag(solve(*m, p, z0), p), 1.0 / volume(m->domain()), 1e-8));
    }

  // reproducing formula on random polynomials
  std::mt19937_64 rng(opts.seed);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const Point z = point({Complex(0.3, -0.2)});
    const SolveReport r = solve(disc, p, z);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXcd c(disc.basis->size());
      for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = random_in_disc(rng, 1.0);
      const double res = reproducing_residual(disc.quad, r, p, PolyFun(disc.basis, c));
      out.push_back(decide("reproducing_formula", "disc p=" + fmt(p) + " sample " + std::to_string(k), res, 0.0, res,
                           1e-7, Relation::Identity));
    }
  }

  out.push_back(check_power_relation(disc, 2.0, 2, point({0.4})));
  const BallAutomorphism F(1, 0.3);
  out.push_back(check_transformation_rules(disc, 2.0, F, point({0.5}), point({0.2}), KernelSource::ClosedForm, 1e-12));
  for (double p : {2.0, 4.0})
    out.push_back(check_transformation_rules(disc, p, F, point({0.5}), point({0.2}), KernelSource::Numeric, 1e-6));
  const Model disc_2d = model(make_disc(), opts.degree_2d, opts);
  out.push_back(check_product_rule(bidisc, disc_2d, 3.0, 0.3, 0.5, 1e-7));
  return out;
}

std::vector<CheckResult> metric(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Model disc = model(make_disc(), opts.degree, opts);
  Eigen::VectorXcd X(1);
  X << 1.0;
  const std::vector<double> ps{2.0, 4.0, 8.0, 16.0};
  std::vector<double> B(ps.size());
  parallel_for(ps.size(), opts.threads,
               [&](std::size_t i) { B[i] = solve_metric(disc.quad, disc.basis, ps[i], point({0.0}), X, disc.options).metric; });
  bool decreasing = true;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out.push_back(identity("metric_origin", "disc p=" + fmt(ps[i]), B[i], std::pow((ps[i] + 2.0) / 2.0, 1.0 / ps[i]), 1e-6));
    if (i > 0 && !(B[i] < B[i - 1])) decreasing = false;
  }
  auto dec = decide("metric_decreasing", "disc p=2,4,8,16", B.back(), B.front(), decreasing ? 1.0 : -1.0, 0.0,
                    Relation::AtLeast);
  out.push_back(dec);
  out.push_back(at_least("metric_above_caratheodory", "disc p=16 z=0", B.back(), 1.0, 1e-6));
  for (const Point& z : {point({0.3}), point({Complex(0.0, 0.5)})})
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      const double b = solve_metric(disc.quad, disc.basis, p, z, X, disc.options).metric;
      out.push_back(at_least("metric_above_caratheodory", "disc p=" + fmt(p) + " z=" + describe(z), b,
                             caratheodory_reference(disc.domain(), z, X), 1e-6));
    }
  return out;
}

std::vector<CheckResult> levi(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Model disc = model(make_disc(), opts.degree, opts);
  Eigen::VectorXcd X(1);
  X << 1.0;
  for (const Point& z : {point({0.0}), point({0.3})})
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) out.push_back(check_levi_bounds(disc, p, z, X, 1e-2, opts.threads));
  const double at0 = levi_estimate(disc, 2.0, point({0.0}), X, {0.02, 0.04, 0.08}, opts.threads);
  const double b0 = solve_metric(disc.quad, disc.basis, 2.0, point({0.0}), X, disc.options).metric;
  out.push_back(decide("levi_equality", "disc p=2 z=0", at0, b0 * b0, std::abs(at0 - b0 * b0), 1e-2, Relation::Identity));
  return out;
}

std::vector<CheckResult> stability(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Model thullen = model(make_thullen(opts.alpha), opts.degree_2d, opts);
  const Point z = point({0.3, 0.2});
  ScanOptions so;
  so.threads = opts.threads;
  const ScanTable t = p_scan(thullen, z, {1.2, 1.5, 2.0, 2.5, 3.0, 4.0}, so);
  const auto& col = t.column("normalized_K");
  auto mono = decide("scan_monotone", format_domain_spec(thullen.domain()) + " z=" + describe(z), col.back(),
                     col.front(), t.flag("monotone") ? 1.0 : -1.0, 0.0, Relation::AtLeast);
  out.push_back(mono);

  const ScanTable left = p_scan(thullen, z, {1.8, 1.9, 1.95, 2.0}, so);
  const auto& K = left.column("K_p");
  const double d1 = std::abs(K[0] - K[3]), d2 = std::abs(K[1] - K[3]), d3 = std::abs(K[2] - K[3]);
  auto trend = decide("left_limit_trend", format_domain_spec(thullen.domain()) + " h=0.2,0.1,0.05", d3, d1,
                      std::min(d1 - d2, d2 - d3), 0.0, Relation::AtLeast);
  trend.note = "|K_{2-h} - K_2| = " + fmt(d1) + ", " + fmt(d2) + ", " + fmt(d3);
  out.push_back(trend);

  const Model disc = model(make_disc(), opts.degree, opts);
  const ScanTable d = p_scan(disc, point({0.4}), {1.5, 2.0, 3.0, 4.0}, so);
  out.push_back(decide("scan_monotone", "disc z=0.4", d.column("normalized_K").back(), d.column("normalized_K").front(),
                       d.flag("monotone") ? 1.0 : -1.0, 0.0, Relation::AtLeast));
  return out;
}

std::vector<CheckResult> projection(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Model disc = model(make_disc(), opts.degree, opts);
  const Eigen::Index Q = disc.quad.size();
  std::vector<double> dist;
  for (double p : {1.5, 2.0, 4.0})
    for (int k : {1, 2}) {
      Eigen::VectorXcd s(Q);
      for (Eigen::Index q = 0; q < Q; ++q) s[q] = std::pow(std::conj(disc.quad.node(q)[0]), k);
      const ProjectionResult r = project_lp(disc.quad, disc.basis, p, s, disc.options);
      const std::string in = "disc p=" + fmt(p) + " f=conj(z)^" + std::to_string(k);
      const double cn = r.projection.coefficients.norm();
      out.push_back(decide("projection_zero", in, cn, 0.0, cn, 1e-7, Relation::Identity));
      out.push_back(decide("projection_residual", in, r.variational_residual, 0.0, r.variational_residual, 1e-8,
                           Relation::Identity));
    }
  out.push_back(check_projection_nonlinearity(disc.quad, 4.0, 0.1));
  const double vol = volume(disc.domain());
  Eigen::VectorXcd s(Q);
  for (Eigen::Index q = 0; q < Q; ++q) s[q] = std::conj(disc.quad.node(q)[0]);
  std::vector<double> scaled;
  for (double p : {2.0, 3.0, 4.0})
    scaled.push_back(std::pow(vol, -1.0 / p) * project_lp(disc.quad, disc.basis, p, s, disc.options).distance);
  const double gap = std::min(scaled[1] - scaled[0], scaled[2] - scaled[1]);
  auto r = decide("distance_monotone", "disc f=conj(z) p=2,3,4", scaled.back(), scaled.front(), gap, 1e-12,
                  Relation::AtLeast);
  r.note = "|Omega|^{-1/p} d_p = " + fmt(scaled[0]) + ", " + fmt(scaled[1]) + ", " + fmt(scaled[2]);
  out.push_back(r);
  return out;
}

std::vector<CheckResult> thullen(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const double a = opts.alpha;
  for (int k = 1; k <= 10; ++k) {
    out.push_back(check_thullen_slice(a, Complex(0.09 * k - 0.045, 0.0)));
    out.push_back(check_thullen_slice(a, Complex(0.0, 0.09 * k - 0.045)));
  }
  if (a > 2.0) {
    const Complex found = locate_thullen_zero(a);
    out.push_back(decide("thullen_zero", "alpha=" + fmt(a), found, thullen_zero(a), std::abs(found - thullen_zero(a)),
                         1e-3, Relation::Identity));
  }
  // numeric K_2 on the slice against the formula; at degree 12 the dropped
  // tail of the series is near 1e-5 at x = 0.5, so the points stay inside 0.3
  const Model m = model(make_thullen(a), opts.degree_2d, opts);
  for (double x : {0.0, 0.2, 0.3}) {
    const Point z = point({x, 0.0});  // diagonal at (x, 0) is the slice at x
    out.push_back(identity("thullen_k2_numeric", "alpha=" + fmt(a) + " z=" + describe(z),
                           kernel_diag(solve(m, 2.0, z), 2.0), thullen_k2_slice(a, x).real(), 1e-6));
  }
  return out;
}

using SuiteFn = std::vector<CheckResult> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"inequalities", inequalities}, {"kernels", kernels},       {"metric", metric},   {"levi", levi},
      {"stability", stability},       {"projection", projection}, {"thullen", thullen},
  };
  return r;
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opts) {
  std::vector<SuiteReport> out;
  for (const auto& [n, fn] : registry())
    if (name == "all" || name == n) out.push_back({n, fn(opts)});
  if (out.empty()) throw ParameterError("unknown suite '" + name + "'");
  return out;
}

}  // namespace pbergman
