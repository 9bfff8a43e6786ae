#include "pbergman/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

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

std::string fmt(Complex v) { return fmt(v.real()) + "," + fmt(v.imag()); }

double relative_gap(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double kernel_of(const SolveReport& r, double p) { return std::pow(r.optimal_value, -p); }

SolveReport solve_at(const Model& m, double p, const Point& z) {
  return solve_point_minimizer(m.quad, m.basis, p, z, m.options);
}

}  // namespace

CheckResult decide(std::string name, std::string inputs, Complex lhs, Complex rhs, double margin, double tolerance,
                   Relation relation) {
  CheckResult r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.tolerance = tolerance;
  r.relation = relation;
  r.passed = relation == Relation::Identity ? std::abs(margin) <= tolerance : margin >= -tolerance;
  // NaN margins fail both comparisons above
  return r;
}

CheckResult at_least(std::string name, std::string inputs, double lhs, double rhs, double tolerance) {
  return decide(std::move(name), std::move(inputs), lhs, rhs, lhs - rhs, tolerance, Relation::AtLeast);
}

CheckResult at_most(std::string name, std::string inputs, double lhs, double rhs, double tolerance) {
  return decide(std::move(name), std::move(inputs), lhs, rhs, rhs - lhs, tolerance, Relation::AtMost);
}

void ScanTable::add_column(std::string name, std::vector<double> values) {
  if (values.size() != axis.size()) throw ParameterError("column " + name + " does not match the axis length");
  columns.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& ScanTable::column(const std::string& name) const {
  for (const auto& [n, v] : columns)
    if (n == name) return v;
  throw ParameterError("no column " + name);
}

bool ScanTable::has_column(const std::string& name) const {
  return std::any_of(columns.begin(), columns.end(), [&](const auto& c) { return c.first == name; });
}

bool ScanTable::flag(const std::string& name) const {
  for (const auto& [n, v] : flags)
    if (n == name) return v;
  throw ParameterError("no flag " + name);
}

std::string describe(const Point& z) {
  std::string out = "(";
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (j > 0) out += ";";
    out += fmt(z[j]);
  }
  return out + ")";
}

double h_function(const SolveReport& at_z, const SolveReport& at_w, double p) {
  const Complex kzw = offdiagonal(at_w, p, at_z.point).K;
  const Complex kwz = offdiagonal(at_z, p, at_w.point).K;
  return kernel_of(at_z, p) + kernel_of(at_w, p) - (kzw + kwz).real();
}

double h_function(const Model& m, double p, const Point& z, const Point& w) {
  return h_function(solve_at(m, p, z), solve_at(m, p, w), p);
}

CheckResult check_holder_offdiag(const SolveReport& at_z, const SolveReport& at_w, double p) {
  const double kz = kernel_of(at_z, p);
  const double kw = kernel_of(at_w, p);
  const double lhs = std::abs(offdiagonal(at_w, p, at_z.point).K);
  // q = infinity at p = 1
  const double rhs = p == 1.0 ? kz : std::pow(kz, 1.0 / p) * std::pow(kw, 1.0 - 1.0 / p);
  return at_most("holder_offdiag", "p=" + fmt(p) + " z=" + describe(at_z.point) + " w=" + describe(at_w.point), lhs,
                 rhs, 1e-8 * rhs);
}

CheckResult check_holder_offdiag(const Model& m, double p, const Point& z, const Point& w) {
  return check_holder_offdiag(solve_at(m, p, z), solve_at(m, p, w), p);
}

CheckResult check_triangle(const SolveReport& at_z, const SolveReport& at_w, double p) {
  const double lhs = std::abs(offdiagonal(at_w, p, at_z.point).m);
  const double rhs = at_w.optimal_value / at_z.optimal_value;
  return at_most("triangle", "p=" + fmt(p) + " z=" + describe(at_z.point) + " w=" + describe(at_w.point), lhs, rhs,
                 1e-8 * rhs);
}

CheckResult check_triangle(const Model& m, double p, const Point& z, const Point& w) {
  return check_triangle(solve_at(m, p, z), solve_at(m, p, w), p);
}

double reproducing_residual(const QuadratureRule& quad, const SolveReport& at_z, double p, const PolyFun& f) {
  if (!f.basis || f.basis->size() != at_z.minimizer.basis->size())
    throw ParameterError("function and minimizer use different bases");
  const Eigen::VectorXcd mu = weighted_moments(quad, at_z.minimizer, p);
  const Complex integral = (f.coefficients.array() * mu.array()).sum();
  const Complex fz = evaluate(f, at_z.point);
  return std::abs(fz - kernel_of(at_z, p) * integral) / (1.0 + std::abs(fz));
}

double reproducing_residual(const Model& m, double p, const Point& z, const PolyFun& f) {
  return reproducing_residual(m.quad, solve_at(m, p, z), p, f);
}

double levi_estimate(const Model& m, double p, const Point& z, const Eigen::VectorXcd& X,
                     const std::vector<double>& radii, int threads) {
  constexpr int kAngles = 64;
  if (radii.empty()) throw ParameterError("levi_estimate needs at least one radius");
  if (X.size() != z.size()) throw ParameterError("direction dimension mismatch");
  const std::size_t R = radii.size();
  std::vector<Point> points;
  points.push_back(z);
  for (double r : radii) {
    if (!(r > 0.0)) throw ParameterError("radii must be positive");
    for (int k = 0; k < kAngles; ++k) {
      Point q = z + std::polar(r, 2.0 * kPi * k / kAngles) * X;
      if (!contains(m.domain(), q)) throw DomainError("circle of radius " + fmt(r) + " leaves the domain");
      points.push_back(std::move(q));
    }
  }
  std::vector<double> logk(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) { logk[i] = std::log(kernel_of(solve_at(m, p, points[i]), p)); });

  // Neville's scheme in x = r^2 evaluated at x = 0
  std::vector<double> x(R), q(R);
  for (std::size_t j = 0; j < R; ++j) {
    double avg = 0.0;
    for (int k = 0; k < kAngles; ++k) avg += logk[1 + j * kAngles + k];
    avg /= kAngles;
    x[j] = radii[j] * radii[j];
    q[j] = (avg - logk[0]) / x[j];
  }
  for (std::size_t level = 1; level < R; ++level)
    for (std::size_t j = 0; j + level < R; ++j)
      q[j] = (x[j + level] * q[j] - x[j] * q[j + 1]) / (x[j + level] - x[j]);
  return q[0];
}

CheckResult check_levi_bounds(const Model& m, double p, const Point& z, const Eigen::VectorXcd& X, double tolerance,
                              int threads) {
  const double lhs = levi_estimate(m, p, z, X, {0.02, 0.04, 0.08}, threads);
  double rhs;
  std::string note;
  if (p >= 2.0) {
    rhs = std::pow(solve_metric(m.quad, m.basis, p, z, X, m.options).metric, 2);
    note = "bound B_p^2";
  } else {
    rhs = std::pow(caratheodory_reference(m.domain(), z, X), 2);
    note = "bound C^2";
  }
  auto r = at_least("levi_bound", "p=" + fmt(p) + " z=" + describe(z) + " X=" + describe(X), lhs, rhs, tolerance);
  r.note = note;
  return r;
}

ScanTable p_scan(const Model& m, const Point& z, const std::vector<double>& p_grid, const ScanOptions& opts) {
  if (p_grid.empty()) throw ParameterError("empty p grid");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    check_exponent(p_grid[i]);
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw ParameterError("p grid must be strictly ascending");
  }
  const std::size_t n = p_grid.size();
  std::vector<SolveReport> solves(n);
  std::vector<double> metric(n, 0.0);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    if (opts.X) {
      MetricResult r = solve_metric(m.quad, m.basis, p_grid[i], z, *opts.X, m.options);
      solves[i] = std::move(r.point_solve);
      metric[i] = r.metric;
    } else {
      solves[i] = solve_at(m, p_grid[i], z);
    }
  });

  ScanTable t;
  t.axis_name = "p";
  t.axis = p_grid;
  const double vol = volume(m.domain());
  std::vector<double> mp(n), kp(n), normalized(n), kkt(n), conv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = p_grid[i];
    mp[i] = solves[i].optimal_value;
    kp[i] = kernel_of(solves[i], p);
    normalized[i] = std::pow(vol * kp[i], 1.0 / p);
    kkt[i] = solves[i].kkt_residual;
    conv[i] = solves[i].converged ? 1.0 : 0.0;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < n; ++i)
    if (normalized[i] > normalized[i - 1] + opts.slack * std::max(1.0, normalized[i - 1])) monotone = false;

  t.add_column("m_p", mp);
  t.add_column("K_p", kp);
  t.add_column("normalized_K", normalized);
  if (opts.w) {
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex v = offdiagonal(solves[i], p_grid[i], *opts.w).m;
      re[i] = v.real();
      im[i] = v.imag();
    }
    t.add_column("m_zw_re", re);
    t.add_column("m_zw_im", im);
  }
  if (opts.X) t.add_column("B_p", metric);
  t.add_column("kkt", kkt);
  t.add_column("converged", conv);
  t.meta = {{"domain", format_domain_spec(m.domain())},
            {"degree", std::to_string(m.basis->max_degree())},
            {"radial_order", std::to_string(m.quad.radial_order)},
            {"angular_order", std::to_string(m.quad.angular_order)},
            {"z", describe(z)}};
  if (opts.w) t.meta.emplace_back("w", describe(*opts.w));
  if (opts.X) t.meta.emplace_back("X", describe(*opts.X));
  t.flags = {{"monotone", monotone},
             {"converged", std::all_of(conv.begin(), conv.end(), [](double c) { return c == 1.0; })}};
  return t;
}

double minimizer_min_modulus(const QuadratureRule& quad, const SolveReport& at_z) {
  return sample(at_z.minimizer, quad).cwiseAbs().minCoeff();
}

CheckResult check_power_relation(const Model& m, double p, int k, const Point& z, double tolerance) {
  if (k < 1) throw ParameterError("power k must be positive");
  check_exponent(p * k);
  const std::string inputs = "p=" + fmt(p) + " k=" + std::to_string(k) + " z=" + describe(z);
  const SolveReport base = solve_at(m, p, z);
  const Eigen::VectorXcd base_values = sample(base.minimizer, m.quad);
  const double floor = base_values.cwiseAbs().minCoeff();
  const double kp = kernel_of(base, p);
  if (floor < 1e-3) {
    auto r = decide("power_relation", inputs, kp, kp, 0.0, tolerance, Relation::Identity);
    r.passed = false;
    r.note = "inconclusive: minimizer modulus " + fmt(floor) + " on the nodes";
    return r;
  }
  const SolveReport high = solve_at(m, p * k, z);
  const double kpk = kernel_of(high, p * k);
  const Eigen::VectorXcd powered = sample(high.minimizer, m.quad).array().pow(static_cast<double>(k));
  const double fn_gap = (powered - base_values).cwiseAbs().maxCoeff() / base_values.cwiseAbs().maxCoeff();
  auto r = decide("power_relation", inputs, kpk, kp, relative_gap(kpk, kp), tolerance, Relation::Identity);
  r.note = "max |m_pk^k - m_p| / max |m_p| = " + fmt(fn_gap);
  return r;
}

ScanTable holder_modulus_probe(const Model& m, double p, const Point& z, const Point& w_center,
                               const std::vector<double>& radii) {
  check_exponent(p);
  auto compact = [](const Point& q) { return q.cwiseAbs().maxCoeff() <= 0.7; };
  if (!compact(z) || !compact(w_center)) throw DomainError("probe points must satisfy max |coordinate| <= 0.7");
  const double e = p > 1.0 ? 0.5 : 1.0 / (2.0 * (m.quad.dimension() + 2));
  const Complex base = offdiagonal(solve_at(m, p, w_center), p, z).m;
  ScanTable t;
  t.axis_name = "distance";
  t.axis = radii;
  std::vector<double> diff(radii.size()), ratio(radii.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    Point w2 = w_center;
    w2[0] += radii[i];
    if (!compact(w2) || !contains(m.domain(), w2)) throw DomainError("probe point leaves the compact set");
    diff[i] = std::abs(offdiagonal(solve_at(m, p, w2), p, z).m - base);
    ratio[i] = diff[i] / std::pow(radii[i], e);
    worst = std::max(worst, ratio[i]);
  }
  t.add_column("difference", diff);
  t.add_column("ratio", ratio);
  t.meta = {{"domain", format_domain_spec(m.domain())}, {"p", fmt(p)},         {"z", describe(z)},
            {"w", describe(w_center)},                  {"exponent", fmt(e)}, {"max_ratio", fmt(worst)}};
  return t;
}

ScanTable boundary_ratio_scan(double p, const std::vector<double>& t_grid) {
  check_exponent(p);
  if (t_grid.empty()) throw ParameterError("empty t grid");
  const Domain disc = make_disc();
  const std::size_t n = t_grid.size();
  std::vector<double> delta(n), ratio(n), envelope(n), scaled(n);
  double constant = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_grid[i];
    if (t < 0.5 || t > 0.99) throw ParameterError("t grid must lie in [0.5, 0.99]");
    Point z(1);
    z << t;
    const double kp = model_kernel(disc, p, z, z).real();
    const double k2 = model_kernel(disc, 2.0, z, z).real();
    delta[i] = 1.0 - t;
    ratio[i] = std::pow(kp, 1.0 / p) / std::sqrt(k2);
    envelope[i] = std::pow(delta[i], 0.5 - 1.0 / p);
    scaled[i] = ratio[i] / envelope[i];
    constant = std::max(constant, scaled[i]);
  }
  // least squares slope of log ratio against log delta near the boundary
  std::vector<std::size_t> fit;
  for (std::size_t i = 0; i < n; ++i)
    if (delta[i] <= 0.05 + 1e-12) fit.push_back(i);
  if (fit.size() < 2) {
    fit.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit[i] = i;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i : fit) {
    const double lx = std::log(delta[i]), ly = std::log(ratio[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(fit.size());
  const double den = k * sxx - sx * sx;
  const double slope = den > 0.0 ? (k * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();

  ScanTable out;
  out.axis_name = "t";
  out.axis = t_grid;
  out.add_column("delta", delta);
  out.add_column("ratio", ratio);
  out.add_column("envelope", envelope);
  out.add_column("ratio_over_envelope", scaled);
  out.meta = {{"domain", "disc"},
              {"p", fmt(p)},
              {"slope", fmt(slope)},
              {"expected_slope", fmt(1.0 - 2.0 / p)},
              {"constant", fmt(constant)}};
  out.flags = {{"bounded", std::isfinite(constant)}};
  return out;
}

namespace {

using Real = long double;
using ComplexL = std::complex<Real>;

Real power(Real x, Real e) {
  if (x == 0) return e > 0 ? Real(0) : e == 0 ? Real(1) : std::numeric_limits<Real>::infinity();
  return std::pow(x, e);
}

// |x|^{p-2} conj(x), taken as 0 at x = 0
ComplexL dual(ComplexL x, Real p) { return x == ComplexL(0) ? ComplexL(0) : power(std::abs(x), p - 2) * std::conj(x); }

std::string triple(Complex a, Complex b, double p) { return "a=" + fmt(a) + " b=" + fmt(b) + " p=" + fmt(p); }

}  // namespace

CheckResult check_elementary_inequality(int which, Complex a0, Complex b0, double p0) {
  const ComplexL a(a0.real(), a0.imag()), b(b0.real(), b0.imag());
  const Real p = p0;
  const Real A = std::abs(a), B = std::abs(b), D = std::abs(b - a);
  const Real im = (a * std::conj(b)).imag();
  const std::string name = "elementary_inequality_" + std::to_string(which);
  auto needs = [&](bool ok, const char* what) {
    if (!ok) throw ParameterError(name + " requires " + what);
  };
  Real lhs = 0, rhs = 0, scale = 0;
  switch (which) {
    case 1: {
      needs(p >= 2, "p >= 2");
      lhs = ((dual(b, p) - dual(a, p)) * (b - a)).real();
      const Real mid = Real(0.5) * (power(B, p - 2) + power(A, p - 2)) * D * D;
      rhs = std::pow(Real(2), 1 - p) * power(D, p);
      scale = power(A, p) + power(B, p) + power(A, p - 2) * B * B + power(B, p - 2) * A * A;
      const Real tol = 1e-12L * scale;
      const Real margin = std::min(lhs - mid, mid - rhs);
      auto r = decide(name, triple(a0, b0, p0), static_cast<double>(lhs), static_cast<double>(rhs),
                      static_cast<double>(margin), static_cast<double>(tol), Relation::AtLeast);
      r.note = "middle term " + fmt(static_cast<double>(mid));
      return r;
    }
    case 2: {
      needs(p >= 1 && p <= 2, "1 <= p <= 2");
      needs(A + B > 0, "a and b not both zero");
      lhs = ((dual(b, p) - dual(a, p)) * (b - a)).real();
      rhs = (p - 1) * D * D * power(A + B, p - 2) + (2 - p) * im * im * power(A + B, p - 4);
      scale = power(A + B, p);
      break;
    }
    case 3: {
      needs(p > 2, "p > 2");
      lhs = power(B, p);
      rhs = power(A, p) + p * (dual(a, p) * (b - a)).real() + std::pow(Real(4), -(p + 3)) * power(D, p);
      scale = power(A + B, p);
      break;
    }
    case 4: {
      needs(p > 1 && p <= 2, "1 < p <= 2");
      needs(A + B > 0, "a and b not both zero");
      const Real Ap = p / 2 * std::min(Real(1), p - 1);
      lhs = power(B, p);
      rhs = power(A, p) + p * (dual(a, p) * (b - a)).real() + Ap * D * D * power(A + B, p - 2);
      scale = power(A + B, p);
      break;
    }
    case 5: {
      needs(p == 1, "p = 1");
      needs(A > 0, "a != 0");
      lhs = B;
      rhs = A + (std::conj(a) * (b - a)).real() / A + Real(kA1) * im * im / ((A + B) * (A + B) * (A + B));
      scale = A + B;
      break;
    }
    default:
      throw ParameterError("elementary inequality index must be 1..5");
  }
  return at_least(name, triple(a0, b0, p0), static_cast<double>(lhs), static_cast<double>(rhs),
                  static_cast<double>(1e-12L * scale));
}

CheckResult check_basic_identity(Complex a0, Complex b0, double p0) {
  const ComplexL a(a0.real(), a0.imag()), b(b0.real(), b0.imag());
  const Real p = p0;
  const Real A = std::abs(a), B = std::abs(b);
  if (A == 0 && B == 0) {
    if (p < 2) throw ParameterError("basic identity requires a and b not both zero for p < 2");
    return decide("basic_identity", triple(a0, b0, p0), 0.0, 0.0, 0.0, 1e-12, Relation::Identity);
  }
  Real lhs;
  if (p < 2 && (A == 0 || B == 0)) {
    // |x|^{p-2} is infinite at 0; collect its terms, whose coefficient vanishes there
    if (p == 1) throw ParameterError("basic identity at p = 1 requires nonzero a and b");
    const ComplexL x = A == 0 ? b : a;
    lhs = 2 * power(std::abs(x), p);
  } else {
    const Real pa = power(A, p - 2), pb = power(B, p - 2);
    lhs = (pb + pa) * std::norm(b - a) + (pb - pa) * (B * B - A * A);
  }
  const Real rhs = 2 * ((dual(b, p) - dual(a, p)) * (b - a)).real();
  const Real margin = std::abs(lhs - rhs) / (1 + std::abs(lhs));
  return decide("basic_identity", triple(a0, b0, p0), static_cast<double>(lhs), static_cast<double>(rhs),
                static_cast<double>(margin), 1e-12, Relation::Identity);
}

A1Verification verify_a1_constant(int grid) {
  if (grid < 2) throw ParameterError("grid must have at least two points per axis");
  A1Verification out;
  out.grid = grid;
  Real best = std::numeric_limits<Real>::infinity();
  std::vector<Real> c(grid), s(grid), mag(grid);
  for (int j = 0; j < grid; ++j) {
    const Real phi = std::numbers::pi_v<Real> * (j + Real(0.5)) / grid;
    c[j] = std::cos(phi);
    s[j] = std::sin(phi);
    mag[j] = Real(10) * (j + 1) / grid;
  }
  // a = |a| on the real axis; b = |b| e^{i phi}
  for (int i = 0; i < grid; ++i) {
    const Real A = mag[i];
    for (int k = 0; k < grid; ++k) {
      const Real B = mag[k];
      const Real cube = (A + B) * (A + B) * (A + B);
      for (int j = 0; j < grid; ++j) {
        const Real re_ab = A * B * c[j];  // Re(conj(a) b)
        const Real im_ab = A * B * s[j];
        const Real lhs = B - A - (re_ab - A * A) / A;
        const Real rhs = im_ab * im_ab / cube;
        best = std::min(best, lhs / rhs);
      }
    }
  }
  out.min_ratio = static_cast<double>(best);
  out.valid = out.min_ratio >= kA1;
  return out;
}

CheckResult check_transformation_rules(const Model& m, double p, const BallAutomorphism& F, const Point& z,
                                       const Point& w, KernelSource source, double tolerance) {
  const Domain& d = m.domain();
  if (!(d.kind == DomainKind::Ball || d.is_disc())) throw ParameterError("transformation rules need the disc or a ball");
  if (F.dimension() != d.dimension) throw ParameterError("automorphism dimension does not match the domain");
  check_exponent(p);
  const Point Fz = F.apply(z), Fw = F.apply(w);

  // m_p(u), m_p(u, v) and K_p(u, v) at the four points
  struct Side {
    double mz, mw;
    Complex mzw, kzw;
  };
  auto side = [&](const Point& u, const Point& v) {
    Side s;
    if (source == KernelSource::ClosedForm) {
      const double ku = model_kernel(d, p, u, u).real();
      const double kv = model_kernel(d, p, v, v).real();
      s.mz = std::pow(ku, -1.0 / p);
      s.mw = std::pow(kv, -1.0 / p);
      s.kzw = model_kernel(d, p, u, v);
      s.mzw = s.kzw / kv;
    } else {
      const SolveReport ru = solve_at(m, p, u), rv = solve_at(m, p, v);
      s.mz = ru.optimal_value;
      s.mw = rv.optimal_value;
      const OffDiagonal o = offdiagonal(rv, p, u);
      s.mzw = o.m;
      s.kzw = o.K;
    }
    return s;
  };
  const Side a = side(z, w), b = side(Fz, Fw);
  const Complex Jz = F.jacobian(z), Jw = F.jacobian(w);
  const Complex Jz_2p = F.jacobian_power(z, 2.0 / p), Jw_2p = F.jacobian_power(w, 2.0 / p);
  const Complex Jw_rest = F.jacobian_power(w, 1.0 - 2.0 / p);

  const double gaps[4] = {
      relative_gap(a.mz, b.mz * std::pow(std::abs(Jz), -2.0 / p)),
      relative_gap(std::pow(a.mz, -p), std::pow(b.mz, -p) * std::norm(Jz)),
      relative_gap(a.mzw, b.mzw * Jz_2p / Jw_2p),
      relative_gap(a.kzw, b.kzw * Jz_2p * Jw_rest * std::conj(Jw)),
  };
  const double worst = *std::max_element(std::begin(gaps), std::end(gaps));
  auto r = decide("transformation_rules",
                  "p=" + fmt(p) + " a=" + fmt(F.parameter()) + " z=" + describe(z) + " w=" + describe(w) +
                      (source == KernelSource::ClosedForm ? " closed-form" : " numeric"),
                  a.kzw, b.kzw * Jz_2p * Jw_rest * std::conj(Jw), worst, tolerance, Relation::Identity);
  r.note = "relative gaps m " + fmt(gaps[0]) + ", K " + fmt(gaps[1]) + ", m(z,w) " + fmt(gaps[2]) + ", K(z,w) " +
           fmt(gaps[3]);
  return r;
}

CheckResult check_product_rule(const Model& bidisc, const Model& disc, double p, Complex z1, Complex z2,
                               double tolerance) {
  if (!(bidisc.domain().kind == DomainKind::Polydisc && bidisc.domain().dimension == 2))
    throw ParameterError("product rule needs the bidisc model");
  if (!disc.domain().is_disc()) throw ParameterError("product rule needs the disc model");
  Point z(2), u(1), v(1);
  z << z1, z2;
  u << z1;
  v << z2;
  const double lhs = solve_at(bidisc, p, z).optimal_value;
  const double rhs = solve_at(disc, p, u).optimal_value * solve_at(disc, p, v).optimal_value;
  return decide("product_rule", "p=" + fmt(p) + " z=" + describe(z), lhs, rhs, relative_gap(lhs, rhs), tolerance,
                Relation::Identity);
}

CheckResult check_projection_nonlinearity(const QuadratureRule& disc, double p, Complex t) {
  if (!disc.domain.is_disc()) throw ParameterError("projection nonlinearity is checked on the disc");
  check_exponent(p);
  if (p == 2.0) throw ParameterError("the integral vanishes identically at p = 2");
  if (std::abs(t) > 0.2) throw ParameterError("|t| must be at most 0.2");
  const Complex value = integrate(disc, [&](const Point& q) {
    const Complex zb = std::conj(q[0]);
    const Complex f = zb + t * zb * zb;
    const double r = std::abs(f);
    return r == 0.0 ? Complex(0.0) : std::pow(r, p - 2.0) * std::conj(f);
  });
  const double first = std::abs((p - 2.0) / 2.0 * t) * 2.0 * kPi / (p + 2.0);
  auto r = at_least("projection_nonlinearity", "p=" + fmt(p) + " t=" + fmt(t), std::abs(value), 0.5 * first, 0.0);
  r.note = "integral " + fmt(value) + ", first-order value " + fmt(first);
  return r;
}

CheckResult check_thullen_slice(double alpha, Complex x, double tolerance) {
  const Complex slice = thullen_k2_slice(alpha, x);
  const Complex series = thullen_k2_series(alpha, x);
  return decide("thullen_slice", "alpha=" + fmt(alpha) + " x=" + fmt(x), slice, series, relative_gap(slice, series),
                tolerance, Relation::Identity);
}

Complex locate_thullen_zero(double alpha) {
  if (!(alpha > 2.0)) throw ParameterError("the slice kernel has a zero only for alpha > 2");
  // on the imaginary axis the slice kernel is real
  auto g = [&](double y) { return thullen_k2_slice(alpha, Complex(0.0, y)).real(); };
  double lo = 0.0, glo = g(lo);
  for (int k = 1; k < 100; ++k) {
    const double hi = 0.01 * k;
    const double ghi = g(hi);
    if ((glo > 0.0) != (ghi > 0.0)) {
      double a = lo, b = hi, ga = glo;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if ((gm > 0.0) == (ga > 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      return {0.0, 0.5 * (a + b)};
    }
    lo = hi;
    glo = ghi;
  }
  throw ParameterError("no zero of the slice kernel found on the imaginary axis");
}

}  // namespace pbergman
