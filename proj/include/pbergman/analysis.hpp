#pragma once

// Named numerical checks of the identities, inequalities and limits satisfied
// by p-Bergman kernels, each returning the evidence it was decided on.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pbergman/closed_forms.hpp"
#include "pbergman/variational.hpp"

namespace pbergman {

enum class Relation {
  AtLeast,   // lhs >= rhs, margin = lhs - rhs
  AtMost,    // lhs <= rhs, margin = rhs - lhs
  Identity,  // lhs == rhs, margin = |lhs - rhs| (relative where stated)
};

struct CheckResult {
  std::string name;
  std::string inputs;
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::Identity;
  bool passed = false;
  std::string note;
};

/// Decides passed from margin and tolerance.
CheckResult decide(std::string name, std::string inputs, Complex lhs, Complex rhs, double margin, double tolerance,
                   Relation relation);
/// lhs >= rhs up to tolerance.
CheckResult at_least(std::string name, std::string inputs, double lhs, double rhs, double tolerance);
/// lhs <= rhs up to tolerance.
CheckResult at_most(std::string name, std::string inputs, double lhs, double rhs, double tolerance);

/// Columns over one axis; insertion order is kept for output.
struct ScanTable {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::pair<std::string, bool>> flags;

  void add_column(std::string name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  bool flag(const std::string& name) const;
};

std::string describe(const Point& z);

// Kernel-level checks. The overloads taking SolveReports reuse solves at z
// and w; the others solve on the model.

/// H_p(z, w) = K_p(z) + K_p(w) - Re{K_p(z, w) + K_p(w, z)}.
double h_function(const SolveReport& at_z, const SolveReport& at_w, double p);
double h_function(const Model& m, double p, const Point& z, const Point& w);

/// |K_p(z, w)| <= K_p(z)^{1/p} K_p(w)^{1/q}; for p = 1 the right side is K_1(z).
CheckResult check_holder_offdiag(const SolveReport& at_z, const SolveReport& at_w, double p);
CheckResult check_holder_offdiag(const Model& m, double p, const Point& z, const Point& w);

/// |m_p(z, w)| <= m_p(w) / m_p(z).
CheckResult check_triangle(const SolveReport& at_z, const SolveReport& at_w, double p);
CheckResult check_triangle(const Model& m, double p, const Point& z, const Point& w);

/// |f(z) - K_p(z) int |m|^{p-2} conj(m) f| / (1 + |f(z)|) with m = m_p(., z).
double reproducing_residual(const QuadratureRule& quad, const SolveReport& at_z, double p, const PolyFun& f);
double reproducing_residual(const Model& m, double p, const Point& z, const PolyFun& f);

// Levi form of log K_p.

/// Circle averages of log K_p over 64 angles at each radius, second
/// differences divided by r^2, extrapolated to r = 0 as a polynomial in r^2.
double levi_estimate(const Model& m, double p, const Point& z, const Eigen::VectorXcd& X,
                     const std::vector<double>& radii = {0.02, 0.04, 0.08}, int threads = 1);

/// levi_estimate >= B_p(z; X)^2 for p >= 2, >= C(z; X)^2 for p < 2.
CheckResult check_levi_bounds(const Model& m, double p, const Point& z, const Eigen::VectorXcd& X,
                              double tolerance = 1e-2, int threads = 1);

// Scans in p.

struct ScanOptions {
  std::optional<Point> w;
  std::optional<Eigen::VectorXcd> X;
  double slack = 1e-8;
  int threads = 1;
};

/// Columns m_p, K_p, |Omega|^{1/p} K_p^{1/p}, kkt, converged, optionally
/// m_p(z, w) and B_p(z; X). Flags: "monotone" (the normalized column is
/// nonincreasing within slack) and "converged".
ScanTable p_scan(const Model& m, const Point& z, const std::vector<double>& p_grid, const ScanOptions& opts = {});

/// K_{pk}(z) against K_p(z); inconclusive (not passed) when m_p(., z) comes
/// within 1e-3 of vanishing on the nodes.
CheckResult check_power_relation(const Model& m, double p, int k, const Point& z, double tolerance = 1e-6);

/// Smallest |m_p(., z)| over the quadrature nodes.
double minimizer_min_modulus(const QuadratureRule& quad, const SolveReport& at_z);

/// Ratios |m_p(z, w) - m_p(z, w')| / |w - w'|^e for w' = w + r e_1, with
/// e = 1/2 for p > 1 and 1/(2(n+2)) for p = 1. Meta "max_ratio".
ScanTable holder_modulus_probe(const Model& m, double p, const Point& z, const Point& w_center,
                               const std::vector<double>& radii);

/// Disc only, from the closed forms: delta = 1 - t, ratio K_p(t)^{1/p} / K_2(t)^{1/2},
/// envelope delta^{1/2 - 1/p}. Meta "slope" is the least-squares log-log slope
/// of ratio against delta over the points with delta <= 0.05 (all points if
/// fewer than two), "constant" the largest ratio / envelope.
ScanTable boundary_ratio_scan(double p, const std::vector<double>& t_grid);

// Scalar inequalities.

/// Branch which = 1..5: (1) p >= 2, (2) 1 <= p <= 2, (3) p > 2, (4) 1 < p <= 2, (5) p = 1.
CheckResult check_elementary_inequality(int which, Complex a, Complex b, double p);

/// (|b|^{p-2} + |a|^{p-2})|b-a|^2 + (|b|^{p-2} - |a|^{p-2})(|b|^2 - |a|^2)
///   = 2 Re{(|b|^{p-2} conj(b) - |a|^{p-2} conj(a))(b - a)}, evaluated in long double.
CheckResult check_basic_identity(Complex a, Complex b, double p);

/// Constant used in branch (5).
constexpr double kA1 = 1.0 / 64.0;

struct A1Verification {
  double min_ratio = 0.0;  // smallest lhs / (|Im(conj(a) b)|^2 (|a|+|b|)^{-3}) on the grid
  int grid = 0;
  bool valid = false;      // min_ratio >= kA1
};

/// Dense polar grid over |a|, |b| in (0, 10] and the relative phase in (0, pi).
A1Verification verify_a1_constant(int grid = 400);

// Transformations, products and projections.

enum class KernelSource { Numeric, ClosedForm };

/// The four transformation laws for an automorphism F of the disc or ball,
/// with the kernels on both sides from numeric solves or from the closed
/// forms. Margin is the largest relative discrepancy.
CheckResult check_transformation_rules(const Model& m, double p, const BallAutomorphism& F, const Point& z,
                                       const Point& w, KernelSource source = KernelSource::Numeric,
                                       double tolerance = 1e-6);

/// m_p on the bidisc at (z1, z2) against m_p(z1) m_p(z2) on the disc.
CheckResult check_product_rule(const Model& bidisc, const Model& disc, double p, Complex z1, Complex z2,
                               double tolerance = 1e-7);

/// int |f_t|^{p-2} conj(f_t) over the disc for f_t = conj(z) + t conj(z)^2,
/// required to exceed half the first-order value |(p-2)/2 t int |z|^p|.
CheckResult check_projection_nonlinearity(const QuadratureRule& disc, double p, Complex t);

// Thullen slice.

/// Slice formula against the monomial series, relative.
CheckResult check_thullen_slice(double alpha, Complex x, double tolerance = 1e-8);

/// Zero of the slice kernel on the positive imaginary axis, by bisection.
Complex locate_thullen_zero(double alpha);

}  // namespace pbergman
