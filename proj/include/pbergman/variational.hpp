#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pbergman/basis.hpp"
#include "pbergman/quadrature.hpp"

namespace pbergman {

struct SolveOptions {
  /// KKT tolerance for convergence; p = 1 never goes below 1e-6.
  double tolerance = 1e-8;
  int max_iterations = 500;
  /// Optional starting coefficients (raw monomial coefficients). The start is
  /// made feasible by a minimum-norm correction before iterating.
  std::optional<Eigen::VectorXcd> initial;
};

struct SolveReport {
  Point point;  // where the constraints sit
  double optimal_value = 0.0;
  PolyFun minimizer;
  double kkt_residual = 0.0;
  int iterations = 0;
  double epsilon_final = 0.0;
  bool converged = false;
};

/// min ||f||_p subject to f(z) = 1 over the span of the basis.
SolveReport solve_point_minimizer(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                                  const SolveOptions& opts = {});

/// K_p(z) = m_p(z)^{-p}.
double kernel_diag(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                   const SolveOptions& opts = {});
inline double kernel_diag(const SolveReport& r, double p) { return std::pow(r.optimal_value, -p); }

/// |f(z)|^p / ||f||_p^p, the quantity whose supremum over f is K_p(z).
double kernel_sup_form(const PolyFun& f, const QuadratureRule& quad, double p, const Point& z);

struct OffDiagonal {
  Complex m;  // m_p(z, w): the minimizer at w evaluated at z
  Complex K;  // K_p(z, w) = m_p(z, w) K_p(w)
};

OffDiagonal offdiagonal(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z, const Point& w,
                        const SolveOptions& opts = {});
/// Same, reusing a solve at w.
OffDiagonal offdiagonal(const SolveReport& at_w, double p, const Point& z);

/// Normalized Euler-Lagrange residual of f as a candidate minimizer at z.
double kkt_residual(const PolyFun& f, const QuadratureRule& quad, double p, const Point& z);

struct MetricResult {
  double metric = 0.0;   // B_p(z; X)
  double kernel = 0.0;   // K_p(z)
  double dual_value = 0.0;  // min ||f||_p with f(z) = 0, Xf(z) = 1
  PolyFun maximizer;     // unit-norm f with f(z) = 0 and maximal |Xf(z)|
  SolveReport point_solve;
  SolveReport dual_solve;
};

MetricResult solve_metric(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                          const Eigen::VectorXcd& X, const SolveOptions& opts = {});

/// min ||f||_p with d^alpha f(z) = 1 and d^beta f(z) = 0 for every beta preceding alpha.
SolveReport solve_high_order(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                             const MultiIndex& alpha, const SolveOptions& opts = {});

struct ProjectionResult {
  PolyFun projection;
  double distance = 0.0;
  double variational_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Best L^p approximation of node samples by the span of the basis.
ProjectionResult project_lp(const QuadratureRule& quad, const BasisPtr& basis, double p,
                            const Eigen::VectorXcd& samples, const SolveOptions& opts = {});

/// Normalized residual max_alpha |int |F-h|^{p-2} conj(F-h) z^alpha| / (||F-h||_p^{p-1} ||z^alpha||_p).
double projection_residual(const QuadratureRule& quad, const BasisPtr& basis, double p,
                           const Eigen::VectorXcd& samples, const PolyFun& h);

/// int |f|^{p-2} conj(f) z^alpha over the quadrature, for every basis monomial.
Eigen::VectorXcd weighted_moments(const QuadratureRule& quad, const PolyFun& f, double p);

/// Quadrature, basis and solver options for one domain.
struct Model {
  QuadratureRule quad;
  BasisPtr basis;
  SolveOptions options;

  const Domain& domain() const { return quad.domain; }
};

/// Orders of 0 select the defaults for the degree.
Model make_model(const Domain& d, int degree, int radial_order = 0, int angular_order = 0);

}  // namespace pbergman
