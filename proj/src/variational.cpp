#include "pbergman/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pbergman/errors.hpp"
#include "spectral.hpp"

namespace pbergman {

namespace {

using detail::SpectralGrid;
using detail::Workspace;

struct Constraints {
  Eigen::MatrixXcd C;  // acts on normalized coefficients
  Eigen::VectorXcd b;
  Eigen::Index count() const { return C.rows(); }
};

// Smoothed, scaled objective J = sum_q w_q phi_eps(|f_q|) / s^p together with
// its complex gradient and the two blocks of its real Hessian. Values are
// produced one radial tuple at a time, never materializing the full grid.
class Objective {
 public:
  Objective(const QuadratureRule& quad, const Basis& basis, double p, const Eigen::VectorXcd* offset)
      : grid_(quad, basis, basis.norm2()), p_(p), offset_(offset) {
    const Eigen::Index N = grid_.basis_size();
    diff_.resize(N, N);
    sum_.resize(N, N);
    for (Eigen::Index b = 0; b < N; ++b)
      for (Eigen::Index a = 0; a <= b; ++a) {
        diff_(a, b) = grid_.difference(a, b);
        sum_(a, b) = grid_.sum(a, b);
      }
  }

  struct Values {
    double value = 0.0;
    double max_abs = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
  };

  const SpectralGrid& grid() const { return grid_; }
  double p() const { return p_; }

  void block(Eigen::Index i, const Eigen::VectorXcd& c, Eigen::VectorXcd& f, Workspace& ws) const {
    grid_.synthesize(i, c, f, ws);
    if (offset_) f -= offset_->segment(i * grid_.grid_size(), grid_.grid_size());
  }

  // Optionally keeps the node values in *store for a later derivatives() call.
  Values evaluate(const Eigen::VectorXcd& c, double eps, double s, Eigen::VectorXcd* store = nullptr) const {
    Values out;
    Workspace ws;
    Eigen::VectorXcd f;
    Eigen::ArrayXd pw;
    const double e = eps / s;
    const Eigen::Index M = grid_.grid_size();
    if (store) store->resize(grid_.radial_count() * M);
    for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
      block(i, c, f, ws);
      if (store) store->segment(i * M, M) = f;
      const Eigen::ArrayXd a2 = f.array().abs2();
      out.max_abs = std::max(out.max_abs, a2.maxCoeff());
      out.min_abs = std::min(out.min_abs, a2.minCoeff());
      const Eigen::ArrayXd t2 = a2 / (s * s);
      detail::abs_power(t2, p_, pw);
      if (e > 0.0) {
        const double base = std::pow(e, p_) * (1.0 - 0.5 * p_), quad = 0.5 * p_ * std::pow(e, p_ - 2.0);
        pw = (t2 < e * e).select(base + quad * t2, pw);
      }
      out.value += grid_.node_weight(i) * pw.sum();
    }
    out.max_abs = std::sqrt(out.max_abs);
    out.min_abs = std::sqrt(out.min_abs);
    return out;
  }

  // Unsmoothed ||f||_p, scaled by a guess of max |f| to keep the powers finite.
  double norm(const Eigen::VectorXcd& c, double scale_hint, double* max_abs = nullptr) const {
    double s = scale_hint > 0.0 ? scale_hint : 1.0;
    Values v = evaluate(c, 0.0, s);
    if (v.max_abs > 0.0 && (v.max_abs > 1e3 * s || v.max_abs < 1e-3 * s)) {
      s = v.max_abs;
      v = evaluate(c, 0.0, s);
    }
    if (max_abs) *max_abs = v.max_abs;
    return v.max_abs == 0.0 ? 0.0 : s * std::pow(v.value, 1.0 / p_);
  }

  // newton = false gives the isotropic reweighted least-squares majorizer.
  // values, when given, holds the node values of c from evaluate().
  void derivatives(const Eigen::VectorXcd& c, double eps, double s, bool newton, Eigen::VectorXcd& g,
                   Eigen::MatrixXcd& G, Eigen::MatrixXcd& P, const Eigen::VectorXcd* values = nullptr) const {
    const Eigen::Index N = grid_.basis_size();
    g.setZero(N);
    G.setZero(N, N);
    P.setZero(N, N);
    const bool curved = newton && p_ != 2.0;
    const double e2 = (eps / s) * (eps / s);
    Workspace ws;
    Eigen::VectorXcd f, spec_a, spec_b, spec_g;
    Eigen::ArrayXd tp;
    const Eigen::Index M = grid_.grid_size();
    for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
      if (values)
        f = values->segment(i * M, M);
      else
        block(i, c, f, ws);
      const Eigen::ArrayXd a2 = f.array().abs2();
      const Eigen::ArrayXd t2 = a2 / (s * s);
      const Eigen::ArrayXd t2c = t2.max(e2);
      if (p_ >= 2.0)
        detail::abs_power(t2c, p_ - 2.0, tp);
      else
        tp = t2c.pow(0.5 * (p_ - 2.0));
      const Eigen::ArrayXd A = p_ * tp / (s * s);
      Eigen::ArrayXd B = p_ * (p_ - 2.0) * tp / (s * s);
      if (e2 > 0.0) B = (t2 < e2).select(0.0, B);
      Eigen::ArrayXd aw;
      if (curved)
        aw = A + 0.5 * B;
      else
        aw = p_ > 2.0 ? ((p_ - 1.0) * A).eval() : A;
      grid_.analyze(aw.cast<Complex>().matrix(), spec_a, ws);
      grid_.analyze((A * f.array().conjugate()).matrix(), spec_g, ws);
      if (curved) {
        const Eigen::ArrayXcd u2 =
            (a2 > 0.0).select(f.array().conjugate().square() / a2.cast<Complex>(), Complex(0.0));
        grid_.analyze((0.5 * B.cast<Complex>() * u2).matrix(), spec_b, ws);
      }
      const double w = grid_.node_weight(i);
      const auto rf = grid_.radial_factors().row(i);
      for (Eigen::Index a = 0; a < N; ++a) {
        const double wa = w * rf[a];
        if (wa == 0.0) continue;
        g[a] += wa * spec_g[grid_.position(a)];
      }
      // upper triangles, column by column
      for (Eigen::Index b = 0; b < N; ++b) {
        const double wb = w * rf[b];
        for (Eigen::Index a = 0; a <= b; ++a) {
          const double wab = wb * rf[a];
          G(a, b) += wab * spec_a[diff_(a, b)];
          if (curved) P(a, b) += wab * spec_b[sum_(a, b)];
        }
      }
    }
    for (Eigen::Index b = 0; b < N; ++b)
      for (Eigen::Index a = 0; a < b; ++a) {
        G(b, a) = std::conj(G(a, b));
        P(b, a) = P(a, b);
      }
  }

  // sum_q w_q (|f|/s)^{p-2} conj(f)/s phi_alpha(zeta_q), the unsmoothed first variation.
  Eigen::VectorXcd first_variation(const Eigen::VectorXcd& c, double s) const {
    const Eigen::Index N = grid_.basis_size();
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(N);
    Workspace ws;
    Eigen::VectorXcd f, spec;
    Eigen::ArrayXd tp;
    for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
      block(i, c, f, ws);
      const Eigen::ArrayXd t2 = f.array().abs2() / (s * s);
      if (p_ >= 2.0)
        detail::abs_power(t2, p_ - 2.0, tp);
      else
        tp = (t2 > 0.0).select(t2.pow(0.5 * (p_ - 2.0)), 0.0);
      grid_.analyze((tp * f.array().conjugate() / s).matrix(), spec, ws);
      const double w = grid_.node_weight(i);
      const auto rf = grid_.radial_factors().row(i);
      for (Eigen::Index a = 0; a < N; ++a) t[a] += w * rf[a] * spec[grid_.position(a)];
    }
    return t;
  }

  // ||phi_alpha - (C_alpha / C_0) phi_0||_p for a single constraint row C with C_0 != 0.
  // On one radial tuple this is |a e^{i alpha.theta} - b| summed over the grid, and the
  // phases alpha.theta_m run through phase_count equally spaced values.
  Eigen::VectorXd constant_projected_norms(const Eigen::MatrixXcd& C) const {
    const Eigen::Index N = grid_.basis_size();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
    Eigen::VectorXcd v;
    for (Eigen::Index a = 1; a < N; ++a) {
      const int L = grid_.phase_count(a);
      const double multiplicity = static_cast<double>(grid_.grid_size()) / L;
      const Complex ratio = C(0, a) / C(0, 0);
      Eigen::VectorXcd phases(L);
      for (int l = 0; l < L; ++l) phases[l] = std::polar(1.0, 2.0 * std::numbers::pi * l / L);
      for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
        const auto rf = grid_.radial_factors().row(i);
        v = rf[a] * phases.array() - ratio * rf[0];
        acc[a] += grid_.node_weight(i) * multiplicity * detail::abs_power_sum(v, p_);
      }
    }
    return acc.array().pow(1.0 / p_);
  }

  // ||sum_beta Pi(beta, alpha) phi_beta||_p for every alpha, Pi = I - Psi C.
  Eigen::VectorXd projected_norms(const Eigen::MatrixXcd& Psi, const Eigen::MatrixXcd& C) const {
    const Eigen::Index N = grid_.basis_size();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
    if (C.rows() == 0) {
      // monomials have constant modulus on each angle grid
      for (Eigen::Index i = 0; i < grid_.radial_count(); ++i)
        for (Eigen::Index a = 0; a < N; ++a)
          acc[a] += grid_.node_weight(i) * static_cast<double>(grid_.grid_size()) *
                    std::pow(grid_.radial_factors()(i, a), p_);
      return acc.array().pow(1.0 / p_);
    }
    if (p_ == 2.0) {
      // the normalized monomials are orthonormal for the rule
      const Eigen::MatrixXcd Pi = Eigen::MatrixXcd::Identity(N, N) - Psi * C;
      return Pi.colwise().norm().transpose();
    }
    // sum_beta Pi(beta, alpha) phi_beta = phi_alpha - sum_l C(l, alpha) psi_l, psi_l = sum_beta Psi(beta, l) phi_beta
    const Eigen::Index m = C.rows(), M = grid_.grid_size();
    Workspace ws;
    Eigen::MatrixXcd psi(M, m);
    Eigen::VectorXcd col;
    std::vector<Eigen::VectorXcd> modes(N);
    for (Eigen::Index a = 0; a < N; ++a) grid_.angular_mode(a, modes[a]);
    for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
      for (Eigen::Index l = 0; l < m; ++l) {
        grid_.synthesize(i, Psi.col(l), col, ws);
        psi.col(l) = col;
      }
      const auto rf = grid_.radial_factors().row(i);
      for (Eigen::Index a = 0; a < N; ++a) {
        if (m == 1)
          col.noalias() = rf[a] * modes[a] - C(0, a) * psi.col(0);
        else
          col.noalias() = rf[a] * modes[a] - psi * C.col(a);
        acc[a] += grid_.node_weight(i) * detail::abs_power_sum(col, p_);
      }
    }
    return acc.array().pow(1.0 / p_);
  }

  // L^2 projection of the offset samples onto the (orthonormal) basis.
  Eigen::VectorXcd l2_projection() const {
    const Eigen::Index N = grid_.basis_size();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(N);
    Workspace ws;
    Eigen::VectorXcd spec;
    const Eigen::Index M = grid_.grid_size();
    for (Eigen::Index i = 0; i < grid_.radial_count(); ++i) {
      const Eigen::VectorXcd conj_block = offset_->segment(i * M, M).conjugate();
      grid_.analyze(conj_block, spec, ws);
      const auto rf = grid_.radial_factors().row(i);
      for (Eigen::Index a = 0; a < N; ++a)
        c[a] += grid_.node_weight(i) * rf[a] * std::conj(spec[grid_.position(a)]);
    }
    return c;
  }

 private:
  SpectralGrid grid_;
  double p_;
  const Eigen::VectorXcd* offset_;
  Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic> diff_, sum_;  // spectrum positions, upper triangle
};

Eigen::MatrixXd real_form(const Eigen::MatrixXcd& C) {
  const Eigen::Index m = C.rows(), N = C.cols();
  Eigen::MatrixXd R(2 * m, 2 * N);
  R << C.real(), -C.imag(), C.imag(), C.real();
  return R;
}

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& C) {
  if (C.rows() == 0) return Eigen::MatrixXcd(C.cols(), 0);
  const Eigen::MatrixXcd CCt = C * C.adjoint();
  return C.adjoint() * CCt.ldlt().solve(Eigen::MatrixXcd::Identity(C.rows(), C.rows()));
}

constexpr Eigen::Index kCachedNodes = Eigen::Index(1) << 22;

struct RawResult {
  Eigen::VectorXcd c;  // normalized coefficients
  double value = 0.0;  // true ||f||_p
  double kkt = 0.0;
  int iterations = 0;
  double eps = 0.0;
  double scale = 1.0;  // max |f| over the nodes at the last iterate
  bool converged = false;
};

// Newton step of the equality-constrained quadratic model (real coordinates).
// The bordered system is solved directly: for p = 1 the Hessian is singular along
// the scaling direction f -> (1+t) f, which only the constraint rules out.
bool kkt_step(const Eigen::VectorXcd& g, const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& P, const Eigen::MatrixXd& Cr,
              const Eigen::VectorXd& residual, Eigen::VectorXcd& step, double& slope) {
  const Eigen::Index N = g.size(), m = Cr.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * N + m, 2 * N + m);
  K.topLeftCorner(2 * N, 2 * N) << G.real() + P.real(), -G.imag() - P.imag(), G.imag() - P.imag(), G.real() - P.real();
  const double ridge = 1e-13 * K.diagonal().head(2 * N).cwiseAbs().maxCoeff();
  K.diagonal().head(2 * N).array() += ridge;
  Eigen::VectorXd rhs(2 * N + m);
  rhs.head(N) = -g.real();
  rhs.segment(N, N) = g.imag();
  if (m > 0) {
    K.topRightCorner(2 * N, m) = Cr.transpose();
    K.bottomLeftCorner(m, 2 * N) = Cr;
    rhs.tail(m) = residual;
  }
  const Eigen::VectorXd sol = K.partialPivLu().solve(rhs);
  const Eigen::VectorXd v = sol.head(2 * N);
  if (!v.allFinite()) return false;
  slope = -rhs.head(2 * N).dot(v);
  step = v.head(N).cast<Complex>() + Complex(0.0, 1.0) * v.tail(N).cast<Complex>();
  return true;
}

class Solver {
 public:
  Solver(const QuadratureRule& quad, const Basis& basis, double p, Constraints cons, const Eigen::VectorXcd* offset)
      : obj_(quad, basis, p, offset), p_(p), cons_(std::move(cons)), Cr_(real_form(cons_.C)),
        Psi_(pseudo_inverse(cons_.C)) {
    // A single constraint that does not vanish on constants is projected out along
    // the constant function; otherwise the L2-orthogonal projector is used.
    along_constant_ = cons_.count() == 1 && std::abs(cons_.C(0, 0)) > 1e-12 * cons_.C.cwiseAbs().maxCoeff();
    if (along_constant_) {
      H_ = Eigen::MatrixXcd::Zero(cons_.C.cols(), 1);
      H_(0, 0) = 1.0 / cons_.C(0, 0);
    } else {
      H_ = Psi_;
    }
  }

  const Objective& objective() const { return obj_; }

  Eigen::VectorXcd make_feasible(Eigen::VectorXcd c) const {
    if (cons_.count() == 0) return c;
    return c + Psi_ * (cons_.b - cons_.C * c);
  }

  double kkt(const Eigen::VectorXcd& c, double s, double norm) {
    const Eigen::VectorXcd t = obj_.first_variation(c, s);
    Eigen::VectorXcd u = t;
    if (cons_.count() > 0) u -= cons_.C.transpose() * (H_.transpose() * t);
    if (!denominators_)
      denominators_ = along_constant_ ? obj_.constant_projected_norms(cons_.C) : obj_.projected_norms(Psi_, cons_.C);
    const double scale = std::pow(norm / s, p_ - 1.0);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < u.size(); ++a) {
      const double d = (*denominators_)[a];
      if (!(d > 1e-12)) continue;
      worst = std::max(worst, std::abs(u[a]) / (scale * d));
    }
    return worst;
  }

  RawResult run(Eigen::VectorXcd c, const SolveOptions& opts) {
    RawResult out;
    const double tol = p_ == 1.0 ? std::max(opts.tolerance, 1e-6) : opts.tolerance;
    auto vals = obj_.evaluate(c, 0.0, 1.0);
    double s = vals.max_abs > 0.0 ? vals.max_abs : 1.0;

    std::vector<double> levels{0.0};
    if (p_ < 2.0) {
      levels.clear();
      const double floor = (p_ == 1.0 ? 1e-8 : 1e-10) * s;
      for (double e = 1e-2 * s; e > floor * (1.0 + 1e-9); e /= 10.0) levels.push_back(e);
      levels.push_back(floor);
    }

    Eigen::VectorXcd g, step;
    Eigen::MatrixXcd G, P;
    // node values of the current iterate, kept when they fit in memory
    const bool cache = obj_.grid().radial_count() * obj_.grid().grid_size() <= kCachedNodes;
    Eigen::VectorXcd current, trial_values;
    Eigen::VectorXcd* const keep = cache ? &current : nullptr;
    Eigen::VectorXcd* const keep_trial = cache ? &trial_values : nullptr;
    int polish = 0;
    for (std::size_t level = 0; level < levels.size(); ++level) {
      const double eps = levels[level];
      const bool last = level + 1 == levels.size();
      out.eps = eps;
      if (!last && vals.min_abs >= eps) continue;  // smoothing inactive at this level
      double J = obj_.evaluate(c, eps, s, keep).value;
      while (out.iterations < opts.max_iterations) {
        if (cons_.count() > 0 && constraint_residual(c).norm() > 0.0) {
          c = make_feasible(c);
          J = obj_.evaluate(c, eps, s, keep).value;
        }
        const Eigen::VectorXd residual = Eigen::VectorXd::Zero(Cr_.rows());
        double slope = 0.0;
        bool ok = false;
        for (bool newton : {true, false}) {
          obj_.derivatives(c, eps, s, newton, g, G, P, keep);
          if (kkt_step(g, G, P, Cr_, residual, step, slope) && slope < 0.0) {
            ok = true;
            break;
          }
        }
        ++out.iterations;
        bool done = !ok;
        bool stalled = false;
        if (ok && -slope <= 1e-13 * J) {
          // The predicted decrease is below the resolution of J, so the line
          // search cannot judge the step; near the minimum a full Newton step
          // still shrinks the gradient.
          done = true;
          if (last && polish < 3) {
            ++polish;
            c += step;
            vals = obj_.evaluate(c, eps, s, keep);
            const double s_new = vals.max_abs > 0.0 ? vals.max_abs : s;
            J = vals.value * std::pow(s / s_new, p_);
            s = s_new;
          }
        } else if (ok) {
          double tau = 1.0;
          bool accepted = false;
          Objective::Values trial;
          for (int k = 0; k < 60; ++k) {
            trial = obj_.evaluate(c + tau * step, eps, s, keep_trial);
            if (std::isfinite(trial.value) && trial.value <= J + 1e-4 * tau * slope) {
              accepted = true;
              break;
            }
            tau *= 0.5;
          }
          if (!accepted) {
            done = stalled = true;
          } else {
            c += tau * step;
            if (cache) current.swap(trial_values);
            const double rel = (J - trial.value) / J;
            vals = trial;
            // rescale so the largest node value stays at 1
            const double s_new = trial.max_abs > 0.0 ? trial.max_abs : s;
            J = trial.value * std::pow(s / s_new, p_);
            s = s_new;
            done = rel < 1e-12;
          }
        }
        if (!done) continue;
        if (!last) break;
        out.kkt = kkt(c, s, obj_.norm(c, s));
        if (out.kkt <= tol) {
          out.converged = true;
          break;
        }
        if (!ok || stalled || polish >= 3) break;
      }
    }
    out.c = c;
    out.scale = s;
    return out;
  }

  Eigen::VectorXd constraint_residual(const Eigen::VectorXcd& c) const {
    const Eigen::VectorXcd r = cons_.b - cons_.C * c;
    Eigen::VectorXd out(2 * r.size());
    out << r.real(), r.imag();
    return out;
  }

  // Final exact constraint enforcement and true diagnostics.
  void finish(RawResult& out, double tolerance) {
    if (cons_.count() == 1 && cons_.b[0] != 0.0) {
      out.c *= cons_.b[0] / (cons_.C.row(0) * out.c)(0);
    } else {
      out.c = make_feasible(out.c);
    }
    double top = 0.0;
    out.value = obj_.norm(out.c, out.scale, &top);
    out.kkt = top > 0.0 ? kkt(out.c, top, out.value) : 0.0;
    const double tol = p_ == 1.0 ? std::max(tolerance, 1e-6) : tolerance;
    out.converged = out.converged && out.kkt <= tol;
  }

 private:
  Objective obj_;
  double p_;
  Constraints cons_;
  Eigen::MatrixXd Cr_;
  Eigen::MatrixXcd Psi_;
  Eigen::MatrixXcd H_;  // right inverse of C defining the projection in kkt
  bool along_constant_ = false;
  std::optional<Eigen::VectorXd> denominators_;
};

void check_inside(const QuadratureRule& quad, const Point& z) {
  if (!contains(quad.domain, z)) throw DomainError("point is not inside the domain");
}

void check_basis(const QuadratureRule& quad, const BasisPtr& basis) {
  if (!basis) throw ParameterError("missing basis");
  if (basis->dimension() != quad.dimension()) throw ParameterError("basis and quadrature dimensions differ");
}

Eigen::RowVectorXcd normalized(const Eigen::VectorXcd& functional, const Basis& b) {
  return functional.cwiseQuotient(b.norm2().cast<Complex>()).transpose();
}

SolveReport to_report(const RawResult& r, const BasisPtr& basis) {
  SolveReport rep;
  rep.optimal_value = r.value;
  rep.minimizer = PolyFun(basis, r.c.cwiseQuotient(basis->norm2().cast<Complex>()));
  rep.kkt_residual = r.kkt;
  rep.iterations = r.iterations;
  rep.epsilon_final = r.eps;
  rep.converged = r.converged;
  return rep;
}

SolveReport solve_constrained(const QuadratureRule& quad, const BasisPtr& basis, double p, Constraints cons,
                              Eigen::VectorXcd start, const SolveOptions& opts) {
  Solver solver(quad, *basis, p, std::move(cons), nullptr);
  if (opts.initial) {
    if (opts.initial->size() != basis->size()) throw ParameterError("initial coefficient count does not match basis");
    start = opts.initial->cwiseProduct(basis->norm2().cast<Complex>());
  }
  start = solver.make_feasible(start);
  RawResult r = solver.run(start, opts);
  solver.finish(r, opts.tolerance);
  return to_report(r, basis);
}

}  // namespace

SolveReport solve_point_minimizer(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                                  const SolveOptions& opts) {
  check_basis(quad, basis);
  check_exponent(p);
  check_inside(quad, z);
  Constraints cons;
  cons.C = normalized(monomial_values(*basis, z), *basis);
  cons.b = Eigen::VectorXcd::Ones(1);
  // the constant 1 is feasible
  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(basis->size());
  start[0] = basis->norm2()[0];
  SolveReport r = solve_constrained(quad, basis, p, std::move(cons), start, opts);
  r.point = z;
  return r;
}

double kernel_diag(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                   const SolveOptions& opts) {
  return kernel_diag(solve_point_minimizer(quad, basis, p, z, opts), p);
}

double kernel_sup_form(const PolyFun& f, const QuadratureRule& quad, double p, const Point& z) {
  const double norm = lp_norm(f, quad, p);
  if (norm == 0.0) throw ParameterError("zero function");
  return std::pow(std::abs(evaluate(f, z)) / norm, p);
}

OffDiagonal offdiagonal(const SolveReport& at_w, double p, const Point& z) {
  const Complex m = evaluate(at_w.minimizer, z);
  return {m, m * std::pow(at_w.optimal_value, -p)};
}

OffDiagonal offdiagonal(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z, const Point& w,
                        const SolveOptions& opts) {
  check_inside(quad, z);
  return offdiagonal(solve_point_minimizer(quad, basis, p, w, opts), p, z);
}

double kkt_residual(const PolyFun& f, const QuadratureRule& quad, double p, const Point& z) {
  check_exponent(p);
  const Complex fz = evaluate(f, z);
  if (fz == 0.0) throw ParameterError("candidate minimizer vanishes at z");
  Constraints cons;
  cons.C = normalized(monomial_values(*f.basis, z), *f.basis);
  cons.b = Eigen::VectorXcd::Constant(1, fz);
  Solver solver(quad, *f.basis, p, std::move(cons), nullptr);
  const Eigen::VectorXcd c = f.coefficients.cwiseProduct(f.basis->norm2().cast<Complex>());
  const auto vals = solver.objective().evaluate(c, 0.0, 1.0);
  const double s = vals.max_abs;
  const double norm = s * std::pow(solver.objective().evaluate(c, 0.0, s).value, 1.0 / p);
  return solver.kkt(c, s, norm);
}

MetricResult solve_metric(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                          const Eigen::VectorXcd& X, const SolveOptions& opts) {
  check_basis(quad, basis);
  check_exponent(p);
  check_inside(quad, z);
  if (basis->max_degree() < 1) throw ParameterError("metric needs basis degree at least 1");
  if (X.size() != quad.dimension()) throw ParameterError("direction dimension does not match the domain");
  if (X.norm() == 0.0) throw ParameterError("direction must be nonzero");
  MetricResult out;
  out.point_solve = solve_point_minimizer(quad, basis, p, z, opts);
  out.kernel = kernel_diag(out.point_solve, p);

  Constraints cons;
  cons.C.resize(2, basis->size());
  cons.C.row(0) = normalized(monomial_values(*basis, z), *basis);
  cons.C.row(1) = normalized(monomial_directional(*basis, z, X), *basis);
  cons.b = Eigen::Vector2cd(0.0, 1.0);
  SolveOptions dual_opts = opts;
  dual_opts.initial.reset();
  out.dual_solve = solve_constrained(quad, basis, p, std::move(cons), Eigen::VectorXcd::Zero(basis->size()), dual_opts);
  out.dual_solve.point = z;
  out.dual_value = out.dual_solve.optimal_value;
  out.metric = out.point_solve.optimal_value / out.dual_value;
  out.maximizer = (1.0 / out.dual_value) * out.dual_solve.minimizer;
  return out;
}

SolveReport solve_high_order(const QuadratureRule& quad, const BasisPtr& basis, double p, const Point& z,
                             const MultiIndex& alpha, const SolveOptions& opts) {
  check_basis(quad, basis);
  check_exponent(p);
  check_inside(quad, z);
  if (static_cast<int>(alpha.size()) != quad.dimension()) throw ParameterError("multi-index length mismatch");
  if (total_degree(alpha) > basis->max_degree()) throw ParameterError("derivative order exceeds the basis degree");
  const Eigen::Index m = basis->find(alpha) + 1;  // every beta preceding alpha, then alpha
  if (m <= 0 || m > basis->size()) throw ParameterError("constraint count exceeds the basis size");
  Constraints cons;
  cons.C.resize(m, basis->size());
  for (Eigen::Index k = 0; k < m; ++k)
    cons.C.row(k) = normalized(monomial_derivatives(*basis, z, basis->index(k)), *basis);
  cons.b = Eigen::VectorXcd::Zero(m);
  cons.b[m - 1] = 1.0;
  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(basis->size());
  if (m == 1) start[0] = basis->norm2()[0];
  SolveReport r = solve_constrained(quad, basis, p, std::move(cons), start, opts);
  r.point = z;
  return r;
}

ProjectionResult project_lp(const QuadratureRule& quad, const BasisPtr& basis, double p,
                            const Eigen::VectorXcd& samples, const SolveOptions& opts) {
  check_basis(quad, basis);
  if (!(p > 1.0)) throw UnsupportedExponent("projection needs p > 1");
  check_exponent(p);
  if (samples.size() != quad.size()) throw ParameterError("sample count does not match the quadrature");
  Solver solver(quad, *basis, p, Constraints{Eigen::MatrixXcd(0, basis->size()), Eigen::VectorXcd(0)}, &samples);
  Eigen::VectorXcd start = solver.objective().l2_projection();
  if (opts.initial) {
    if (opts.initial->size() != basis->size()) throw ParameterError("initial coefficient count does not match basis");
    start = opts.initial->cwiseProduct(basis->norm2().cast<Complex>());
  }
  const double scale = samples.cwiseAbs().maxCoeff();
  ProjectionResult out;
  const auto vals = solver.objective().evaluate(start, 0.0, 1.0);
  RawResult r;
  if (vals.max_abs <= 1e-13 * scale || scale == 0.0) {
    // the samples already lie in the span
    r.c = start;
    r.converged = true;
    r.value = vals.max_abs == 0.0 ? 0.0
                                  : vals.max_abs * std::pow(solver.objective().evaluate(start, 0.0, vals.max_abs).value,
                                                            1.0 / p);
    r.kkt = 0.0;
  } else {
    r = solver.run(start, opts);
    solver.finish(r, opts.tolerance);
  }
  out.projection = PolyFun(basis, r.c.cwiseQuotient(basis->norm2().cast<Complex>()));
  out.distance = r.value;
  out.variational_residual = r.kkt;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

double projection_residual(const QuadratureRule& quad, const BasisPtr& basis, double p,
                           const Eigen::VectorXcd& samples, const PolyFun& h) {
  check_basis(quad, basis);
  check_exponent(p);
  if (samples.size() != quad.size()) throw ParameterError("sample count does not match the quadrature");
  Solver solver(quad, *basis, p, Constraints{Eigen::MatrixXcd(0, basis->size()), Eigen::VectorXcd(0)}, &samples);
  const Eigen::VectorXcd c = h.coefficients.cwiseProduct(basis->norm2().cast<Complex>());
  const auto vals = solver.objective().evaluate(c, 0.0, 1.0);
  if (vals.max_abs == 0.0) return 0.0;
  const double s = vals.max_abs;
  const double norm = s * std::pow(solver.objective().evaluate(c, 0.0, s).value, 1.0 / p);
  return solver.kkt(c, s, norm);
}

Eigen::VectorXcd weighted_moments(const QuadratureRule& quad, const PolyFun& f, double p) {
  check_basis(quad, f.basis);
  check_exponent(p);
  Solver solver(quad, *f.basis, p, Constraints{Eigen::MatrixXcd(0, f.basis->size()), Eigen::VectorXcd(0)}, nullptr);
  const Eigen::VectorXcd c = f.coefficients.cwiseProduct(f.basis->norm2().cast<Complex>());
  const double s = solver.objective().evaluate(c, 0.0, 1.0).max_abs;
  if (s == 0.0) return Eigen::VectorXcd::Zero(f.basis->size());
  // first_variation pairs with the normalized monomials z^alpha / ||z^alpha||_2 and works at scale s
  const Eigen::VectorXcd t = solver.objective().first_variation(c, s);
  return t.cwiseProduct(f.basis->norm2().cast<Complex>()) * std::pow(s, p - 1.0);
}

Model make_model(const Domain& d, int degree, int radial_order, int angular_order) {
  Model m;
  m.quad = build_quadrature(d, radial_order > 0 ? radial_order : default_radial_order(degree),
                            angular_order > 0 ? angular_order : default_angular_order(degree));
  m.basis = monomial_basis(m.quad, degree);
  return m;
}

}  // namespace pbergman
