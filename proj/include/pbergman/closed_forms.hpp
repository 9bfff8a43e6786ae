#pragma once

// Exact kernels and transformation data on the ball, the polydisc and the
// (z1, 0) slice of the Thullen domain. All complex powers use the principal branch.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "pbergman/domain.hpp"
#include "pbergman/errors.hpp"

namespace pbergman {

template <class T>
using VectorC = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;

namespace detail {

template <class T>
T factorial(int n) {
  T f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

template <class T>
void require_ball(const VectorC<T>& z) {
  if (!(z.squaredNorm() < T(1))) throw DomainError("point is not inside the unit ball");
}

template <class T>
void require_polydisc(const VectorC<T>& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j)
    if (!(std::abs(z[j]) < T(1))) throw DomainError("point is not inside the unit polydisc");
}

}  // namespace detail

/// K_p(z, w) on the unit ball of C^n.
template <class T>
std::complex<T> ball_kernel(int n, T p, const VectorC<T>& z, const VectorC<T>& w) {
  if (z.size() != n || w.size() != n) throw ParameterError("point dimension mismatch");
  detail::require_ball(z);
  detail::require_ball(w);
  const T pi = std::numbers::pi_v<T>;
  const std::complex<T> inner = w.adjoint() * z;  // <z, w> = sum z_j conj(w_j)
  const T front = detail::factorial<T>(n) / std::pow(pi, T(n));
  return front * std::pow(T(1) - w.squaredNorm(), (n + 1) * (T(2) / p - T(1))) *
         std::pow(std::complex<T>(T(1)) - inner, -T(2) * (n + 1) / p);
}

/// K_p(z, w) on the unit polydisc of C^n.
template <class T>
std::complex<T> polydisc_kernel(int n, T p, const VectorC<T>& z, const VectorC<T>& w) {
  if (z.size() != n || w.size() != n) throw ParameterError("point dimension mismatch");
  detail::require_polydisc(z);
  detail::require_polydisc(w);
  const T pi = std::numbers::pi_v<T>;
  std::complex<T> out = T(1) / std::pow(pi, T(n));
  for (int j = 0; j < n; ++j)
    out *= std::pow(T(1) - std::norm(w[j]), T(4) / p - T(2)) *
           std::pow(std::complex<T>(T(1)) - std::conj(w[j]) * z[j], -T(4) / p);
  return out;
}

/// m_p(z, w) = K_p(z, w) / K_p(w) from the closed forms.
template <class T>
std::complex<T> ball_minimizer(int n, T p, const VectorC<T>& z, const VectorC<T>& w) {
  return ball_kernel(n, p, z, w) / ball_kernel(n, p, w, w).real();
}

template <class T>
std::complex<T> polydisc_minimizer(int n, T p, const VectorC<T>& z, const VectorC<T>& w) {
  return polydisc_kernel(n, p, z, w) / polydisc_kernel(n, p, w, w).real();
}

/// Closed-form kernel of a ball or polydisc domain.
std::complex<double> model_kernel(const Domain& d, double p, const Point& z, const Point& w);

/// ||z1^a z2^b||_2^2 on the Thullen domain {|z1| + |z2|^{2/alpha} < 1}.
double thullen_moment(double alpha, int a, int b);

/// K_2((z1^2, 0), (w1^2, 0)) as a function of x = z1 conj(w1).
std::complex<double> thullen_k2_slice(double alpha, std::complex<double> x);

/// The same quantity summed from the monomial series sum_a x^{2a} / ||z1^a||^2.
std::complex<double> thullen_k2_series(double alpha, std::complex<double> x);

/// Zero i tan(pi/(alpha+2)) of the slice kernel, alpha > 2.
std::complex<double> thullen_zero(double alpha);

/// Caratheodory metric C(z; X) on the disc and the ball.
double caratheodory_reference(const Domain& d, const Point& z, const Eigen::VectorXcd& X);

/// Automorphism of the unit ball sending (a, 0, ..., 0) to the origin.
class BallAutomorphism {
 public:
  BallAutomorphism(int n, std::complex<double> a);

  int dimension() const { return n_; }
  std::complex<double> parameter() const { return a_; }

  Point apply(const Point& z) const;
  /// Complex Jacobian determinant J_F(z).
  std::complex<double> jacobian(const Point& z) const;
  /// J_F(z)^s on the branch continuous from s = 0, i.e.
  /// (1-|a|^2)^{(n+1)s/2} (1 - conj(a) z1)^{-(n+1)s}.
  std::complex<double> jacobian_power(const Point& z, double s) const;

 private:
  int n_;
  std::complex<double> a_;
};

}  // namespace pbergman
