#include "pbergman/closed_forms.hpp"

#include <cmath>

namespace pbergman {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::complex<double> model_kernel(const Domain& d, double p, const Point& z, const Point& w) {
  switch (d.kind) {
    case DomainKind::Ball:
      return ball_kernel<double>(d.dimension, p, z, w);
    case DomainKind::Polydisc:
      return polydisc_kernel<double>(d.dimension, p, z, w);
    default:
      throw ParameterError("no closed-form kernel for " + format_domain_spec(d));
  }
}

double thullen_moment(double alpha, int a, int b) {
  if (!(alpha > 0.0)) throw ParameterError("Thullen alpha must be positive");
  if (a < 0 || b < 0) throw ParameterError("moment exponents must be nonnegative");
  // 4 pi^2 int r1^{2a+1} r2^{2b+1} over r1 + r2^{2/alpha} < 1
  //   = 4 pi^2/(2b+2) B(2a+2, alpha(b+1)+1)
  const double s = alpha * (b + 1.0) + 1.0;
  const double log_beta = std::lgamma(2.0 * a + 2.0) + std::lgamma(s) - std::lgamma(2.0 * a + 2.0 + s);
  return 4.0 * kPi * kPi / (2.0 * b + 2.0) * std::exp(log_beta);
}

std::complex<double> thullen_k2_slice(double alpha, std::complex<double> x) {
  if (!(alpha > 0.0)) throw ParameterError("Thullen alpha must be positive");
  if (!(std::abs(x) < 1.0)) throw DomainError("slice variable must satisfy |x| < 1");
  const double k = alpha + 2.0;
  const double front = (alpha + 1.0) / (4.0 * kPi * kPi);
  if (std::abs(x) < 1e-3) {
    // (1-x)^{-k} - (1+x)^{-k} = 2 sum_{j odd} (k)_j / j! x^j
    std::complex<double> sum = 0.0, xp = 1.0;
    double coef = k;  // (k)_1 / 1!
    for (int j = 1; j <= 11; j += 2) {
      sum += coef * xp;
      coef *= (k + j) * (k + j + 1) / ((j + 1.0) * (j + 2.0));
      xp *= x * x;
    }
    return 2.0 * front * sum;
  }
  const std::complex<double> one(1.0);
  return front / x * (std::pow(one - x, -k) - std::pow(one + x, -k));
}

std::complex<double> thullen_k2_series(double alpha, std::complex<double> x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("slice variable must satisfy |x| < 1");
  const std::complex<double> x2 = x * x;
  std::complex<double> sum = 0.0, xp = 1.0;
  int small = 0;
  for (int a = 0; a < 200000; ++a) {
    const std::complex<double> term = xp / thullen_moment(alpha, a, 0);
    sum += term;
    small = std::abs(term) <= 1e-18 * std::abs(sum) ? small + 1 : 0;
    if (small >= 5) break;
    xp *= x2;
  }
  return sum;
}

std::complex<double> thullen_zero(double alpha) {
  if (!(alpha > 2.0)) throw ParameterError("the slice kernel has a zero only for alpha > 2");
  return {0.0, std::tan(kPi / (alpha + 2.0))};
}

double caratheodory_reference(const Domain& d, const Point& z, const Eigen::VectorXcd& X) {
  if (!(d.kind == DomainKind::Ball || d.is_disc()))
    throw ParameterError("Caratheodory reference only for the disc and the ball");
  if (!contains(d, z)) throw DomainError("point is not inside the domain");
  if (X.size() != d.dimension) throw ParameterError("direction dimension mismatch");
  const double t = 1.0 - z.squaredNorm();
  const std::complex<double> zx = z.adjoint() * X;  // sum conj(z_j) X_j
  return std::sqrt(X.squaredNorm() / t + std::norm(zx) / (t * t));
}

BallAutomorphism::BallAutomorphism(int n, std::complex<double> a) : n_(n), a_(a) {
  if (n < 1) throw ParameterError("dimension must be positive");
  if (!(std::abs(a) < 1.0)) throw DomainError("automorphism parameter must lie in the unit disc");
}

Point BallAutomorphism::apply(const Point& z) const {
  if (z.size() != n_) throw ParameterError("point dimension mismatch");
  detail::require_ball<double>(z);
  const std::complex<double> den = 1.0 - std::conj(a_) * z[0];
  Point out(n_);
  out[0] = (z[0] - a_) / den;
  const double s = std::sqrt(1.0 - std::norm(a_));
  for (int j = 1; j < n_; ++j) out[j] = s * z[j] / den;
  return out;
}

std::complex<double> BallAutomorphism::jacobian(const Point& z) const { return jacobian_power(z, 1.0); }

std::complex<double> BallAutomorphism::jacobian_power(const Point& z, double s) const {
  if (z.size() != n_) throw ParameterError("point dimension mismatch");
  detail::require_ball<double>(z);
  const std::complex<double> den = 1.0 - std::conj(a_) * z[0];
  return std::pow(1.0 - std::norm(a_), 0.5 * (n_ + 1) * s) * std::pow(den, -(n_ + 1.0) * s);
}

}  // namespace pbergman
