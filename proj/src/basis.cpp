#include "pbergman/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pbergman/errors.hpp"
#include "spectral.hpp"

namespace pbergman {

namespace {

void check_compatible(const PolyFun& a, const PolyFun& b) {
  if (a.basis != b.basis && (a.basis == nullptr || b.basis == nullptr || a.basis->indices() != b.basis->indices()))
    throw ParameterError("polynomials live on different bases");
}

// d^beta z^alpha = alpha!/(alpha-beta)! z^{alpha-beta}
Complex derivative_of_monomial(const MultiIndex& alpha, const MultiIndex& beta, const Point& z) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (beta[j] > alpha[j]) return 0.0;
    for (int t = 0; t < beta[j]; ++t) v *= static_cast<double>(alpha[j] - t);
    v *= std::pow(z[static_cast<Eigen::Index>(j)], alpha[j] - beta[j]);
  }
  return v;
}

void check_point(const Basis& b, const Point& z) {
  if (z.size() != b.dimension()) throw ParameterError("point dimension does not match the basis");
}

}  // namespace

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool precedes(const MultiIndex& beta, const MultiIndex& alpha) {
  const int db = total_degree(beta), da = total_degree(alpha);
  if (db != da) return db < da;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (beta[k] != alpha[k]) return beta[k] > alpha[k];
  return false;
}

std::vector<MultiIndex> graded_indices(int n, int max_degree) {
  if (n < 1) throw ParameterError("dimension must be positive");
  if (max_degree < 0) throw ParameterError("degree must be nonnegative");
  std::vector<MultiIndex> out;
  MultiIndex a(n, 0);
  // odometer over [0, D]^n, keeping |a| <= D
  while (true) {
    if (total_degree(a) <= max_degree) out.push_back(a);
    int j = n - 1;
    while (j >= 0 && ++a[j] > max_degree) a[j--] = 0;
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(), precedes);
  return out;
}

Basis::Basis(int dimension, int max_degree, std::vector<MultiIndex> indices, Eigen::VectorXd norm2)
    : dimension_(dimension), max_degree_(max_degree), indices_(std::move(indices)), norm2_(std::move(norm2)) {
  if (static_cast<Eigen::Index>(indices_.size()) != norm2_.size()) throw ParameterError("norm table size mismatch");
  for (Eigen::Index k = 0; k < norm2_.size(); ++k)
    if (!(norm2_[k] > 0.0) || !std::isfinite(norm2_[k])) throw ParameterError("basis norms must be finite and positive");
}

Eigen::Index Basis::find(const MultiIndex& alpha) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), alpha, precedes);
  if (it == indices_.end() || *it != alpha) return -1;
  return it - indices_.begin();
}

BasisPtr monomial_basis(const QuadratureRule& quad, int max_degree) {
  if (max_degree < 0 || max_degree > kMaxDegree)
    throw ParameterError("basis degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  if (quad.angular_order < 4 * max_degree + 4)
    throw ParameterError("angular order " + std::to_string(quad.angular_order) + " is below 4D+4 = " +
                         std::to_string(4 * max_degree + 4));
  auto indices = graded_indices(quad.dimension(), max_degree);
  // int |z^alpha|^2 = (2 pi)^n sum_i rho_i r_i^{2 alpha}: the angular sum is exact here.
  const double angular = std::pow(2.0 * std::numbers::pi, quad.dimension());
  Eigen::VectorXd norms(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < quad.radial_count(); ++i) {
      double v = quad.radial_weights[i];
      for (int j = 0; j < quad.dimension(); ++j) v *= std::pow(quad.radii(i, j), 2 * indices[k][j]);
      acc += v;
    }
    norms[static_cast<Eigen::Index>(k)] = std::sqrt(angular * acc);
  }
  return std::make_shared<const Basis>(quad.dimension(), max_degree, std::move(indices), std::move(norms));
}

PolyFun::PolyFun(BasisPtr b, Eigen::VectorXcd c) : basis(std::move(b)), coefficients(std::move(c)) {
  if (!basis) throw ParameterError("polynomial needs a basis");
  if (coefficients.size() != basis->size()) throw ParameterError("coefficient count does not match the basis");
}

PolyFun PolyFun::zero(BasisPtr b) {
  const auto N = b->size();
  return {std::move(b), Eigen::VectorXcd::Zero(N)};
}

PolyFun PolyFun::monomial(BasisPtr b, const MultiIndex& alpha, Complex c) {
  const auto k = b->find(alpha);
  if (k < 0) throw ParameterError("multi-index not in basis");
  PolyFun f = zero(std::move(b));
  f.coefficients[k] = c;
  return f;
}

PolyFun& PolyFun::operator+=(const PolyFun& other) {
  check_compatible(*this, other);
  coefficients += other.coefficients;
  return *this;
}

PolyFun& PolyFun::operator-=(const PolyFun& other) {
  check_compatible(*this, other);
  coefficients -= other.coefficients;
  return *this;
}

PolyFun& PolyFun::operator*=(Complex c) {
  coefficients *= c;
  return *this;
}

PolyFun operator+(PolyFun a, const PolyFun& b) { return a += b; }
PolyFun operator-(PolyFun a, const PolyFun& b) { return a -= b; }
PolyFun operator*(Complex c, PolyFun f) { return f *= c; }

Eigen::VectorXcd monomial_values(const Basis& b, const Point& z) {
  check_point(b, z);
  const int D = b.max_degree();
  // power tables z_j^k
  Eigen::MatrixXcd pw(b.dimension(), D + 1);
  for (int j = 0; j < b.dimension(); ++j) {
    pw(j, 0) = 1.0;
    for (int k = 1; k <= D; ++k) pw(j, k) = pw(j, k - 1) * z[j];
  }
  Eigen::VectorXcd out(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    Complex v = 1.0;
    for (int j = 0; j < b.dimension(); ++j) v *= pw(j, b.index(k)[j]);
    out[k] = v;
  }
  return out;
}

Eigen::VectorXcd monomial_derivatives(const Basis& b, const Point& z, const MultiIndex& beta) {
  check_point(b, z);
  if (static_cast<int>(beta.size()) != b.dimension()) throw ParameterError("multi-index length mismatch");
  Eigen::VectorXcd out(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) out[k] = derivative_of_monomial(b.index(k), beta, z);
  return out;
}

Eigen::VectorXcd monomial_directional(const Basis& b, const Point& z, const Eigen::VectorXcd& X) {
  check_point(b, z);
  if (X.size() != b.dimension()) throw ParameterError("direction dimension does not match the basis");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(b.size());
  for (int j = 0; j < b.dimension(); ++j) {
    if (X[j] == 0.0) continue;
    MultiIndex e(b.dimension(), 0);
    e[j] = 1;
    out += X[j] * monomial_derivatives(b, z, e);
  }
  return out;
}

Complex evaluate(const PolyFun& f, const Point& z) {
  return monomial_values(*f.basis, z).transpose() * f.coefficients;
}

Complex directional_derivative(const PolyFun& f, const Point& z, const Eigen::VectorXcd& X) {
  return monomial_directional(*f.basis, z, X).transpose() * f.coefficients;
}

Complex partial_derivative(const PolyFun& f, const Point& z, const MultiIndex& beta) {
  return monomial_derivatives(*f.basis, z, beta).transpose() * f.coefficients;
}

Eigen::VectorXcd sample(const PolyFun& f, const QuadratureRule& quad) {
  if (quad.dimension() != f.basis->dimension()) throw ParameterError("quadrature dimension does not match the basis");
  const Eigen::VectorXd unit = Eigen::VectorXd::Ones(f.basis->size());
  detail::SpectralGrid grid(quad, *f.basis, unit);
  detail::Workspace ws;
  Eigen::VectorXcd out(quad.size()), block;
  const Eigen::Index M = grid.grid_size();
  for (Eigen::Index i = 0; i < grid.radial_count(); ++i) {
    grid.synthesize(i, f.coefficients, block, ws);
    out.segment(i * M, M) = block;
  }
  return out;
}

void check_exponent(double p) {
  if (!(p >= kMinExponent)) throw UnsupportedExponent("exponent p must be at least 1");
  if (!(p <= kMaxExponent)) throw ParameterError("exponent p must not exceed 64");
}

double lp_norm(const Eigen::VectorXcd& values, const QuadratureRule& quad, double p) {
  check_exponent(p);
  if (values.size() != quad.size()) throw ParameterError("sample count does not match the quadrature");
  const Eigen::ArrayXd abs2 = values.array().abs2();
  const double top = std::sqrt(abs2.maxCoeff());
  if (top == 0.0) return 0.0;
  Eigen::ArrayXd powered;
  detail::abs_power(abs2 / (top * top), p, powered);
  const Eigen::Index M = quad.angular_count();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < quad.radial_count(); ++i) acc += quad.radial_weights[i] * powered.segment(i * M, M).sum();
  return top * std::pow(acc * quad.angular_weight, 1.0 / p);
}

double lp_norm(const PolyFun& f, const QuadratureRule& quad, double p) {
  check_exponent(p);
  return lp_norm(sample(f, quad), quad, p);
}

}  // namespace pbergman
