#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "pbergman/domain.hpp"
#include "pbergman/quadrature.hpp"

namespace pbergman {

using MultiIndex = std::vector<int>;

constexpr int kMaxDegree = 40;
constexpr double kMinExponent = 1.0;
constexpr double kMaxExponent = 64.0;

int total_degree(const MultiIndex& a);

/// Graded order: lower total degree first; within a degree, beta precedes
/// alpha when at the first differing position beta_k > alpha_k.
bool precedes(const MultiIndex& beta, const MultiIndex& alpha);

/// All multi-indices of length n and total degree <= D, sorted by precedes().
std::vector<MultiIndex> graded_indices(int n, int max_degree);

/// Monomials z^alpha, |alpha| <= D, with their L2(Omega) norms.
class Basis {
 public:
  Basis(int dimension, int max_degree, std::vector<MultiIndex> indices, Eigen::VectorXd norm2);

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& index(Eigen::Index k) const { return indices_[k]; }
  /// ||z^alpha||_{L^2(Omega)} per index.
  const Eigen::VectorXd& norm2() const { return norm2_; }
  /// Position of alpha in the basis, or -1.
  Eigen::Index find(const MultiIndex& alpha) const;

 private:
  int dimension_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  Eigen::VectorXd norm2_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Requires quad.angular_order >= 4 D + 4 so the angular rule is exact on
/// |z^alpha|^2 and on the cross terms that orthogonality relies on.
BasisPtr monomial_basis(const QuadratureRule& quad, int max_degree);

/// Holomorphic polynomial sum_alpha c_alpha z^alpha over a basis.
struct PolyFun {
  BasisPtr basis;
  Eigen::VectorXcd coefficients;

  PolyFun() = default;
  PolyFun(BasisPtr b, Eigen::VectorXcd c);
  static PolyFun zero(BasisPtr b);
  static PolyFun monomial(BasisPtr b, const MultiIndex& alpha, Complex c = 1.0);

  PolyFun& operator+=(const PolyFun& other);
  PolyFun& operator-=(const PolyFun& other);
  PolyFun& operator*=(Complex c);
};

PolyFun operator+(PolyFun a, const PolyFun& b);
PolyFun operator-(PolyFun a, const PolyFun& b);
PolyFun operator*(Complex c, PolyFun f);

/// Values z^alpha of every basis monomial at z.
Eigen::VectorXcd monomial_values(const Basis& b, const Point& z);
/// Values of d^beta z^alpha at z (plain partial derivatives).
Eigen::VectorXcd monomial_derivatives(const Basis& b, const Point& z, const MultiIndex& beta);
/// Values of sum_j X_j d/dz_j z^alpha at z.
Eigen::VectorXcd monomial_directional(const Basis& b, const Point& z, const Eigen::VectorXcd& X);

Complex evaluate(const PolyFun& f, const Point& z);
Complex directional_derivative(const PolyFun& f, const Point& z, const Eigen::VectorXcd& X);
Complex partial_derivative(const PolyFun& f, const Point& z, const MultiIndex& beta);

/// f at every quadrature node, in node order.
Eigen::VectorXcd sample(const PolyFun& f, const QuadratureRule& quad);

/// (sum_q w_q |f(zeta_q)|^p)^{1/p}.
double lp_norm(const PolyFun& f, const QuadratureRule& quad, double p);
double lp_norm(const Eigen::VectorXcd& values, const QuadratureRule& quad, double p);

void check_exponent(double p);

}  // namespace pbergman
