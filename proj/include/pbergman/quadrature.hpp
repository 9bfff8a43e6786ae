#pragma once

#include <utility>

#include <Eigen/Dense>

#include "pbergman/domain.hpp"

namespace pbergman {

/// Gauss-Legendre nodes and weights on (0, 1).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int order);

/// Tensor polar rule: radial tuples (r_1..r_n) with Gauss weights times the
/// r dr Jacobians, crossed with the equispaced angle grid in every variable.
///
/// Node q = i * M^n + m, where i is the radial tuple and m the row-major
/// angle multi-index (m_1..m_n); coordinate j of the node is r_ij e^{i theta_{m_j}}.
struct QuadratureRule {
  Domain domain;
  int radial_order = 0;
  int angular_order = 0;
  Eigen::MatrixXd radii;           // radial tuples, one per row
  Eigen::VectorXd radial_weights;  // includes prod_j r_j
  Eigen::VectorXd angles;          // 2 pi m / M
  double angular_weight = 0.0;     // (2 pi / M)^n

  int dimension() const { return domain.dimension; }
  Eigen::Index radial_count() const { return radii.rows(); }
  Eigen::Index angular_count() const;
  Eigen::Index size() const { return radial_count() * angular_count(); }

  Point node(Eigen::Index q) const;
  double weight(Eigen::Index q) const { return radial_weights[q / angular_count()] * angular_weight; }

  /// Materialized nodes (size() x n) and weights.
  Eigen::MatrixXcd nodes() const;
  Eigen::VectorXd weights() const;
  double weight_sum() const { return radial_weights.sum() * angular_weight * static_cast<double>(angular_count()); }
};

QuadratureRule build_quadrature(const Domain& d, int radial_order, int angular_order);

inline int default_radial_order(int max_degree) { return std::max(2, 2 * max_degree); }
inline int default_angular_order(int max_degree) { return 4 * max_degree + 4; }

/// Sum of w_q * fn(zeta_q) over all nodes.
template <class Fn>
auto integrate(const QuadratureRule& quad, Fn&& fn) {
  using Result = decltype(fn(quad.node(0)));
  Result acc{};
  const Eigen::Index M = quad.angular_count();
  for (Eigen::Index q = 0; q < quad.size(); ++q) acc += quad.radial_weights[q / M] * fn(quad.node(q));
  return acc * quad.angular_weight;
}

}  // namespace pbergman
