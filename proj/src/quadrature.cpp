#include "pbergman/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pbergman/errors.hpp"

namespace pbergman {

namespace {

constexpr double kPi = std::numbers::pi;

struct RadialRule {
  std::vector<std::vector<double>> tuples;
  std::vector<double> weights;
};

RadialRule polydisc_rule(int n, int order) {
  const auto [x, w] = gauss_legendre(order);
  RadialRule rule;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<double> r(n);
    double weight = 1.0;
    for (int j = 0; j < n; ++j) {
      r[j] = x[idx[j]];
      weight *= w[idx[j]] * r[j];
    }
    rule.tuples.push_back(std::move(r));
    rule.weights.push_back(weight);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == order) idx[j--] = 0;
    if (j < 0) break;
  }
  return rule;
}

// Hyperspherical coordinates on the positive orthant of the unit n-ball:
// r_1 = rho cos(phi_1), r_2 = rho sin(phi_1) cos(phi_2), ..., r_n = rho prod sin(phi_k).
RadialRule ball_rule(int n, int order) {
  const auto [x, w] = gauss_legendre(order);
  RadialRule rule;
  std::vector<int> idx(n, 0);  // idx[0] -> rho, idx[k] -> phi_k
  while (true) {
    const double rho = x[idx[0]];
    double weight = w[idx[0]] * std::pow(rho, n - 1);
    std::vector<double> r(n);
    double tail = rho;
    for (int k = 1; k < n; ++k) {
      const double phi = 0.5 * kPi * x[idx[k]];
      weight *= 0.5 * kPi * w[idx[k]] * std::pow(std::sin(phi), n - 1 - k);
      r[k - 1] = tail * std::cos(phi);
      tail *= std::sin(phi);
    }
    r[n - 1] = tail;
    for (int j = 0; j < n; ++j) weight *= r[j];
    rule.tuples.push_back(std::move(r));
    rule.weights.push_back(weight);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == order) idx[j--] = 0;
    if (j < 0) break;
  }
  return rule;
}

// Nested map r_2 = s R(r_1). Sampled profiles are integrated panel by panel
// between their knots so the kinks of the piecewise-linear bound fall on panel edges.
RadialRule nested_rule(const Domain& d, int order) {
  std::vector<double> x1, w1;
  const auto& samples = d.profile ? d.profile->samples() : std::vector<double>{};
  if (samples.empty()) {
    const auto [x, w] = gauss_legendre(order);
    x1.assign(x.data(), x.data() + x.size());
    w1.assign(w.data(), w.data() + w.size());
  } else {
    const int panels = static_cast<int>(samples.size()) - 1;
    const int per_panel = std::max(2, (order + panels - 1) / panels);
    const auto [x, w] = gauss_legendre(per_panel);
    for (int k = 0; k < panels; ++k)
      for (int j = 0; j < per_panel; ++j) {
        x1.push_back((k + x[j]) / panels);
        w1.push_back(w[j] / panels);
      }
  }
  const auto [xs, ws] = gauss_legendre(order);
  RadialRule rule;
  for (std::size_t a = 0; a < x1.size(); ++a) {
    const double R = d.radial_bound(x1[a]);
    for (int b = 0; b < order; ++b) {
      const double r2 = xs[b] * R;
      rule.tuples.push_back({x1[a], r2});
      rule.weights.push_back(w1[a] * ws[b] * R * x1[a] * r2);
    }
  }
  return rule;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int order) {
  if (order < 1) throw ParameterError("Gauss-Legendre order must be positive");
  Eigen::VectorXd x(order), w(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (t * p1 - p0) / (t * t - 1.0);
    const double wt = 2.0 / ((1.0 - t * t) * dp * dp);
    // map [-1, 1] -> (0, 1), ascending order
    x[i] = 0.5 * (1.0 - t);
    x[order - 1 - i] = 0.5 * (1.0 + t);
    w[i] = w[order - 1 - i] = 0.5 * wt;
  }
  return {x, w};
}

Eigen::Index QuadratureRule::angular_count() const {
  Eigen::Index c = 1;
  for (int j = 0; j < dimension(); ++j) c *= angular_order;
  return c;
}

Point QuadratureRule::node(Eigen::Index q) const {
  const int n = dimension();
  const Eigen::Index M = angular_count();
  const Eigen::Index i = q / M;
  Eigen::Index m = q % M;
  Point z(n);
  for (int j = n - 1; j >= 0; --j) {
    z[j] = std::polar(radii(i, j), angles[m % angular_order]);
    m /= angular_order;
  }
  return z;
}

Eigen::MatrixXcd QuadratureRule::nodes() const {
  Eigen::MatrixXcd out(size(), dimension());
  for (Eigen::Index q = 0; q < size(); ++q) out.row(q) = node(q).transpose();
  return out;
}

Eigen::VectorXd QuadratureRule::weights() const {
  Eigen::VectorXd out(size());
  const Eigen::Index M = angular_count();
  for (Eigen::Index q = 0; q < size(); ++q) out[q] = radial_weights[q / M] * angular_weight;
  return out;
}

QuadratureRule build_quadrature(const Domain& d, int radial_order, int angular_order) {
  if (radial_order < 2) throw ParameterError("radial order must be at least 2");
  if (angular_order < 4) throw ParameterError("angular order must be at least 4");
  RadialRule rule;
  switch (d.kind) {
    case DomainKind::Polydisc:
      rule = polydisc_rule(d.dimension, radial_order);
      break;
    case DomainKind::Ball:
      rule = ball_rule(d.dimension, radial_order);
      break;
    case DomainKind::Thullen:
    case DomainKind::ReinhardtProfile:
      rule = nested_rule(d, radial_order);
      break;
  }
  QuadratureRule quad;
  quad.domain = d;
  quad.radial_order = radial_order;
  quad.angular_order = angular_order;
  const auto count = static_cast<Eigen::Index>(rule.tuples.size());
  quad.radii.resize(count, d.dimension);
  quad.radial_weights.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (int j = 0; j < d.dimension; ++j) quad.radii(i, j) = rule.tuples[i][j];
    quad.radial_weights[i] = rule.weights[i];
  }
  quad.angles.resize(angular_order);
  for (int m = 0; m < angular_order; ++m) quad.angles[m] = 2.0 * kPi * m / angular_order;
  quad.angular_weight = std::pow(2.0 * kPi / angular_order, d.dimension);
  return quad;
}

}  // namespace pbergman
