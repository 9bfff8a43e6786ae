#pragma once

// Fast evaluation of polynomials and weighted moments on tensor polar rules.
// On one radial tuple a polynomial is a trigonometric polynomial in the
// angles, and both synthesis and the angular sums sum_m v_m e^{i k.theta_m}
// are multidimensional DFTs on the equispaced grid.

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "pbergman/basis.hpp"
#include "pbergman/quadrature.hpp"

namespace pbergman::detail {

/// Transform buffers aligned for the FFT library; one per thread.
class Workspace {
 public:
  Workspace() = default;
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  ~Workspace();

  Complex* input(Eigen::Index size);
  Complex* output(Eigen::Index size);

 private:
  void reserve(Eigen::Index size);
  Complex* in_ = nullptr;
  Complex* out_ = nullptr;
  Eigen::Index size_ = 0;
};

class FftPlan;

class SpectralGrid {
 public:
  /// Basis functions are the normalized monomials z^alpha / scale_alpha.
  SpectralGrid(const QuadratureRule& quad, const Basis& basis, const Eigen::VectorXd& scale);

  int dimension() const { return n_; }
  int degree() const { return D_; }
  Eigen::Index radial_count() const { return factors_.rows(); }
  Eigen::Index grid_size() const { return grid_; }
  Eigen::Index basis_size() const { return factors_.cols(); }

  /// r_i^alpha / scale_alpha, one row per radial tuple.
  const Eigen::MatrixXd& radial_factors() const { return factors_; }
  /// rho_i * angular weight.
  double node_weight(Eigen::Index i) const { return weights_[i]; }

  /// Values of sum_alpha c_alpha phi_alpha on the angle grid of radial tuple i.
  void synthesize(Eigen::Index i, const Eigen::VectorXcd& c, Eigen::VectorXcd& out, Workspace& ws) const;
  /// Angle-grid values of sum_alpha c_alpha e^{i alpha.theta}, no radial factor.
  void synthesize_angular(const Eigen::VectorXcd& c, Eigen::VectorXcd& out, Workspace& ws) const;

  /// e^{i alpha.theta_m} on the angle grid for basis element a.
  void angular_mode(Eigen::Index a, Eigen::VectorXcd& out) const;

  /// Number of distinct phases alpha.theta_m over the grid, M / gcd(M, alpha_1, ..., alpha_n).
  /// Each phase 2 pi l / count is attained grid_size() / count times.
  int phase_count(Eigen::Index a) const;

  /// out[k] = sum_m v[m] e^{i k.theta_m} for every k in (Z/M)^n, row-major.
  void analyze(const Eigen::VectorXcd& v, Eigen::VectorXcd& out, Workspace& ws) const;

  /// Spectrum positions of alpha, beta - alpha and alpha + beta.
  std::int32_t position(Eigen::Index a) const { return pos_[a]; }
  std::int32_t difference(Eigen::Index a, Eigen::Index b) const;
  std::int32_t sum(Eigen::Index a, Eigen::Index b) const;

 private:
  int n_;
  int D_;
  int M_;
  Eigen::Index grid_;
  Eigen::MatrixXd factors_;
  Eigen::VectorXd weights_;
  std::vector<std::int32_t> pos_;
  std::vector<std::vector<int>> exponents_;
  std::vector<std::int32_t> stride_;
  Eigen::VectorXcd roots_;  // e^{2 pi i t / M}
  std::shared_ptr<const FftPlan> plan_;
};

/// |x|^p for |x|^2 given, with a fast path when 2p is an integer.
void abs_power(const Eigen::ArrayXd& abs2, double p, Eigen::ArrayXd& out);
/// sum_m |v_m|^p.
double abs_power_sum(const Eigen::VectorXcd& v, double p);

}  // namespace pbergman::detail
