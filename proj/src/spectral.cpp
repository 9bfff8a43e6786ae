#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <numeric>
#include <mutex>
#include <numbers>
#include <optional>

#include <fftw3.h>

#include "pbergman/errors.hpp"

namespace pbergman::detail {

namespace {

// FFTW's planner is not thread safe; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* raw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Workspace::~Workspace() {
  fftw_free(in_);
  fftw_free(out_);
}

void Workspace::reserve(Eigen::Index size) {
  if (size <= size_) return;
  fftw_free(in_);
  fftw_free(out_);
  in_ = reinterpret_cast<Complex*>(fftw_alloc_complex(static_cast<std::size_t>(size)));
  out_ = reinterpret_cast<Complex*>(fftw_alloc_complex(static_cast<std::size_t>(size)));
  if (!in_ || !out_) throw std::bad_alloc();
  size_ = size;
}

Complex* Workspace::input(Eigen::Index size) {
  reserve(size);
  return in_;
}

Complex* Workspace::output(Eigen::Index size) {
  reserve(size);
  return out_;
}

// Backward transform y_k = sum_m x_m e^{+2 pi i k.m / M}, planned once for
// aligned buffers. FFTW_ESTIMATE keeps the algorithm choice deterministic.
class FftPlan {
 public:
  FftPlan(int n, int M) : size_(1) {
    std::vector<int> dims(n, M);
    for (int j = 0; j < n; ++j) size_ *= M;
    Workspace ws;
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft(n, dims.data(), raw(ws.input(size_)), raw(ws.output(size_)), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_) throw ParameterError("could not plan the angular transform");
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // Transforms the workspace input into the workspace output.
  void run(Workspace& ws) const { fftw_execute_dft(plan_, raw(ws.input(size_)), raw(ws.output(size_))); }

 private:
  Eigen::Index size_;
  fftw_plan plan_;
};

SpectralGrid::SpectralGrid(const QuadratureRule& quad, const Basis& basis, const Eigen::VectorXd& scale)
    : n_(quad.dimension()), D_(basis.max_degree()), M_(quad.angular_order), grid_(quad.angular_count()) {
  if (M_ < 2 * D_ + 1) throw ParameterError("angular order too small for the basis degree");
  const Eigen::Index N = basis.size();
  const Eigen::Index R = quad.radial_count();
  factors_.resize(R, N);
  for (Eigen::Index i = 0; i < R; ++i)
    for (Eigen::Index k = 0; k < N; ++k) {
      double v = 1.0 / scale[k];
      for (int j = 0; j < n_; ++j) v *= std::pow(quad.radii(i, j), basis.index(k)[j]);
      factors_(i, k) = v;
    }
  weights_ = quad.radial_weights * quad.angular_weight;

  stride_.assign(n_, 1);
  for (int j = n_ - 2; j >= 0; --j) stride_[j] = stride_[j + 1] * M_;
  pos_.resize(N);
  for (Eigen::Index k = 0; k < N; ++k) {
    exponents_.push_back(basis.index(k));
    std::int32_t t = 0;
    for (int j = 0; j < n_; ++j) t += exponents_.back()[j] * stride_[j];
    pos_[k] = t;
  }
  roots_.resize(M_);
  for (int t = 0; t < M_; ++t) roots_[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / M_);
  plan_ = std::make_shared<const FftPlan>(n_, M_);
}

int SpectralGrid::phase_count(Eigen::Index a) const {
  int g = M_;
  for (int e : exponents_[a]) g = std::gcd(g, e);
  return M_ / g;
}

void SpectralGrid::angular_mode(Eigen::Index a, Eigen::VectorXcd& out) const {
  out.resize(grid_);
  const auto& alpha = exponents_[a];
  std::vector<int> digit(n_, 0);
  int phase = 0;  // alpha . digit mod M
  for (Eigen::Index m = 0; m < grid_; ++m) {
    out[m] = roots_[phase];
    int j = n_ - 1;
    while (j >= 0) {
      phase = (phase + alpha[j]) % M_;
      if (++digit[j] < M_) break;
      // alpha_j * M = 0 mod M, so wrapping this digit leaves the phase unchanged
      digit[j--] = 0;
    }
  }
}

std::int32_t SpectralGrid::difference(Eigen::Index a, Eigen::Index b) const {
  std::int32_t t = 0;
  for (int j = 0; j < n_; ++j) {
    const int d = exponents_[b][j] - exponents_[a][j];
    t += (d < 0 ? d + M_ : d) * stride_[j];
  }
  return t;
}

std::int32_t SpectralGrid::sum(Eigen::Index a, Eigen::Index b) const {
  std::int32_t t = 0;
  for (int j = 0; j < n_; ++j) {
    const int s = exponents_[a][j] + exponents_[b][j];
    t += (s >= M_ ? s - M_ : s) * stride_[j];
  }
  return t;
}

void SpectralGrid::synthesize_angular(const Eigen::VectorXcd& c, Eigen::VectorXcd& out, Workspace& ws) const {
  Complex* in = ws.input(grid_);
  std::fill(in, in + grid_, Complex(0.0));
  for (Eigen::Index k = 0; k < c.size(); ++k) in[pos_[k]] = c[k];
  plan_->run(ws);
  out = Eigen::Map<const Eigen::VectorXcd>(ws.output(grid_), grid_);
}

void SpectralGrid::synthesize(Eigen::Index i, const Eigen::VectorXcd& c, Eigen::VectorXcd& out, Workspace& ws) const {
  Complex* in = ws.input(grid_);
  std::fill(in, in + grid_, Complex(0.0));
  for (Eigen::Index k = 0; k < c.size(); ++k) in[pos_[k]] = c[k] * factors_(i, k);
  plan_->run(ws);
  out = Eigen::Map<const Eigen::VectorXcd>(ws.output(grid_), grid_);
}

void SpectralGrid::analyze(const Eigen::VectorXcd& v, Eigen::VectorXcd& out, Workspace& ws) const {
  Eigen::Map<Eigen::VectorXcd>(ws.input(grid_), grid_) = v;
  plan_->run(ws);
  out = Eigen::Map<const Eigen::VectorXcd>(ws.output(grid_), grid_);
}

namespace {

// x^{q/4} for x >= 0 and an integer q >= 0, written as x^k x^{r/4} with q = 4k + r.
struct QuarterPower {
  int k, r;
  explicit QuarterPower(int q) : k(q / 4), r(q % 4) {}
  double operator()(double x) const {
    double v = 1.0, b = x;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) v *= b;
      b *= b;
    }
    if (r == 0) return v;
    const double h = std::sqrt(x);
    if (r == 2) return v * h;
    const double q = std::sqrt(h);
    return r == 1 ? v * q : v * h * q;
  }
};

std::optional<int> quarter_exponent(double p) {
  const double q = 2.0 * p;
  if (q >= 0.0 && q <= 256.0 && q == std::round(q)) return static_cast<int>(q);
  return std::nullopt;
}

}  // namespace

void abs_power(const Eigen::ArrayXd& abs2, double p, Eigen::ArrayXd& out) {
  out.resize(abs2.size());
  if (p == 2.0) {
    out = abs2;
  } else if (const auto q = quarter_exponent(p)) {
    const QuarterPower pw(*q);
    for (Eigen::Index i = 0; i < abs2.size(); ++i) out[i] = pw(abs2[i]);
  } else {
    out = abs2.pow(0.5 * p);
  }
}

double abs_power_sum(const Eigen::VectorXcd& v, double p) {
  if (p == 2.0) return v.squaredNorm();
  if (const auto q = quarter_exponent(p)) {
    if (*q == 2) return v.array().abs2().sqrt().sum();
    if (*q == 8) return v.array().abs2().square().sum();
    const QuarterPower pw(*q);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += pw(std::norm(v[i]));
    return acc;
  }
  return v.array().abs2().pow(0.5 * p).sum();
}

}  // namespace pbergman::detail
