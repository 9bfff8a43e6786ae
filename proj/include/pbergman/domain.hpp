#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pbergman {

using Complex = std::complex<double>;
/// A point of C^n.
using Point = Eigen::VectorXcd;

enum class DomainKind { Ball, Polydisc, Thullen, ReinhardtProfile };

/// Upper radial bound r1 -> R(r1) for |z2| on a two-dimensional complete
/// Reinhardt domain {|z1| < 1, |z2| < R(|z1|)}. R must be continuous,
/// nonincreasing and positive at 0.
class RadialProfile {
 public:
  /// Piecewise-linear profile through equispaced samples R(k/(m-1)), k = 0..m-1.
  static RadialProfile from_samples(std::vector<double> samples);
  static RadialProfile from_function(std::function<double(double)> fn);

  double operator()(double r1) const;

  /// Samples defining a piecewise-linear profile; empty for function profiles.
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::function<double(double)> fn_;
  std::vector<double> samples_;
};

/// Bounded complete Reinhardt model domain containing the origin.
struct Domain {
  DomainKind kind = DomainKind::Polydisc;
  int dimension = 1;
  double alpha = 0.0;  // Thullen exponent: |z1| + |z2|^{2/alpha} < 1
  std::shared_ptr<const RadialProfile> profile;

  /// Upper bound on |z2| given |z1| (Thullen and profile domains only).
  double radial_bound(double r1) const;
  bool is_disc() const { return dimension == 1 && (kind == DomainKind::Ball || kind == DomainKind::Polydisc); }
};

/// Parsed form of a domain description, e.g. "disc", "ball:2", "polydisc:2",
/// "bidisc", "thullen:3", "profile:1,0.8,0.5,0.1".
struct DomainSpec {
  DomainKind kind = DomainKind::Polydisc;
  int dimension = 1;
  double alpha = 0.0;
  std::vector<double> profile_samples;
};

Domain make_domain(const DomainSpec& spec);

inline Domain make_disc() { return make_domain({DomainKind::Polydisc, 1, 0.0, {}}); }
inline Domain make_ball(int n) { return make_domain({DomainKind::Ball, n, 0.0, {}}); }
inline Domain make_polydisc(int n) { return make_domain({DomainKind::Polydisc, n, 0.0, {}}); }
inline Domain make_thullen(double alpha) { return make_domain({DomainKind::Thullen, 2, alpha, {}}); }
Domain make_profile_domain(RadialProfile profile);

DomainSpec parse_domain_spec(const std::string& text);
std::string format_domain_spec(const Domain& d);

/// Strict interior membership.
bool contains(const Domain& d, const Point& z);

/// Euclidean distance from an interior point to the boundary.
double boundary_distance(const Domain& d, const Point& z);

/// Lebesgue volume (closed form where available).
double volume(const Domain& d);

}  // namespace pbergman
