#include "pbergman/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pbergman/errors.hpp"
#include "pbergman/quadrature.hpp"

namespace pbergman {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParameterError("not a number: '" + s + "'");
  return v;
}

void check_dimension(const Domain& d, const Point& z) {
  if (z.size() != d.dimension)
    throw ParameterError("point has dimension " + std::to_string(z.size()) + ", domain has " +
                         std::to_string(d.dimension));
}

double segment_distance(double x, double y, double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((x - x0) * dx + (y - y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(x - (x0 + t * dx), y - (y0 + t * dy));
}

// Distance from (r1, r2) to the curve rho -> (rho, R(rho)), rho in [0, 1].
double curve_distance(const Domain& d, double r1, double r2) {
  auto dist = [&](double rho) { return std::hypot(r1 - rho, r2 - d.radial_bound(rho)); };
  constexpr int scan = 2000;
  int best = 0;
  double best_val = dist(0.0);
  for (int k = 1; k <= scan; ++k) {
    const double v = dist(static_cast<double>(k) / scan);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(scan);
  double hi = std::min(scan, best + 1) / static_cast<double>(scan);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = dist(a), fb = dist(b);
  while (hi - lo > 1e-13) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = dist(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = dist(b);
    }
  }
  return std::min({best_val, fa, fb});
}

}  // namespace

RadialProfile RadialProfile::from_samples(std::vector<double> samples) {
  if (samples.size() < 2) throw ParameterError("profile needs at least two samples");
  if (!(samples.front() > 0.0)) throw ParameterError("profile must be positive at 0");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!std::isfinite(samples[k]) || samples[k] < 0.0)
      throw ParameterError("profile samples must be finite and nonnegative");
    if (k > 0 && samples[k] > samples[k - 1]) throw ParameterError("profile must be nonincreasing");
  }
  RadialProfile out;
  out.samples_ = std::move(samples);
  return out;
}

RadialProfile RadialProfile::from_function(std::function<double(double)> fn) {
  if (!fn) throw ParameterError("empty profile function");
  double prev = fn(0.0);
  if (!(prev > 0.0)) throw ParameterError("profile must be positive at 0");
  for (int k = 1; k <= 100; ++k) {
    const double v = fn(k / 100.0);
    if (!std::isfinite(v) || v < 0.0 || v > prev + 1e-14)
      throw ParameterError("profile must be finite, nonnegative and nonincreasing");
    prev = v;
  }
  RadialProfile out;
  out.fn_ = std::move(fn);
  return out;
}

double RadialProfile::operator()(double r1) const {
  if (fn_) return fn_(r1);
  const double x = std::clamp(r1, 0.0, 1.0) * static_cast<double>(samples_.size() - 1);
  const auto k = std::min(static_cast<std::size_t>(x), samples_.size() - 2);
  const double t = x - static_cast<double>(k);
  return (1.0 - t) * samples_[k] + t * samples_[k + 1];
}

double Domain::radial_bound(double r1) const {
  switch (kind) {
    case DomainKind::Thullen:
      return std::pow(std::max(0.0, 1.0 - r1), alpha / 2.0);
    case DomainKind::ReinhardtProfile:
      return (*profile)(r1);
    default:
      throw ParameterError("radial bound only defined for Thullen and profile domains");
  }
}

Domain make_domain(const DomainSpec& spec) {
  if (spec.dimension <= 0) throw ParameterError("dimension must be positive");
  Domain d;
  d.kind = spec.kind;
  d.dimension = spec.dimension;
  switch (spec.kind) {
    case DomainKind::Ball:
    case DomainKind::Polydisc:
      break;
    case DomainKind::Thullen:
      if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) throw ParameterError("Thullen alpha must be positive");
      if (spec.dimension != 2) throw ParameterError("Thullen domain has dimension 2");
      d.alpha = spec.alpha;
      break;
    case DomainKind::ReinhardtProfile:
      if (spec.dimension != 2) throw ParameterError("profile domain has dimension 2");
      d.profile = std::make_shared<const RadialProfile>(RadialProfile::from_samples(spec.profile_samples));
      break;
  }
  return d;
}

Domain make_profile_domain(RadialProfile profile) {
  Domain d;
  d.kind = DomainKind::ReinhardtProfile;
  d.dimension = 2;
  d.profile = std::make_shared<const RadialProfile>(std::move(profile));
  return d;
}

DomainSpec parse_domain_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  DomainSpec spec;
  if (head == "disc") {
    if (!arg.empty()) throw ParameterError("'disc' takes no argument");
    spec.kind = DomainKind::Polydisc;
  } else if (head == "bidisc") {
    if (!arg.empty()) throw ParameterError("'bidisc' takes no argument");
    spec.kind = DomainKind::Polydisc;
    spec.dimension = 2;
  } else if (head == "ball" || head == "polydisc") {
    spec.kind = head == "ball" ? DomainKind::Ball : DomainKind::Polydisc;
    if (!arg.empty()) {
      int n = 0;
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
      if (ec != std::errc{} || ptr != arg.data() + arg.size()) throw ParameterError("bad dimension '" + arg + "'");
      spec.dimension = n;
    }
  } else if (head == "thullen") {
    spec.kind = DomainKind::Thullen;
    spec.dimension = 2;
    spec.alpha = arg.empty() ? 3.0 : parse_number(arg);
  } else if (head == "profile") {
    spec.kind = DomainKind::ReinhardtProfile;
    spec.dimension = 2;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) spec.profile_samples.push_back(parse_number(item));
  } else {
    throw ParameterError("unknown domain '" + text + "'");
  }
  make_domain(spec);  // validate
  return spec;
}

std::string format_domain_spec(const Domain& d) {
  std::ostringstream os;
  os.precision(17);
  switch (d.kind) {
    case DomainKind::Ball:
      os << "ball:" << d.dimension;
      break;
    case DomainKind::Polydisc:
      if (d.dimension == 1)
        os << "disc";
      else
        os << "polydisc:" << d.dimension;
      break;
    case DomainKind::Thullen:
      os << "thullen:" << d.alpha;
      break;
    case DomainKind::ReinhardtProfile: {
      os << "profile:";
      const auto& s = d.profile->samples();
      if (s.empty()) {
        os << "function";
      } else {
        for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
      }
      break;
    }
  }
  return os.str();
}

bool contains(const Domain& d, const Point& z) {
  check_dimension(d, z);
  switch (d.kind) {
    case DomainKind::Ball:
      return z.squaredNorm() < 1.0;
    case DomainKind::Polydisc:
      return z.cwiseAbs().maxCoeff() < 1.0;
    case DomainKind::Thullen:
      return std::abs(z[0]) + std::pow(std::abs(z[1]), 2.0 / d.alpha) < 1.0;
    case DomainKind::ReinhardtProfile: {
      const double r1 = std::abs(z[0]);
      return r1 < 1.0 && std::abs(z[1]) < d.radial_bound(r1);
    }
  }
  return false;
}

double boundary_distance(const Domain& d, const Point& z) {
  if (!contains(d, z)) throw DomainError("point is not inside the domain");
  switch (d.kind) {
    case DomainKind::Ball:
      return 1.0 - z.norm();
    case DomainKind::Polydisc:
      return 1.0 - z.cwiseAbs().maxCoeff();
    case DomainKind::Thullen:
      return curve_distance(d, std::abs(z[0]), std::abs(z[1]));
    case DomainKind::ReinhardtProfile: {
      const double r1 = std::abs(z[0]), r2 = std::abs(z[1]);
      const double tail = d.radial_bound(1.0);
      double best = std::hypot(1.0 - r1, std::max(0.0, r2 - tail));  // the face r1 = 1
      const auto& s = d.profile->samples();
      if (s.empty()) return std::min(best, curve_distance(d, r1, r2));
      const double h = 1.0 / static_cast<double>(s.size() - 1);
      for (std::size_t k = 0; k + 1 < s.size(); ++k)
        best = std::min(best, segment_distance(r1, r2, k * h, s[k], (k + 1) * h, s[k + 1]));
      return best;
    }
  }
  return 0.0;
}

double volume(const Domain& d) {
  switch (d.kind) {
    case DomainKind::Ball:
      return std::pow(kPi, d.dimension) / factorial(d.dimension);
    case DomainKind::Polydisc:
      return std::pow(kPi, d.dimension);
    case DomainKind::Thullen:
      return 2.0 * kPi * kPi / ((d.alpha + 1.0) * (d.alpha + 2.0));
    case DomainKind::ReinhardtProfile: {
      // |Omega| = 4 pi^2 int_0^1 r1 R(r1)^2 / 2 dr1
      const auto& s = d.profile->samples();
      auto integrand = [&](double r) {
        const double R = d.radial_bound(r);
        return r * R * R;
      };
      auto composite = [&](int panels, int order) {
        const auto [x, w] = gauss_legendre(order);
        double acc = 0.0;
        for (int k = 0; k < panels; ++k)
          for (Eigen::Index j = 0; j < x.size(); ++j) acc += w[j] * integrand((k + x[j]) / panels) / panels;
        return acc;
      };
      if (!s.empty()) return 2.0 * kPi * kPi * composite(static_cast<int>(s.size()) - 1, 3);
      double prev = composite(8, 16);
      for (int panels = 16; panels <= (1 << 16); panels *= 2) {
        const double next = composite(panels, 16);
        if (std::abs(next - prev) <= 1e-13 * std::abs(next)) return 2.0 * kPi * kPi * next;
        prev = next;
      }
      return 2.0 * kPi * kPi * prev;
    }
  }
  return 0.0;
}

}  // namespace pbergman
