#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pbergman/domain.hpp"

namespace pbergman::cli {

/// "re,im" or a bare real.
Complex parse_complex(const std::string& text);

/// Coordinates separated by ';' ("0.3,0;0.2,0"), or a flat list of 2n
/// numbers ("0,0,0,0") read as n (re, im) pairs.
Eigen::VectorXcd parse_point(const std::string& text, int dimension);

/// start:stop:kind:count with kind linear or geometric.
std::vector<double> parse_range(const std::string& text);

/// Samples of a built-in or file-defined function at the quadrature nodes.
/// Built-ins: conjz, conjz^k (also conj(z), conj(z)^k) and |z|^k in the
/// first coordinate resp. the Euclidean norm. Anything else names a file of
/// lines "a_1 .. a_n b_1 .. b_n re im" giving f = sum c z^a conj(z)^b.
struct SampleSource {
  std::string label;
  std::function<Complex(const Eigen::VectorXcd&)> fn;
};
SampleSource parse_input(const std::string& text, int dimension);

}  // namespace pbergman::cli
