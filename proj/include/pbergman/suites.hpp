#pragma once

// Check batteries behind the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

#include "pbergman/analysis.hpp"

namespace pbergman {

struct SuiteOptions {
  int samples = 100000;      // random triples per inequality branch
  std::uint64_t seed = 42;
  int threads = 1;
  int degree = 20;           // basis degree on the disc
  int degree_2d = 12;        // basis degree on two-dimensional domains
  double alpha = 3.0;        // Thullen exponent
  double tolerance = 1e-8;   // solver KKT tolerance
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite, or every suite for "all". Unknown names throw ParameterError.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace pbergman
