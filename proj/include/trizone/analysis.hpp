#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "trizone/melnikov.hpp"

namespace trizone {

enum class DerivativeMethod { AnalyticDerivatives, FiniteDifference };

const char* to_string(DerivativeMethod m);

struct WronskianReport {
  double h = 0.0;
  double value = 0.0;
  int order = 0;
  DerivativeMethod method = DerivativeMethod::AnalyticDerivatives;
};

/// Determinant of [f_j^(i)(h)], i, j < funcs.size() <= 4.
WronskianReport wronskian(const std::vector<BasisFunction>& funcs, double h,
                          DerivativeMethod method = DerivativeMethod::AnalyticDerivatives);

struct IndependenceCertificate {
  bool certified = false;
  double witness = 0.0;
  double value = 0.0;
};

/// Samples the Wronskian at `samples` interior points of (lo, hi).
IndependenceCertificate independence_certificate(const std::vector<BasisFunction>& funcs, double lo,
                                                 double hi, int samples);

struct Zero {
  double h = 0.0;
  double residual = 0.0;
  double derivative = 0.0;
  bool simple = true;
};

struct ZeroSet {
  std::vector<Zero> zeros;
  std::vector<std::pair<double, double>> brackets;
  std::vector<std::string> advisories;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
};

struct ZeroOptions {
  int grid = 2000;
  /// Upper end of the scan on an unbounded domain; <= 0 selects 10.
  double cap = 0.0;
  double simple_tol = 1e-8;
};

ZeroSet find_zeros(const MelnikovForm& form, const ZeroOptions& opt = {});

/// Scan cap for an unbounded domain given the largest point of interest.
double scan_cap(double largest);

struct DesignResult {
  /// Coefficients on the first n+1 basis functions (unit norm, k0 >= 0).
  std::vector<double> null_vector;
  ZonePerturbation left, center, right;
  /// Form of the designed system.
  MelnikovForm form;
  bool freed_r_right = false;
};

/// Perturbation whose Melnikov function vanishes at the given targets.
DesignResult design_perturbation(const ThreeZoneSystem& sys, const std::vector<double>& targets);

}  // namespace trizone
