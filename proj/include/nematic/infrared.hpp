#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nematic/lattice.hpp"

namespace nematic {

enum class QuadMethod { TensorGrid, MonteCarlo };

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::string method;
  std::int64_t n_points = 0;
  int d = 0;
  std::vector<double> refinements;  // tensor grid: values at n/4, n/2, n
};

/// I_d = (2pi)^{-d} int sqrt(eps(k+pi)/eps(k)) (d^{-1} sum cos k_i)_+ dk.
/// Tensor grid = midpoint rule (never hits k = 0); Monte Carlo = Sobol with
/// randomized digital shifts. Requires d >= 3.
QuadratureResult compute_Id(int d, QuadMethod method, std::int64_t budget = 0,
                            int threads = 1, std::uint64_t seed = 2024);

std::int64_t default_budget(int d, QuadMethod method);

enum class Positivity { Positive, Negative, Inconclusive };

struct BoundReport {
  int d = 0;
  double P_lower = 0.25;
  QuadratureResult Id;
  double bound_value = 0;  // sqrt(P) (2/9 sqrt(P) - I_d/sqrt(3))
  Positivity positivity = Positivity::Inconclusive;
};

BoundReport lower_bound(double P, int d, const QuadratureResult& Id);

struct ThresholdResult {
  int d = -1;                      // smallest d with Positive outcome
  bool conclusive = false;
  std::vector<BoundReport> scan;
};

/// Scans d = 3, 4, ... until the bound is positive with the quadrature error
/// cleared; never rounds a within-error sign (Inconclusive stops the scan).
ThresholdResult threshold_dimension(double P, int d_max = 8, std::int64_t budget = 0,
                                    int threads = 1);

/// rho(e1) - |L|^{-1} sum_{k != 0} [ sqrt(cross) sqrt(eps(k+pi)/eps(k))
/// (d^{-1} sum cos k_i)_+ + 1/(2 beta eps(k)) ] from precomputed ED inputs.
double finite_volume_bound(const LatticeTorus& lat, double beta, double rho_e1,
                           double cross_term);

struct J1ScanRow {
  double J1;
  double rho_e1;
  double cross_term;     // <S1S3S1S3> under Htilde
  double bound;          // finite-volume bound with the numerically evaluated
                         // double-commutator extension
  double bound_delta;    // bound(J1) - bound(0)
};

std::vector<J1ScanRow> j1_margin_scan(const LatticeTorus& lat, double beta,
                                      std::span<const double> J1_grid);

/// Finite-lattice Riemann sum of the I_d integrand over the shifted k-grid
/// (midpoint = Lambda* shifted off zero), used for the convergence check.
double finite_lattice_Id_sum(int d, int L);

}  // namespace nematic
