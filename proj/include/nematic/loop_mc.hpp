#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nematic/lattice.hpp"

namespace nematic {

/// Continuous-time double-bar configuration on edges x [0, T).
struct LoopConfig {
  const LatticeTorus* lat = nullptr;
  double T = 0;
  std::vector<std::vector<double>> events;  // per edge slot, strictly sorted

  std::size_t n_events() const;
};

struct LoopDecomposition {
  int count = 0;
  std::vector<int> arc_loop;            // loop id per global arc
  std::vector<std::vector<double>> site_times;  // sorted incident times per site
  std::vector<int> arc_offset;          // first arc id per site
  /// Loop id of the strand (site, time); whole-circle sites have one arc.
  int loop_at(int site, double t) const;
  bool same_loop(int a, int b, double t) const;
};

/// Full trace with the double-bar rule: at a bar the trajectory jumps to the
/// partner site and reverses time direction; periodic in time.
LoopDecomposition trace_loops(const LoopConfig& cfg);

/// Metropolis insert/delete of single double-bar events with the
/// theta^{#loops}-weighted Poisson measure (unit rate per edge slot).
class LoopSampler {
 public:
  LoopSampler(const LatticeTorus& lat, double T, double theta, std::uint64_t seed);

  void sweep();                       // |E| single-event proposals
  const LoopConfig& config() const { return cfg_; }
  int loop_count() const { return loop_count_; }
  bool same_loop_time0(int site_a, int site_b) const;
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t proposed() const { return proposed_; }

  /// Acceptance probability of inserting/deleting at the given loop-count
  /// change; exposed for the detailed-balance unit tests.
  double insert_acceptance(int delta_loops, std::size_t n_before) const;
  double delete_acceptance(int delta_loops, std::size_t n_before) const;

  /// Walk the loop through (x, t); true iff (y, t) lies on it. Exact for the
  /// current configuration.
  bool same_loop(int x, int y, double t) const;

  /// Recompute the loop count from scratch (consistency checks).
  int retrace_count() const;

 private:
  struct SiteEvent {
    double t;
    int edge;   // edge-slot index
    int other;  // partner site
  };
  void insert_event(int edge, double t);
  void remove_event(int edge, double t);
  const std::vector<SiteEvent>& incident(int s) const { return incident_[s]; }

  const LatticeTorus& lat_;
  double T_, theta_;
  LoopConfig cfg_;
  std::vector<std::vector<SiteEvent>> incident_;
  int loop_count_ = 0;
  std::uint64_t accepted_ = 0, proposed_ = 0;
  std::mt19937_64 rng_;
};

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::int64_t n_samples = 0;
  double autocorrelation_time = 0;
  std::uint64_t seed = 0;
};

/// Blocking (log-2 binning) error analysis of a correlated series.
McEstimate blocking_analysis(const std::vector<double>& series, std::uint64_t seed);

/// Effective sigma for dictionary z-scores: the blocking error with a 1/n
/// binomial resolution floor (saturated indicator series have zero sample
/// variance).
double dictionary_sigma(const McEstimate& est);

/// P[E_{0,e1}]: origin and its +e1 neighbour on the same loop at time 0.
McEstimate estimate_event(const LatticeTorus& lat, double T, std::int64_t sweeps,
                          std::int64_t thermalization, std::uint64_t seed,
                          double theta = 3.0);

/// Independent chains, deterministic given the seed list.
McEstimate estimate_event_chains(const LatticeTorus& lat, double T, std::int64_t sweeps,
                                 std::int64_t thermalization,
                                 const std::vector<std::uint64_t>& seeds, double theta = 3.0,
                                 int threads = 1);

struct CalibrationPoint {
  double c, chi2;
  std::vector<double> mc_p, ed_p, sigma;  // per beta
};

struct CalibrationResult {
  double c = 0;                 // selected scale, T = c * beta
  bool consistent = false;      // all betas matched within tolerance at c
  std::vector<double> betas;
  std::vector<CalibrationPoint> scan;
};

/// Scans c over a grid on the two-site lattice and selects the value making
/// (9/2) rho_ED(e1) equal the MC estimate of P across betas.
CalibrationResult calibrate_time_scale(const LatticeTorus& lat2, std::span<const double> betas,
                                       std::span<const double> c_grid, std::int64_t sweeps,
                                       std::uint64_t seed, double theta = 3.0, int threads = 1);

/// Exact P[E_{0,e1}] on the two-site (doubled-edge) lattice: all bars join
/// the same pair of circles, so the configuration weight depends only on the
/// event count and P = (e^{2 T theta} - 1)/(e^{2 T theta} + theta^2 - 1).
double two_site_event_probability(double T, double theta = 3.0);

}  // namespace nematic
