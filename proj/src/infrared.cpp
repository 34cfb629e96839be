#include "nematic/infrared.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nematic/parallel.hpp"
#include "nematic/thermal.hpp"

namespace nematic {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(eps(k+pi)/eps(k)) (d^{-1} sum cos k_i)_+ from the per-axis cosines.
inline double integrand_from_cos(const double* c, int d) {
  double sminus = 0, splus = 0;
  for (int i = 0; i < d; ++i) {
    sminus += 1.0 - c[i];
    splus += 1.0 + c[i];
  }
  double w = (splus - sminus) / (2.0 * d);
  if (w <= 0.0 || sminus <= 0.0) return 0.0;
  return std::sqrt(splus / sminus) * w;
}

// Deterministic chunked sum: per-chunk Kahan accumulation into an indexed
// buffer, then sequential pairwise reduction; identical for any thread count.
double reduce_pairwise(std::vector<double>& parts) {
  for (std::size_t width = 1; width < parts.size(); width *= 2)
    for (std::size_t i = 0; i + width < parts.size(); i += 2 * width) parts[i] += parts[i + width];
  return parts.empty() ? 0.0 : parts[0];
}

double midpoint_sum(int d, std::int64_t n, int threads) {
  // cosine values repeat per axis: cache the n midpoints once
  std::vector<double> ctab(n);
  for (std::int64_t j = 0; j < n; ++j) ctab[j] = std::cos(-kPi + (j + 0.5) * (2.0 * kPi / n));

  std::int64_t outer = 1;
  for (int i = 0; i < d - 1; ++i) outer *= n;
  const std::int64_t n_chunks = std::min<std::int64_t>(outer, 4096);
  std::vector<double> parts(n_chunks, 0.0);

  parallel_for(n_chunks, threads, [&](std::int64_t chunk) {
    std::int64_t lo = outer * chunk / n_chunks;
    std::int64_t hi = outer * (chunk + 1) / n_chunks;
    double sum = 0.0, comp = 0.0;
    std::vector<double> c(d);
    for (std::int64_t o = lo; o < hi; ++o) {
      std::int64_t r = o;
      for (int i = d - 2; i >= 0; --i) {
        c[i] = ctab[r % n];
        r /= n;
      }
      for (std::int64_t j = 0; j < n; ++j) {
        c[d - 1] = ctab[j];
        double y = integrand_from_cos(c.data(), d) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
    }
    parts[chunk] = sum;
  });
  double total = reduce_pairwise(parts);
  double npts = std::pow(static_cast<double>(n), d);
  return total / npts;
}

/// Sobol direction numbers (first dimension is van der Corput); enough rows
/// for the k-space dimensions used here.
struct SobolSpec {
  int s;
  unsigned a;
  unsigned m[8];
};
constexpr SobolSpec kSobol[] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
};

class Sobol {
 public:
  static constexpr int kBits = 32;

  explicit Sobol(int d) : d_(d), v_(d) {
    if (d < 1 || d > 1 + static_cast<int>(std::size(kSobol)))
      throw std::invalid_argument("Sobol dimension unsupported");
    for (int dim = 0; dim < d; ++dim) {
      auto& v = v_[dim];
      v.resize(kBits);
      if (dim == 0) {
        for (int k = 0; k < kBits; ++k) v[k] = 1u << (kBits - 1 - k);
        continue;
      }
      const SobolSpec& sp = kSobol[dim - 1];
      std::vector<unsigned> m(sp.m, sp.m + sp.s);
      m.resize(kBits);
      for (int k = sp.s; k < kBits; ++k) {
        unsigned mk = m[k - sp.s] ^ (m[k - sp.s] << sp.s);
        for (int i = 1; i < sp.s; ++i)
          if ((sp.a >> (sp.s - 1 - i)) & 1u) mk ^= m[k - i] << i;
        m[k] = mk;
      }
      for (int k = 0; k < kBits; ++k) v[k] = m[k] << (kBits - 1 - k);
    }
  }

  /// j-th point by direct binary expansion (random access, thread safe).
  void point(std::uint64_t j, const std::vector<unsigned>& shift, double* out) const {
    for (int dim = 0; dim < d_; ++dim) {
      unsigned x = shift[dim];
      std::uint64_t jj = j;
      int k = 0;
      while (jj) {
        if (jj & 1) x ^= v_[dim][k];
        jj >>= 1;
        ++k;
      }
      out[dim] = (x + 0.5) / 4294967296.0;  // (x + 1/2) 2^-32, in (0,1)
    }
  }

 private:
  int d_;
  std::vector<std::vector<unsigned>> v_;
};

double qmc_pass(const Sobol& sob, int d, std::int64_t n, const std::vector<unsigned>& shift,
                int threads) {
  const std::int64_t n_chunks = std::min<std::int64_t>(n, 1024);
  std::vector<double> parts(n_chunks, 0.0);
  parallel_for(n_chunks, threads, [&](std::int64_t chunk) {
    std::int64_t lo = n * chunk / n_chunks;
    std::int64_t hi = n * (chunk + 1) / n_chunks;
    double sum = 0.0, comp = 0.0;
    std::vector<double> u(d), c(d);
    for (std::int64_t j = lo; j < hi; ++j) {
      sob.point(static_cast<std::uint64_t>(j), shift, u.data());
      for (int i = 0; i < d; ++i) c[i] = std::cos((2.0 * u[i] - 1.0) * kPi);
      double y = integrand_from_cos(c.data(), d) - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    parts[chunk] = sum;
  });
  return reduce_pairwise(parts) / static_cast<double>(n);
}

}  // namespace

std::int64_t default_budget(int d, QuadMethod method) {
  if (method == QuadMethod::MonteCarlo) return d >= 6 ? (1 << 22) : (1 << 20);
  switch (d) {
    case 3: return 64LL * 64 * 64;
    case 4: return 40LL * 40 * 40 * 40;
    case 5: return 24LL * 24 * 24 * 24 * 24;
    case 6: return 16LL * 16 * 16 * 16 * 16 * 16;
    case 7: {
      std::int64_t n = 12, t = 1;
      for (int i = 0; i < 7; ++i) t *= n;
      return t;
    }
    default: {
      std::int64_t t = 1;
      for (int i = 0; i < d; ++i) t *= 10;
      return t;
    }
  }
}

QuadratureResult compute_Id(int d, QuadMethod method, std::int64_t budget, int threads,
                            std::uint64_t seed) {
  if (d < 3)
    throw std::invalid_argument("I_d requires d >= 3 (the bound's 1/(2 beta eps) term diverges below)");
  if (budget <= 0) budget = default_budget(d, method);

  QuadratureResult out;
  out.d = d;
  if (method == QuadMethod::TensorGrid) {
    out.method = "tensor-grid";
    std::int64_t n = std::llround(std::pow(static_cast<double>(budget), 1.0 / d));
    n = std::max<std::int64_t>(8, n - n % 4);  // three nested refinements n/4, n/2, n
    for (std::int64_t nn : {n / 4, n / 2, n}) {
      out.refinements.push_back(midpoint_sum(d, nn, threads));
      out.n_points += static_cast<std::int64_t>(std::llround(std::pow(double(nn), d)));
    }
    out.value = out.refinements.back();
    out.error_estimate =
        std::max(std::abs(out.refinements[2] - out.refinements[1]), 1e-12);
  } else {
    out.method = "monte-carlo";
    const int shifts = 3;
    Sobol sob(d);
    std::mt19937_64 rng(seed);
    std::vector<double> vals;
    for (int s = 0; s < shifts; ++s) {
      std::vector<unsigned> shift(d);
      for (auto& x : shift) x = static_cast<unsigned>(rng());
      vals.push_back(qmc_pass(sob, d, budget, shift, threads));
      out.n_points += budget;
    }
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= shifts;
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= (shifts - 1);
    out.value = mean;
    out.error_estimate = std::max(std::sqrt(var / shifts), 1e-12);
    out.refinements = vals;
  }
  return out;
}

BoundReport lower_bound(double P, int d, const QuadratureResult& Id) {
  if (P <= 0.0 || P > 1.0) throw std::invalid_argument("P must lie in (0, 1]");
  BoundReport rep;
  rep.d = d;
  rep.P_lower = P;
  rep.Id = Id;
  double sp = std::sqrt(P);
  rep.bound_value = sp * ((2.0 / 9.0) * sp - Id.value / std::sqrt(3.0));
  double err = sp * Id.error_estimate / std::sqrt(3.0);
  if (rep.bound_value > 3.0 * err)
    rep.positivity = Positivity::Positive;
  else if (rep.bound_value < -3.0 * err)
    rep.positivity = Positivity::Negative;
  else
    rep.positivity = Positivity::Inconclusive;
  return rep;
}

ThresholdResult threshold_dimension(double P, int d_max, std::int64_t budget, int threads) {
  ThresholdResult res;
  for (int d = 3; d <= d_max; ++d) {
    QuadMethod method = d <= 5 ? QuadMethod::TensorGrid : QuadMethod::MonteCarlo;
    QuadratureResult Id = compute_Id(d, method, budget, threads);
    BoundReport rep = lower_bound(P, d, Id);
    res.scan.push_back(rep);
    if (rep.positivity == Positivity::Positive) {
      res.d = d;
      res.conclusive = true;
      return res;
    }
    if (rep.positivity == Positivity::Inconclusive) {
      res.conclusive = false;  // never round a within-error sign
      return res;
    }
  }
  res.conclusive = false;
  return res;
}

double finite_volume_bound(const LatticeTorus& lat, double beta, double rho_e1,
                           double cross_term) {
  double sum = 0;
  const auto& grid = lat.fourier();
  double root_cross = std::sqrt(std::max(0.0, cross_term));
  for (int ik : grid.nonzero_modes) {
    const auto& k = grid.points[ik];
    double eps_k = grid.eps_values[ik];
    std::vector<double> kp(k);
    for (double& ki : kp) ki += kPi;
    double cw = 0;
    for (double ki : k) cw += std::cos(ki);
    cw /= lat.dim();
    sum += root_cross * std::sqrt(epsilon(kp) / eps_k) * std::max(0.0, cw) +
           1.0 / (2.0 * beta * eps_k);
  }
  return rho_e1 - sum / lat.n_sites();
}

std::vector<J1ScanRow> j1_margin_scan(const LatticeTorus& lat, double beta,
                                      std::span<const double> J1_grid) {
  std::vector<J1ScanRow> rows;
  double bound0 = std::numeric_limits<double>::quiet_NaN();
  for (double J1 : J1_grid) {
    if (J1 > 0) throw std::invalid_argument("scan requires J1 <= 0");
    ThermalContext ctx(lat, beta, J1);
    const auto& grid = lat.fourier();
    double sum = 0;
    for (int ik : grid.nonzero_modes) {
      const auto& k = grid.points[ik];
      double eps_k = grid.eps_values[ik];
      Operator Ak = fourier_observable(lat, k);
      Operator Adag{Ak.mat.adjoint(), Ak.lattice_id};
      Operator inner = commutator(Cplx(beta) * ctx.H, Ak);
      double c = ctx.state.gibbs(commutator(Adag, inner)).real();
      double cw = 0;
      for (double ki : k) cw += std::cos(ki);
      cw /= lat.dim();
      sum += std::max(0.0, cw) * 0.5 *
                 std::sqrt(std::max(0.0, c) / (2.0 * beta * eps_k * lat.n_sites())) +
             1.0 / (2.0 * beta * eps_k);
    }
    J1ScanRow row;
    row.J1 = J1;
    row.rho_e1 = ctx.rho_e1();
    row.cross_term = ctx.cross_term();
    row.bound = row.rho_e1 - sum / lat.n_sites();
    if (std::isnan(bound0)) {
      if (J1 == 0.0) bound0 = row.bound;
    }
    row.bound_delta = std::isnan(bound0) ? 0.0 : row.bound - bound0;
    rows.push_back(row);
  }
  return rows;
}

double finite_lattice_Id_sum(int d, int L) {
  // midpoint grid with n = L coincides with the finite-lattice k-sum shifted
  // off zero
  return midpoint_sum(d, L, 1);
}

}  // namespace nematic
