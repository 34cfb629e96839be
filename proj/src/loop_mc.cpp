#include "nematic/loop_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nematic/model.hpp"
#include "nematic/parallel.hpp"
#include "nematic/thermal.hpp"

namespace nematic {

std::size_t LoopConfig::n_events() const {
  std::size_t n = 0;
  for (const auto& e : events) n += e.size();
  return n;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int LoopDecomposition::loop_at(int site, double t) const {
  const auto& ts = site_times[site];
  int m = static_cast<int>(ts.size());
  int arc = 0;
  if (m > 0) {
    // arc k spans (ts[k], ts[k+1]) cyclically
    int j = static_cast<int>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    arc = (j - 1 + m) % m;
  }
  return arc_loop[arc_offset[site] + arc];
}

bool LoopDecomposition::same_loop(int a, int b, double t) const {
  return loop_at(a, t) == loop_at(b, t);
}

LoopDecomposition trace_loops(const LoopConfig& cfg) {
  if (!cfg.lat) throw std::invalid_argument("config has no lattice");
  const LatticeTorus& lat = *cfg.lat;
  int ns = lat.n_sites();
  if (static_cast<int>(cfg.events.size()) != static_cast<int>(lat.edges().size()))
    throw std::invalid_argument("event list arity mismatch");

  LoopDecomposition dec;
  dec.site_times.assign(ns, {});
  struct Ev {
    double t;
    int site_a, site_b;
    int ja = -1, jb = -1;  // positions in the per-site sorted lists
  };
  std::vector<Ev> evs;
  for (std::size_t e = 0; e < cfg.events.size(); ++e) {
    const Edge& ed = lat.edges()[e];
    double prev = -1;
    for (double t : cfg.events[e]) {
      if (t < 0 || t >= cfg.T) throw std::invalid_argument("event time outside [0, T)");
      if (t <= prev) throw std::invalid_argument("event times must be strictly sorted");
      prev = t;
      evs.push_back({t, ed.a, ed.b});
      dec.site_times[ed.a].push_back(t);
      dec.site_times[ed.b].push_back(t);
    }
  }
  for (auto& ts : dec.site_times) std::sort(ts.begin(), ts.end());
  for (auto& ev : evs) {
    const auto& ta = dec.site_times[ev.site_a];
    const auto& tb = dec.site_times[ev.site_b];
    ev.ja = static_cast<int>(std::lower_bound(ta.begin(), ta.end(), ev.t) - ta.begin());
    ev.jb = static_cast<int>(std::lower_bound(tb.begin(), tb.end(), ev.t) - tb.begin());
    if (ta[ev.ja] != ev.t || tb[ev.jb] != ev.t)
      throw std::logic_error("event time lookup failed (duplicate times?)");
  }

  dec.arc_offset.resize(ns);
  int total = 0;
  for (int s = 0; s < ns; ++s) {
    dec.arc_offset[s] = total;
    total += std::max<std::size_t>(1, dec.site_times[s].size());
  }

  UnionFind uf(total);
  for (const auto& ev : evs) {
    int ma = static_cast<int>(dec.site_times[ev.site_a].size());
    int mb = static_cast<int>(dec.site_times[ev.site_b].size());
    // below the bar: arcs ending at t; above: arcs starting at t
    int below_a = dec.arc_offset[ev.site_a] + (ev.ja - 1 + ma) % ma;
    int below_b = dec.arc_offset[ev.site_b] + (ev.jb - 1 + mb) % mb;
    int above_a = dec.arc_offset[ev.site_a] + ev.ja;
    int above_b = dec.arc_offset[ev.site_b] + ev.jb;
    uf.unite(below_a, below_b);
    uf.unite(above_a, above_b);
  }

  dec.arc_loop.resize(total);
  std::vector<int> label(total, -1);
  int count = 0;
  for (int a = 0; a < total; ++a) {
    int r = uf.find(a);
    if (label[r] < 0) label[r] = count++;
    dec.arc_loop[a] = label[r];
  }
  dec.count = count;
  return dec;
}

LoopSampler::LoopSampler(const LatticeTorus& lat, double T, double theta, std::uint64_t seed)
    : lat_(lat), T_(T), theta_(theta), rng_(seed) {
  if (T <= 0) throw std::invalid_argument("time period must be positive");
  if (theta <= 0) throw std::invalid_argument("loop fugacity must be positive");
  cfg_.lat = &lat_;
  cfg_.T = T;
  cfg_.events.assign(lat.edges().size(), {});
  incident_.assign(lat.n_sites(), {});
  loop_count_ = lat.n_sites();  // empty configuration: one loop per site
}

void LoopSampler::insert_event(int edge, double t) {
  auto& ev = cfg_.events[edge];
  ev.insert(std::upper_bound(ev.begin(), ev.end(), t), t);
  const Edge& ed = lat_.edges()[edge];
  for (int s : {ed.a, ed.b}) {
    int other = (s == ed.a) ? ed.b : ed.a;
    auto& inc = incident_[s];
    auto it = std::upper_bound(inc.begin(), inc.end(), t,
                               [](double a, const SiteEvent& b) { return a < b.t; });
    inc.insert(it, SiteEvent{t, edge, other});
  }
}

void LoopSampler::remove_event(int edge, double t) {
  auto& ev = cfg_.events[edge];
  auto it = std::lower_bound(ev.begin(), ev.end(), t);
  if (it == ev.end() || *it != t) throw std::logic_error("event not found");
  ev.erase(it);
  const Edge& ed = lat_.edges()[edge];
  for (int s : {ed.a, ed.b}) {
    auto& inc = incident_[s];
    auto jt = std::lower_bound(inc.begin(), inc.end(), t,
                               [](const SiteEvent& a, double b) { return a.t < b; });
    while (jt != inc.end() && jt->t == t && jt->edge != edge) ++jt;
    if (jt == inc.end() || jt->t != t) throw std::logic_error("incident event not found");
    inc.erase(jt);
  }
}

bool LoopSampler::same_loop(int x, int y, double t) const {
  const auto& ix = incident_[x];
  const auto& iy = incident_[y];
  if (ix.empty() || iy.empty()) return false;  // a bare circle is its own loop
  int mx = static_cast<int>(ix.size());
  int my = static_cast<int>(iy.size());

  auto arc_at = [](const std::vector<SiteEvent>& inc, double tt) {
    int m = static_cast<int>(inc.size());
    int j = static_cast<int>(std::upper_bound(inc.begin(), inc.end(), tt,
                                              [](double a, const SiteEvent& b) { return a < b.t; }) -
                             inc.begin());
    return (j - 1 + m) % m;
  };
  auto event_pos = [](const std::vector<SiteEvent>& inc, double tt, int edge) {
    int j = static_cast<int>(std::lower_bound(inc.begin(), inc.end(), tt,
                                              [](const SiteEvent& a, double b) { return a.t < b; }) -
                             inc.begin());
    while (inc[j].t == tt && inc[j].edge != edge) ++j;
    return j;
  };

  int start_site = x, start_arc = arc_at(ix, t);
  int target_site = y, target_arc = arc_at(iy, t);

  int s = start_site, arc = start_arc, dir = +1;  // +1 = up in time
  long guard = 0;
  do {
    if (s == target_site && arc == target_arc) return true;
    const auto& inc = incident_[s];
    int m = static_cast<int>(inc.size());
    const SiteEvent& ev = (dir > 0) ? inc[(arc + 1) % m] : inc[arc];
    int u = ev.other;
    int j = event_pos(incident_[u], ev.t, ev.edge);
    int mu = static_cast<int>(incident_[u].size());
    if (dir > 0) {  // reflect downward at the partner site
      s = u;
      arc = (j - 1 + mu) % mu;
      dir = -1;
    } else {  // reflect upward
      s = u;
      arc = j;
      dir = +1;
    }
    if (++guard > 4 * static_cast<long>(cfg_.n_events()) + 8)
      throw std::logic_error("loop walk failed to close");
  } while (!(s == start_site && arc == start_arc));
  return false;
  (void)mx;
  (void)my;
}

double LoopSampler::insert_acceptance(int delta_loops, std::size_t n_before) const {
  double vol = static_cast<double>(lat_.edges().size()) * T_;
  double r = std::pow(theta_, delta_loops) * vol / static_cast<double>(n_before + 1);
  return std::min(1.0, r);
}

double LoopSampler::delete_acceptance(int delta_loops, std::size_t n_before) const {
  double vol = static_cast<double>(lat_.edges().size()) * T_;
  double r = std::pow(theta_, delta_loops) * static_cast<double>(n_before) / vol;
  return std::min(1.0, r);
}

void LoopSampler::sweep() {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int n_edges = static_cast<int>(lat_.edges().size());
  std::uniform_int_distribution<int> edge_pick(0, n_edges - 1);

  for (int step = 0; step < n_edges; ++step) {
    ++proposed_;
    std::size_t n = cfg_.n_events();
    if (unif(rng_) < 0.5) {
      int edge = edge_pick(rng_);
      double t = unif(rng_) * T_;
      const Edge& ed = lat_.edges()[edge];
      int delta = same_loop(ed.a, ed.b, t) ? +1 : -1;
      if (unif(rng_) < insert_acceptance(delta, n)) {
        insert_event(edge, t);
        loop_count_ += delta;
        ++accepted_;
      }
    } else {
      if (n == 0) continue;
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::size_t r = pick(rng_);
      int edge = 0;
      while (r >= cfg_.events[edge].size()) r -= cfg_.events[edge++].size();
      double t = cfg_.events[edge][r];
      const Edge& ed = lat_.edges()[edge];
      remove_event(edge, t);
      int delta = same_loop(ed.a, ed.b, t) ? -1 : +1;
      if (unif(rng_) < delete_acceptance(delta, n)) {
        loop_count_ += delta;
        ++accepted_;
      } else {
        insert_event(edge, t);
      }
    }
  }
}

bool LoopSampler::same_loop_time0(int site_a, int site_b) const {
  return same_loop(site_a, site_b, 0.0);
}

int LoopSampler::retrace_count() const { return trace_loops(cfg_).count; }

double dictionary_sigma(const McEstimate& est) {
  // saturated indicator series have zero sample variance; the binomial
  // resolution floor 1/n keeps z-scores meaningful there
  double floor_n = est.n_samples > 0 ? 1.0 / static_cast<double>(est.n_samples) : 1.0;
  return std::max({est.std_error, floor_n, 1e-12});
}

McEstimate blocking_analysis(const std::vector<double>& series, std::uint64_t seed) {
  McEstimate est;
  est.seed = seed;
  est.n_samples = static_cast<std::int64_t>(series.size());
  if (series.empty()) return est;
  double mean = std::accumulate(series.begin(), series.end(), 0.0) / series.size();
  est.mean = mean;
  if (series.size() < 2) return est;

  auto stderr_of = [](const std::vector<double>& xs) {
    double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0;
    for (double x : xs) var += (x - m) * (x - m);
    var /= (xs.size() - 1);
    return std::sqrt(var / xs.size());
  };

  double se_naive = stderr_of(series);
  double se_max = se_naive;
  std::vector<double> level = series;
  while (level.size() >= 64) {
    std::vector<double> next(level.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 0.5 * (level[2 * i] + level[2 * i + 1]);
    level.swap(next);
    se_max = std::max(se_max, stderr_of(level));
  }
  est.std_error = se_max;
  est.autocorrelation_time =
      se_naive > 0 ? 0.5 * (se_max * se_max) / (se_naive * se_naive) : 0.0;
  return est;
}

McEstimate estimate_event(const LatticeTorus& lat, double T, std::int64_t sweeps,
                          std::int64_t thermalization, std::uint64_t seed, double theta) {
  LoopSampler sampler(lat, T, theta, seed);
  for (std::int64_t i = 0; i < thermalization; ++i) sampler.sweep();
  int o = lat.origin();
  int nb = lat.neighbour(o, 0, +1);
  std::vector<double> series;
  series.reserve(sweeps);
  for (std::int64_t i = 0; i < sweeps; ++i) {
    sampler.sweep();
    series.push_back(sampler.same_loop_time0(o, nb) ? 1.0 : 0.0);
  }
  return blocking_analysis(series, seed);
}

McEstimate estimate_event_chains(const LatticeTorus& lat, double T, std::int64_t sweeps,
                                 std::int64_t thermalization,
                                 const std::vector<std::uint64_t>& seeds, double theta,
                                 int threads) {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  std::vector<McEstimate> chains(seeds.size());
  parallel_for(static_cast<std::int64_t>(seeds.size()), threads, [&](std::int64_t i) {
    chains[i] = estimate_event(lat, T, sweeps, thermalization, seeds[i], theta);
  });
  McEstimate out;
  out.seed = seeds[0];
  double var = 0;
  for (const auto& c : chains) {
    out.mean += c.mean;
    var += c.std_error * c.std_error;
    out.autocorrelation_time += c.autocorrelation_time;
    out.n_samples += c.n_samples;
  }
  out.mean /= chains.size();
  out.std_error = std::sqrt(var) / chains.size();
  out.autocorrelation_time /= chains.size();
  return out;
}

double two_site_event_probability(double T, double theta) {
  double z = std::expm1(2.0 * T * theta);  // e^{2 T theta} - 1
  return z / (z + theta * theta);
}

CalibrationResult calibrate_time_scale(const LatticeTorus& lat2, std::span<const double> betas,
                                       std::span<const double> c_grid, std::int64_t sweeps,
                                       std::uint64_t seed, double theta, int threads) {
  if (lat2.n_sites() != 2) throw std::invalid_argument("calibration runs on the two-site lattice");
  CalibrationResult out;
  out.betas.assign(betas.begin(), betas.end());

  // ED targets: P = (9/2) rho(e1) per beta
  std::vector<double> targets;
  for (double beta : betas) {
    ThermalContext ctx(lat2, beta);
    targets.push_back(4.5 * ctx.rho_e1());
  }

  double best_chi2 = std::numeric_limits<double>::infinity();
  for (std::size_t ic = 0; ic < c_grid.size(); ++ic) {
    CalibrationPoint pt;
    pt.c = c_grid[ic];
    pt.chi2 = 0;
    for (std::size_t ib = 0; ib < betas.size(); ++ib) {
      McEstimate est = estimate_event_chains(lat2, pt.c * betas[ib], sweeps, sweeps / 10 + 100,
                                             {seed + 1000 * ic + ib}, theta, threads);
      double sigma = dictionary_sigma(est);
      pt.mc_p.push_back(est.mean);
      pt.ed_p.push_back(targets[ib]);
      pt.sigma.push_back(est.std_error);
      double z = (est.mean - targets[ib]) / sigma;
      pt.chi2 += z * z;
    }
    if (pt.chi2 < best_chi2) {
      best_chi2 = pt.chi2;
      out.c = pt.c;
    }
    out.scan.push_back(std::move(pt));
  }
  for (const auto& pt : out.scan) {
    if (pt.c != out.c) continue;
    out.consistent = true;
    for (std::size_t ib = 0; ib < betas.size(); ++ib) {
      McEstimate proxy;
      proxy.std_error = pt.sigma[ib];
      proxy.n_samples = sweeps;
      if (std::abs(pt.mc_p[ib] - pt.ed_p[ib]) > 3.0 * dictionary_sigma(proxy))
        out.consistent = false;
    }
  }
  if (!out.consistent && best_chi2 > 1e6)
    throw std::runtime_error("no consistent time scale found: sampler inconsistent with ED");
  return out;
}

}  // namespace nematic
