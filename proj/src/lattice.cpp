#include "nematic/lattice.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nematic {

namespace {
std::atomic<std::int64_t> g_lattice_counter{0};
constexpr double kPi = std::numbers::pi;
}  // namespace

double epsilon(std::span<const double> k) {
  double s = 0;
  for (double ki : k) s += 1.0 - std::cos(ki);
  return 2.0 * s;
}

LatticeTorus LatticeTorus::build(int d, int L) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("side length must be even and >= 2 (bipartition and edge reflections)");

  LatticeTorus lat;
  lat.d_ = d;
  lat.L_ = L;
  lat.id_ = g_lattice_counter++;

  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) n *= L;
  if (n > (1 << 20)) throw std::invalid_argument("lattice too large");

  // Sites in lexicographic coordinate order over {-L/2+1, ..., L/2}^d.
  lat.strides_.assign(d, 1);
  for (int i = d - 2; i >= 0; --i) lat.strides_[i] = lat.strides_[i + 1] * L;
  lat.sites_.reserve(n);
  for (std::int64_t idx = 0; idx < n; ++idx) {
    std::vector<int> c(d);
    std::int64_t r = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<int>(r / lat.strides_[i]) - L / 2 + 1;
      r %= lat.strides_[i];
    }
    lat.sites_.push_back(std::move(c));
  }

  lat.sub_b_.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    int s = 0;
    for (int c : lat.sites_[i]) s += c;
    lat.sub_b_[i] = ((s % 2) + 2) % 2 == 1;
  }

  std::vector<int> orig(d, 0);
  lat.origin_ = lat.index_of(orig);

  lat.edges_.reserve(static_cast<std::size_t>(d) * n);
  for (int i = 0; i < n; ++i)
    for (int ax = 0; ax < d; ++ax) lat.edges_.push_back({i, lat.neighbour(i, ax, +1), ax});

  // Fourier grid (2 pi / L) {-L/2+1, ..., L/2}^d in the same lexicographic order.
  lat.fourier_.points.reserve(n);
  for (std::int64_t idx = 0; idx < n; ++idx) {
    std::vector<double> k(d);
    for (int i = 0; i < d; ++i) k[i] = 2.0 * kPi * lat.sites_[idx][i] / L;
    lat.fourier_.eps_values.push_back(epsilon(k));
    bool zero = true;
    for (double ki : k) zero = zero && std::abs(ki) < 1e-14;
    if (zero)
      lat.fourier_.zero_index = static_cast<int>(idx);
    else
      lat.fourier_.nonzero_modes.push_back(static_cast<int>(idx));
    lat.fourier_.points.push_back(std::move(k));
  }
  return lat;
}

int LatticeTorus::index_of(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != d_) throw std::invalid_argument("coordinate arity mismatch");
  std::int64_t idx = 0;
  for (int i = 0; i < d_; ++i) {
    int c = coords[i];
    while (c > L_ / 2) c -= L_;
    while (c <= -L_ / 2) c += L_;
    idx += static_cast<std::int64_t>(c + L_ / 2 - 1) * strides_[i];
  }
  return static_cast<int>(idx);
}

int LatticeTorus::neighbour(int i, int axis, int dir) const {
  std::vector<int> c = sites_[i];
  c[axis] += dir;
  return index_of(c);
}

double LatticeTorus::laplacian_form(std::span<const double> f, std::span<const double> g) const {
  if (static_cast<int>(f.size()) != n_sites() || static_cast<int>(g.size()) != n_sites())
    throw std::invalid_argument("field size mismatch");
  double s = 0;
  for (const Edge& e : edges_) s += (f[e.a] - f[e.b]) * (g[e.a] - g[e.b]);
  return s;
}

std::vector<double> LatticeTorus::laplacian(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != n_sites()) throw std::invalid_argument("field size mismatch");
  std::vector<double> out(v.size(), 0.0);
  for (const Edge& e : edges_) {
    out[e.a] += v[e.b] - v[e.a];
    out[e.b] += v[e.a] - v[e.b];
  }
  return out;
}

Eigen::MatrixXd LatticeTorus::neg_laplacian_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_sites(), n_sites());
  for (const Edge& e : edges_) {
    m(e.a, e.a) += 1;
    m(e.b, e.b) += 1;
    m(e.a, e.b) -= 1;
    m(e.b, e.a) -= 1;
  }
  return m;
}

std::vector<Reflection> LatticeTorus::reflections() const {
  // Edge midplanes at coordinate offsets m + 1/2; the plane at o and the one
  // at o + L/2 induce the same involution, so there are L/2 per axis.
  std::vector<Reflection> out;
  for (int ax = 0; ax < d_; ++ax) {
    for (int m = 0; m < L_ / 2; ++m) {
      Reflection r;
      r.axis = ax;
      r.offset = m + 0.5;
      r.map.resize(n_sites());
      for (int i = 0; i < n_sites(); ++i) {
        std::vector<int> c = sites_[i];
        c[ax] = static_cast<int>(std::lround(2 * r.offset)) - c[ax];
        r.map[i] = index_of(c);
      }
      for (int i = 0; i < n_sites(); ++i) {
        // signed torus distance from the plane decides the half
        double sd = std::fmod(sites_[i][ax] - r.offset + 2.0 * L_, static_cast<double>(L_));
        if (sd > L_ / 2.0) sd -= L_;
        (sd > 0 ? r.half2 : r.half1).push_back(i);
      }
      std::vector<char> in1(n_sites(), 0);
      for (int i : r.half1) in1[i] = 1;
      for (const Edge& e : edges_) {
        if (e.axis != ax) continue;
        if (in1[e.a] != in1[e.b]) r.crossing.emplace_back(in1[e.a] ? e.a : e.b, in1[e.a] ? e.b : e.a);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

int LatticeTorus::fourier_index(std::span<const double> k) const {
  if (static_cast<int>(k.size()) != d_) throw std::invalid_argument("k arity mismatch");
  std::vector<int> m(d_);
  for (int i = 0; i < d_; ++i) {
    double raw = k[i] * L_ / (2.0 * kPi);
    double snapped = std::round(raw);
    if (std::abs(raw - snapped) > 1e-9) throw std::invalid_argument("k not on the Fourier grid");
    int c = static_cast<int>(snapped);
    while (c > L_ / 2) c -= L_;
    while (c <= -L_ / 2) c += L_;
    m[i] = c;
  }
  return index_of(m);
}

std::int64_t LatticeTorus::hilbert_dim(int local_dim) const {
  std::int64_t dim = 1;
  for (int i = 0; i < n_sites(); ++i) {
    if (dim > (std::int64_t{1} << 62) / local_dim) throw std::overflow_error("Hilbert space too large");
    dim *= local_dim;
  }
  return dim;
}

std::vector<std::complex<double>> fourier_forward(const LatticeTorus& lat,
                                                  std::span<const std::complex<double>> f) {
  const auto& grid = lat.fourier();
  std::vector<std::complex<double>> out(grid.points.size());
  for (std::size_t ik = 0; ik < grid.points.size(); ++ik) {
    std::complex<double> acc = 0;
    for (int x = 0; x < lat.n_sites(); ++x) {
      double phase = 0;
      for (int i = 0; i < lat.dim(); ++i) phase += grid.points[ik][i] * lat.site(x)[i];
      acc += std::polar(1.0, -phase) * f[x];
    }
    out[ik] = acc;
  }
  return out;
}

std::vector<std::complex<double>> fourier_inverse(const LatticeTorus& lat,
                                                  std::span<const std::complex<double>> fhat) {
  const auto& grid = lat.fourier();
  std::vector<std::complex<double>> out(lat.n_sites());
  for (int x = 0; x < lat.n_sites(); ++x) {
    std::complex<double> acc = 0;
    for (std::size_t ik = 0; ik < grid.points.size(); ++ik) {
      double phase = 0;
      for (int i = 0; i < lat.dim(); ++i) phase += grid.points[ik][i] * lat.site(x)[i];
      acc += std::polar(1.0, phase) * fhat[ik];
    }
    out[x] = acc / static_cast<double>(lat.n_sites());
  }
  return out;
}

}  // namespace nematic
