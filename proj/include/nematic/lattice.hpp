#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nematic {

/// Directed edge slot (site, +axis). For L = 2 the two slots between a pair
/// of sites are both kept, so |edges| = d*L^d always and the quadratic form
/// below has exactly the eigenvalues eps(k).
struct Edge {
  int a, b;  // site indices, b = neighbour of a in +axis direction
  int axis;
};

/// Reflection across an edge midplane (axis, half-integer offset). map is an
/// involution on site indices; crossing lists the cut edge slots as (x, y)
/// with x in half1, y in half2.
struct Reflection {
  int axis;
  double offset;
  std::vector<int> map;
  std::vector<int> half1, half2;
  std::vector<std::pair<int, int>> crossing;
};

struct FourierGrid {
  std::vector<std::vector<double>> points;  // all k in Lambda*
  std::vector<double> eps_values;           // eps(k) per point
  std::vector<int> nonzero_modes;           // indices of k != 0
  int zero_index = -1;
};

double epsilon(std::span<const double> k);

/// Periodic box {-L/2+1, ..., L/2}^d with nearest-neighbour edges.
class LatticeTorus {
 public:
  static LatticeTorus build(int d, int L);

  int dim() const { return d_; }
  int side() const { return L_; }
  int n_sites() const { return static_cast<int>(sites_.size()); }
  std::int64_t id() const { return id_; }

  const std::vector<std::vector<int>>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& site(int i) const { return sites_[i]; }

  int index_of(std::span<const int> coords) const;  // wraps coordinates
  int origin() const { return origin_; }
  /// Neighbour of site i in +axis (dir=+1) or -axis (dir=-1).
  int neighbour(int i, int axis, int dir = +1) const;
  /// true for the B sublattice (odd coordinate sum).
  bool sublattice_b(int i) const { return sub_b_[i]; }

  /// (f, -Delta g) = sum over edge slots of (f_x - f_y)(g_x - g_y).
  double laplacian_form(std::span<const double> f, std::span<const double> g) const;
  /// (Delta v)_x = sum over incident edge slots of (v_y - v_x).
  std::vector<double> laplacian(std::span<const double> v) const;
  Eigen::MatrixXd neg_laplacian_matrix() const;

  /// All d*L/2 distinct reflections across edge midplanes.
  std::vector<Reflection> reflections() const;

  const FourierGrid& fourier() const { return fourier_; }
  /// Index of a k-point in the Fourier grid; throws if off-grid.
  int fourier_index(std::span<const double> k) const;

  /// Hilbert-space dimension (2S+1)^{|Lambda|}; throws std::overflow_error
  /// if it exceeds 2^62.
  std::int64_t hilbert_dim(int local_dim = 3) const;

 private:
  LatticeTorus() = default;
  int d_ = 0, L_ = 0;
  std::int64_t id_ = -1;
  int origin_ = 0;
  std::vector<std::vector<int>> sites_;
  std::vector<Edge> edges_;
  std::vector<bool> sub_b_;
  std::vector<std::int64_t> strides_;  // mixed-radix index helpers
  FourierGrid fourier_;
};

/// Forward transform f_hat(k) = sum_x e^{-ikx} f(x) on the lattice grid.
std::vector<std::complex<double>> fourier_forward(const LatticeTorus& lat,
                                                  std::span<const std::complex<double>> f);
std::vector<std::complex<double>> fourier_inverse(const LatticeTorus& lat,
                                                  std::span<const std::complex<double>> fhat);

}  // namespace nematic
