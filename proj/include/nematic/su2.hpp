#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace nematic {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Absolute tolerance for exact operator identities throughout the toolkit.
inline constexpr double kIdentityTol = 1e-10;

class LatticeTorus;

/// Dense operator on the full lattice Hilbert space, tagged with the
/// lattice it acts on (lattice_id = -1 for detached matrices).
struct Operator {
  Mat mat;
  std::int64_t lattice_id = -1;

  Operator() = default;
  Operator(Mat m, std::int64_t id) : mat(std::move(m)), lattice_id(id) {}

  Eigen::Index dim() const { return mat.rows(); }
  bool is_hermitian(double tol = 1e-12) const;
  double max_norm() const { return mat.cwiseAbs().maxCoeff(); }
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Cplx s, const Operator& a);

/// Spin matrices S^1, S^2, S^3 of the (2S+1)-dimensional irreducible
/// representation, built from ladder operators. For S = 1 they equal the
/// standard real/imaginary matrices with 1/sqrt(2) entries.
struct SpinSet {
  double spin;
  Mat s1, s2, s3;
  int dim() const { return static_cast<int>(s1.rows()); }
  const Mat& component(int a) const;  // a in {1,2,3}
};

/// Throws std::invalid_argument unless 2S is a positive integer.
SpinSet spin_matrices(double spin);

/// Kronecker embedding of a single-site matrix at site x; identity on all
/// other factors. Site order is the lattice's canonical enumeration, first
/// site = first (most significant) tensor factor.
Operator embed_site(const LatticeTorus& lat, int x, const Mat& local);

/// Two-site embedding a ⊗ b at sites (x, y), x != y.
Operator embed_two(const LatticeTorus& lat, int x, const Mat& a, int y, const Mat& b);

/// Embedding of a general q^2 x q^2 matrix acting on the pair of factors
/// (x, y), with x the leading local factor.
Operator embed_pair(const LatticeTorus& lat, int x, int y, const Mat& local);

Operator commutator(const Operator& A, const Operator& B);

Operator identity_op(const LatticeTorus& lat);
Operator zero_op(const LatticeTorus& lat);

}  // namespace nematic
