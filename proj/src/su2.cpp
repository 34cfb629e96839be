#include "nematic/su2.hpp"

#include <cmath>
#include <stdexcept>

#include "nematic/lattice.hpp"

namespace nematic {

bool Operator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() < tol;
}

namespace {

void require_compatible(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
  if (a.lattice_id != b.lattice_id)
    throw std::invalid_argument("operators act on different lattices");
}

std::vector<std::int64_t> site_strides(const LatticeTorus& lat, int q) {
  int n = lat.n_sites();
  std::vector<std::int64_t> stride(n);
  std::int64_t s = 1;
  for (int i = n - 1; i >= 0; --i) {  // site 0 = most significant digit
    stride[i] = s;
    s *= q;
  }
  return stride;
}

}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
  require_compatible(a, b);
  return {a.mat + b.mat, a.lattice_id};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_compatible(a, b);
  return {a.mat - b.mat, a.lattice_id};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_compatible(a, b);
  return {a.mat * b.mat, a.lattice_id};
}

Operator operator*(Cplx s, const Operator& a) { return {s * a.mat, a.lattice_id}; }

const Mat& SpinSet::component(int a) const {
  switch (a) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::invalid_argument("spin component index must be 1, 2 or 3");
  }
}

SpinSet spin_matrices(double spin) {
  double two_s = 2.0 * spin;
  if (two_s < 0.999 || std::abs(two_s - std::round(two_s)) > 1e-9)
    throw std::invalid_argument("spin must be a positive half-integer");
  int n = static_cast<int>(std::round(two_s)) + 1;
  double S = spin;

  Mat sp = Mat::Zero(n, n);  // raising operator, basis m = S, S-1, ..., -S
  for (int i = 0; i + 1 < n; ++i) {
    double m = S - (i + 1);
    sp(i, i + 1) = std::sqrt(S * (S + 1) - m * (m + 1));
  }
  Mat sm = sp.adjoint();
  SpinSet out;
  out.spin = spin;
  out.s1 = (sp + sm) / 2.0;
  out.s2 = (sp - sm) / Cplx(0, 2);
  out.s3 = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) out.s3(i, i) = S - i;
  return out;
}

Operator embed_site(const LatticeTorus& lat, int x, const Mat& local) {
  if (x < 0 || x >= lat.n_sites()) throw std::invalid_argument("site outside lattice");
  if (local.rows() != local.cols()) throw std::invalid_argument("local matrix not square");
  int q = static_cast<int>(local.rows());
  std::int64_t dim = lat.hilbert_dim(q);
  auto stride = site_strides(lat, q);

  Mat out = Mat::Zero(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    int dx = static_cast<int>((j / stride[x]) % q);
    std::int64_t base = j - static_cast<std::int64_t>(dx) * stride[x];
    for (int ax = 0; ax < q; ++ax) {
      Cplx val = local(ax, dx);
      if (val != Cplx(0)) out(base + static_cast<std::int64_t>(ax) * stride[x], j) += val;
    }
  }
  return {std::move(out), lat.id()};
}

Operator embed_pair(const LatticeTorus& lat, int x, int y, const Mat& local) {
  if (x == y) throw std::invalid_argument("embed_pair requires distinct sites");
  if (x < 0 || x >= lat.n_sites() || y < 0 || y >= lat.n_sites())
    throw std::invalid_argument("site outside lattice");
  int q2 = static_cast<int>(local.rows());
  int q = static_cast<int>(std::round(std::sqrt(double(q2))));
  if (q * q != q2 || local.cols() != q2)
    throw std::invalid_argument("pair matrix must be (q^2) x (q^2)");
  std::int64_t dim = lat.hilbert_dim(q);
  auto stride = site_strides(lat, q);

  Mat out = Mat::Zero(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    int dx = static_cast<int>((j / stride[x]) % q);
    int dy = static_cast<int>((j / stride[y]) % q);
    std::int64_t base = j - static_cast<std::int64_t>(dx) * stride[x] -
                        static_cast<std::int64_t>(dy) * stride[y];
    int col = dx * q + dy;  // local index: factor x fast.. x is first factor
    for (int ax = 0; ax < q; ++ax)
      for (int by = 0; by < q; ++by) {
        Cplx val = local(ax * q + by, col);
        if (val != Cplx(0))
          out(base + static_cast<std::int64_t>(ax) * stride[x] +
                  static_cast<std::int64_t>(by) * stride[y],
              j) += val;
      }
  }
  return {std::move(out), lat.id()};
}

Operator embed_two(const LatticeTorus& lat, int x, const Mat& a, int y, const Mat& b) {
  Mat local = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      local.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return embed_pair(lat, x, y, local);
}

Operator commutator(const Operator& A, const Operator& B) {
  require_compatible(A, B);
  return {A.mat * B.mat - B.mat * A.mat, A.lattice_id};
}

Operator identity_op(const LatticeTorus& lat) {
  std::int64_t dim = lat.hilbert_dim();
  return {Mat::Identity(dim, dim), lat.id()};
}

Operator zero_op(const LatticeTorus& lat) {
  std::int64_t dim = lat.hilbert_dim();
  return {Mat::Zero(dim, dim), lat.id()};
}

}  // namespace nematic
