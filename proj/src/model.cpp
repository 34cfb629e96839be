#include "nematic/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nematic {

namespace {

const SpinSet& spin1() {
  static const SpinSet s = spin_matrices(1.0);
  return s;
}

Mat kron_local(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat eye3() { return Mat::Identity(3, 3); }

Eigen::MatrixXd kron_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// (S1 S1 - S2 S2 + S3 S3) on one edge, 9x9.
Mat m_local() {
  const auto& sp = spin1();
  return kron_local(sp.s1, sp.s1) - kron_local(sp.s2, sp.s2) + kron_local(sp.s3, sp.s3);
}

Mat sdots_local() {
  const auto& sp = spin1();
  return kron_local(sp.s1, sp.s1) + kron_local(sp.s2, sp.s2) + kron_local(sp.s3, sp.s3);
}

Mat quadrupole3() {  // (S3)^2 - (2/3) Id
  const auto& sp = spin1();
  return sp.s3 * sp.s3 - (2.0 / 3.0) * eye3();
}

std::vector<double> fetch_field(const LatticeTorus& lat, const std::vector<double>& f,
                                const char* what) {
  if (f.empty()) return std::vector<double>(lat.n_sites(), 0.0);
  if (static_cast<int>(f.size()) != lat.n_sites())
    throw std::invalid_argument(std::string(what) + " field size mismatch");
  return f;
}

void add_field_term(Operator& H, const LatticeTorus& lat, const std::vector<double>& h) {
  Mat q = quadrupole3();
  for (int x = 0; x < lat.n_sites(); ++x)
    if (h[x] != 0.0) H = H - (Cplx(h[x]) * embed_site(lat, x, q));
}

}  // namespace

Operator build_hamiltonian(const LatticeTorus& lat, const ModelParams& p, Variant which) {
  Operator H = zero_op(lat);
  const Mat M = m_local();
  const Mat M2 = M * M;
  const Mat SS = sdots_local();
  const Mat SS2 = SS * SS;

  switch (which) {
    case Variant::J1J2: {
      Mat block = -2.0 * (p.J1 * SS + p.J2 * SS2);
      for (const Edge& e : lat.edges()) H = H + embed_pair(lat, e.a, e.b, block);
      return H;
    }
    case Variant::NematicField: {
      Mat block = -2.0 * p.J2 * SS2;
      for (const Edge& e : lat.edges()) H = H + embed_pair(lat, e.a, e.b, block);
      add_field_term(H, lat, fetch_field(lat, p.h, "h"));
      return H;
    }
    case Variant::HU: {
      Mat block = -2.0 * p.J2 * M2;
      for (const Edge& e : lat.edges()) H = H + embed_pair(lat, e.a, e.b, block);
      add_field_term(H, lat, fetch_field(lat, p.h, "h"));
      return H;
    }
    case Variant::Hv: {
      auto v = fetch_field(lat, p.v, "v");
      Mat block = -2.0 * p.J2 * M2;
      for (const Edge& e : lat.edges()) H = H + embed_pair(lat, e.a, e.b, block);
      add_field_term(H, lat, lat.laplacian(v));
      return H;
    }
    case Variant::HvPrime: {
      auto v = fetch_field(lat, p.v, "v");
      Operator Hv = build_hamiltonian(lat, p, Variant::Hv);
      double shift = 0.25 * lat.laplacian_form(v, v);
      return Hv + (Cplx(shift) * identity_op(lat));
    }
    case Variant::HtildeV: {
      if (p.J1 > 0) throw std::invalid_argument("HtildeV requires J1 <= 0");
      auto v = fetch_field(lat, p.v, "v");
      // Conjugation by U sends S.S to -M on every (A,B) edge.
      Mat block = 2.0 * p.J1 * M - 2.0 * p.J2 * M2;
      for (const Edge& e : lat.edges()) H = H + embed_pair(lat, e.a, e.b, block);
      add_field_term(H, lat, lat.laplacian(v));
      return H;
    }
  }
  throw std::logic_error("unknown variant");
}

std::array<std::array<Mat, 3>, 3> q_components(const SpinSet& spins) {
  double S = spins.spin;
  double c = S * (S + 1) / 3.0;
  int n = spins.dim();
  std::array<std::array<Mat, 3>, 3> w;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      if (a == b) {
        w[a - 1][b - 1] = spins.component(a) * spins.component(a) - c * Mat::Identity(n, n);
      } else {
        // Row-leading order with i attached to S^2; all entries real.
        Mat fa = (a == 2) ? Mat(Cplx(0, 1) * spins.component(2)) : spins.component(a);
        Mat fb = (b == 2) ? Mat(Cplx(0, 1) * spins.component(2)) : spins.component(b);
        w[a - 1][b - 1] = fa * fb;
      }
    }
  return w;
}

QMatrix q_matrix(const LatticeTorus& lat, int x) {
  auto w = q_components(spin1());
  QMatrix q;
  q.site = x;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) q.entries[a][b] = embed_site(lat, x, w[a][b]);
  return q;
}

Operator tr_product(const QMatrix& qx, const QMatrix& qy) {
  Operator acc = Cplx(0) * qx.entries[0][0];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc = acc + qx.entries[a][b] * qy.entries[a][b];
  return acc;
}

Operator tr_q(const QMatrix& q) {
  return q.entries[0][0] + q.entries[1][1] + q.entries[2][2];
}

double c_edge_constant() { return 2.0; }

Mat gamma_matrix() {
  const auto& sp = spin1();
  return 2.0 * (sp.s1 * sp.s1 - sp.s2 * sp.s2 + sp.s3 * sp.s3);
}

double square_completion_check(const LatticeTorus& lat, const ModelParams& p) {
  auto v = fetch_field(lat, p.v, "v");
  Operator direct = build_hamiltonian(lat, p, p.J1 == 0.0 ? Variant::Hv : Variant::HtildeV);

  auto w = q_components(spin1());
  const Mat I3 = eye3();
  const Mat I9 = Mat::Identity(9, 9);
  const auto& sp = spin1();

  Operator comp = zero_op(lat);
  double dirichlet = lat.laplacian_form(v, v);
  for (const Edge& e : lat.edges()) {
    Mat block = Mat::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Mat diff = kron_local(w[a][b], I3) - kron_local(I3, w[a][b]);
        if (a == 2 && b == 2) diff += 0.5 * (v[e.a] - v[e.b]) * I9;
        block += p.J2 * (diff * diff);
      }
    block -= p.J2 * 2.0 * c_edge_constant() * I9;  // - C_x - C_y
    if (p.J1 != 0.0) {
      // -J1 [(S1x-S1y)^2 - (S2x-S2y)^2 + (S3x-S3y)^2] + (J1/2)(Gamma_x + Gamma_y)
      Mat d1 = kron_local(sp.s1, I3) - kron_local(I3, sp.s1);
      Mat d2 = kron_local(sp.s2, I3) - kron_local(I3, sp.s2);
      Mat d3 = kron_local(sp.s3, I3) - kron_local(I3, sp.s3);
      block += -p.J1 * (d1 * d1 - d2 * d2 + d3 * d3);
      block += 0.5 * p.J1 * (kron_local(gamma_matrix(), I3) + kron_local(I3, gamma_matrix()));
    }
    comp = comp + embed_pair(lat, e.a, e.b, block);
  }
  comp = comp + (Cplx(-0.25 * dirichlet) * identity_op(lat));
  return (direct - comp).max_norm();
}

Operator staggered_unitary(const LatticeTorus& lat) {
  if (lat.side() % 2 != 0) throw std::invalid_argument("staggered unitary needs even L");
  const auto& sp = spin1();
  Eigen::SelfAdjointEigenSolver<Mat> es(sp.s2);
  Mat phases = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    phases(i, i) = std::polar(1.0, std::numbers::pi * es.eigenvalues()(i));
  Mat u1 = es.eigenvectors() * phases * es.eigenvectors().adjoint();

  // U = ⊗_x (u1 on B sites, identity on A sites), built by a Kronecker chain.
  Mat U = Mat::Identity(1, 1);
  for (int x = 0; x < lat.n_sites(); ++x)
    U = kron_local(U, lat.sublattice_b(x) ? u1 : eye3()).eval();
  return {std::move(U), lat.id()};
}

Vec neel_state(const LatticeTorus& lat) {
  std::int64_t dim = lat.hilbert_dim();
  Vec psi = Vec::Zero(dim);
  // |+1> is the first basis vector, |-1> the last; A sites get +1, B sites -1.
  std::int64_t idx = 0;
  for (int x = 0; x < lat.n_sites(); ++x) {
    idx *= 3;
    if (lat.sublattice_b(x)) idx += 2;
  }
  psi(idx) = 1.0;
  return psi;
}

namespace {

/// Embedding helpers on an ordered subset of sites.
struct SubSystem {
  std::vector<int> sites;          // lattice site indices in subsystem order
  std::vector<int> pos_of;         // lattice site -> position or -1
  std::int64_t dim = 1;

  explicit SubSystem(const LatticeTorus& lat, const std::vector<int>& s) : sites(s) {
    pos_of.assign(lat.n_sites(), -1);
    for (std::size_t i = 0; i < sites.size(); ++i) pos_of[sites[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < sites.size(); ++i) dim *= 3;
  }

  Eigen::MatrixXd embed1(int lattice_site, const Mat& local) const {
    return embed_general({pos_of[lattice_site]}, local);
  }
  Eigen::MatrixXd embed2(int sx, int sy, const Mat& local9) const {
    return embed_general({pos_of[sx], pos_of[sy]}, local9);
  }

  Eigen::MatrixXd embed_general(std::vector<int> positions, const Mat& local) const {
    for (int p : positions)
      if (p < 0) throw std::logic_error("site not in subsystem");
    int n = static_cast<int>(sites.size());
    std::vector<std::int64_t> stride(n);
    std::int64_t s = 1;
    for (int i = n - 1; i >= 0; --i) {
      stride[i] = s;
      s *= 3;
    }
    int q = 3, nl = static_cast<int>(positions.size());
    int ldim = static_cast<int>(local.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
      int col = 0;
      for (int t = 0; t < nl; ++t) col = col * q + static_cast<int>((j / stride[positions[t]]) % q);
      std::int64_t base = j;
      for (int t = 0; t < nl; ++t)
        base -= ((j / stride[positions[t]]) % q) * stride[positions[t]];
      for (int row = 0; row < ldim; ++row) {
        Cplx val = local(row, col);
        if (val == Cplx(0)) continue;
        if (std::abs(val.imag()) > 1e-12)
          throw std::logic_error("RP blocks must be real in the standard basis");
        std::int64_t i = base;
        int r = row;
        for (int t = nl - 1; t >= 0; --t) {
          i += static_cast<std::int64_t>(r % q) * stride[positions[t]];
          r /= q;
        }
        out(i, j) += val.real();
      }
    }
    return out;
  }
};

}  // namespace

RPForm rp_form(const LatticeTorus& lat, const ModelParams& p, double beta,
               const Reflection& refl) {
  auto v = fetch_field(lat, p.v, "v");
  auto w = q_components(spin1());
  const Mat I3 = eye3();
  const Mat I9 = Mat::Identity(9, 9);
  const auto& sp = spin1();
  const Mat gamma = gamma_matrix();
  double mJ1 = -p.J1;  // >= 0

  SubSystem h1(lat, refl.half1), h2(lat, refl.half2);
  RPForm out;
  out.A = Eigen::MatrixXd::Zero(h1.dim, h1.dim);
  out.B = Eigen::MatrixXd::Zero(h2.dim, h2.dim);
  out.site_order = refl.half1;
  out.site_order.insert(out.site_order.end(), refl.half2.begin(), refl.half2.end());

  std::vector<char> in1(lat.n_sites(), 0);
  for (int i : refl.half1) in1[i] = 1;

  auto edge_block = [&](const Edge& e) {
    Mat block = Mat::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Mat diff = kron_local(w[a][b], I3) - kron_local(I3, w[a][b]);
        if (a == 2 && b == 2) diff += 0.5 * (v[e.a] - v[e.b]) * I9;
        block += p.J2 * (diff * diff);
      }
    block -= p.J2 * 2.0 * c_edge_constant() * I9;
    if (p.J1 != 0.0) {
      Mat d1 = kron_local(sp.s1, I3) - kron_local(I3, sp.s1);
      Mat d2 = kron_local(sp.s2, I3) - kron_local(I3, sp.s2);
      Mat d3 = kron_local(sp.s3, I3) - kron_local(I3, sp.s3);
      block += -p.J1 * (d1 * d1 - d2 * d2 + d3 * d3);
      block += 0.5 * p.J1 * (kron_local(gamma, I3) + kron_local(I3, gamma));
    }
    return block;
  };

  for (const Edge& e : lat.edges()) {
    bool a1 = in1[e.a], b1 = in1[e.b];
    if (a1 && b1) {
      out.A += -beta * h1.embed2(e.a, e.b, edge_block(e));
    } else if (!a1 && !b1) {
      out.B += -beta * h2.embed2(e.a, e.b, edge_block(e));
    } else {
      int x = a1 ? e.a : e.b;
      int y = a1 ? e.b : e.a;
      // nine nematic families, field folded into the (3,3) component
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Mat cx = w[a][b], dy = w[a][b];
          if (a == 2 && b == 2) {
            cx += 0.5 * v[x] * I3;
            dy += 0.5 * v[y] * I3;
          }
          double s = std::sqrt(beta * p.J2);
          out.cd.emplace_back(h1.embed1(x, Mat(s * cx)), h2.embed1(y, Mat(s * dy)));
        }
      if (mJ1 > 0.0) {
        double s = std::sqrt(beta * mJ1);
        out.cd.emplace_back(h1.embed1(x, Mat(s * sp.s1)), h2.embed1(y, Mat(s * sp.s1)));
        out.cd.emplace_back(h1.embed1(x, Mat(Cplx(0, 1) * s * sp.s2)),
                            h2.embed1(y, Mat(Cplx(0, 1) * s * sp.s2)));
        out.cd.emplace_back(h1.embed1(x, Mat(s * sp.s3)), h2.embed1(y, Mat(s * sp.s3)));
      }
      // scalar -C_x - C_y and the single-site Gamma leftovers stay additive
      double scal = beta * p.J2 * 2.0 * c_edge_constant();
      out.A += 0.5 * scal * Eigen::MatrixXd::Identity(h1.dim, h1.dim);
      out.B += 0.5 * scal * Eigen::MatrixXd::Identity(h2.dim, h2.dim);
      if (p.J1 != 0.0) {
        out.A += -beta * 0.5 * p.J1 * h1.embed1(x, gamma);
        out.B += -beta * 0.5 * p.J1 * h2.embed1(y, gamma);
      }
    }
  }
  return out;
}

double rp_form_residual(const LatticeTorus& lat, const ModelParams& p, double beta,
                        const Reflection& refl) {
  RPForm f = rp_form(lat, p, beta, refl);
  std::int64_t d1 = f.A.rows(), d2 = f.B.rows();
  std::int64_t dim = d1 * d2;

  Eigen::MatrixXd assembled =
      kron_real(f.A, Eigen::MatrixXd::Identity(d2, d2)) +
      kron_real(Eigen::MatrixXd::Identity(d1, d1), f.B);
  for (const auto& [c, d] : f.cd) {
    Eigen::MatrixXd t = kron_real(c, Eigen::MatrixXd::Identity(d2, d2)) -
                        kron_real(Eigen::MatrixXd::Identity(d1, d1), d);
    assembled -= t * t;
  }

  Operator Hp = build_hamiltonian(lat, p, p.J1 == 0.0 ? Variant::HvPrime : Variant::HtildeV);
  if (p.J1 != 0.0) {
    auto v = p.v.empty() ? std::vector<double>(lat.n_sites(), 0.0) : p.v;
    Hp = Hp + (Cplx(0.25 * lat.laplacian_form(v, v)) * identity_op(lat));
  }

  // permutation of basis indices induced by the split site ordering
  int n = lat.n_sites();
  std::vector<std::int64_t> stride(n);
  std::int64_t s = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = s;
    s *= 3;
  }
  std::vector<std::int64_t> new_stride(n);
  s = 1;
  for (int t = n - 1; t >= 0; --t) {
    new_stride[t] = s;
    s *= 3;
  }
  std::vector<std::int64_t> perm(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    std::int64_t pj = 0;
    for (int t = 0; t < n; ++t) {
      int digit = static_cast<int>((j / stride[f.site_order[t]]) % 3);
      pj += digit * new_stride[t];
    }
    perm[j] = pj;
  }

  double res = 0;
  for (std::int64_t j = 0; j < dim; ++j)
    for (std::int64_t i = 0; i < dim; ++i) {
      Cplx want = -beta * Hp.mat(i, j);
      double got = assembled(perm[i], perm[j]);
      res = std::max(res, std::abs(want - got));
    }
  return res;
}

}  // namespace nematic
