#include "nematic/thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nematic/infrared.hpp"

namespace nematic {

namespace {

constexpr double kWeightCutoff = 1e-16;

Operator model_hamiltonian(const LatticeTorus& lat, double J1, double J2,
                           const std::vector<double>* v = nullptr) {
  ModelParams p;
  p.J1 = J1;
  p.J2 = J2;
  if (v) p.v = *v;
  return build_hamiltonian(lat, p, J1 == 0.0 ? Variant::Hv : Variant::HtildeV);
}

Mat quadrupole_local() {
  static const Mat q = [] {
    SpinSet sp = spin_matrices(1.0);
    return Mat(sp.s3 * sp.s3 - (2.0 / 3.0) * Mat::Identity(3, 3));
  }();
  return q;
}

Mat s1s3_local() {
  static const Mat q = [] {
    SpinSet sp = spin_matrices(1.0);
    return Mat(sp.s1 * sp.s3);
  }();
  return q;
}

}  // namespace

ThermalState ThermalState::diagonalize(const Operator& H, double beta, std::int64_t dim_cap) {
  if (H.dim() > dim_cap) throw std::invalid_argument("operator exceeds the dimension cap");
  if (beta <= 0) throw std::invalid_argument("beta must be positive");
  double scale = std::max(1.0, H.max_norm());
  if ((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("non-Hermitian input");

  ThermalState st;
  st.beta_ = beta;
  if (H.mat.imag().cwiseAbs().maxCoeff() < 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.mat.real());
    st.energies_ = es.eigenvalues();
    st.vectors_ = es.eigenvectors().cast<Cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(H.mat);
    st.energies_ = es.eigenvalues();
    st.vectors_ = es.eigenvectors();
  }
  double e0 = st.energies_.minCoeff();
  Eigen::ArrayXd shifted = (-(st.energies_.array() - e0) * beta).exp();
  double z = shifted.sum();
  st.log_z_ = -beta * e0 + std::log(z);
  st.weights_ = shifted / z;
  return st;
}

double ThermalState::reconstruction_residual(const Operator& H) const {
  Mat rebuilt = vectors_ * energies_.cast<Cplx>().asDiagonal() * vectors_.adjoint();
  return (rebuilt - H.mat).cwiseAbs().maxCoeff() / std::max(1.0, H.max_norm());
}

Cplx ThermalState::gibbs(const Operator& A) const {
  if (A.dim() != vectors_.rows()) throw std::invalid_argument("dimension mismatch");
  // only eigenvectors with non-negligible Gibbs weight contribute
  std::vector<int> sig;
  for (int n = 0; n < weights_.size(); ++n)
    if (weights_(n) > kWeightCutoff) sig.push_back(n);
  Mat cols(vectors_.rows(), sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) cols.col(i) = vectors_.col(sig[i]);
  Mat av = A.mat * cols;
  Cplx acc = 0;
  for (std::size_t i = 0; i < sig.size(); ++i)
    acc += weights_(sig[i]) * cols.col(i).dot(av.col(i));
  return acc;
}

Cplx ThermalState::duhamel(const Operator& A, const Operator& B) const {
  if (A.dim() != vectors_.rows() || B.dim() != vectors_.rows())
    throw std::invalid_argument("dimension mismatch");
  const Eigen::Index dim = vectors_.rows();
  Mat at = vectors_.adjoint() * (A.mat * vectors_);
  Mat bt;
  if (&A == &B || (A.mat.data() == B.mat.data()))
    bt = at;
  else
    bt = vectors_.adjoint() * (B.mat * vectors_);

  const double beta = beta_;
  Cplx acc = 0;
  for (Eigen::Index m = 0; m < dim; ++m) {
    double wm = weights_(m);
    for (Eigen::Index n = 0; n < dim; ++n) {
      double wn = weights_(n);
      if (wm < kWeightCutoff && wn < kWeightCutoff) continue;
      double de = energies_(n) - energies_(m);
      double w;
      if (std::abs(de) < 1e-12 * (1.0 + std::abs(energies_(m))))
        w = wm;  // removable singularity: lim (e^{-b Em}-e^{-b En})/(b(En-Em))
      else
        w = (wm - wn) / (beta * de);
      acc += std::conj(at(m, n)) * bt(m, n) * w;
    }
  }
  return acc;
}

Operator fourier_observable(const LatticeTorus& lat, std::span<const double> k) {
  lat.fourier_index(k);  // validates k on-grid
  Operator out = zero_op(lat);
  Mat q = quadrupole_local();
  for (int x = 0; x < lat.n_sites(); ++x) {
    double phase = 0;
    for (int i = 0; i < lat.dim(); ++i) phase += k[i] * lat.site(x)[i];
    out = out + (std::polar(1.0, -phase) * embed_site(lat, x, q));
  }
  return out;
}

ThermalContext::ThermalContext(const LatticeTorus& l, double b, double j1, double j2)
    : lat(l),
      beta(b),
      J1(j1),
      J2(j2),
      H(model_hamiltonian(l, j1, j2)),
      state(ThermalState::diagonalize(H, b)) {}

double ThermalContext::cross_term() const {
  if (!cross_cache) {
    int o = lat.origin();
    int nb = lat.neighbour(o, 0, +1);
    Operator prod = embed_site(lat, o, s1s3_local()) * embed_site(lat, nb, s1s3_local());
    cross_cache = state.gibbs(prod).real();
  }
  return *cross_cache;
}

double ThermalContext::rho_e1() const {
  if (!rho_cache) {
    int o = lat.origin();
    int nb = lat.neighbour(o, 0, +1);
    Operator prod = embed_site(lat, o, quadrupole_local()) * embed_site(lat, nb, quadrupole_local());
    rho_cache = state.gibbs(prod).real();
  }
  return *rho_cache;
}

CorrelationReport correlations(const LatticeTorus& lat, double beta, double J1, double J2) {
  ThermalContext ctx(lat, beta, J1, J2);
  CorrelationReport rep;
  int o = lat.origin();
  Operator Ao = embed_site(lat, o, quadrupole_local());
  rep.rho.resize(lat.n_sites());
  for (int x = 0; x < lat.n_sites(); ++x)
    rep.rho[x] = ctx.state.gibbs(Ao * embed_site(lat, x, quadrupole_local())).real();

  const auto& grid = lat.fourier();
  rep.rho_hat.resize(grid.points.size());
  rep.duhamel_hat.resize(grid.points.size());
  for (std::size_t ik = 0; ik < grid.points.size(); ++ik) {
    Operator Ak = fourier_observable(lat, grid.points[ik]);
    Operator Amk = {Ak.mat.adjoint(), Ak.lattice_id};
    rep.rho_hat[ik] = ctx.state.gibbs(Amk * Ak).real() / lat.n_sites();
    rep.duhamel_hat[ik] = ctx.state.duhamel(Ak, Ak).real() / lat.n_sites();
  }

  double sum = 0;
  for (double rh : rep.rho_hat) sum += rh;
  rep.sum_rule_residual = std::abs(sum / lat.n_sites() - rep.rho[o]);

  // inverse transform of rho_hat against rho
  std::vector<Cplx> rhohat_c(rep.rho_hat.begin(), rep.rho_hat.end());
  auto back = fourier_inverse(lat, rhohat_c);
  double inv_res = 0;
  for (int x = 0; x < lat.n_sites(); ++x) {
    // rho_hat is indexed by k; rho by displacement from the origin coordinate
    inv_res = std::max(inv_res, std::abs(back[x] - Cplx(rep.rho[x])));
  }
  rep.inverse_residual = inv_res;

  // same correlations in the unconjugated model
  ModelParams p;
  p.J1 = J1;
  p.J2 = J2;
  Operator Hplain = build_hamiltonian(lat, p, Variant::J1J2);
  ThermalState plain = ThermalState::diagonalize(Hplain, beta);
  double stag = 0;
  for (int x = 0; x < lat.n_sites(); ++x) {
    double r2 = plain.gibbs(Ao * embed_site(lat, x, quadrupole_local())).real();
    stag = std::max(stag, std::abs(r2 - rep.rho[x]));
  }
  rep.stagger_residual = stag;
  return rep;
}

namespace {

double double_comm_expectation(const ThermalState& st, const Operator& gen, const Operator& Ak) {
  Operator Adag{Ak.mat.adjoint(), Ak.lattice_id};
  Operator inner = commutator(gen, Ak);
  Operator outer = commutator(Adag, inner);
  return st.gibbs(outer).real();
}

}  // namespace

DoubleCommutatorResult double_commutator_check(const LatticeTorus& lat, double beta,
                                               std::span<const double> k, double J1) {
  ThermalContext ctx(lat, beta, J1);
  Operator Ak = fourier_observable(lat, k);
  Operator gen = Cplx(beta) * ctx.H;

  DoubleCommutatorResult out{};
  out.lhs = double_comm_expectation(ctx.state, gen, Ak);
  out.cross_term = ctx.cross_term();

  std::vector<double> kp(k.begin(), k.end());
  for (double& ki : kp) ki += std::numbers::pi;
  out.rhs = 8.0 * beta * lat.n_sites() * epsilon(kp) * out.cross_term;

  out.extra = 0.0;
  if (J1 != 0.0) {
    // J1 part of the conjugated Hamiltonian: +2 J1 sum_E (S1S1 - S2S2 + S3S3)
    ModelParams pj{J1, 0.0, {}, {}};
    Operator Hj1 = build_hamiltonian(lat, pj, Variant::HtildeV);
    out.extra = double_comm_expectation(ctx.state, Cplx(beta) * Hj1, Ak);
  }
  out.residual = std::abs(out.lhs - out.rhs - out.extra);
  return out;
}

GaussianDominationResult gaussian_domination_check(const LatticeTorus& lat, double beta,
                                                   std::span<const double> v, double J1) {
  std::vector<double> vv(v.begin(), v.end());
  std::vector<double> zeros(lat.n_sites(), 0.0);
  Operator Hv = model_hamiltonian(lat, J1, 1.0, &vv);
  Operator H0 = model_hamiltonian(lat, J1, 1.0, &zeros);
  GaussianDominationResult r{};
  r.log_z_v = ThermalState::diagonalize(Hv, beta).log_z();
  r.log_z_0 = ThermalState::diagonalize(H0, beta).log_z();
  r.bound = r.log_z_0 + 0.25 * beta * lat.laplacian_form(vv, vv);
  r.margin = r.bound - r.log_z_v;
  return r;
}

RPInequalityResult rp_inequality_check(const LatticeTorus& lat, double beta,
                                       std::span<const double> v, const Reflection& refl,
                                       double J1) {
  if (static_cast<int>(v.size()) != lat.n_sites())
    throw std::invalid_argument("field size mismatch");
  std::vector<char> in1(lat.n_sites(), 0);
  for (int i : refl.half1) in1[i] = 1;

  std::vector<double> vfull(v.begin(), v.end());
  std::vector<double> v1r(lat.n_sites()), v2r(lat.n_sites());
  for (int i = 0; i < lat.n_sites(); ++i) {
    v1r[i] = in1[i] ? vfull[i] : vfull[refl.map[i]];  // (v1, R v1)
    v2r[i] = in1[i] ? vfull[refl.map[i]] : vfull[i];  // (R v2, v2)
  }

  auto logz = [&](const std::vector<double>& field, bool primed) {
    Operator H = model_hamiltonian(lat, J1, 1.0, &field);
    if (primed) {
      double shift = 0.25 * lat.laplacian_form(field, field);
      H = H + (Cplx(shift) * identity_op(lat));
    }
    return ThermalState::diagonalize(H, beta).log_z();
  };

  RPInequalityResult r{};
  r.margin = logz(v1r, true) + logz(v2r, true) - 2.0 * logz(vfull, true);
  r.margin_unprimed = logz(v1r, false) + logz(v2r, false) - 2.0 * logz(vfull, false);
  return r;
}

InfraredBoundResult infrared_bound_check(const LatticeTorus& lat, double beta,
                                         std::span<const double> k, double J1) {
  double eps_k = epsilon(k);
  if (eps_k < 1e-14) throw std::invalid_argument("k = 0 excluded from the infrared bound");
  ThermalContext ctx(lat, beta, J1);
  Operator Ak = fourier_observable(lat, k);
  InfraredBoundResult r{};
  r.duhamel_hat = ctx.state.duhamel(Ak, Ak).real() / lat.n_sites();
  r.cap = 1.0 / (2.0 * beta * eps_k);
  r.ok = r.duhamel_hat <= r.cap + 1e-9;
  return r;
}

FalkBruchResult falk_bruch_check(const LatticeTorus& lat, double beta,
                                 std::span<const double> k, double J1) {
  ThermalContext ctx(lat, beta, J1);
  Operator Ak = fourier_observable(lat, k);
  Operator Adag{Ak.mat.adjoint(), Ak.lattice_id};

  FalkBruchResult r{};
  r.sym_part = 0.5 * ctx.state.gibbs(Adag * Ak + Ak * Adag).real() / lat.n_sites();
  r.duhamel_hat = ctx.state.duhamel(Ak, Ak).real() / lat.n_sites();
  r.double_comm =
      double_comm_expectation(ctx.state, Cplx(beta) * ctx.H, Ak) / lat.n_sites();
  r.rhs = r.duhamel_hat + 0.5 * std::sqrt(std::max(0.0, r.duhamel_hat * r.double_comm));
  r.ok = r.sym_part <= r.rhs + 1e-9;
  return r;
}

double lower_bound_finite(const LatticeTorus& lat, double beta, double J1) {
  ThermalContext ctx(lat, beta, J1);
  return finite_volume_bound(lat, beta, ctx.rho_e1(), ctx.cross_term());
}

}  // namespace nematic
