#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "nematic/model.hpp"

using namespace nematic;

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat sdots9() {
  SpinSet sp = spin_matrices(1.0);
  return kron(sp.s1, sp.s1) + kron(sp.s2, sp.s2) + kron(sp.s3, sp.s3);
}

std::vector<double> random_field(const LatticeTorus& lat, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, scale);
  std::vector<double> v(lat.n_sites());
  for (auto& x : v) x = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("single-edge nematic spectrum and singlet projector") {
  // independent 9x9 oracle, no lattice machinery involved
  Mat ss = sdots9();
  Mat ss2 = ss * ss;
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(-2.0 * ss2).eigenvalues();
  CHECK(ev(0) == doctest::Approx(-8.0).epsilon(1e-12));
  for (int i = 1; i < 9; ++i) CHECK(ev(i) == doctest::Approx(-2.0).epsilon(1e-12));

  // (S.S)^2 = P + 1 with P/3 the singlet projector
  Vec singlet = Vec::Zero(9);
  singlet(0 * 3 + 2) = 1, singlet(1 * 3 + 1) = -1, singlet(2 * 3 + 0) = 1;
  singlet /= std::sqrt(3.0);
  Mat proj = singlet * singlet.adjoint();
  CHECK((ss2 - (3.0 * proj + Mat::Identity(9, 9))).cwiseAbs().maxCoeff() < 1e-12);

  // Neel matrix element <1,-1|(S.S)^2|1,-1> = 2
  Vec updown = Vec::Zero(9);
  updown(0 * 3 + 2) = 1;
  CHECK(std::real(updown.dot(ss2 * updown)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hamiltonian variants are hermitian and consistent") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  ModelParams p;
  for (Variant w : {Variant::J1J2, Variant::NematicField, Variant::HU, Variant::Hv,
                    Variant::HvPrime, Variant::HtildeV}) {
    Operator H = build_hamiltonian(lat, p, w);
    CHECK(H.is_hermitian(1e-12));
  }
  // v = 0 makes Hv equal to HU at h = 0
  Operator hu = build_hamiltonian(lat, p, Variant::HU);
  Operator hv = build_hamiltonian(lat, p, Variant::Hv);
  CHECK((hu - hv).max_norm() == 0.0);
  // constant v also reduces to the field-free case
  ModelParams pc;
  pc.v.assign(lat.n_sites(), 0.83);
  CHECK((build_hamiltonian(lat, pc, Variant::Hv) - hu).max_norm() < 1e-14);
  CHECK((build_hamiltonian(lat, pc, Variant::HvPrime) - hu).max_norm() < 1e-14);
  // J1 > 0 rejected for the conjugated antiferromagnetic variant
  ModelParams bad;
  bad.J1 = 0.1;
  CHECK_THROWS_AS((void)build_hamiltonian(lat, bad, Variant::HtildeV), std::invalid_argument);
  // HtildeV at J1 = 0 is the pure nematic staggered Hamiltonian
  CHECK((build_hamiltonian(lat, p, Variant::HtildeV) - hu).max_norm() < 1e-14);
}

TEST_CASE("su(2) invariance of the untransformed model") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  SpinSet sp = spin_matrices(1.0);
  ModelParams p;
  p.J1 = -0.3;
  Operator H = build_hamiltonian(lat, p, Variant::J1J2);
  for (const Mat* c : {&sp.s1, &sp.s2, &sp.s3}) {
    Operator total = zero_op(lat);
    for (int x = 0; x < lat.n_sites(); ++x) total = total + embed_site(lat, x, *c);
    CHECK(commutator(H, total).max_norm() < 1e-10);
  }
}

TEST_CASE("q matrix trace calculus") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  QMatrix qx = q_matrix(lat, 1);
  QMatrix qy = q_matrix(lat, 2);

  CHECK(tr_q(qx).max_norm() < 1e-13);

  // entrywise structure: diagonal entries hermitian, all entries real,
  // adjoints pair across the diagonal with a sign flip where i S^2 enters
  auto w = q_components(spin_matrices(1.0));
  for (int a = 0; a < 3; ++a) {
    CHECK((w[a][a] - w[a][a].adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    for (int b = 0; b < 3; ++b) {
      CHECK(w[a][b].imag().cwiseAbs().maxCoeff() < 1e-13);
      if (a != b) {
        double sign = (a == 1 || b == 1) ? -1.0 : 1.0;  // 0-based: component 2 = index 1
        CHECK((Mat(w[a][b].adjoint()) - sign * w[b][a]).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }

  // TR(Qx Qy) = (S1S1 - S2S2 + S3S3)^2 - (1/3) S^2 (S+1)^2
  SpinSet sp = spin_matrices(1.0);
  Operator M = embed_two(lat, 1, sp.s1, 2, sp.s1) - embed_two(lat, 1, sp.s2, 2, sp.s2) +
               embed_two(lat, 1, sp.s3, 2, sp.s3);
  Operator want = M * M - (Cplx(4.0 / 3.0) * identity_op(lat));
  CHECK((tr_product(qx, qy) - want).max_norm() < kIdentityTol);

  // symmetry in x <-> y
  CHECK((tr_product(qx, qy) - tr_product(qy, qx)).max_norm() < 1e-12);

  // same-site trace: TR(Q^2) = C - (1/3) S^2(S+1)^2 with scalar C = 2
  Operator trq2 = tr_product(qx, qx);
  double cc = c_edge_constant();
  CHECK((trq2 - (Cplx(cc - 4.0 / 3.0) * identity_op(lat))).max_norm() < 1e-12);

  // interaction representation: M^2 = (Cx + Cy - TR[(Qx - Qy)^2]) / 2
  Operator tr_diff2 = tr_product(qx, qx) + tr_product(qy, qy) -
                      Cplx(2.0) * tr_product(qx, qy);
  Operator rhs = Cplx(0.5) * ((Cplx(2.0 * cc) * identity_op(lat)) - tr_diff2);
  CHECK((M * M - rhs).max_norm() < kIdentityTol);
}

TEST_CASE("square completion vanishes for the nematic and extended models") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  ModelParams p;
  SUBCASE("zero field") { CHECK(square_completion_check(lat, p) < kIdentityTol); }
  SUBCASE("random fields") {
    for (std::uint64_t s : {1u, 2u, 3u}) {
      p.v = random_field(lat, s);
      CHECK(square_completion_check(lat, p) < kIdentityTol);
    }
  }
  SUBCASE("constant field drops out") {
    p.v.assign(lat.n_sites(), -1.4);
    CHECK(lat.laplacian_form(p.v, p.v) == 0.0);
    CHECK(square_completion_check(lat, p) < kIdentityTol);
  }
  SUBCASE("antiferromagnetic coupling") {
    p.J1 = -0.2;
    p.v = random_field(lat, 9);
    CHECK(square_completion_check(lat, p) < kIdentityTol);
  }
  SUBCASE("two dimensional doubled lattice") {
    LatticeTorus l22 = LatticeTorus::build(2, 2);
    ModelParams q;
    q.J1 = -0.05;
    q.v = random_field(l22, 4);
    CHECK(square_completion_check(l22, q) < kIdentityTol);
  }
}

TEST_CASE("staggered unitary conjugates the nematic model") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  Operator U = staggered_unitary(lat);
  Operator Udag{U.mat.adjoint(), U.lattice_id};
  CHECK((U * Udag - identity_op(lat)).max_norm() < 1e-12);

  ModelParams p;
  p.h = random_field(lat, 5);
  Operator HU = build_hamiltonian(lat, p, Variant::HU);
  Operator H01 = build_hamiltonian(lat, p, Variant::NematicField);
  CHECK((Udag * HU * U - H01).max_norm() < kIdentityTol);

  SpinSet sp = spin_matrices(1.0);
  for (int x = 0; x < lat.n_sites(); ++x) {
    Operator s3x = embed_site(lat, x, sp.s3);
    Operator conj = U * s3x * Udag;
    double sign = lat.sublattice_b(x) ? -1.0 : 1.0;
    CHECK((conj - Cplx(sign) * s3x).max_norm() < 1e-12);
  }
}

TEST_CASE("neel state energetics") {
  for (auto [d, L] : {std::pair{1, 4}, {2, 2}, {1, 6}}) {
    LatticeTorus lat = LatticeTorus::build(d, L);
    Vec psi = neel_state(lat);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    ModelParams p;
    Operator H01 = build_hamiltonian(lat, p, Variant::NematicField);
    double e = std::real(psi.dot(H01.mat * psi));
    CHECK(e == doctest::Approx(-4.0 * d * lat.n_sites()).epsilon(1e-12));
    // trial-state bound on the ground energy
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(H01.mat).eigenvalues();
    CHECK(ev(0) <= -4.0 * d * lat.n_sites() + 1e-10);
    // staggered magnetization of the trial state
    SpinSet sp = spin_matrices(1.0);
    for (int x = 0; x < lat.n_sites(); ++x) {
      double m = std::real(psi.dot(embed_site(lat, x, sp.s3).mat * psi));
      CHECK(m == doctest::Approx(lat.sublattice_b(x) ? -1.0 : 1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("reflection-positive form assembles exactly") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  auto refs = lat.reflections();
  for (double J1 : {0.0, -0.2}) {
    ModelParams p;
    p.J1 = J1;
    p.v = random_field(lat, 31 + static_cast<std::uint64_t>(-10 * J1));
    for (const auto& r : refs) {
      CHECK(rp_form_residual(lat, p, 1.3, r) < kIdentityTol);
      auto form = rp_form(lat, p, 1.3, r);
      for (const auto& [c, d] : form.cd) {
        CHECK(c.rows() == 9);
        CHECK(d.rows() == 9);
      }
      // nine nematic families per crossing edge, three more with J1 < 0
      std::size_t per_edge = J1 == 0.0 ? 9 : 12;
      CHECK(form.cd.size() == per_edge * r.crossing.size());
    }
  }
}

TEST_CASE("gamma matrix is the printed single-site nematic operator") {
  Mat g = gamma_matrix();
  Mat want(3, 3);
  want << 2, 0, 2, 0, 0, 0, 2, 0, 2;
  CHECK((g - want).cwiseAbs().maxCoeff() < 1e-13);
}
