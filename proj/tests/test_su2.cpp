#include <doctest.h>

#include "nematic/lattice.hpp"
#include "nematic/su2.hpp"

using namespace nematic;

namespace {
double maxnorm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("spin-1 matrices match the standard choice entrywise") {
  SpinSet sp = spin_matrices(1.0);
  double r = 1.0 / std::sqrt(2.0);
  Mat s1(3, 3), s2(3, 3), s3(3, 3);
  s1 << 0, r, 0, r, 0, r, 0, r, 0;
  s2 << 0, Cplx(0, -r), 0, Cplx(0, r), 0, Cplx(0, -r), 0, Cplx(0, r), 0;
  s3 << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  CHECK(maxnorm(sp.s1 - s1) < 1e-15);
  CHECK(maxnorm(sp.s2 - s2) < 1e-15);
  CHECK(maxnorm(sp.s3 - s3) < 1e-15);
}

TEST_CASE("spin-1/2 gives half the Pauli matrices") {
  SpinSet sp = spin_matrices(0.5);
  Mat px(2, 2), py(2, 2), pz(2, 2);
  px << 0, 1, 1, 0;
  py << 0, Cplx(0, -1), Cplx(0, 1), 0;
  pz << 1, 0, 0, -1;
  CHECK(maxnorm(sp.s1 - 0.5 * px) < 1e-15);
  CHECK(maxnorm(sp.s2 - 0.5 * py) < 1e-15);
  CHECK(maxnorm(sp.s3 - 0.5 * pz) < 1e-15);
}

TEST_CASE("commutation relations and Casimir for several spins") {
  for (double s : {0.5, 1.0, 1.5, 2.0}) {
    SpinSet sp = spin_matrices(s);
    CHECK(maxnorm(sp.s1 * sp.s2 - sp.s2 * sp.s1 - Cplx(0, 1) * sp.s3) < 1e-12);
    CHECK(maxnorm(sp.s2 * sp.s3 - sp.s3 * sp.s2 - Cplx(0, 1) * sp.s1) < 1e-12);
    CHECK(maxnorm(sp.s3 * sp.s1 - sp.s1 * sp.s3 - Cplx(0, 1) * sp.s2) < 1e-12);
    Mat cas = sp.s1 * sp.s1 + sp.s2 * sp.s2 + sp.s3 * sp.s3;
    CHECK(maxnorm(cas - s * (s + 1) * Mat::Identity(sp.dim(), sp.dim())) < 1e-12);
    // reality structure: s1, s3 real symmetric, s2 purely imaginary antisymmetric
    CHECK(maxnorm(sp.s1.imag().cast<Cplx>()) < 1e-15);
    CHECK(maxnorm(sp.s3.imag().cast<Cplx>()) < 1e-15);
    CHECK(maxnorm(sp.s2.real().cast<Cplx>()) < 1e-15);
    CHECK((sp.s1 - sp.s1.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((sp.s2 + sp.s2.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("spin-3/2 Casimir equals 15/4") {
  SpinSet sp = spin_matrices(1.5);
  Mat cas = sp.s1 * sp.s1 + sp.s2 * sp.s2 + sp.s3 * sp.s3;
  CHECK(maxnorm(cas - 3.75 * Mat::Identity(4, 4)) < 1e-12);
}

TEST_CASE("invalid spins are rejected") {
  CHECK_THROWS_AS(spin_matrices(0.3), std::invalid_argument);
  CHECK_THROWS_AS(spin_matrices(0.0), std::invalid_argument);
  CHECK_THROWS_AS(spin_matrices(-1.0), std::invalid_argument);
}

TEST_CASE("spin-1 special identities") {
  SpinSet sp = spin_matrices(1.0);
  const Mat* comps[] = {&sp.s1, &sp.s2, &sp.s3};
  for (const Mat* a : comps) CHECK(maxnorm((*a) * (*a) * (*a) - *a) < 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(maxnorm((*comps[i]) * (*comps[j]) * (*comps[i])) < 1e-13);
  // transpose identities used in the double-commutator computation
  CHECK(maxnorm(Mat((sp.s3 * sp.s2).transpose()) + sp.s2 * sp.s3) < 1e-13);
  CHECK(maxnorm(Mat((sp.s3 * sp.s1).transpose()) - sp.s1 * sp.s3) < 1e-13);
}

TEST_CASE("embedding on the smallest lattice") {
  LatticeTorus lat = LatticeTorus::build(1, 2);
  SpinSet sp = spin_matrices(1.0);
  Operator a = embed_site(lat, 0, sp.s3);
  CHECK(a.dim() == 9);
  // site 0 = first tensor factor
  Mat want = Mat::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) want.block(3 * i, 3 * j, 3, 3) = sp.s3(i, j) * Mat::Identity(3, 3);
  CHECK(maxnorm(a.mat - want) < 1e-15);
  CHECK(std::abs(a.mat.trace()) < 1e-13);
}

TEST_CASE("embedded operators commute across sites and reproduce su(2) on site") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  SpinSet sp = spin_matrices(1.0);
  Operator x1 = embed_site(lat, 1, sp.s1);
  Operator x2 = embed_site(lat, 1, sp.s2);
  Operator x3 = embed_site(lat, 1, sp.s3);
  CHECK(commutator(x1, x2).mat.isApprox(Cplx(0, 1) * x3.mat, 1e-12));
  Operator y2 = embed_site(lat, 2, sp.s2);
  CHECK(commutator(x1, y2).max_norm() < 1e-14);
  Operator y3 = embed_site(lat, 3, sp.s3);
  CHECK(commutator(x3, y3).max_norm() < 1e-14);
  CHECK(commutator(x1, x1).max_norm() < 1e-14);
  // homomorphism on single-site products
  Operator prod = embed_site(lat, 1, Mat(sp.s1 * sp.s3));
  CHECK((prod - x1 * x3).max_norm() < 1e-13);
}

TEST_CASE("mismatched operators are rejected") {
  LatticeTorus a = LatticeTorus::build(1, 2);
  LatticeTorus b = LatticeTorus::build(1, 2);
  SpinSet sp = spin_matrices(1.0);
  Operator oa = embed_site(a, 0, sp.s1);
  Operator ob = embed_site(b, 0, sp.s1);
  CHECK_THROWS_AS((void)commutator(oa, ob), std::invalid_argument);
  CHECK_THROWS_AS((void)embed_site(a, 5, sp.s1), std::invalid_argument);
}

TEST_CASE("embed_pair matches embed_two for product blocks") {
  LatticeTorus lat = LatticeTorus::build(1, 4);
  SpinSet sp = spin_matrices(1.0);
  Operator viaprod = embed_two(lat, 0, sp.s1, 2, sp.s3);
  Operator direct = embed_site(lat, 0, sp.s1) * embed_site(lat, 2, sp.s3);
  CHECK((viaprod - direct).max_norm() < 1e-13);
}
