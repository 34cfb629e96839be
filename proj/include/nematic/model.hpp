#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nematic/lattice.hpp"
#include "nematic/su2.hpp"

namespace nematic {

enum class Variant {
  J1J2,          // -2 sum_E (J1 S.S + J2 (S.S)^2), no field
  NematicField,  // -2 J2 sum_E (S.S)^2 - sum h_x ((S3)^2 - S(S+1)/3)
  HU,            // staggered-rotated nematic Hamiltonian with field h
  Hv,            // HU with field h = Delta v
  HvPrime,       // Hv + (1/4)(v,-Delta v) * Id
  HtildeV,       // U H^{J1,J2} U^{-1} with field Delta v (J1 <= 0)
};

struct ModelParams {
  double J1 = 0.0;
  double J2 = 1.0;
  std::vector<double> h;  // site field (NematicField, HU)
  std::vector<double> v;  // site field entering as Delta v (Hv*, HtildeV)
};

Operator build_hamiltonian(const LatticeTorus& lat, const ModelParams& p, Variant which);

/// The 3x3 array of single-site operators realizing the Q matrix: diagonal
/// (S^a)^2 - S(S+1)/3, off-diagonal the row-leading product with i attached
/// to S^2 (entry (a,b) = ~S^a ~S^b, ~S^2 = iS^2). All entries are real
/// matrices in the standard basis.
std::array<std::array<Mat, 3>, 3> q_components(const SpinSet& spins);

struct QMatrix {
  std::array<std::array<Operator, 3>, 3> entries;
  int site;
};

QMatrix q_matrix(const LatticeTorus& lat, int x);

/// TR(Qx Qy) = sum_{a,b} entries[a][b]_x * entries[a][b]_y  (the diagonal-a,
/// term-b factor pair, each written with S^a leading). Valid for x == y as
/// well, where it reduces to sum of squares of the components.
Operator tr_product(const QMatrix& qx, const QMatrix& qy);

/// TR(Q) (zero operator) -- kept as a checkable value.
Operator tr_q(const QMatrix& q);

/// Scalar C in (S1S1-S2S2+S3S3)^2 = (Cx + Cy - TR[(Qx-Qy)^2])/2 at S = 1;
/// TR(Q^2) = c_edge_constant() - S^2(S+1)^2/3 times the identity.
double c_edge_constant();

/// Single-site matrix 2[(S^1)^2 - (S^2)^2 + (S^3)^2]; appears in the exact
/// square completion of the J1 < 0 Hamiltonian.
Mat gamma_matrix();

/// Max-norm residual of the square completion: Hv rebuilt from the
/// Q-matrix nine-square expansion (with the field folded into the (3,3)
/// component and the -(1/4)(v,-Delta v) shift) against the direct spin
/// Hamiltonian. Covers the J1 < 0 variant when p.J1 < 0.
double square_completion_check(const LatticeTorus& lat, const ModelParams& p);

/// U = prod_{x in B} exp(i pi S^2_x).
Operator staggered_unitary(const LatticeTorus& lat);

/// Product state ⊗_x |(-1)^x> in the S^3 eigenbasis.
Vec neel_state(const LatticeTorus& lat);

/// Reflection-positive form of -beta H'(v) (or -beta Htilde'(v) for J1 < 0)
/// in the site ordering that puts half1 first: A ⊗ 1 + 1 ⊗ B - sum_i
/// (C_i ⊗ 1 - 1 ⊗ D_i)^2, with all C_i, D_i real.
struct RPForm {
  Eigen::MatrixXd A, B;
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> cd;
  std::vector<int> site_order;  // half1 sites then half2 sites
};

RPForm rp_form(const LatticeTorus& lat, const ModelParams& p, double beta,
               const Reflection& refl);

/// Max-norm residual between the RP-form assembly and -beta H'(v) (permuted
/// into the split ordering).
double rp_form_residual(const LatticeTorus& lat, const ModelParams& p, double beta,
                        const Reflection& refl);

}  // namespace nematic
