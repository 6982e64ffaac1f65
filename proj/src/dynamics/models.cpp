// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "dynamics/models.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tempsteer::dynamics {

namespace {

using qmat::basis_ket;
using qmat::identity;
using qmat::kron;

// Pauli operator on factor `pos` of a register of `count` qubits.
Matrix embed(const Matrix& op, int pos, int count) {
  Matrix out = (pos == 0) ? op : identity(2);
  for (int k = 1; k < count; ++k) out = kron(out, (k == pos) ? op : identity(2));
  return out;
}

}  // namespace

Liouvillian build_coupled_qubit_liouvillian(const CoupledQubitParams& p) {
  if (p.g <= 0.0) throw ValidationError("coupling strength g must be positive");
  if (p.gamma < 0.0) throw ValidationError("decay rate gamma must be nonnegative");

  const Matrix sp = qmat::pauli_plus();
  const Matrix sm = qmat::pauli_minus();
  const Matrix h = p.g * (kron(sp, sm) + kron(sm, sp));

  SpaceLabel space{{"qubit1", 2}, {"qubit2", 2}};
  std::vector<Liouvillian::Collapse> collapse;
  collapse.push_back({kron(sm, identity(2)), p.gamma});
  collapse.push_back({kron(identity(2), sm), p.gamma});
  return Liouvillian(std::move(space), h, std::move(collapse));
}

Matrix two_electron_st_basis() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix st = Matrix::Zero(4, 4);
  // |0> = up, |1> = down; product index = 2*e1 + e2.
  st.col(0) << 0, inv_sqrt2, -inv_sqrt2, 0;  // |s>
  st.col(1) << 0, inv_sqrt2, inv_sqrt2, 0;   // |t0>
  st.col(2) << 0, 0, 0, 1;                   // |t-1> = |down down>
  st.col(3) << 1, 0, 0, 0;                   // |t+1> = |up up>
  return st;
}

Liouvillian build_radical_pair_liouvillian(const RadicalPairParams& p) {
  if (p.b0 < 0.0) throw ValidationError("field magnitude b0 must be nonnegative");
  if (p.theta < 0.0 || p.theta > M_PI / 2.0 + 1e-12)
    throw ValidationError("theta must lie in [0, pi/2]");
  if (p.kappa < 0.0 || p.gamma_dephasing < 0.0)
    throw ValidationError("rates must be nonnegative");

  const int nq = 5;  // electron1, electron2, nucleus, ancillaS, ancillaT
  const std::array<Matrix, 3> sigma = {qmat::pauli_x(), qmat::pauli_y(), qmat::pauli_z()};
  const std::array<double, 3> b = {p.b0 * std::cos(p.phi) * std::sin(p.theta),
                                   p.b0 * std::sin(p.phi) * std::sin(p.theta),
                                   p.b0 * std::cos(p.theta)};

  Matrix h = Matrix::Zero(32, 32);
  for (int electron = 0; electron < 2; ++electron)
    for (int k = 0; k < 3; ++k)
      h += p.gyromagnetic * b[k] * embed(sigma[k], electron, nq);
  for (int k = 0; k < 3; ++k)
    h += p.hyperfine[k] * (embed(sigma[k], 2, nq) * embed(sigma[k], 0, nq));

  SpaceLabel space{{"electron1", 2}, {"electron2", 2}, {"nucleus", 2},
                   {"ancillaS", 2}, {"ancillaT", 2}};

  // Spin-selective recombination: the singlet shelves into ancilla S, the
  // three triplets into ancilla T, for either nuclear spin state.
  const Matrix st = two_electron_st_basis();
  std::vector<Liouvillian::Collapse> collapse;
  for (int nuclear = 0; nuclear < 2; ++nuclear) {
    const Vector nu = basis_ket(2, nuclear);
    for (int electron_state = 0; electron_state < 4; ++electron_state) {
      const Vector pair = st.col(electron_state);
      const bool singlet = (electron_state == 0);
      const Vector shelf_from = kron(basis_ket(2, 0), basis_ket(2, 0)).col(0);  // S0 T0
      const Vector shelf_to = singlet ? kron(basis_ket(2, 1), basis_ket(2, 0)).col(0)   // S1 T0
                                      : kron(basis_ket(2, 0), basis_ket(2, 1)).col(0);  // S0 T1
      Vector ket = kron(kron(pair, nu), shelf_to).col(0);
      Vector bra = kron(kron(pair, nu), shelf_from).col(0);
      collapse.push_back({ket * bra.adjoint(), p.kappa});
    }
  }
  collapse.push_back({embed(sigma[2], 0, nq), p.gamma_dephasing});
  collapse.push_back({embed(sigma[2], 1, nq), p.gamma_dephasing});

  return Liouvillian(std::move(space), h, std::move(collapse));
}

Liouvillian build_simplified_rp_liouvillian(const SimplifiedRpParams& p) {
  if (p.a < 0.0 || p.a > 1.0) throw ValidationError("nuclear weight a must lie in [0, 1]");
  // Matches the nucleus-conditioned phases of simplified_rp_state: the
  // spin-up branch evolves with exp(+i a_z sigma_z^1 t).
  const Matrix h = -p.a_z * (embed(qmat::pauli_z(), 0, 3) * embed(qmat::pauli_z(), 2, 3));
  SpaceLabel space{{"electron1", 2}, {"electron2", 2}, {"nucleus", 2}};
  return Liouvillian(std::move(space), h, {});
}

Matrix simplified_rp_initial_state(const SimplifiedRpParams& p) {
  if (p.a < 0.0 || p.a > 1.0) throw ValidationError("nuclear weight a must lie in [0, 1]");
  const Matrix singlet = qmat::projector(two_electron_st_basis().col(0));
  Matrix nu = Matrix::Zero(2, 2);
  nu(0, 0) = p.a;
  nu(1, 1) = 1.0 - p.a;
  return qmat::kron(singlet, nu);
}

}  // namespace tempsteer::dynamics
