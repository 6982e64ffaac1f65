// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "dynamics/liouvillian.hpp"

namespace tempsteer::dynamics {

/// Two qubits exchanging an excitation, each with Markovian decay.
/// H = g (sigma1+ sigma2- + sigma1- sigma2+); jump operators sigma_i- at rate gamma.
/// Basis order |gg>, |ge>, |eg>, |ee| with g = |0>.
struct CoupledQubitParams {
  double g = 1.0;      // coupling strength (angular frequency)
  double gamma = 1.0;  // decay rate, same units as g
};

Liouvillian build_coupled_qubit_liouvillian(const CoupledQubitParams& p);

/// Radical pair: two electrons, one nucleus hyperfine-coupled to electron 1,
/// plus two shelving ancillas recording singlet/triplet recombination.
/// Space: electron1(2) x electron2(2) x nucleus(2) x ancillaS(2) x ancillaT(2).
/// All spin operators are Pauli matrices; |0> is spin-up.
struct RadicalPairParams {
  double b0 = 47e-6;                          // field magnitude (tesla)
  double theta = 0.0;                         // field polar angle (radians)
  double phi = 0.0;                           // field azimuthal angle (radians)
  std::array<double, 3> hyperfine = {0.0, 0.0, 1e5};  // (Ax, Ay, Az), angular frequency
  double kappa = 1e4;                         // recombination rate (1/s)
  double gamma_dephasing = 1e3;               // electron dephasing rate (1/s)
  double gyromagnetic = kGyromagnetic;        // angular frequency per tesla

  static constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T
  static constexpr double kHbar = 1.054571817e-34;           // J s
  // mu_B g_s / (2 hbar) with g_s = 2, about 8.794e10 (rad/s)/T.
  static constexpr double kGyromagnetic = kBohrMagneton / kHbar;
};

Liouvillian build_radical_pair_liouvillian(const RadicalPairParams& p);

/// Singlet/triplet states of the two-electron factor, as product-basis columns
/// in the order |s>, |t0>, |t-1>, |t+1>.
Matrix two_electron_st_basis();

/// Coherent three-spin model (electron1 x electron2 x nucleus) with the
/// nucleus-conditioned phase evolution of electron 1 and nothing else.
struct SimplifiedRpParams {
  double a = 0.5;    // nuclear spin-up weight in [0, 1]
  double a_z = 1e5;  // hyperfine strength (angular frequency)
};

Liouvillian build_simplified_rp_liouvillian(const SimplifiedRpParams& p);

/// |s><s| (x) (a |up><up| + (1-a) |down><down|) on electron1 x electron2 x nucleus.
Matrix simplified_rp_initial_state(const SimplifiedRpParams& p);

}  // namespace tempsteer::dynamics
