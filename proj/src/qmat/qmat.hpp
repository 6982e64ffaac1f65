// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qmat/space.hpp"

namespace tempsteer::qmat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kHermitianConstructionTol = 1e-12;

Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced matrix on the named (kept) subsystems; trace preserving.
Matrix partial_trace(const Matrix& m, const SpaceLabel& label,
                     const std::vector<std::string>& keep);

/// Transpose applied on the named factor only.
Matrix partial_transpose(const Matrix& m, const SpaceLabel& label,
                         const std::string& transposed);

/// Real spectrum of a Hermitian matrix, ascending. Throws ValidationError
/// if the input is non-Hermitian beyond tolerance.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns
};
EigenSystem hermitian_eigensystem(const Matrix& m);

/// Matrix exponential via Pade approximation with scaling and squaring.
/// Handles general (non-normal) square matrices.
Matrix expm(const Matrix& m);

// --- small helpers -------------------------------------------------------

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

double hermiticity_defect(const Matrix& m);  // max_ij |m - m^dag|
bool is_hermitian(const Matrix& m, double tol = kHermitianConstructionTol);

/// (M + M^dag)/2. Throws ValidationError if the defect exceeds `tol`
/// (pass infinity to symmetrize unconditionally).
Matrix hermitize(const Matrix& m, double tol = 1e-8);

Matrix identity(int d);
Vector basis_ket(int d, int i);
Matrix projector(const Vector& v);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli_plus();   // |e><g| with g=|0>, e=|1>
Matrix pauli_minus();  // |g><e|

double min_eigenvalue(const Matrix& hermitian);

/// Zeroes eigenvalues in [floor, 0) and rescales to the original trace.
/// Throws NumericalError if any eigenvalue lies below `floor`.
Matrix clip_psd(const Matrix& hermitian, double floor = -1e-8);

bool is_density_matrix(const Matrix& m, double tol = 1e-8);

}  // namespace tempsteer::qmat
