// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "qmat/qmat.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tempsteer::qmat {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

void check_label(const Matrix& m, const SpaceLabel& label) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  if (m.rows() != label.dim())
    throw ValidationError("space label dimension " + std::to_string(label.dim()) +
                          " does not match matrix dimension " + std::to_string(m.rows()));
}

// Offsets of every multi-index over the given factors (dims/strides aligned).
std::vector<int> enumerate_offsets(const std::vector<int>& dims, const std::vector<int>& strides) {
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> offs(total, 0);
  for (int idx = 0; idx < total; ++idx) {
    int rem = idx;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
      offs[idx] += (rem % dims[f]) * strides[f];
      rem /= dims[f];
    }
  }
  return offs;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const SpaceLabel& label,
                     const std::vector<std::string>& keep) {
  check_label(m, label);
  std::vector<bool> kept(label.factor_count(), false);
  for (const auto& name : keep) kept[label.index_of(name)] = true;

  std::vector<int> kdims, kstrides, tdims, tstrides;
  for (int f = 0; f < label.factor_count(); ++f) {
    if (kept[f]) {
      kdims.push_back(label.factor_dim(f));
      kstrides.push_back(label.stride(f));
    } else {
      tdims.push_back(label.factor_dim(f));
      tstrides.push_back(label.stride(f));
    }
  }
  const auto koffs = enumerate_offsets(kdims, kstrides);
  const auto toffs = enumerate_offsets(tdims, tstrides);

  const int dk = static_cast<int>(koffs.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (int t : toffs) s += m(koffs[i] + t, koffs[j] + t);
      out(i, j) = s;
    }
  return out;
}

Matrix partial_transpose(const Matrix& m, const SpaceLabel& label,
                         const std::string& transposed) {
  check_label(m, label);
  const int f = label.index_of(transposed);
  const int df = label.factor_dim(f);
  const int sf = label.stride(f);
  const int n = static_cast<int>(m.rows());

  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const int pi = (i / sf) % df;
    for (int j = 0; j < n; ++j) {
      const int pj = (j / sf) % df;
      out(i, j) = m(i + (pj - pi) * sf, j + (pi - pj) * sf);
    }
  }
  return out;
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

Matrix hermitize(const Matrix& m, double tol) {
  const double defect = hermiticity_defect(m);
  if (defect > tol)
    throw ValidationError("matrix is non-Hermitian beyond tolerance (defect " +
                          std::to_string(defect) + ")");
  return 0.5 * (m + m.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = hermitize(m, 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

EigenSystem hermitian_eigensystem(const Matrix& m) {
  const Matrix h = hermitize(m, 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Pade numerator/denominator split: U odd in A, V even. exp(A) ~ (V-U)^{-1}(V+U).
Matrix pade_solve(const Matrix& u, const Matrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade_low(const Matrix& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix even = b[0] * id;
  Matrix odd = b[1] * id;
  Matrix p = id;
  for (size_t k = 2; k < b.size(); k += 2) {
    p = p * a2;
    even += b[k] * p;
    if (k + 1 < b.size()) odd += b[k + 1] * p;
  }
  return pade_solve(a * odd, even);
}

Matrix pade13(const Matrix& a) {
  static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const int n = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                        b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

}  // namespace

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("expm requires a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return m;

  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  if (norm <= 0.01495585217958292)
    return pade_low(m, {120.0, 60.0, 12.0, 1.0});
  if (norm <= 0.2539398330063230)
    return pade_low(m, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  if (norm <= 0.9504178996162932)
    return pade_low(m, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0});
  if (norm <= 2.097847961257068)
    return pade_low(m, {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                        2162160.0, 110880.0, 3960.0, 90.0, 1.0});

  const double theta13 = 5.371920351148152;
  int s = 0;
  if (norm > theta13) s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  Matrix r = pade13(m * std::pow(2.0, -s));
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Vector basis_ket(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix pauli_plus() {
  Matrix m(2, 2);
  m << 0, 0, 1, 0;  // |e><g|, e = |1>
  return m;
}

Matrix pauli_minus() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

double min_eigenvalue(const Matrix& hermitian) {
  return hermitian_eigenvalues(hermitian).minCoeff();
}

Matrix clip_psd(const Matrix& hermitian, double floor) {
  const auto es = hermitian_eigensystem(hermitian);
  const double original_trace = es.values.sum();
  Eigen::VectorXd clipped = es.values;
  for (Eigen::Index i = 0; i < clipped.size(); ++i) {
    if (clipped(i) < floor)
      throw NumericalError("eigenvalue " + std::to_string(clipped(i)) +
                           " below PSD clipping floor " + std::to_string(floor));
    if (clipped(i) < 0.0) clipped(i) = 0.0;
  }
  const double new_trace = clipped.sum();
  if (original_trace > 0.0 && new_trace > 0.0) clipped *= original_trace / new_trace;
  return es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
}

bool is_density_matrix(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (hermiticity_defect(m) > tol) return false;
  if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol) return false;
  return min_eigenvalue(m) >= -tol;
}

}  // namespace tempsteer::qmat
