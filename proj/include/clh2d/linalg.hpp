#pragma once

// Dense kernels on qubit registers. Qubit 0 of a register is the most
// significant bit of a basis index, so kron(a, b) puts a on qubit 0.

#include "clh2d/core.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace clh2d {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class DA, class DB>
DenseMatrix<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  DenseMatrix<typename DA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat2 pauli(char letter);
Mat pauli_string(std::string_view letters);
Mat kron_all(const std::vector<Mat>& factors);
Mat identity_on(int qubits);

inline int bit_of(std::uint64_t index, int qubit, int nq) {
  return static_cast<int>((index >> (nq - 1 - qubit)) & 1U);
}

// Places `op` (acting on `positions`, in that order) inside an nq-qubit register.
template <class Derived>
DenseMatrix<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& op,
                                            const std::vector<int>& positions, int nq) {
  using Scalar = typename Derived::Scalar;
  const int k = static_cast<int>(positions.size());
  const std::uint64_t dim = std::uint64_t{1} << nq;
  const std::uint64_t sub = std::uint64_t{1} << k;
  std::vector<int> rest;
  for (int q = 0; q < nq; ++q) {
    bool used = false;
    for (int p : positions) used = used || (p == q);
    if (!used) rest.push_back(q);
  }
  auto compose = [&](std::uint64_t s, std::uint64_t r) {
    std::uint64_t idx = 0;
    for (int t = 0; t < k; ++t)
      if ((s >> (k - 1 - t)) & 1U) idx |= std::uint64_t{1} << (nq - 1 - positions[t]);
    const int nr = static_cast<int>(rest.size());
    for (int t = 0; t < nr; ++t)
      if ((r >> (nr - 1 - t)) & 1U) idx |= std::uint64_t{1} << (nq - 1 - rest[t]);
    return idx;
  };
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(dim, dim);
  const std::uint64_t nrest = std::uint64_t{1} << rest.size();
  for (std::uint64_t r = 0; r < nrest; ++r)
    for (std::uint64_t a = 0; a < sub; ++a)
      for (std::uint64_t b = 0; b < sub; ++b) {
        const Scalar v = op(a, b);
        if (v != Scalar(0)) out(compose(a, r), compose(b, r)) = v;
      }
  return out;
}

// Realignment for the operator-Schmidt decomposition: row (iL, jL), column (iR, jR).
template <class Derived>
DenseMatrix<typename Derived::Scalar> reshuffle(const Eigen::MatrixBase<Derived>& h,
                                                const std::vector<int>& left, int nq) {
  using Scalar = typename Derived::Scalar;
  std::vector<int> right;
  for (int q = 0; q < nq; ++q) {
    bool in_left = false;
    for (int p : left) in_left = in_left || (p == q);
    if (!in_left) right.push_back(q);
  }
  const int nl = static_cast<int>(left.size());
  const int nr = static_cast<int>(right.size());
  const std::uint64_t dl = std::uint64_t{1} << nl;
  const std::uint64_t dr = std::uint64_t{1} << nr;
  auto sub_index = [&](std::uint64_t full, const std::vector<int>& qs) {
    std::uint64_t s = 0;
    for (int q : qs) s = (s << 1) | static_cast<std::uint64_t>(bit_of(full, q, nq));
    return s;
  };
  DenseMatrix<Scalar> out(dl * dl, dr * dr);
  const std::uint64_t dim = std::uint64_t{1} << nq;
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      const std::uint64_t row = sub_index(i, left) * dl + sub_index(j, left);
      const std::uint64_t col = sub_index(i, right) * dr + sub_index(j, right);
      out(row, col) = h(i, j);
    }
  return out;
}

// (<bra| (x) I) h (|ket> (x) I) with the contracted qubit at `pos`.
Mat partial_element(const Mat& h, int pos, int nq, const Eigen::Vector2cd& bra,
                    const Eigen::Vector2cd& ket);

// I on qubit `pos` tensored with m acting on the remaining nq - 1 qubits.
Mat insert_identity(const Mat& m, int pos, int nq);

// Partial trace over qubit `pos`.
Mat partial_trace(const Mat& h, int pos, int nq);

template <class DA, class DB>
double commutator_norm(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a * b - b * a).norm();
}

template <class DA, class DB>
double anticommutator_norm(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a * b + b * a).norm();
}

double hermitian_defect(const Mat& m);
double operator_norm(const Mat& m);
bool is_unitary(const Mat& u, double tol);

// log2 of a power-of-two dimension, or -1.
int qubit_count(Eigen::Index dim);

}  // namespace clh2d

namespace clh2d {

// out = (op on `positions`) applied to an nq-qubit amplitude vector.
void apply_on_qubits(const Mat& op, const std::vector<int>& positions, int nq, const Vec& in, Vec& out);

// All 4^r Pauli-basis coefficients c_P = tr(P h) / 2^r, letters over "IXYZ".
std::vector<std::pair<std::string, cplx>> pauli_coefficients(const Mat& h);

}  // namespace clh2d
