#include "clh2d/linalg.hpp"

namespace clh2d {

Mat2 pauli(char letter) {
  const cplx i(0.0, 1.0);
  Mat2 m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw Error(ErrorCode::InvalidArgument, std::string("unknown Pauli letter ") + letter);
  }
  return m;
}

Mat pauli_string(std::string_view letters) {
  Mat out = Mat::Identity(1, 1);
  for (char c : letters) out = kron(out, pauli(c));
  return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Mat identity_on(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return Mat::Identity(d, d);
}

namespace {

std::uint64_t insert_bit(std::uint64_t reduced, int pos, int nq, int bit) {
  // reduced indexes nq - 1 qubits; splice `bit` in at qubit position pos.
  const int low_bits = nq - 1 - pos;
  const std::uint64_t low = reduced & ((std::uint64_t{1} << low_bits) - 1);
  const std::uint64_t high = reduced >> low_bits;
  return (((high << 1) | static_cast<std::uint64_t>(bit)) << low_bits) | low;
}

}  // namespace

Mat partial_element(const Mat& h, int pos, int nq, const Eigen::Vector2cd& bra,
                    const Eigen::Vector2cd& ket) {
  const std::uint64_t d = std::uint64_t{1} << (nq - 1);
  Mat out = Mat::Zero(d, d);
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          acc += std::conj(bra(a)) * h(insert_bit(i, pos, nq, a), insert_bit(j, pos, nq, b)) * ket(b);
      out(i, j) = acc;
    }
  return out;
}

Mat insert_identity(const Mat& m, int pos, int nq) {
  std::vector<int> positions;
  for (int q = 0; q < nq; ++q)
    if (q != pos) positions.push_back(q);
  return embed(m, positions, nq);
}

Mat partial_trace(const Mat& h, int pos, int nq) {
  const std::uint64_t d = std::uint64_t{1} << (nq - 1);
  Mat out(d, d);
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j)
      out(i, j) = h(insert_bit(i, pos, nq, 0), insert_bit(j, pos, nq, 0)) +
                  h(insert_bit(i, pos, nq, 1), insert_bit(j, pos, nq, 1));
  return out;
}

double hermitian_defect(const Mat& m) { return (m - m.adjoint()).norm(); }

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

bool is_unitary(const Mat& u, double tol) {
  return (u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).norm() < tol;
}

int qubit_count(Eigen::Index dim) {
  if (dim <= 0) return -1;
  int q = 0;
  while ((Eigen::Index{1} << q) < dim) ++q;
  return (Eigen::Index{1} << q) == dim ? q : -1;
}

}  // namespace clh2d

namespace clh2d {

void apply_on_qubits(const Mat& op, const std::vector<int>& positions, int nq, const Vec& in, Vec& out) {
  const int k = static_cast<int>(positions.size());
  const std::uint64_t dim = std::uint64_t{1} << nq;
  const std::uint64_t sub = std::uint64_t{1} << k;
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> offset(sub, 0);
  for (int t = 0; t < k; ++t) mask |= std::uint64_t{1} << (nq - 1 - positions[t]);
  for (std::uint64_t s = 0; s < sub; ++s)
    for (int t = 0; t < k; ++t)
      if ((s >> (k - 1 - t)) & 1U) offset[s] |= std::uint64_t{1} << (nq - 1 - positions[t]);
  out.resize(static_cast<Eigen::Index>(dim));
  Vec gathered(static_cast<Eigen::Index>(sub));
  for (std::uint64_t base = 0; base < dim; base = ((base | mask) + 1) & ~mask) {
    for (std::uint64_t s = 0; s < sub; ++s) gathered(s) = in(base | offset[s]);
    for (std::uint64_t a = 0; a < sub; ++a) {
      cplx acc = 0.0;
      for (std::uint64_t b = 0; b < sub; ++b) acc += op(a, b) * gathered(b);
      out(base | offset[a]) = acc;
    }
    if (mask == dim - 1) break;
  }
}

std::vector<std::pair<std::string, cplx>> pauli_coefficients(const Mat& h) {
  const int r = qubit_count(h.rows());
  const std::uint64_t dim = std::uint64_t{1} << r;
  const std::uint64_t count = std::uint64_t{1} << (2 * r);
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::pair<std::string, cplx>> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::string word(r, 'I');
    std::uint64_t xmask = 0, zmask = 0;
    for (int q = 0; q < r; ++q) {
      const int l = static_cast<int>((code >> (2 * (r - 1 - q))) & 3U);
      word[q] = letters[l];
      const std::uint64_t bit = std::uint64_t{1} << (r - 1 - q);
      if (l == 1 || l == 2) xmask |= bit;
      if (l == 2 || l == 3) zmask |= bit;
    }
    int ycount = 0;
    for (char c : word) ycount += (c == 'Y');
    // P|j> = i^ycount (-1)^{popcount(j & zmask)} |j ^ xmask>, so tr(P h) = sum_j <j|P|j^x> h(j^x, j).
    cplx acc = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
      const std::uint64_t k = j ^ xmask;
      // <j|P|k> with P|k> = i^y (-1)^{popcount(k & z)} |k ^ x>.
      const double sign = (__builtin_popcountll(k & zmask) & 1) ? -1.0 : 1.0;
      acc += sign * h(k, j);
    }
    static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    acc *= ipow[ycount % 4];
    out.push_back({word, acc / static_cast<double>(dim)});
  }
  return out;
}

}  // namespace clh2d
