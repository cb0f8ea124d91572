#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clh2d {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

enum class ErrorCode {
  NonSurface,
  BadPolygon,
  IntersectionViolation,
  SizeTooSmall,
  Unreachable,
  NotSimple,
  NotHermitian,
  NormExceeded,
  NonCommuting,
  WrongDimension,
  NotClosed,
  TooLarge,
  DimThree,
  NotAnticommuting,
  CalibrationConflict,
  NotInvariant,
  TooLargeForProver,
  EquivalenceViolation,
  NoSpecialEdge,
  BadParams,
  NoCenter,
  BadSpectrum,
  BackendUnsupported,
  OddExcitations,
  NotDefectedForm,
  MethodUnsupported,
  ParseError,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

struct Tolerances {
  double commute = 1e-9;     // Frobenius norm of commutators between terms
  double hermitian = 1e-9;
  double norm_slack = 1e-6;  // norms in (1, 1 + slack] warn instead of failing
  double rank = 1e-8;        // Schmidt and algebra-closure rank cut
  double invariance = 1e-9;  // ||[h, pi (x) I]||_F for classical projectors
  double ground = 1e-9;      // eigenvalue window of a ground space
  double certify = 1e-9;     // string operator (anti)commutation
};

}  // namespace clh2d
