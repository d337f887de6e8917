#pragma once

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace berezin {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Spectral decomposition of a Hermitian matrix: `eigenvalues` ascending,
/// columns of `eigenvectors` the matching orthonormal eigenvectors.
struct HermEig {
  RVector eigenvalues;
  CMatrix eigenvectors;
  int sweeps = 0;
};

struct JacobiOptions {
  /// Sweeps stop once the off-diagonal Frobenius norm drops below
  /// `off_tolerance * ||a||_F`.
  double off_tolerance = 1e-13;
  int max_sweeps = 60;
};

/// Eigenvalues in [-psd_clamp * ||a||, 0) are treated as roundoff and set to 0.
inline constexpr double psd_clamp = 1e-10;
inline constexpr double hermitian_tolerance = 1e-12;

using ScalarFunction = std::function<double(double)>;

// Inner product linear in the first argument: <x, y> = sum x_i conj(y_i).
inline Complex inner(const CVector& x, const CVector& y) { return y.dot(x); }

CMatrix identity(Eigen::Index n);
CMatrix adjoint(const CMatrix& a);
CMatrix hermitian_part(const CMatrix& a);

void require_finite(const CMatrix& a, std::string_view what);
void require_square(const CMatrix& a, std::string_view what);
bool is_hermitian(const CMatrix& a, double relative_tolerance = hermitian_tolerance);
bool is_psd(const CMatrix& a);

HermEig herm_eig(const CMatrix& a, const JacobiOptions& options = {});
/// Eigenvalues only (ascending); same Jacobi iteration without accumulating
/// the rotations.
RVector herm_eigenvalues(const CMatrix& a, const JacobiOptions& options = {});
double lambda_max(const CMatrix& hermitian);

CMatrix sqrt_psd(const CMatrix& a);
/// |a| = (a* a)^{1/2}; rectangular input gives a cols x cols result.
CMatrix abs_op(const CMatrix& a);
/// V diag(f(lambda)) V* for PSD Hermitian a.
CMatrix apply_spectral_fn(const CMatrix& a, const ScalarFunction& f);
/// a^p for PSD a (0^0 taken as 1).
CMatrix psd_power(const CMatrix& a, double p);
CMatrix matrix_power(const CMatrix& a, int k);

double op_norm(const CMatrix& a);

inline constexpr int default_numerical_radius_angles = 1024;

/// max over theta of lambda_max(Re(e^{i theta} a)): uniform grid of `angles`
/// followed by golden-section refinement around the best grid angle.
double numerical_radius(const CMatrix& a, int angles = default_numerical_radius_angles);

/// For entrywise nonnegative real a the numerical radius equals the largest
/// eigenvalue of the symmetric part.
double numerical_radius_entrywise_nonneg(const CMatrix& a);

}  // namespace berezin
