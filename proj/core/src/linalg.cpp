#include "berezin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "berezin/error.hpp"
#include "berezin/optimize.hpp"

namespace berezin {

namespace {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

// Cyclic complex Jacobi. On return `a` is (numerically) diagonal; if `v` is
// non-null it accumulates the rotations so that input = V diag(a) V*.
int jacobi_diagonalize(CMatrix& a, CMatrix* v, const JacobiOptions& options) {
  const Eigen::Index n = a.rows();
  const double scale = a.norm();
  if (n < 2 || scale == 0.0) return 0;
  const double threshold = options.off_tolerance * scale;

  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) return sweep;
    if (sweep == options.max_sweeps) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex z = a(p, q);
        const double mag = std::abs(z);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = std::conj(z) / mag;  // e^{-i phi}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {  // a <- a J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // a <- J* a
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v != nullptr) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = (*v)(k, p);
            const Complex vkq = (*v)(k, q);
            (*v)(k, p) = vkp * jpp + vkq * jqp;
            (*v)(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "Jacobi iteration did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
}

CMatrix checked_hermitian(const CMatrix& a, std::string_view what) {
  require_square(a, what);
  require_finite(a, what);
  if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
  return hermitian_part(a);
}

// Clamp roundoff negatives; reject genuinely negative spectra.
RVector clamp_spectrum(const RVector& values, std::string_view what) {
  const double scale = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  RVector out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < -psd_clamp * scale) {
        throw Error(ErrorCode::NotPSD, std::string(what) + " has eigenvalue " + std::to_string(out(i)));
      }
      out(i) = 0.0;
    }
  }
  return out;
}

CMatrix reassemble(const HermEig& eig, const RVector& values) {
  return eig.eigenvectors * values.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) * 0.5; }

void require_finite(const CMatrix& a, std::string_view what) {
  if (!a.allFinite()) throw Error(ErrorCode::NonFiniteEntry, std::string(what) + " has non-finite entries");
}

void require_square(const CMatrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + ", expected square");
  }
}

bool is_hermitian(const CMatrix& a, double relative_tolerance) {
  if (a.rows() != a.cols()) return false;
  const double scale = max_abs(a);
  if (scale == 0.0) return true;
  return max_abs(a - a.adjoint()) <= relative_tolerance * scale;
}

bool is_psd(const CMatrix& a) {
  if (!is_hermitian(a) || !a.allFinite()) return false;
  const RVector values = herm_eigenvalues(hermitian_part(a));
  if (values.size() == 0) return true;
  const double scale = values.cwiseAbs().maxCoeff();
  return values.minCoeff() >= -psd_clamp * scale;
}

HermEig herm_eig(const CMatrix& a, const JacobiOptions& options) {
  CMatrix work = checked_hermitian(a, "herm_eig input");
  const Eigen::Index n = work.rows();
  CMatrix v = CMatrix::Identity(n, n);
  const int sweeps = jacobi_diagonalize(work, &v, options);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return work(i, i).real() < work(j, j).real(); });

  HermEig out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = work(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

RVector herm_eigenvalues(const CMatrix& a, const JacobiOptions& options) {
  CMatrix work = checked_hermitian(a, "herm_eigenvalues input");
  jacobi_diagonalize(work, nullptr, options);
  RVector values = work.diagonal().real();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

double lambda_max(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  const RVector values = herm_eigenvalues(hermitian);
  return values(values.size() - 1);
}

CMatrix sqrt_psd(const CMatrix& a) {
  const HermEig eig = herm_eig(a);
  return reassemble(eig, clamp_spectrum(eig.eigenvalues, "sqrt_psd input").cwiseSqrt());
}

CMatrix abs_op(const CMatrix& a) {
  require_finite(a, "abs_op input");
  const CMatrix gram = a.adjoint() * a;
  const HermEig eig = herm_eig(gram);
  return reassemble(eig, clamp_spectrum(eig.eigenvalues, "a* a").cwiseSqrt());
}

CMatrix apply_spectral_fn(const CMatrix& a, const ScalarFunction& f) {
  const HermEig eig = herm_eig(a);
  RVector values = clamp_spectrum(eig.eigenvalues, "apply_spectral_fn input");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double fx = f(values(i));
    if (!std::isfinite(fx)) {
      throw Error(ErrorCode::NonFiniteFunctionValue,
                  "spectral function is not finite at " + std::to_string(values(i)));
    }
    values(i) = fx;
  }
  return reassemble(eig, values);
}

CMatrix psd_power(const CMatrix& a, double p) {
  if (p == 1.0) {
    if (!is_psd(a)) throw Error(ErrorCode::NotPSD, "psd_power input is not PSD");
    return hermitian_part(a);
  }
  return apply_spectral_fn(a, [p](double x) { return std::pow(x, p); });
}

CMatrix matrix_power(const CMatrix& a, int k) {
  require_square(a, "matrix_power input");
  if (k < 0) throw Error(ErrorCode::BadPower, "negative matrix power");
  CMatrix result = CMatrix::Identity(a.rows(), a.cols());
  CMatrix base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

double op_norm(const CMatrix& a) {
  require_finite(a, "op_norm input");
  if (a.size() == 0) return 0.0;
  const CMatrix gram = a.rows() < a.cols() ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  return std::sqrt(std::max(0.0, lambda_max(hermitian_part(gram))));
}

double numerical_radius(const CMatrix& a, int angles) {
  require_square(a, "numerical_radius input");
  require_finite(a, "numerical_radius input");
  if (angles < 64) throw Error(ErrorCode::BadParameter, "numerical_radius needs at least 64 angles");
  if (a.size() == 0) return 0.0;

  // Re(e^{i t} a) = cos t * Re(a) - sin t * Im(a)
  const CMatrix re = hermitian_part(a);
  const CMatrix im = (a - a.adjoint()) * Complex(0.0, -0.5);
  auto profile = [&](double theta) {
    const CMatrix h = std::cos(theta) * re - std::sin(theta) * im;
    return lambda_max(h);
  };

  const double step = 2.0 * std::numbers::pi / angles;
  int best_k = 0;
  double best = profile(0.0);
  for (int k = 1; k < angles; ++k) {
    const double v = profile(k * step);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  const double centre = best_k * step;
  const LineMaximum refined = golden_section_maximize(profile, centre - step, centre + step, 1e-10);
  return std::max(best, refined.value);
}

double numerical_radius_entrywise_nonneg(const CMatrix& a) {
  require_square(a, "numerical_radius_entrywise_nonneg input");
  require_finite(a, "numerical_radius_entrywise_nonneg input");
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j).imag() != 0.0 || a(i, j).real() < 0.0) {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") is not a nonnegative real");
      }
    }
  }
  if (a.size() == 0) return 0.0;
  return lambda_max(hermitian_part(a));
}

}  // namespace berezin
