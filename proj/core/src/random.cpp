#include "berezin/random.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(Ensemble e) noexcept {
  switch (e) {
    case Ensemble::ComplexGaussian: return "ComplexGaussian";
    case Ensemble::RealGaussian: return "RealGaussian";
    case Ensemble::Nilpotent: return "Nilpotent";
    case Ensemble::PSD: return "PSD";
    case Ensemble::Unitary: return "Unitary";
  }
  return "?";
}

Ensemble ensemble_from_string(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  const std::string key = lower(name);
  for (Ensemble e : {Ensemble::ComplexGaussian, Ensemble::RealGaussian, Ensemble::Nilpotent, Ensemble::PSD,
                     Ensemble::Unitary}) {
    if (lower(to_string(e)) == key) return e;
  }
  throw Error(ErrorCode::BadSpec, "unknown ensemble '" + std::string(name) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view label) noexcept {
  return splitmix64(fnv1a(label) ^ (seed * 0x9E3779B97F4A7C15ULL));
}

double Rng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  return rad * std::cos(ang);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * (1.0 / std::numbers::sqrt2);
}

CVector random_vector(Rng& rng, Eigen::Index n, double scale) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal() * scale;
  return v;
}

namespace {

CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols, bool complex) {
  CMatrix m(rows, cols);
  // column-major fill, fixed order
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex ? rng.complex_normal() : Complex(rng.normal(), 0.0);
  }
  return m;
}

void require_square_shape(Eigen::Index rows, Eigen::Index cols, Ensemble e) {
  if (rows != cols) {
    throw Error(ErrorCode::BadSpec, std::string(to_string(e)) + " ensemble needs a square shape");
  }
}

}  // namespace

CMatrix random_matrix(Rng& rng, Ensemble e, Eigen::Index rows, Eigen::Index cols, double scale) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::BadSpec, "matrix dimensions must be >= 1");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::BadSpec, "scale must be finite and >= 0");
  switch (e) {
    case Ensemble::ComplexGaussian: return gaussian(rng, rows, cols, true) * scale;
    case Ensemble::RealGaussian: return gaussian(rng, rows, cols, false) * scale;
    case Ensemble::Nilpotent: {
      require_square_shape(rows, cols, e);
      CMatrix g = gaussian(rng, rows, cols, true);
      return CMatrix(g.triangularView<Eigen::StrictlyUpper>()) * scale;
    }
    case Ensemble::PSD: {
      require_square_shape(rows, cols, e);
      const CMatrix g = gaussian(rng, rows, cols, true);
      return hermitian_part(g.adjoint() * g) * scale;
    }
    case Ensemble::Unitary: {
      require_square_shape(rows, cols, e);
      const CMatrix g = gaussian(rng, rows, cols, true);
      Eigen::HouseholderQR<CMatrix> qr(g);
      CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
      const CMatrix r = qr.matrixQR();
      for (Eigen::Index k = 0; k < cols; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
      }
      return q * scale;
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown ensemble");
}

}  // namespace berezin
