// Implicit Runge-Kutta methods (BDF1, Radau IIA 2- and 3-stage) with the
// stability-function machinery used by the convolution-weight quadrature.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fcq {

/// A-stable, stiffly accurate Runge-Kutta method (last row of A equals b,
/// c_s = 1) together with the analytic constants of its stability function:
///  - pole_margin: a margin b > 0 with all poles of r(z) in Re z > b,
///  - gamma, Cq:   |r(z)| <= exp(gamma Re z) on 0 <= Re z <= pole_margin and
///                 ||q(z)||_2 <= Cq on Re z <= pole_margin,
///  - decay_c, decay_x0: ||r(z)^n q(z)||_2 <= |x0 - c Re z|^(-n-1) on Re z < 0.
struct RKMethod {
  std::string name;
  int s = 0;  // stage count
  int p = 0;  // classical order
  int q = 0;  // stage order
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  double pole_margin = 0.0;
  double gamma = 1.0;
  double Cq = 1.0;
  double decay_c = 0.0;
  double decay_x0 = 0.0;

  // cached algebra shared by the weight representation
  Eigen::MatrixXd Ainv;
  Eigen::VectorXd Ainv_one;       // A^{-1} 1
  Eigen::RowVectorXd bT_Ainv;     // b^T A^{-1}
};

/// Stability function r(z) = 1 + z b^T (I - zA)^{-1} 1.
inline std::complex<double> stability_r(const RKMethod& m,
                                        std::complex<double> z) {
  using Mat = Eigen::MatrixXcd;
  Mat I_zA = Mat::Identity(m.s, m.s) - z * m.A.cast<std::complex<double>>();
  Eigen::PartialPivLU<Mat> lu(I_zA);
  if (std::abs(lu.determinant()) < 1e-300)
    throw std::runtime_error("stability_r: I - zA numerically singular");
  Eigen::VectorXcd y = lu.solve(Eigen::VectorXcd::Ones(m.s));
  return 1.0 + z * (m.b.cast<std::complex<double>>().transpose() * y)(0);
}

/// q(z) = b^T (I - zA)^{-1}.
inline Eigen::RowVectorXcd q_row(const RKMethod& m, std::complex<double> z) {
  using Mat = Eigen::MatrixXcd;
  Mat I_zA = Mat::Identity(m.s, m.s) - z * m.A.cast<std::complex<double>>();
  Eigen::PartialPivLU<Mat> lu(I_zA.transpose());
  if (std::abs(lu.determinant()) < 1e-300)
    throw std::runtime_error("q_row: I - zA numerically singular");
  Eigen::VectorXcd x = lu.solve(m.b.cast<std::complex<double>>());
  return x.transpose();
}

/// Real-axis fast paths (everything in the fast algorithm is real).
inline double stability_r(const RKMethod& m, double z) {
  Eigen::MatrixXd I_zA = Eigen::MatrixXd::Identity(m.s, m.s) - z * m.A;
  Eigen::VectorXd y = I_zA.partialPivLu().solve(Eigen::VectorXd::Ones(m.s));
  return 1.0 + z * m.b.dot(y);
}

inline Eigen::RowVectorXd q_row(const RKMethod& m, double z) {
  Eigen::MatrixXd I_zA = Eigen::MatrixXd::Identity(m.s, m.s) - z * m.A;
  return I_zA.transpose().partialPivLu().solve(m.b).transpose();
}

/// Delta(zeta) = (A + zeta/(1-zeta) 1 b^T)^{-1}, evaluated through its
/// explicit rank-one form A^{-1} - zeta A^{-1} 1 b^T A^{-1}.
inline Eigen::MatrixXcd delta_matrix(const RKMethod& m,
                                     std::complex<double> zeta) {
  Eigen::MatrixXcd d = m.Ainv.cast<std::complex<double>>();
  d.noalias() -= zeta * (m.Ainv_one.cast<std::complex<double>>() *
                         m.bT_Ainv.cast<std::complex<double>>());
  return d;
}

/// Principal fractional power of a complex matrix via eigendecomposition.
/// Requires all eigenvalues off the closed negative real axis.
inline Eigen::MatrixXcd matrix_frac_power(const Eigen::MatrixXcd& M,
                                          double mu) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("matrix_frac_power: eigensolver failed");
  const Eigen::VectorXcd& lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i].real() <= 0.0 && std::abs(lam[i].imag()) < 1e-14 * std::abs(lam[i]))
      throw std::runtime_error("matrix_frac_power: eigenvalue on branch cut");
  }
  const Eigen::MatrixXcd& V = es.eigenvectors();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
  if (!lu.isInvertible())
    throw std::runtime_error("matrix_frac_power: defective eigenbasis");
  Eigen::VectorXcd powed(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    powed[i] = std::pow(lam[i], std::complex<double>(mu));
  return V * powed.asDiagonal() * lu.inverse();
}

/// Principal fractional power of a real matrix. The result of the principal
/// branch is real when the spectrum is closed under conjugation; imaginary
/// parts below 1e-12 (relative) are discarded, anything larger throws.
inline Eigen::MatrixXd matrix_frac_power(const Eigen::MatrixXd& M, double mu) {
  Eigen::MatrixXcd W = matrix_frac_power(Eigen::MatrixXcd(M.cast<std::complex<double>>()), mu);
  const double scale = std::max(1.0, W.real().norm());
  if (W.imag().norm() > 1e-12 * scale)
    throw std::runtime_error(
        "matrix_frac_power: non-negligible imaginary residue");
  return W.real();
}

struct GrowthConstants {
  double gamma;
  double Cq;
};

/// gamma = max(1, sup_{Re z = b} log|r(z)| / b) and
/// Cq = sup over the lines Re z = 0 and Re z = b of ||q(z)||_2,
/// both by dense log-spaced sampling of |Im z| in [0, 1e4].
inline GrowthConstants growth_constants(const RKMethod& m, double pole_margin,
                                        int samples = 100000) {
  const double b = pole_margin;
  double sup_logr = std::log(std::abs(stability_r(m, std::complex<double>(b, 0.0))));
  double sup_q = std::max(q_row(m, std::complex<double>(0.0, 0.0)).norm(),
                          q_row(m, std::complex<double>(b, 0.0)).norm());
  const double y_lo = 1e-3, y_hi = 1e4;
  const double step = std::log(y_hi / y_lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double y = y_lo * std::exp(i * step);
    sup_logr = std::max(sup_logr,
                        std::log(std::abs(stability_r(m, {b, y}))));
    sup_q = std::max({sup_q, q_row(m, std::complex<double>(0.0, y)).norm(),
                      q_row(m, std::complex<double>(b, y)).norm()});
  }
  return {std::max(1.0, sup_logr / b), sup_q};
}

struct DecayConstants {
  double c;
  double x0;
};

inline DecayConstants decay_constants(const RKMethod& m) {
  return {m.decay_c, m.decay_x0};
}

namespace detail {

inline void finalize_method(RKMethod& m) {
  m.Ainv = m.A.inverse();
  m.Ainv_one = m.Ainv * Eigen::VectorXd::Ones(m.s);
  m.bT_Ainv = m.b.transpose() * m.Ainv;
  GrowthConstants g = growth_constants(m, m.pole_margin);
  m.gamma = g.gamma;
  m.Cq = g.Cq;
}

}  // namespace detail

/// Backward Euler as a 1-stage stiffly accurate method.
inline RKMethod bdf1() {
  RKMethod m;
  m.name = "bdf1";
  m.s = 1;
  m.p = 1;
  m.q = 1;
  m.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  m.b = Eigen::VectorXd::Constant(1, 1.0);
  m.c = Eigen::VectorXd::Constant(1, 1.0);
  m.pole_margin = 0.5;  // pole of r at z = 1
  m.decay_c = 1.0;
  m.decay_x0 = 1.0;
  detail::finalize_method(m);
  return m;
}

/// 2-stage Radau IIA (order 3, stage order 2).
inline RKMethod radau2() {
  RKMethod m;
  m.name = "radau2";
  m.s = 2;
  m.p = 3;
  m.q = 2;
  m.A.resize(2, 2);
  m.A << 5.0 / 12.0, -1.0 / 12.0,
         3.0 / 4.0,   1.0 / 4.0;
  m.b.resize(2);
  m.b << 3.0 / 4.0, 1.0 / 4.0;
  m.c.resize(2);
  m.c << 1.0 / 3.0, 1.0;
  m.pole_margin = 1.0;  // poles of r at 2 +- sqrt(2) i
  m.decay_c = 0.5;
  m.decay_x0 = 1.0;
  detail::finalize_method(m);
  return m;
}

/// 3-stage Radau IIA (order 5, stage order 3).
inline RKMethod radau3() {
  const double r6 = std::sqrt(6.0);
  RKMethod m;
  m.name = "radau3";
  m.s = 3;
  m.p = 5;
  m.q = 3;
  m.A.resize(3, 3);
  m.A << (88.0 - 7.0 * r6) / 360.0, (296.0 - 169.0 * r6) / 1800.0, (-2.0 + 3.0 * r6) / 225.0,
         (296.0 + 169.0 * r6) / 1800.0, (88.0 + 7.0 * r6) / 360.0, (-2.0 - 3.0 * r6) / 225.0,
         (16.0 - r6) / 36.0, (16.0 + r6) / 36.0, 1.0 / 9.0;
  m.b.resize(3);
  m.b << (16.0 - r6) / 36.0, (16.0 + r6) / 36.0, 1.0 / 9.0;
  m.c.resize(3);
  m.c << (4.0 - r6) / 10.0, (4.0 + r6) / 10.0, 1.0;
  m.pole_margin = 1.0;  // real pole of r near 2.681
  m.decay_c = 0.3245;
  m.decay_x0 = 0.8699;
  detail::finalize_method(m);
  return m;
}

inline RKMethod rk_method_by_name(std::string_view name) {
  if (name == "bdf1") return bdf1();
  if (name == "radau2") return radau2();
  if (name == "radau3") return radau3();
  throw std::invalid_argument("unknown RK method: " + std::string(name));
}

}  // namespace fcq
