// Gauss-Legendre and Gauss-Jacobi rules on [-1,1] via Golub-Welsch.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace fcq {

/// Quadrature rule on [-1,1]: sum_k weights[k] * f(nodes[k]) approximates
/// the integral of w(x) f(x), where w is the weight the rule was built for.
struct QuadRule {
  Eigen::VectorXd nodes;    // strictly increasing, inside (-1,1)
  Eigen::VectorXd weights;  // all positive
};

namespace detail {

// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix,
// weights are mu0 times the squared first components of its eigenvectors.
inline QuadRule golub_welsch(const Eigen::VectorXd& diag,
                             const Eigen::VectorXd& subdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: tridiagonal eigensolver failed");
  QuadRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = mu0 * es.eigenvectors().row(0).array().square();
  return rule;
}

}  // namespace detail

/// Q-point Gauss-Legendre rule, exact for polynomials of degree 2Q-1.
inline QuadRule gauss_legendre(int Q) {
  if (Q < 1) throw std::invalid_argument("gauss_legendre: Q must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(Q);
  Eigen::VectorXd sub(Q - 1);
  for (int k = 1; k < Q; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return detail::golub_welsch(diag, sub, 2.0);
}

/// Q-point Gauss-Jacobi rule for the weight w(x) = (1+x)^(-alpha) on [-1,1]
/// (Jacobi parameters a = 0, b = -alpha), exact for w times polynomials of
/// degree 2Q-1. The total weight is the zeroth moment 2^(1-alpha)/(1-alpha).
inline QuadRule gauss_jacobi(int Q, double alpha) {
  if (Q < 1) throw std::invalid_argument("gauss_jacobi: Q must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gauss_jacobi: alpha must be in (0,1)");
  const double mu0 = std::pow(2.0, 1.0 - alpha) / (1.0 - alpha);
  Eigen::VectorXd diag(Q), sub(Q - 1);
  diag[0] = -alpha / (2.0 - alpha);
  for (int n = 1; n < Q; ++n) {
    const double t = 2.0 * n - alpha;
    diag[n] = alpha * alpha / (t * (t + 2.0));
    const double beta_n =
        4.0 * n * n * (n - alpha) * (n - alpha) / (t * t * (t * t - 1.0));
    sub[n - 1] = std::sqrt(beta_n);
  }
  return detail::golub_welsch(diag, sub, mu0);
}

}  // namespace fcq
