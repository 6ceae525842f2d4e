#pragma once

// Levi form of rho = Q(|z_1|^2, ..., |z_n|^2) - 1 on the complex tangent space.

#include "reinhardt/domain.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace reinhardt {

inline constexpr double kEigenTolerance = 1e-9;

enum class LeviVerdict {
  positive_definite,
  positive_semidefinite,
  indefinite,
  negative_semidefinite,
  negative_definite
};

inline const char* to_string(LeviVerdict v) {
  switch (v) {
    case LeviVerdict::positive_definite: return "positive_definite";
    case LeviVerdict::positive_semidefinite: return "positive_semidefinite";
    case LeviVerdict::indefinite: return "indefinite";
    case LeviVerdict::negative_semidefinite: return "negative_semidefinite";
    case LeviVerdict::negative_definite: return "negative_definite";
  }
  return "?";
}

inline LeviVerdict levi_verdict(const std::vector<double>& eigenvalues, double tol = kEigenTolerance) {
  bool pos = false, neg = false, zero = false;
  for (double x : eigenvalues) {
    if (x > tol) pos = true;
    else if (x < -tol) neg = true;
    else zero = true;
  }
  if (pos && neg) return LeviVerdict::indefinite;
  if (neg) return zero ? LeviVerdict::negative_semidefinite : LeviVerdict::negative_definite;
  if (zero) return LeviVerdict::positive_semidefinite;
  return LeviVerdict::positive_definite;
}

struct LeviReport {
  ComplexPoint point;
  std::vector<Complex> gradient;  // d rho / d z_j
  /// Orthonormal basis of {w : sum_j w_j d rho/d z_j = 0}.
  std::vector<std::vector<Complex>> tangent_basis;
  ComplexMatrix matrix;  // L(t_a, t_b), Hermitian
  std::vector<double> orthonormal_eigenvalues;
  /// Chart basis: w = e_k - (g_k / g_p) e_p for k != pivot p, the first
  /// coordinate with nonzero gradient; the form in the coordinates (w_k)_{k != p}.
  std::size_t pivot = 0;
  std::vector<std::vector<Complex>> chart_basis;
  ComplexMatrix chart_matrix;
  std::vector<double> eigenvalues;  // of chart_matrix, ascending
  LeviVerdict verdict = LeviVerdict::positive_definite;
};

namespace detail {

inline ComplexMatrix restrict_form(const Eigen::MatrixXcd& l, const std::vector<std::vector<Complex>>& basis) {
  const std::size_t k = basis.size();
  ComplexMatrix m(k, std::vector<Complex>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Complex s = 0;
      for (Eigen::Index j = 0; j < l.rows(); ++j)
        for (Eigen::Index c = 0; c < l.cols(); ++c)
          s += l(j, c) * basis[a][static_cast<std::size_t>(j)] * std::conj(basis[b][static_cast<std::size_t>(c)]);
      m[a][b] = s;
    }
  return m;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const auto k = static_cast<Eigen::Index>(m.size());
  if (k == 0) return {};
  Eigen::MatrixXcd h(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      h(a, b) = 0.5 * (m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +
                       std::conj(m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Eigen::Index a = 0; a < k; ++a) out[static_cast<std::size_t>(a)] = es.eigenvalues()(a);
  return out;
}

}  // namespace detail

/// Levi form at a boundary point q. Throws DomainError if q is not on the
/// boundary within `band` or the gradient vanishes there.
inline LeviReport levi_form(const DomainSpec& spec, const ComplexPoint& q, double band = 1e-9,
                            double tol = kEigenTolerance) {
  spec.check(q);
  const std::size_t n = spec.dim();
  const double r = spec.rho(q);
  if (std::abs(r) > band) throw DomainError("Levi form: point is not on the boundary (rho = " + std::to_string(r) + ")");
  LeviReport rep;
  rep.point = q;
  rep.gradient = spec.rho_gradient(q);
  double gnorm = 0;
  for (const auto& g : rep.gradient) gnorm += std::norm(g);
  gnorm = std::sqrt(gnorm);
  if (gnorm < 1e-12) throw DomainError("Levi form: degenerate gradient at the point");

  const auto u = q.moduli();
  Eigen::MatrixXcd l(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Complex v = spec.q_second(j, k, u) * std::conj(q[j]) * q[k];
      if (j == k) v += spec.q_partial(j, u);
      l(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
    }

  // Orthonormal complement of conj(gradient) by Gram-Schmidt.
  std::vector<std::vector<Complex>> basis{std::vector<Complex>(n)};
  for (std::size_t j = 0; j < n; ++j) basis[0][j] = std::conj(rep.gradient[j]) / gnorm;
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    std::vector<Complex> v(n);
    v[e] = 1.0;
    for (const auto& b : basis) {
      Complex dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += v[j] * std::conj(b[j]);
      for (std::size_t j = 0; j < n; ++j) v[j] -= dot * b[j];
    }
    double norm = 0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (auto& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  rep.tangent_basis.assign(basis.begin() + 1, basis.end());
  rep.matrix = detail::restrict_form(l, rep.tangent_basis);
  rep.orthonormal_eigenvalues = detail::hermitian_eigenvalues(rep.matrix);

  while (std::abs(rep.gradient[rep.pivot]) <= 1e-12 * gnorm) ++rep.pivot;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == rep.pivot) continue;
    std::vector<Complex> v(n);
    v[k] = 1.0;
    v[rep.pivot] = -rep.gradient[k] / rep.gradient[rep.pivot];
    rep.chart_basis.push_back(std::move(v));
  }
  rep.chart_matrix = detail::restrict_form(l, rep.chart_basis);
  rep.eigenvalues = detail::hermitian_eigenvalues(rep.chart_matrix);
  rep.verdict = levi_verdict(rep.orthonormal_eigenvalues, tol);
  return rep;
}

}  // namespace reinhardt
