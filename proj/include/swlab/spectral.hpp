// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_SPECTRAL_HPP
#define SWLAB_SPECTRAL_HPP

// Matrix-free symmetric eigenvalue machinery: Lanczos with full
// reorthogonalization on the squared operator for smallest-magnitude
// targets, Rayleigh sign recovery with a two-dimensional cluster rotation
// for +/- pairs, explicit deflation for multiplicities, and kernel
// counting behind a visible-gap guard.  Operators are self-adjoint with
// respect to a diagonal metric supplied alongside the apply callback.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swlab/rng.hpp"

namespace swlab {

template <typename Scalar>
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(const std::vector<Scalar>&, std::vector<Scalar>&)> apply;
  std::vector<double> weight;  // diagonal inner-product weights; empty = 1
  std::string name;

  std::vector<Scalar> operator()(const std::vector<Scalar>& x) const {
    std::vector<Scalar> y(dim);
    apply(x, y);
    return y;
  }
};

enum class SpectrumTarget { smallest_magnitude, smallest_algebraic };

struct SpectrumRequest {
  int k = 4;
  SpectrumTarget target = SpectrumTarget::smallest_magnitude;
  double tol = 1e-9;
  int max_iterations = 2000;
  std::uint64_t seed = 7;
};

template <typename Scalar>
struct EigenPair {
  double value = 0.0;
  double residual = 0.0;
  std::vector<Scalar> vector;
};

template <typename Scalar>
struct SpectrumResult {
  std::vector<EigenPair<Scalar>> pairs;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

namespace detail_spec {

inline double conj_times(double a, double b) { return a * b; }
inline std::complex<double> conj_times(const std::complex<double>& a, const std::complex<double>& b) {
  return std::conj(a) * b;
}

template <typename Scalar>
Scalar wdot(const std::vector<double>& w, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar acc{};
  if (w.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += conj_times(a[i], b[i]);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * conj_times(a[i], b[i]);
  }
  return acc;
}

template <typename Scalar>
double wnorm(const std::vector<double>& w, const std::vector<Scalar>& a) {
  return std::sqrt(std::abs(wdot(w, a, a)));
}

template <typename Scalar>
void fill_random(std::vector<Scalar>& v, Rng& rng);
inline void fill_random(std::vector<double>& v, Rng& rng) {
  for (auto& x : v) x = rng.normal();
}
inline void fill_random(std::vector<std::complex<double>>& v, Rng& rng) {
  for (auto& x : v) x = rng.cnormal();
}

// Orthogonalize v against the columns of basis (twice, for stability).
template <typename Scalar>
void orthogonalize(const std::vector<double>& w, const std::vector<std::vector<Scalar>>& basis,
                   std::vector<Scalar>& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const Scalar c = wdot(w, q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
  }
}

}  // namespace detail_spec

// Lanczos factorization of a self-adjoint operator restricted to the
// orthogonal complement of `deflate`.  Returns the Ritz pairs of the
// tridiagonal together with the basis for reconstruction.
template <typename Scalar, typename Apply>
struct LanczosRun {
  std::vector<std::vector<Scalar>> basis;
  std::vector<double> alpha, beta;  // beta[j] couples basis[j], basis[j+1]

  static LanczosRun factorize(const Apply& apply, const std::vector<double>& w,
                              const std::vector<std::vector<Scalar>>& deflate,
                              std::vector<Scalar> v0, int m) {
    using namespace detail_spec;
    LanczosRun run;
    orthogonalize(w, deflate, v0);
    double n0 = wnorm(w, v0);
    if (n0 == 0.0) throw std::runtime_error("lanczos: start vector vanished under deflation");
    for (auto& x : v0) x /= n0;
    run.basis.push_back(v0);
    std::vector<Scalar> av(v0.size());
    for (int j = 0; j < m; ++j) {
      apply(run.basis[j], av);
      const double a = std::real(wdot(w, run.basis[j], av));
      run.alpha.push_back(a);
      // subtract projections and reorthogonalize fully
      std::vector<Scalar> r = av;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= static_cast<Scalar>(a) * run.basis[j][i];
      if (j > 0)
        for (std::size_t i = 0; i < r.size(); ++i)
          r[i] -= static_cast<Scalar>(run.beta[j - 1]) * run.basis[j - 1][i];
      orthogonalize(w, deflate, r);
      orthogonalize(w, run.basis, r);
      const double b = wnorm(w, r);
      if (b < 1e-13 || j + 1 == m) {
        run.beta.push_back(b);
        break;
      }
      run.beta.push_back(b);
      for (auto& x : r) x /= b;
      run.basis.push_back(std::move(r));
    }
    return run;
  }

  // Eigen-decomposition of the tridiagonal; returns (theta, S) with columns of S
  // the tridiagonal eigenvectors, ascending theta.
  void ritz(Eigen::VectorXd& theta, Eigen::MatrixXd& S) const {
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    theta = es.eigenvalues();
    S = es.eigenvectors();
  }

  std::vector<Scalar> assemble(const Eigen::MatrixXd& S, int col) const {
    std::vector<Scalar> u(basis[0].size(), Scalar{});
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double c = S(j, col);
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += static_cast<Scalar>(c) * basis[j][i];
    }
    return u;
  }
};

// Smallest-magnitude (default) or smallest-algebraic eigenpairs of a
// self-adjoint operator.  Smallest-magnitude runs Lanczos on Op^2 and
// recovers signs through Rayleigh quotients, rotating two-dimensional
// clusters when +/- pairs mix.
template <typename Scalar>
SpectrumResult<Scalar> low_spectrum(const LinearOperator<Scalar>& op, const SpectrumRequest& req) {
  using namespace detail_spec;
  SpectrumResult<Scalar> out;
  if (req.k < 1) throw std::invalid_argument("low_spectrum: k must be >= 1");
  if (req.tol <= 0.0) throw std::invalid_argument("low_spectrum: tol must be positive");
  const auto& w = op.weight;
  const bool squared = req.target == SpectrumTarget::smallest_magnitude;

  std::vector<Scalar> tmp(op.dim);
  auto apply_m = [&](const std::vector<Scalar>& x, std::vector<Scalar>& y) {
    if (squared) {
      op.apply(x, tmp);
      op.apply(tmp, y);
    } else {
      op.apply(x, y);
    }
  };

  // crude norm scale for convergence thresholds
  Rng rng(req.seed);
  std::vector<Scalar> probe(op.dim), probe_out(op.dim);
  fill_random(probe, rng);
  double scale = 1e-30;
  for (int i = 0; i < 8; ++i) {
    const double pn = wnorm(w, probe);
    for (auto& x : probe) x /= pn;
    op.apply(probe, probe_out);
    scale = std::max(scale, wnorm(w, probe_out));
    probe.swap(probe_out);
  }
  const double m_scale = squared ? scale * scale : scale;

  std::vector<EigenPair<Scalar>> found;
  std::vector<std::vector<Scalar>> deflate;
  int total_iters = 0;

  auto push_pair = [&](std::vector<Scalar> v) -> bool {
    // Rayleigh value and residual on the original operator
    const double nv = wnorm(w, v);
    for (auto& x : v) x /= nv;
    std::vector<Scalar> av(op.dim);
    op.apply(v, av);
    const double lam = std::real(wdot(w, v, av));
    double res = 0.0;
    {
      std::vector<Scalar> r = av;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= static_cast<Scalar>(lam) * v[i];
      res = wnorm(w, r);
    }
    if (res <= req.tol * std::max(1.0, scale)) {
      deflate.push_back(v);
      found.push_back({lam, res, std::move(v)});
      return true;
    }
    // cluster rotation: diagonalize op on span{v, av}
    std::vector<Scalar> u2 = av;
    {
      const Scalar c = wdot(w, v, u2);
      for (std::size_t i = 0; i < u2.size(); ++i) u2[i] -= c * v[i];
    }
    const double n2 = wnorm(w, u2);
    if (n2 < 1e-10 * std::max(1.0, scale)) return false;
    for (auto& x : u2) x /= n2;
    std::vector<Scalar> av2(op.dim);
    op.apply(u2, av2);
    Eigen::Matrix2d h;
    h(0, 0) = lam;
    h(0, 1) = std::real(wdot(w, v, av2));
    h(1, 0) = std::real(wdot(w, u2, av));
    h(1, 1) = std::real(wdot(w, u2, av2));
    Eigen::Matrix2d hs = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hs);
    bool any = false;
    for (int c = 0; c < 2; ++c) {
      std::vector<Scalar> vv(op.dim);
      for (std::size_t i = 0; i < vv.size(); ++i)
        vv[i] = static_cast<Scalar>(es.eigenvectors()(0, c)) * v[i] +
                static_cast<Scalar>(es.eigenvectors()(1, c)) * u2[i];
      const double nn = wnorm(w, vv);
      if (nn < 1e-12) continue;
      for (auto& x : vv) x /= nn;
      std::vector<Scalar> avv(op.dim);
      op.apply(vv, avv);
      const double lv = std::real(wdot(w, vv, avv));
      std::vector<Scalar> r = avv;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= static_cast<Scalar>(lv) * vv[i];
      const double rv = wnorm(w, r);
      if (rv <= req.tol * std::max(1.0, scale)) {
        orthogonalize(w, deflate, vv);
        const double nd = wnorm(w, vv);
        if (nd > 1e-8) {
          for (auto& x : vv) x /= nd;
          deflate.push_back(vv);
          found.push_back({lv, rv, std::move(vv)});
          any = true;
        }
      }
    }
    return any;
  };

  while (static_cast<int>(found.size()) < req.k && total_iters < req.max_iterations) {
    std::vector<Scalar> v0(op.dim);
    fill_random(v0, rng);
    bool progressed = false;
    int m = 40;
    while (!progressed && total_iters < req.max_iterations) {
      m = std::min<int>(m, static_cast<int>(op.dim > deflate.size() ? op.dim - deflate.size() : 1));
      auto run = LanczosRun<Scalar, decltype(apply_m)>::factorize(apply_m, w, deflate, v0, m);
      total_iters += static_cast<int>(run.alpha.size());
      Eigen::VectorXd theta;
      Eigen::MatrixXd S;
      run.ritz(theta, S);
      const int mm = static_cast<int>(run.alpha.size());
      const double bl = run.beta.empty() ? 0.0 : run.beta.back();
      // examine the lowest Ritz values of M
      for (int c = 0; c < theta.size() && !progressed; ++c) {
        const double bound = std::abs(bl * S(mm - 1, c));
        if (bound <= 10.0 * req.tol * std::max(1.0, m_scale) || mm == static_cast<int>(op.dim - deflate.size())) {
          progressed = push_pair(run.assemble(S, c));
        }
      }
      if (!progressed) {
        if (m >= static_cast<int>(op.dim)) break;
        m *= 2;
      }
    }
    if (!progressed) break;
  }

  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    return squared ? std::abs(a.value) < std::abs(b.value) : a.value < b.value;
  });
  if (static_cast<int>(found.size()) > req.k) found.resize(req.k);
  out.pairs = std::move(found);
  out.iterations = total_iters;
  out.converged = static_cast<int>(out.pairs.size()) == req.k;
  if (!out.converged)
    out.message = "low_spectrum: converged " + std::to_string(out.pairs.size()) + " of " +
                  std::to_string(req.k) + " pairs within the iteration budget";
  return out;
}

// Number of eigenvalues below gap_tol in magnitude, guarded by a visible
// spectral gap: some computed eigenvalue must exceed 10*gap_tol, and none
// may fall in the ambiguous band around the threshold.
template <typename Scalar>
int kernel_dimension(const LinearOperator<Scalar>& op, double gap_tol,
                     const SpectrumRequest& base = {}) {
  SpectrumRequest req = base;
  req.target = SpectrumTarget::smallest_magnitude;
  for (int k = std::max(4, base.k); k <= std::max(4, base.k) * 8; k *= 2) {
    req.k = std::min<int>(k, static_cast<int>(op.dim));
    const auto res = low_spectrum(op, req);
    if (!res.converged) throw std::runtime_error("kernel_dimension: eigensolver did not converge");
    double top = 0.0;
    for (const auto& p : res.pairs) top = std::max(top, std::abs(p.value));
    if (top < 10.0 * gap_tol) {
      if (req.k == static_cast<int>(op.dim)) break;  // whole spectrum is small
      continue;  // no visible gap yet: enlarge the window
    }
    int count = 0;
    for (const auto& p : res.pairs) {
      const double a = std::abs(p.value);
      if (a >= 0.5 * gap_tol && a <= 2.0 * gap_tol)
        throw std::runtime_error("kernel_dimension: no reliable gap near threshold");
      if (a < gap_tol) ++count;
    }
    return count;
  }
  throw std::runtime_error("kernel_dimension: no visible spectral gap above threshold");
}

// Dense matrix of a small operator (column probes); test oracles only.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(const LinearOperator<Scalar>& op) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> M(op.dim, op.dim);
  std::vector<Scalar> e(op.dim, Scalar{}), col(op.dim);
  for (std::size_t j = 0; j < op.dim; ++j) {
    e[j] = Scalar{1.0};
    op.apply(e, col);
    for (std::size_t i = 0; i < op.dim; ++i) M(i, j) = col[i];
    e[j] = Scalar{};
  }
  return M;
}

}  // namespace swlab

#endif  // SWLAB_SPECTRAL_HPP
