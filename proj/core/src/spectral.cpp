// Copyright 2026 The PRS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prs/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "prs/rng.hpp"

namespace prs {

double norm2(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // conj(a) * b
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void apply_hermitian(const DirectedAdjacency& graph, std::span<const Complex> v,
                     std::span<Complex> out) {
  const int n = graph.size();
  // std::complex<double> is layout-compatible with double[2].
  const auto* vd = reinterpret_cast<const double*>(v.data());
  for (int i = 0; i < n; ++i) {
    const std::int8_t* row = graph.row(i).data();
    double ya = 0.0;
    double yb = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = row[j];
      ya += y * vd[2 * j];
      yb += y * vd[2 * j + 1];
    }
    out[i] = Complex(-yb, ya);
  }
}

int default_max_iters(int n) noexcept {
  const int log2n = n <= 1 ? 1 : static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1)));
  return std::min(20000, std::max(200, 50 * log2n));
}

namespace {

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(double s, std::span<Complex> x) noexcept {
  for (auto& z : x) z *= s;
}

ComplexVector start_vector(int n, std::uint64_t seed) {
  SequentialRng rng(derive_key(seed, Stream::kStartVector));
  ComplexVector v(static_cast<std::size_t>(n));
  for (auto& z : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  scale(1.0 / norm2(v), v);
  return v;
}

struct RitzPair {
  double value;
  Eigen::VectorXd coeffs;
};

RitzPair top_ritz(const std::vector<double>& alpha, const std::vector<double>& beta,
                  std::size_t m) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
  for (std::size_t i = 0; i < m; ++i) diag[static_cast<Eigen::Index>(i)] = alpha[i];
  for (std::size_t i = 0; i + 1 < m; ++i) sub[static_cast<Eigen::Index>(i)] = beta[i];
  if (m == 1) {
    Eigen::VectorXd one(1);
    one[0] = 1.0;
    return {alpha[0], one};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::Index top = static_cast<Eigen::Index>(m) - 1;
  return {solver.eigenvalues()[top], solver.eigenvectors().col(top)};
}

ComplexVector combine(const std::vector<ComplexVector>& basis,
                      const Eigen::VectorXd& coeffs, std::size_t n) {
  ComplexVector x(n, Complex(0.0, 0.0));
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    axpy(Complex(coeffs[i], 0.0), basis[static_cast<std::size_t>(i)], x);
  }
  scale(1.0 / norm2(x), x);
  return x;
}

}  // namespace

EigenPair top_eigenpair(const DirectedAdjacency& graph,
                        const EigenSolverOptions& options) {
  const int n = graph.size();
  if (n < 1) throw std::invalid_argument("eigensolver: empty matrix");
  if (!(options.tol > 0.0)) throw std::invalid_argument("eigensolver: tol must be positive");
  const auto nn = static_cast<std::size_t>(n);
  const int max_iters = options.max_iters > 0 ? options.max_iters : default_max_iters(n);
  const int krylov = std::min(n, options.krylov_dim > 0 ? options.krylov_dim : 400);

  ComplexVector v = start_vector(n, options.seed);
  if (graph.edge_count() == 0) {
    return {0.0, std::move(v), 0.0, 0};
  }

  ComplexVector w(nn);
  int total = 0;
  EigenPair last;
  std::vector<ComplexVector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;

  while (true) {
    basis.clear();
    alpha.clear();
    beta.clear();
    basis.push_back(v);
    const int cycle = std::max(1, std::min(krylov, max_iters - total));
    int next_check = std::min(cycle, 8);
    RitzPair ritz{0.0, {}};
    for (int j = 0; j < cycle; ++j) {
      apply_hermitian(graph, basis[j], w);
      ++total;
      const double a = inner(basis[j], w).real();
      axpy(Complex(-a, 0.0), basis[j], w);
      if (j > 0) axpy(Complex(-beta[j - 1], 0.0), basis[j - 1], w);
      // Full reorthogonalization, two passes.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) axpy(-inner(b, w), b, w);
      }
      const double b = norm2(w);
      alpha.push_back(a);

      const bool breakdown = b <= 1e-13 * std::max(1.0, std::abs(a));
      const bool end_of_cycle = j + 1 == cycle;
      if (j + 1 == next_check || breakdown || end_of_cycle) {
        ritz = top_ritz(alpha, beta, alpha.size());
        const double estimate = b * std::abs(ritz.coeffs[ritz.coeffs.size() - 1]);
        if (breakdown || estimate <= 0.5 * options.tol * std::abs(ritz.value)) {
          break;
        }
        next_check = std::min(cycle, j + 1 + std::max(8, (j + 1) / 8));
      }
      if (end_of_cycle) break;
      beta.push_back(b);
      scale(1.0 / b, w);
      basis.push_back(w);
    }

    // Ritz vector and its true residual.
    ComplexVector x = combine(basis, ritz.coeffs, nn);
    apply_hermitian(graph, x, w);
    const double rq = inner(x, w).real();
    axpy(Complex(-rq, 0.0), x, w);
    const double residual = norm2(w);
    last = {rq, x, residual, total};
    if (residual <= options.tol * std::abs(rq)) return last;
    if (total >= max_iters) {
      throw EigenSolverError("eigensolver: no convergence after " +
                                 std::to_string(total) + " mat-vecs (residual " +
                                 std::to_string(residual) + ")",
                             std::move(last));
    }
    v = std::move(x);
  }
}

SingularValue sigma_max(const DirectedAdjacency& graph,
                        const EigenSolverOptions& options) {
  const EigenPair top = top_eigenpair(graph, options);
  return {std::abs(top.value), top.residual, top.iterations};
}

std::vector<AnalyticEigenpair> analytic_ordering_eigs(int l) {
  if (l < 1) throw std::invalid_argument("analytic_ordering_eigs: l must be >= 1");
  std::vector<AnalyticEigenpair> out;
  out.reserve(static_cast<std::size_t>(l));
  const double pi = std::numbers::pi;
  for (int t = 1; t <= l; ++t) {
    const double angle = (2.0 * t - 1.0) * pi / (2.0 * l);
    AnalyticEigenpair pair{std::cos(angle) / std::sin(angle), {}};
    pair.vector.reserve(static_cast<std::size_t>(l));
    for (int j = 1; j <= l; ++j) {
      pair.vector.push_back(std::polar(1.0, -pi * (2.0 * t - 1.0) * j / l));
    }
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace prs
