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

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "prs/model.hpp"

namespace prs {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

double norm2(std::span<const Complex> v) noexcept;
Complex inner(std::span<const Complex> a, std::span<const Complex> b) noexcept;

/// out = (iY) v for the real skew-symmetric Y; computed as i(Ya) - (Yb) for
/// v = a + ib so only real mat-vecs touch the byte matrix.
void apply_hermitian(const DirectedAdjacency& graph, std::span<const Complex> v,
                     std::span<Complex> out);

struct EigenSolverOptions {
  /// Relative residual target: ||iY v - lambda v|| <= tol * |lambda|.
  double tol = 1e-8;
  /// Cap on mat-vecs; 0 selects min(20000, max(200, 50 * ceil(log2 n))).
  int max_iters = 0;
  /// Lanczos basis size before an explicit restart; 0 selects min(n, 400).
  int krylov_dim = 0;
  /// Seed of the random complex start vector.
  std::uint64_t seed = 0;
};

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;  // unit norm
  double residual = 0.0;
  int iterations = 0;
};

/// Thrown when the solver exhausts max_iters; carries the last Ritz pair.
class EigenSolverError : public std::runtime_error {
 public:
  EigenSolverError(const std::string& what, EigenPair last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const EigenPair& last() const noexcept { return last_; }

 private:
  EigenPair last_;
};

int default_max_iters(int n) noexcept;

/// Eigenpair of iY with the largest signed eigenvalue (Lanczos with full
/// reorthogonalization). Requires n >= 1.
EigenPair top_eigenpair(const DirectedAdjacency& graph,
                        const EigenSolverOptions& options = {});

struct SingularValue {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Largest singular value of Y. For real skew-symmetric Y the spectrum of iY
/// is symmetric about zero, so this equals lambda_max(iY).
SingularValue sigma_max(const DirectedAdjacency& graph,
                        const EigenSolverOptions& options = {});

/// Closed-form eigenpairs of the ordering matrix A_l (A_ij = i for i < j,
/// -i for i > j): lambda_t = cot((2t-1) pi / (2l)) with unnormalised vector
/// entries exp(-i pi (2t-1) j / l), j = 1..l. Listed for t = 1..l, so values
/// are decreasing.
struct AnalyticEigenpair {
  double value;
  ComplexVector vector;
};
std::vector<AnalyticEigenpair> analytic_ordering_eigs(int l);

}  // namespace prs
