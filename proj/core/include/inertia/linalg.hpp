// Copyright 2026 The inertia Authors
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
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace inertia {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Invariant subspaces of a generator, given as lists of basis indices.
using BlockList = std::vector<std::vector<Index>>;

inline constexpr const char* kGaugeMaxComponent = "max-component-real";
inline constexpr const char* kGaugeTransported = "parallel-transport";

struct DecompositionOptions {
    double degeneracy_threshold = 1e-8;
    // Lower bound on |(G|F)| for unit-norm G, F before the pair is treated as defective.
    double defect_threshold = 1e-10;
};

// Bi-orthonormal eigensystem: B F_k = lambda_k F_k, B^† G_k = conj(lambda_k) G_k,
// (G_k|F_n) = delta_kn. Columns of `rights` and `lefts` hold F_k and G_k.
struct EigenFrame {
    ComplexVector lambdas;
    ComplexMatrix rights;
    ComplexMatrix lefts;
    RealVector chi;
    std::vector<int> block;
    std::string gauge_tag = kGaugeMaxComponent;

    Index size() const { return lambdas.size(); }
    Index dim() const { return rights.rows(); }

    // c_k = (G_k|v)
    ComplexVector coefficients(const ComplexVector& v) const { return lefts.adjoint() * v; }
    // sum_k c_k F_k
    ComplexVector expand(const ComplexVector& c) const { return rights * c; }
    // sum_k lambda_k F_k G_k^†
    ComplexMatrix reconstruct() const;
};

EigenFrame bi_eigendecompose(const ComplexMatrix& B, const DecompositionOptions& opts = {});

// Decomposes each invariant block separately and embeds the block eigenvectors.
// Needed when distinct blocks share an eigenvalue (e.g. a zero mode next to the identity).
EigenFrame bi_eigendecompose(const ComplexMatrix& B, const BlockList& blocks,
                             const DecompositionOptions& opts = {});

// Smallest eigenvalue separation inside any single block.
double min_block_gap(const EigenFrame& frame);

struct ContinuityCorrection {
    // Aligned mode k is mode permutation[k] of the frame being corrected.
    std::vector<Index> permutation;
    // Unit-modulus factors applied to both F_k and G_k.
    ComplexVector phases;
};

ContinuityCorrection track_continuity(const EigenFrame& prev, const EigenFrame& next,
                                      double ambiguity_tol = 1e-6);

EigenFrame apply_correction(const EigenFrame& next, const ContinuityCorrection& corr);

// track_continuity followed by apply_correction.
EigenFrame align_to(const EigenFrame& prev, const EigenFrame& next, double ambiguity_tol = 1e-6);

// exp(-i B theta)
ComplexMatrix propagator_matrix(const ComplexMatrix& B, double theta);

} // namespace inertia
