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

#include "inertia/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "inertia/errors.hpp"

namespace inertia {

namespace {

// Lexicographic (Re, Im) order with a tolerance so that round-off in the real part
// does not scramble purely imaginary spectra.
bool eigenvalue_less(cplx a, cplx b, double scale) {
    const double tol = 1e-9 * std::max(1.0, scale);
    if (std::abs(a.real() - b.real()) > tol) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

void check_finite(const ComplexMatrix& B) {
    if (!B.allFinite()) {
        throw std::invalid_argument("bi_eigendecompose: matrix has non-finite entries");
    }
}

// Largest component real and positive. Ties go to the lowest index.
cplx max_component_phase(const ComplexVector& f) {
    const double peak = f.cwiseAbs().maxCoeff();
    for (Index i = 0; i < f.size(); ++i) {
        if (std::abs(f(i)) >= peak * (1.0 - 1e-9)) {
            return std::conj(f(i)) / std::abs(f(i));
        }
    }
    return 1.0;
}

struct BlockSystem {
    ComplexVector lambdas;
    ComplexMatrix rights;
    ComplexMatrix lefts;
};

BlockSystem decompose_block(const ComplexMatrix& A, const DecompositionOptions& opts) {
    const Index n = A.rows();
    Eigen::ComplexEigenSolver<ComplexMatrix> right_solver(A, true);
    Eigen::ComplexEigenSolver<ComplexMatrix> left_solver(A.adjoint(), true);
    if (right_solver.info() != Eigen::Success || left_solver.info() != Eigen::Success) {
        throw NotDiagonalizable("bi_eigendecompose: eigen solver did not converge");
    }
    const ComplexVector lam = right_solver.eigenvalues();
    const double scale = lam.cwiseAbs().maxCoeff();

    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double gap = std::abs(lam(i) - lam(j));
            if (gap < opts.degeneracy_threshold) {
                std::ostringstream msg;
                msg << "eigenvalue gap " << gap << " below threshold " << opts.degeneracy_threshold
                    << " near lambda = " << lam(i);
                throw DegenerateSpectrum(msg.str());
            }
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return eigenvalue_less(lam(a), lam(b), scale); });

    const ComplexVector mu = left_solver.eigenvalues();
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    BlockSystem out{ComplexVector(n), ComplexMatrix(n, n), ComplexMatrix(n, n)};
    for (Index k = 0; k < n; ++k) {
        const Index r = order[static_cast<std::size_t>(k)];
        Index best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) {
                continue;
            }
            const double d = std::abs(std::conj(mu(j)) - lam(r));
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        used[static_cast<std::size_t>(best)] = true;

        ComplexVector f = right_solver.eigenvectors().col(r);
        f.normalize();
        f *= max_component_phase(f);
        ComplexVector g = left_solver.eigenvectors().col(best);
        g.normalize();
        const cplx s = g.dot(f);
        if (std::abs(s) < opts.defect_threshold) {
            std::ostringstream msg;
            msg << "left/right overlap " << std::abs(s) << " at lambda = " << lam(r);
            throw NotDiagonalizable(msg.str());
        }
        g /= std::conj(s);

        out.lambdas(k) = lam(r);
        out.rights.col(k) = f;
        out.lefts.col(k) = g;
    }
    return out;
}

} // namespace

ComplexMatrix EigenFrame::reconstruct() const {
    return rights * lambdas.asDiagonal() * lefts.adjoint();
}

EigenFrame bi_eigendecompose(const ComplexMatrix& B, const DecompositionOptions& opts) {
    BlockList whole(1);
    whole[0].resize(static_cast<std::size_t>(B.rows()));
    std::iota(whole[0].begin(), whole[0].end(), Index{0});
    return bi_eigendecompose(B, whole, opts);
}

EigenFrame bi_eigendecompose(const ComplexMatrix& B, const BlockList& blocks,
                             const DecompositionOptions& opts) {
    if (B.rows() != B.cols() || B.rows() == 0) {
        throw std::invalid_argument("bi_eigendecompose: matrix must be square and non-empty");
    }
    check_finite(B);
    const Index dim = B.rows();

    std::vector<int> owner(static_cast<std::size_t>(dim), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (Index i : blocks[b]) {
            if (i < 0 || i >= dim || owner[static_cast<std::size_t>(i)] != -1) {
                throw std::invalid_argument("bi_eigendecompose: blocks must partition the basis");
            }
            owner[static_cast<std::size_t>(i)] = static_cast<int>(b);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
        throw std::invalid_argument("bi_eigendecompose: blocks must cover the basis");
    }
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            if (owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(j)] &&
                B(i, j) != cplx(0.0)) {
                throw std::invalid_argument("bi_eigendecompose: blocks are not invariant under B");
            }
        }
    }

    EigenFrame frame;
    frame.lambdas.resize(dim);
    frame.rights = ComplexMatrix::Zero(dim, dim);
    frame.lefts = ComplexMatrix::Zero(dim, dim);
    frame.block.resize(static_cast<std::size_t>(dim));
    frame.gauge_tag = kGaugeMaxComponent;

    Index k = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& idx = blocks[b];
        const Index n = static_cast<Index>(idx.size());
        ComplexMatrix sub(n, n);
        for (Index r = 0; r < n; ++r) {
            for (Index c = 0; c < n; ++c) {
                sub(r, c) = B(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
            }
        }
        const BlockSystem sys = decompose_block(sub, opts);
        for (Index m = 0; m < n; ++m, ++k) {
            frame.lambdas(k) = sys.lambdas(m);
            for (Index r = 0; r < n; ++r) {
                frame.rights(idx[static_cast<std::size_t>(r)], k) = sys.rights(r, m);
                frame.lefts(idx[static_cast<std::size_t>(r)], k) = sys.lefts(r, m);
            }
            frame.block[static_cast<std::size_t>(k)] = static_cast<int>(b);
        }
    }
    return frame;
}

double min_block_gap(const EigenFrame& frame) {
    double gap = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < frame.size(); ++i) {
        for (Index j = i + 1; j < frame.size(); ++j) {
            if (frame.block[static_cast<std::size_t>(i)] == frame.block[static_cast<std::size_t>(j)]) {
                gap = std::min(gap, std::abs(frame.lambdas(i) - frame.lambdas(j)));
            }
        }
    }
    return gap;
}

ContinuityCorrection track_continuity(const EigenFrame& prev, const EigenFrame& next,
                                      double ambiguity_tol) {
    const Index n = prev.size();
    if (next.size() != n || next.dim() != prev.dim()) {
        throw std::invalid_argument("track_continuity: frame sizes differ");
    }
    const bool blocked = prev.block.size() == static_cast<std::size_t>(n) &&
                         next.block.size() == static_cast<std::size_t>(n);
    const ComplexMatrix overlap = prev.lefts.adjoint() * next.rights;

    ContinuityCorrection corr;
    corr.permutation.assign(static_cast<std::size_t>(n), -1);
    corr.phases = ComplexVector::Ones(n);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);

    for (Index k = 0; k < n; ++k) {
        Index best = -1;
        double first = -1.0;
        double second = -1.0;
        for (Index m = 0; m < n; ++m) {
            if (blocked && prev.block[static_cast<std::size_t>(k)] != next.block[static_cast<std::size_t>(m)]) {
                continue;
            }
            const double a = std::abs(overlap(k, m));
            if (a > first) {
                second = first;
                first = a;
                best = m;
            } else if (a > second) {
                second = a;
            }
        }
        if (best < 0) {
            throw AmbiguousMatching("track_continuity: no candidate partner for mode");
        }
        if (second >= 0.0 && first - second < ambiguity_tol) {
            std::ostringstream msg;
            msg << "track_continuity: overlaps " << first << " and " << second
                << " cannot be distinguished for mode " << k;
            throw AmbiguousMatching(msg.str());
        }
        if (taken[static_cast<std::size_t>(best)]) {
            throw AmbiguousMatching("track_continuity: two modes claim the same partner");
        }
        taken[static_cast<std::size_t>(best)] = true;
        corr.permutation[static_cast<std::size_t>(k)] = best;
        const cplx o = overlap(k, best);
        corr.phases(k) = std::abs(o) > 0.0 ? std::conj(o) / std::abs(o) : cplx(1.0);
    }
    return corr;
}

EigenFrame apply_correction(const EigenFrame& next, const ContinuityCorrection& corr) {
    EigenFrame out = next;
    for (Index k = 0; k < next.size(); ++k) {
        const Index m = corr.permutation[static_cast<std::size_t>(k)];
        out.lambdas(k) = next.lambdas(m);
        out.rights.col(k) = next.rights.col(m) * corr.phases(k);
        out.lefts.col(k) = next.lefts.col(m) * corr.phases(k);
        if (!next.block.empty()) {
            out.block[static_cast<std::size_t>(k)] = next.block[static_cast<std::size_t>(m)];
        }
    }
    out.gauge_tag = kGaugeTransported;
    return out;
}

EigenFrame align_to(const EigenFrame& prev, const EigenFrame& next, double ambiguity_tol) {
    return apply_correction(next, track_continuity(prev, next, ambiguity_tol));
}

ComplexMatrix propagator_matrix(const ComplexMatrix& B, double theta) {
    const ComplexMatrix A = (cplx(0.0, -theta) * B).eval();
    return A.exp();
}

} // namespace inertia
