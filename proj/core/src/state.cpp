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

#include "inertia/state.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

#include "inertia/errors.hpp"

namespace inertia {

namespace {

struct Validator {
    double tol;

    void operator()(const GaussianState& s) const {
        if (!s.mean.allFinite() || !s.cov.allFinite()) {
            throw UnphysicalState("Gaussian state has non-finite moments");
        }
        const double uncertainty = s.cov.determinant();
        if (s.cov(0, 0) <= 0.0 || s.cov(1, 1) <= 0.0 || uncertainty < 0.25 - tol) {
            std::ostringstream msg;
            msg << "Gaussian covariance violates the uncertainty relation: det = " << uncertainty;
            throw UnphysicalState(msg.str());
        }
    }

    void operator()(const BlochState& s) const {
        if (!s.r.allFinite() || s.r.norm() > 1.0 + tol) {
            std::ostringstream msg;
            msg << "Bloch vector length " << s.r.norm() << " exceeds 1";
            throw UnphysicalState(msg.str());
        }
    }

    void operator()(const TwoQubitState& s) const {
        if (s.rho.rows() != 4 || s.rho.cols() != 4 || !s.rho.allFinite()) {
            throw UnphysicalState("two-qubit state must be a finite 4x4 matrix");
        }
        if ((s.rho - s.rho.adjoint()).norm() > tol) {
            throw UnphysicalState("two-qubit density matrix is not Hermitian");
        }
        if (std::abs(s.rho.trace() - cplx(1.0)) > tol) {
            throw UnphysicalState("two-qubit density matrix does not have unit trace");
        }
        const ComplexMatrix h = 0.5 * (s.rho + s.rho.adjoint());
        const double low = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h).eigenvalues().minCoeff();
        if (low < -tol) {
            std::ostringstream msg;
            msg << "two-qubit density matrix has eigenvalue " << low;
            throw UnphysicalState(msg.str());
        }
    }
};

} // namespace

void validate_state(const DensityState& state, double tol) {
    std::visit(Validator{tol}, state);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix density_matrix(const BlochState& s) {
    return 0.5 * (ComplexMatrix::Identity(2, 2) + s.r(0) * pauli_x() + s.r(1) * pauli_y() +
                  s.r(2) * pauli_z());
}

BlochState bloch_from_density(const ComplexMatrix& rho) {
    BlochState s;
    s.r(0) = (rho * pauli_x()).trace().real();
    s.r(1) = (rho * pauli_y()).trace().real();
    s.r(2) = (rho * pauli_z()).trace().real();
    return s;
}

} // namespace inertia
