// Copyright 2026 The orbitalsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Unweighted power-sum eigenvector filter Σ_{j=1..k} U^j |ψ>.
 *
 * A component with eigenphase δ is scaled by |sin(kδ/2) / sin(δ/2)|, while
 * the eigenphase-0 component grows as k. Components with δ close to 0 are
 * therefore suppressed only once k δ approaches 2π.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qstate.hpp"

namespace orbitalsim {

inline constexpr double kCancellationNorm = 1e-12;

namespace detail {
inline void check_filter_inputs(const DenseOperator &u, const StateVector &psi, int k) {
    if (u.dim() != psi.dim()) {
        argument_error("power_sum: dimension mismatch");
    }
    if (k < 1) {
        argument_error("power_sum: k must be >= 1");
    }
    u.require_unitary("power_sum operator");
}

inline StateVector normalize_sum(const CVector &sum) {
    const double n = sum.norm();
    if (!(n >= kCancellationNorm)) {
        throw CancellationError("power sum cancelled to norm " + std::to_string(n));
    }
    return StateVector(sum / n);
}
} // namespace detail

/// Normalized Σ_{j=1..k} U^j ψ using k matrix-vector products.
inline StateVector power_sum(const DenseOperator &u, const StateVector &psi, int k) {
    detail::check_filter_inputs(u, psi, k);
    CVector term = psi.amplitudes();
    CVector sum = CVector::Zero(term.size());
    for (int j = 1; j <= k; ++j) {
        term = u.matrix() * term;
        sum += term;
    }
    return detail::normalize_sum(sum);
}

struct ConvergenceRow {
    int k;
    double overlap;  // |<target|filtered>|²
    double residual; // ‖U f - λ̂ f‖, λ̂ = <f|U|f>
};

inline ConvergenceRow convergence_row(const DenseOperator &u, const StateVector &filtered,
                                      const StateVector &target, int k) {
    const CVector uf = u.matrix() * filtered.amplitudes();
    const Complex rq = filtered.amplitudes().dot(uf);
    return {k, fidelity(target, filtered), (uf - rq * filtered.amplitudes()).norm()};
}

inline std::vector<ConvergenceRow> convergence_study(const DenseOperator &u,
                                                     const StateVector &psi,
                                                     const StateVector &target,
                                                     const std::vector<int> &k_list) {
    if (target.dim() != psi.dim()) {
        detail::argument_error("convergence_study: target dimension mismatch");
    }
    for (std::size_t i = 1; i < k_list.size(); ++i) {
        if (k_list[i] < k_list[i - 1]) {
            detail::argument_error("convergence_study: k_list must be ascending");
        }
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(k_list.size());
    for (int k : k_list) {
        rows.push_back(convergence_row(u, power_sum(u, psi, k), target, k));
    }
    return rows;
}

/// Smallest k <= k_max whose filtered overlap with target reaches threshold,
/// scanning with one running sum. Returns -1 when none does.
inline int first_k_reaching(const DenseOperator &u, const StateVector &psi,
                            const StateVector &target, double threshold, int k_max) {
    detail::check_filter_inputs(u, psi, k_max);
    CVector term = psi.amplitudes();
    CVector sum = CVector::Zero(term.size());
    for (int k = 1; k <= k_max; ++k) {
        term = u.matrix() * term;
        sum += term;
        const double n = sum.norm();
        if (n < kCancellationNorm) {
            continue;
        }
        if (std::norm(target.amplitudes().dot(sum)) / (n * n) >= threshold) {
            return k;
        }
    }
    return -1;
}

/// diag(1, e^{iδ}): the small-rotation instance.
inline DenseOperator phase_rotation(double delta) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, delta);
    return DenseOperator(std::move(m));
}

} // namespace orbitalsim
