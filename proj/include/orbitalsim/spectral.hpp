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
 * Hermitian eigendecomposition, degenerate-level grouping, exact time
 * evolution and energy measurement.
 *
 * Energy measurement projects onto whole degenerate eigenspaces, never onto
 * individual eigenvectors of a level.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qstate.hpp"

namespace orbitalsim {

inline constexpr double kDefaultGapTol = 1e-8;

struct SpectralDecomposition {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column i is the eigenvector for eigenvalues[i]; its largest-magnitude
    /// component is real positive.
    CMatrix eigenvectors;

    [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }
    [[nodiscard]] StateVector eigenvector(std::size_t i) const {
        return StateVector::normalized(
            eigenvectors.col(static_cast<Eigen::Index>(i)));
    }
};

struct EnergyLevel {
    double energy; // mean of member eigenvalues
    std::vector<std::size_t> members;
};

struct DegenerateSpectrum {
    std::vector<EnergyLevel> groups;
    double gap_tol;

    [[nodiscard]] std::size_t group_of(std::size_t eigen_index) const {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (std::size_t m : groups[g].members) {
                if (m == eigen_index) {
                    return g;
                }
            }
        }
        detail::argument_error("eigen index not in spectrum");
    }
};

namespace detail {
inline void fix_phase(CMatrix &vecs) {
    for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
        auto col = vecs.col(c);
        const double max_mag = col.cwiseAbs().maxCoeff();
        // First component within rounding of the maximum, so ties resolve
        // the same way on every run.
        Eigen::Index pivot = 0;
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            if (std::abs(col(r)) >= max_mag - 1e-12) {
                pivot = r;
                break;
            }
        }
        const Complex p = col(pivot);
        col *= std::conj(p) / std::abs(p);
    }
}
} // namespace detail

inline SpectralDecomposition eig_hermitian(const DenseOperator &h) {
    h.require_hermitian("eig_hermitian input");
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const CMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    }
    SpectralDecomposition out;
    const auto &vals = solver.eigenvalues();
    out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
    out.eigenvectors = solver.eigenvectors();
    detail::fix_phase(out.eigenvectors);
    return out;
}

/// Greedy ascending sweep: a group closes when the next gap exceeds gap_tol.
inline DegenerateSpectrum group_degenerate(const SpectralDecomposition &decomp,
                                           double gap_tol = kDefaultGapTol) {
    if (!(gap_tol > 0.0)) {
        detail::argument_error("gap_tol must be positive");
    }
    DegenerateSpectrum out{{}, gap_tol};
    const auto &ev = decomp.eigenvalues;
    double sum = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (i == 0 || ev[i] - ev[i - 1] > gap_tol) {
            if (i != 0) {
                out.groups.back().energy =
                    sum / static_cast<double>(out.groups.back().members.size());
            }
            out.groups.push_back({0.0, {}});
            sum = 0.0;
        }
        out.groups.back().members.push_back(i);
        sum += ev[i];
    }
    if (!out.groups.empty()) {
        out.groups.back().energy =
            sum / static_cast<double>(out.groups.back().members.size());
    }
    return out;
}

/// ψ(t) = Σ_i e^{-iλ_i t} v_i <v_i|ψ>.
inline StateVector evolve(const SpectralDecomposition &decomp, double t,
                          const StateVector &psi) {
    if (decomp.dim() != psi.dim()) {
        detail::argument_error("evolve: dimension mismatch");
    }
    CVector coeffs = decomp.eigenvectors.adjoint() * psi.amplitudes();
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs(i) *= std::polar(1.0, -decomp.eigenvalues[static_cast<std::size_t>(i)] * t);
    }
    return StateVector::normalized(decomp.eigenvectors * coeffs);
}

inline StateVector evolve(const DenseOperator &h, double t,
                          const StateVector &psi) {
    return evolve(eig_hermitian(h), t, psi);
}

/// One possible outcome of an energy measurement, before sampling.
struct EnergyBranch {
    double energy;
    double probability;
    CVector projected; // P_g ψ, unnormalized
};

inline std::vector<EnergyBranch>
energy_branches(const SpectralDecomposition &decomp,
                const DegenerateSpectrum &levels, const StateVector &psi) {
    if (decomp.dim() != psi.dim()) {
        detail::argument_error("energy measurement: dimension mismatch");
    }
    const CVector coeffs = decomp.eigenvectors.adjoint() * psi.amplitudes();
    std::vector<EnergyBranch> out;
    out.reserve(levels.groups.size());
    const auto d = static_cast<Eigen::Index>(decomp.dim());
    for (const auto &g : levels.groups) {
        CVector v = CVector::Zero(d);
        double p = 0.0;
        for (std::size_t m : g.members) {
            const auto mi = static_cast<Eigen::Index>(m);
            v += coeffs(mi) * decomp.eigenvectors.col(mi);
            p += std::norm(coeffs(mi));
        }
        out.push_back({g.energy, p, std::move(v)});
    }
    return out;
}

/// The projector family {P_g} realized by energy_branches, as dense matrices.
inline std::vector<DenseOperator>
energy_projectors(const SpectralDecomposition &decomp,
                  const DegenerateSpectrum &levels) {
    std::vector<DenseOperator> out;
    out.reserve(levels.groups.size());
    const auto d = static_cast<Eigen::Index>(decomp.dim());
    for (const auto &g : levels.groups) {
        CMatrix p = CMatrix::Zero(d, d);
        for (std::size_t m : g.members) {
            const auto v = decomp.eigenvectors.col(static_cast<Eigen::Index>(m));
            p += v * v.adjoint();
        }
        out.emplace_back(std::move(p));
    }
    return out;
}

struct EnergyOutcome {
    double energy;
    MeasurementOutcome outcome; // outcome_index is the group index
};

inline EnergyOutcome measure_energy(const SpectralDecomposition &decomp,
                                    const DegenerateSpectrum &levels,
                                    const StateVector &psi, RngStream &rng) {
    auto branches = energy_branches(decomp, levels, psi);
    std::vector<double> probs;
    probs.reserve(branches.size());
    for (const auto &b : branches) {
        probs.push_back(b.probability);
    }
    const std::size_t g = detail::sample_index(probs, rng);
    return {branches[g].energy,
            {g, probs[g], StateVector::normalized(std::move(branches[g].projected))}};
}

inline EnergyOutcome measure_energy(const SpectralDecomposition &decomp,
                                    double gap_tol, const StateVector &psi,
                                    RngStream &rng) {
    return measure_energy(decomp, group_degenerate(decomp, gap_tol), psi, rng);
}

} // namespace orbitalsim
