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
 * Analog search with H = E(|s><s| + |w><w|).
 *
 * With x = <s|w> = 2^{-n/2} the excited plane carries energies E(1 ± x) with
 * eigenvectors (|s> ± |w>)/√(2(1 ± x)); everything orthogonal to the plane
 * has energy 0. Starting from |s>, an energy measurement lands on either
 * branch with probability (1 ± x)/2, and a following logical measurement
 * finds w with total probability (1 + x²)/2.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "grover.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace orbitalsim {

struct FGInstance {
    int n_qubits;
    std::size_t marked;
    double energy_scale;
    double overlap_x;
    DenseOperator hamiltonian;
    SpectralDecomposition decomposition;

    [[nodiscard]] std::size_t dim() const { return hamiltonian.dim(); }
    [[nodiscard]] StateVector start() const { return uniform_superposition(n_qubits); }
};

inline FGInstance fg_hamiltonian(int n, std::size_t w, double energy_scale = 1.0) {
    detail::check_search_params(n, w);
    if (!(energy_scale > 0.0) || !std::isfinite(energy_scale)) {
        detail::argument_error("energy scale must be positive and finite");
    }
    const CVector s = uniform_superposition(n).amplitudes();
    CMatrix h = energy_scale * (s * s.adjoint());
    h(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) += energy_scale;
    DenseOperator op(std::move(h));
    op.require_hermitian("Farhi-Gutmann Hamiltonian");
    SpectralDecomposition decomp = eig_hermitian(op);
    return {n, w, energy_scale, std::pow(2.0, -0.5 * n), std::move(op), std::move(decomp)};
}

struct FGPlaneEigensystem {
    StateVector plus;  // (|s> + |w>)/√(2(1+x))
    StateVector minus; // (|s> - |w>)/√(2(1-x))
    double plus_energy;
    double minus_energy;
};

inline FGPlaneEigensystem fg_plane_eigensystem(const FGInstance &inst) {
    const CVector s = inst.start().amplitudes();
    const CVector w = basis_state(inst.dim(), inst.marked).amplitudes();
    const double x = inst.overlap_x;
    return {StateVector::normalized((s + w) / std::sqrt(2.0 * (1.0 + x))),
            StateVector::normalized((s - w) / std::sqrt(2.0 * (1.0 - x))),
            inst.energy_scale * (1.0 + x), inst.energy_scale * (1.0 - x)};
}

/// |<v|ref>|² against the unnormalized reference forms (|s> ± |w>)/√2.
/// Evaluates to 1 ± x exactly.
inline std::pair<double, double> diagonal_form_fidelities(const FGInstance &inst) {
    const auto eig = fg_plane_eigensystem(inst);
    const CVector s = inst.start().amplitudes();
    const CVector w = basis_state(inst.dim(), inst.marked).amplitudes();
    const CVector ref_plus = (s + w) / std::sqrt(2.0);
    const CVector ref_minus = (s - w) / std::sqrt(2.0);
    return {std::norm(eig.plus.amplitudes().dot(ref_plus)),
            std::norm(eig.minus.amplitudes().dot(ref_minus))};
}

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> success_probability;

    /// First index attaining the maximum.
    [[nodiscard]] std::size_t peak_index() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < success_probability.size(); ++i) {
            if (success_probability[i] > success_probability[best]) {
                best = i;
            }
        }
        return best;
    }
};

inline EvolutionTrace fg_evolution_sweep(const FGInstance &inst, double t_max, int steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        detail::argument_error("t_max must be positive");
    }
    if (steps < 2) {
        detail::argument_error("steps must be >= 2");
    }
    EvolutionTrace trace;
    trace.times.reserve(static_cast<std::size_t>(steps));
    trace.success_probability.reserve(static_cast<std::size_t>(steps));
    const StateVector s = inst.start();
    for (int i = 0; i < steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
        const StateVector psi = evolve(inst.decomposition, t, s);
        trace.times.push_back(t);
        trace.success_probability.push_back(psi.probability(inst.marked));
    }
    return trace;
}

struct BranchStat {
    double energy;
    double exact_probability;
    double exact_success_given_branch;
    std::size_t sampled_count = 0;
    std::size_t sampled_successes = 0;
};

struct ShortcutResult {
    double exact_success;
    double empirical_success;
    std::size_t trials;
    std::size_t successes;
    /// Exact probability of the zero-energy group.
    double kernel_probability;
    std::vector<BranchStat> branches;
};

/// Branch table for |s> under the instance's energy groups.
inline std::vector<BranchStat> fg_exact_branches(const FGInstance &inst,
                                                 const DegenerateSpectrum &levels) {
    std::vector<BranchStat> out;
    for (auto &b : energy_branches(inst.decomposition, levels, inst.start())) {
        const double cond = b.probability > 0.0
                                ? std::norm(b.projected(static_cast<Eigen::Index>(inst.marked))) /
                                      b.probability
                                : 0.0;
        out.push_back({b.energy, b.probability, cond});
    }
    return out;
}

/// Prepare |s>, measure energy, measure qubits; success when the outcome is w.
/// Trial i draws from RngStream(master_seed, i).
inline ShortcutResult fg_shortcut_experiment(const FGInstance &inst, std::size_t trials,
                                             std::uint64_t master_seed,
                                             double gap_tol = kDefaultGapTol,
                                             unsigned workers = 0) {
    if (trials < 1) {
        detail::argument_error("trials must be >= 1");
    }
    const DegenerateSpectrum levels = group_degenerate(inst.decomposition, gap_tol);
    ShortcutResult res{0.0, 0.0, trials, 0, 0.0, fg_exact_branches(inst, levels)};
    for (const auto &b : res.branches) {
        res.exact_success += b.exact_probability * b.exact_success_given_branch;
        if (std::abs(b.energy) <= gap_tol) {
            res.kernel_probability += b.exact_probability;
        }
    }
    struct Trial {
        std::size_t group = 0;
        bool success = false;
    };
    const StateVector s = inst.start();
    const auto outcomes = run_trials<Trial>(trials, workers, [&](std::size_t i) {
        RngStream rng(master_seed, i);
        const auto e = measure_energy(inst.decomposition, levels, s, rng);
        const auto q = measure_logical(e.outcome.post_state, rng);
        return Trial{e.outcome.outcome_index, q.outcome_index == inst.marked};
    });
    for (const auto &t : outcomes) {
        auto &b = res.branches[t.group];
        ++b.sampled_count;
        if (t.success) {
            ++b.sampled_successes;
            ++res.successes;
        }
    }
    res.empirical_success = static_cast<double>(res.successes) / static_cast<double>(trials);
    return res;
}

} // namespace orbitalsim
