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
 * Cyclic clock ("artificial orbital") Hamiltonian built from a gate sequence.
 *
 * The composite space is an M-level clock times the N-dimensional qubit
 * register, indexed clock-major: idx = t * N + q. The Hamiltonian is the
 * hopping ring
 *
 *     H = Σ_t e^{iφ} |t+1><t| ⊗ U_{t+1} + h.c.      (t+1 taken mod M)
 *
 * where the hop leaving clock level t carries gate U_{t+1} (gates()[t] here),
 * so a full loop applies U = U_M ... U_1. With V_t = U_t ... U_1 and
 * U φ = e^{iα} φ, the vectors
 *
 *     c_t = e^{iκt} V_t φ / √M,   κ = (2πm - α) / M,
 *
 * are eigenstates with energy 2 cos(κ - φ): every eigenvector of a
 * nondegenerate level is uniform over the clock and satisfies
 * c_{t+1} = e^{iκ} U_{t+1} c_t around the ring.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "grover.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

#include <Eigen/Eigenvalues>

namespace orbitalsim {

inline constexpr std::size_t kMaxClockLevels = 16;

class GateSequence {
  public:
    explicit GateSequence(std::vector<DenseOperator> gates) : gates_(std::move(gates)) {
        if (gates_.empty()) {
            detail::argument_error("gate sequence needs at least one gate");
        }
        if (gates_.size() > kMaxClockLevels) {
            detail::argument_error("at most " + std::to_string(kMaxClockLevels) +
                                   " gates are supported");
        }
        const std::size_t n = gates_.front().dim();
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            if (gates_[i].dim() != n) {
                detail::argument_error("gate " + std::to_string(i) + " has dim " +
                                       std::to_string(gates_[i].dim()) + ", expected " +
                                       std::to_string(n));
            }
            gates_[i].require_unitary("gate " + std::to_string(i));
        }
        if (n * gates_.size() > kMaxDim) {
            detail::argument_error("clock x qubit dimension exceeds " + std::to_string(kMaxDim));
        }
    }

    [[nodiscard]] std::size_t qubit_dim() const noexcept { return gates_.front().dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    /// gates()[t] is U_{t+1}.
    [[nodiscard]] const std::vector<DenseOperator> &gates() const noexcept { return gates_; }

    /// V_t = U_t ... U_1, with V_0 = I.
    [[nodiscard]] CMatrix partial_product(std::size_t t) const {
        const auto n = static_cast<Eigen::Index>(qubit_dim());
        CMatrix v = CMatrix::Identity(n, n);
        for (std::size_t i = 0; i < t; ++i) {
            v = gates_[i].matrix() * v;
        }
        return v;
    }

    /// U = U_M ... U_2 U_1.
    [[nodiscard]] DenseOperator product() const { return DenseOperator(partial_product(size())); }

    /// V_t U V_t†: the loop operator seen from clock level t.
    [[nodiscard]] DenseOperator cyclic_permutation(std::size_t t) const {
        const CMatrix v = partial_product(t);
        return DenseOperator(v * partial_product(size()) * v.adjoint());
    }

  private:
    std::vector<DenseOperator> gates_;
};

/// [I_w, H, I_0, H]: one loop realizes G = H I_0 H I_w.
inline GateSequence grover_gates(int n, std::size_t w) {
    return GateSequence({oracle_inversion(n, w), walsh_hadamard(n), zero_inversion(n),
                         walsh_hadamard(n)});
}

struct CompositeSpace {
    std::size_t clock_levels;
    std::size_t qubit_dim;

    [[nodiscard]] std::size_t total_dim() const noexcept { return clock_levels * qubit_dim; }
    [[nodiscard]] std::size_t index(std::size_t t, std::size_t q) const noexcept {
        return t * qubit_dim + q;
    }

    /// P_t = |t><t| ⊗ I as dense operators.
    [[nodiscard]] std::vector<DenseOperator> clock_projectors() const {
        std::vector<DenseOperator> out;
        const auto d = static_cast<Eigen::Index>(total_dim());
        const auto n = static_cast<Eigen::Index>(qubit_dim);
        for (std::size_t t = 0; t < clock_levels; ++t) {
            CMatrix p = CMatrix::Zero(d, d);
            p.block(static_cast<Eigen::Index>(t) * n, static_cast<Eigen::Index>(t) * n, n, n)
                .setIdentity();
            out.emplace_back(std::move(p));
        }
        return out;
    }
};

struct OrbitalHamiltonian {
    CompositeSpace space;
    GateSequence gates;
    double flux;
    DenseOperator op;
};

/// For M = 1 the single hop is a self-loop (H = e^{iφ}U + h.c.); for M = 2
/// the two hops connect the same pair of levels in both directions.
inline OrbitalHamiltonian orbital_hamiltonian(const GateSequence &gates, double flux = 0.0) {
    if (!std::isfinite(flux)) {
        detail::argument_error("flux must be finite");
    }
    const std::size_t m = gates.size();
    const std::size_t n = gates.qubit_dim();
    CompositeSpace space{m, n};
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    const auto nn = static_cast<Eigen::Index>(n);
    const Complex hop = std::polar(1.0, flux);
    CMatrix h = CMatrix::Zero(d, d);
    for (std::size_t t = 0; t < m; ++t) {
        const auto from = static_cast<Eigen::Index>(t) * nn;
        const auto to = static_cast<Eigen::Index>((t + 1) % m) * nn;
        const CMatrix &u = gates.gates()[t].matrix();
        h.block(to, from, nn, nn) += hop * u;
        h.block(from, to, nn, nn) += std::conj(hop) * u.adjoint();
    }
    DenseOperator op(std::move(h));
    op.require_hermitian("orbital Hamiltonian");
    return {space, gates, flux, std::move(op)};
}

inline StateVector embed_initial(const CompositeSpace &space, const StateVector &psi) {
    if (psi.dim() != space.qubit_dim) {
        detail::argument_error("embed_initial: guess has dim " + std::to_string(psi.dim()) +
                               ", qubit register has dim " + std::to_string(space.qubit_dim));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    v.head(psi.amplitudes().size()) = psi.amplitudes();
    return StateVector(std::move(v));
}

/// Unnormalized conditional component (<t| ⊗ I)|state>.
inline CVector clock_component(const CVector &state, const CompositeSpace &space, std::size_t t) {
    const auto n = static_cast<Eigen::Index>(space.qubit_dim);
    return state.segment(static_cast<Eigen::Index>(t) * n, n);
}

inline std::vector<double> clock_probabilities(const StateVector &state,
                                               const CompositeSpace &space) {
    if (state.dim() != space.total_dim()) {
        detail::argument_error("clock measurement: dimension mismatch");
    }
    std::vector<double> p(space.clock_levels);
    for (std::size_t t = 0; t < space.clock_levels; ++t) {
        p[t] = clock_component(state.amplitudes(), space, t).squaredNorm();
    }
    return p;
}

/// Projective measurement over {P_t}, done blockwise.
inline MeasurementOutcome measure_clock(const StateVector &state, const CompositeSpace &space,
                                        RngStream &rng) {
    const auto probs = clock_probabilities(state, space);
    const std::size_t t = detail::sample_index(probs, rng);
    const auto n = static_cast<Eigen::Index>(space.qubit_dim);
    CVector post = CVector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    post.segment(static_cast<Eigen::Index>(t) * n, n) = clock_component(state.amplitudes(), space, t);
    return {t, probs[t], StateVector::normalized(std::move(post))};
}

struct StructureReport {
    /// r_t = ‖c_{t+1} - e^{iκ} U_{t+1} c_t‖ on the normalized state.
    std::vector<double> residuals;
    double step_phase;  // κ
    std::vector<double> clock_distribution;
    double loop_phase;  // α̂ = -Mκ mod 2π
    double tolerance;

    [[nodiscard]] double max_residual() const {
        return *std::max_element(residuals.begin(), residuals.end());
    }
    [[nodiscard]] double max_clock_deviation() const {
        const double u = 1.0 / static_cast<double>(clock_distribution.size());
        double worst = 0.0;
        for (double p : clock_distribution) {
            worst = std::max(worst, std::abs(p - u));
        }
        return worst;
    }
    [[nodiscard]] bool passes() const { return max_residual() <= tolerance; }
};

/// Fits the single step phase κ that best explains c_{t+1} = e^{iκ} U_{t+1} c_t
/// around the ring. The least-squares optimum is κ = arg Σ_t <U_{t+1} c_t | c_{t+1}>.
inline StructureReport verify_step_structure(const CVector &state, const GateSequence &gates,
                                             double tol = 1e-8) {
    const CompositeSpace space{gates.size(), gates.qubit_dim()};
    if (static_cast<std::size_t>(state.size()) != space.total_dim()) {
        detail::argument_error("verify_step_structure: state dim does not match the gates");
    }
    const double norm = state.norm();
    if (!(norm > 0.0)) {
        detail::argument_error("verify_step_structure: state is zero");
    }
    const CVector psi = state / norm;
    const std::size_t m = space.clock_levels;
    std::vector<CVector> stepped(m), next(m);
    Complex s = 0.0;
    StructureReport rep{{}, 0.0, {}, 0.0, tol};
    rep.clock_distribution.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        const CVector c = clock_component(psi, space, t);
        rep.clock_distribution[t] = c.squaredNorm();
        stepped[t] = gates.gates()[t].matrix() * c;
        next[t] = clock_component(psi, space, (t + 1) % m);
        s += stepped[t].dot(next[t]);
    }
    rep.step_phase = std::abs(s) > 0.0 ? std::arg(s) : 0.0;
    const Complex rot = std::polar(1.0, rep.step_phase);
    rep.residuals.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        rep.residuals[t] = (next[t] - rot * stepped[t]).norm();
    }
    rep.loop_phase = detail::wrap_phase(-static_cast<double>(m) * rep.step_phase);
    return rep;
}

inline StructureReport verify_step_structure(const StateVector &state, const GateSequence &gates,
                                             double tol = 1e-8) {
    return verify_step_structure(state.amplitudes(), gates, tol);
}

/// Loop eigenphases compatible with an orbital energy:
/// { M(±arccos(E/2) - φ) - 2πm mod 2π : m ∈ [0, M) }, merged within 1e-9.
inline std::vector<double> eigenphase_candidates(double energy, std::size_t m, double flux) {
    if (m < 1) {
        detail::argument_error("eigenphase_candidates: M must be >= 1");
    }
    if (!(std::abs(energy) <= 2.0 + 1e-9)) {
        detail::argument_error("orbital energy " + std::to_string(energy) +
                               " outside [-2, 2]");
    }
    const double a = std::acos(std::clamp(energy / 2.0, -1.0, 1.0));
    const double md = static_cast<double>(m);
    std::vector<double> out;
    for (double sign : {1.0, -1.0}) {
        for (std::size_t j = 0; j < m; ++j) {
            const double alpha = detail::wrap_phase(
                md * (sign * a - flux) - 2.0 * std::numbers::pi * static_cast<double>(j));
            const bool dup = std::any_of(out.begin(), out.end(), [&](double p) {
                return detail::phase_distance(p, alpha) <= 1e-9;
            });
            if (!dup) {
                out.push_back(alpha);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Eigenphases of a unitary in [0, 2π), ascending.
inline std::vector<double> unitary_eigenphases(const DenseOperator &u) {
    Eigen::ComplexEigenSolver<CMatrix> solver(u.matrix(), false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        out.push_back(detail::wrap_phase(std::arg(solver.eigenvalues()(i))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// {2cos((2πm + α_j)/M + φ)} over the loop eigenphases α_j of U and m < M,
/// ascending. Obtained from U alone, without forming the ring Hamiltonian.
inline std::vector<double> predicted_orbital_energies(const GateSequence &gates, double flux) {
    const double md = static_cast<double>(gates.size());
    std::vector<double> out;
    for (double alpha : unitary_eigenphases(gates.product())) {
        for (std::size_t m = 0; m < gates.size(); ++m) {
            out.push_back(2.0 * std::cos((2.0 * std::numbers::pi * static_cast<double>(m) + alpha) / md +
                                         flux));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Hamiltonian plus its cached spectral data and loop operators.
struct OrbitalSystem {
    OrbitalHamiltonian hamiltonian;
    SpectralDecomposition decomposition;
    DegenerateSpectrum levels;
    std::vector<DenseOperator> loop_operators; // cyclic_permutation(t)

    [[nodiscard]] const CompositeSpace &space() const { return hamiltonian.space; }
    [[nodiscard]] std::size_t clock_levels() const { return hamiltonian.space.clock_levels; }
};

inline OrbitalSystem make_orbital_system(const GateSequence &gates, double flux = 0.0,
                                         double gap_tol = kDefaultGapTol) {
    OrbitalHamiltonian h = orbital_hamiltonian(gates, flux);
    SpectralDecomposition decomp = eig_hermitian(h.op);
    DegenerateSpectrum levels = group_degenerate(decomp, gap_tol);
    std::vector<DenseOperator> loops;
    loops.reserve(gates.size());
    for (std::size_t t = 0; t < gates.size(); ++t) {
        loops.push_back(gates.cyclic_permutation(t));
    }
    return {std::move(h), std::move(decomp), std::move(levels), std::move(loops)};
}

/// verify_step_structure over every eigenvector of a nondegenerate level.
struct EigenstructureSummary {
    std::size_t nondegenerate_levels = 0;
    double max_residual = 0.0;
    double max_clock_deviation = 0.0;
    /// Largest distance from a loop phase α̂ to the nearest eigenphase of U.
    double max_loop_phase_error = 0.0;
    /// max |E_k - predicted_k| between sorted spectra.
    double max_energy_error = 0.0;
};

inline EigenstructureSummary summarize_eigenstructure(const OrbitalSystem &sys) {
    EigenstructureSummary out;
    const GateSequence &gates = sys.hamiltonian.gates;
    const auto predicted = predicted_orbital_energies(gates, sys.hamiltonian.flux);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        out.max_energy_error =
            std::max(out.max_energy_error, std::abs(predicted[i] - sys.decomposition.eigenvalues[i]));
    }
    const auto u_phases = unitary_eigenphases(gates.product());
    for (const auto &level : sys.levels.groups) {
        if (level.members.size() != 1) {
            continue;
        }
        ++out.nondegenerate_levels;
        const auto rep = verify_step_structure(
            CVector(sys.decomposition.eigenvectors.col(static_cast<Eigen::Index>(level.members[0]))),
            gates);
        out.max_residual = std::max(out.max_residual, rep.max_residual());
        out.max_clock_deviation = std::max(out.max_clock_deviation, rep.max_clock_deviation());
        double best = std::numbers::pi;
        for (double a : u_phases) {
            best = std::min(best, detail::phase_distance(a, rep.loop_phase));
        }
        out.max_loop_phase_error = std::max(out.max_loop_phase_error, best);
    }
    return out;
}

enum class SearchStrategy { reinitialize, persist };

struct SearchResult {
    bool success;
    int rounds_used;
    std::size_t final_clock;
    /// Conditional qubit-register state at final_clock.
    StateVector final_qubit_state;
    double measured_energy;
    std::size_t energy_group; // index into OrbitalSystem::levels
    /// Exact probability of the final clock outcome given the post-energy state.
    double clock_probability;
    /// arg <ψ|U|ψ>, with U seen from final_clock (equal to U when it is 0).
    double eigenphase_estimate;
    double eigen_residual;
    std::vector<double> candidate_phases;
    double guess_fidelity;

    /// Whether some candidate phase sits within tol of the Rayleigh estimate.
    [[nodiscard]] bool phase_consistent(double tol = 1e-6) const {
        return std::any_of(candidate_phases.begin(), candidate_phases.end(), [&](double p) {
            return detail::phase_distance(p, eigenphase_estimate) <= tol;
        });
    }
};

inline SearchResult eigenvector_search(const OrbitalSystem &sys, const StateVector &guess,
                                       int max_rounds, std::size_t target_clock,
                                       SearchStrategy strategy, RngStream &rng) {
    const CompositeSpace &space = sys.space();
    if (max_rounds < 1) {
        detail::argument_error("max_rounds must be >= 1");
    }
    if (target_clock >= space.clock_levels) {
        detail::argument_error("target clock " + std::to_string(target_clock) +
                               " out of range for M = " + std::to_string(space.clock_levels));
    }
    const StateVector start = embed_initial(space, guess);
    StateVector state = start;
    int round = 0;
    double energy = 0.0;
    std::size_t group = 0;
    std::optional<MeasurementOutcome> clock;
    while (round < max_rounds) {
        ++round;
        if (round > 1 && strategy == SearchStrategy::reinitialize) {
            state = start;
        }
        auto e = measure_energy(sys.decomposition, sys.levels, state, rng);
        energy = e.energy;
        group = e.outcome.outcome_index;
        clock = measure_clock(e.outcome.post_state, space, rng);
        if (clock->outcome_index == target_clock) {
            break;
        }
        state = clock->post_state;
    }
    const std::size_t t = clock->outcome_index;
    StateVector qubit =
        StateVector::normalized(clock_component(clock->post_state.amplitudes(), space, t));
    const CMatrix &loop = sys.loop_operators[t].matrix();
    const CVector moved = loop * qubit.amplitudes();
    const Complex rayleigh = qubit.amplitudes().dot(moved);
    const double alpha = detail::wrap_phase(std::arg(rayleigh));
    const double residual = (moved - std::polar(1.0, alpha) * qubit.amplitudes()).norm();
    const double fid = fidelity(guess, qubit);
    return {t == target_clock,
            round,
            t,
            std::move(qubit),
            energy,
            group,
            clock->probability,
            alpha,
            residual,
            eigenphase_candidates(std::clamp(energy, -2.0, 2.0), space.clock_levels,
                                  sys.hamiltonian.flux),
            fid};
}

inline SearchResult eigenvector_search(const GateSequence &gates, const StateVector &guess,
                                       double flux, int max_rounds, std::size_t target_clock,
                                       SearchStrategy strategy, RngStream &rng,
                                       double gap_tol = kDefaultGapTol) {
    return eigenvector_search(make_orbital_system(gates, flux, gap_tol), guess, max_rounds,
                              target_clock, strategy, rng);
}

/// One round from the embedded guess, resolved per energy group.
struct RoundBranch {
    double energy;
    double probability;       // P(group)
    double clock_probability; // P(target | group)
    CVector target_component; // (<target| ⊗ I) P_g |guess>, unnormalized
};

inline std::vector<RoundBranch> single_round_branches(const OrbitalSystem &sys,
                                                      const StateVector &guess,
                                                      std::size_t target_clock) {
    const StateVector start = embed_initial(sys.space(), guess);
    std::vector<RoundBranch> out;
    for (auto &b : energy_branches(sys.decomposition, sys.levels, start)) {
        CVector c = clock_component(b.projected, sys.space(), target_clock);
        const double pc = b.probability > 0.0 ? c.squaredNorm() / b.probability : 0.0;
        out.push_back({b.energy, b.probability, pc, std::move(c)});
    }
    return out;
}

/// Exact statistics of eigenvector_search, following the full projector chain.
struct ExactSearchOutcome {
    double success_probability; // P(target seen within max_rounds)
    double expected_rounds;     // E[rounds_used], failures counted as max_rounds
    double expected_rounds_given_success;
    /// Σ over success rounds of the target-block operator; its trace is
    /// success_probability and its diagonal gives joint outcome probabilities.
    CMatrix success_operator;
    int rounds_evaluated;

    [[nodiscard]] double conditional_probability(std::size_t qubit_index) const {
        const auto i = static_cast<Eigen::Index>(qubit_index);
        return success_operator(i, i).real() / success_probability;
    }
};

/// Propagates the unconditioned post-measurement operator round by round:
/// energy dephasing, then the clock projection. The target block is absorbed;
/// the remaining blocks continue (persist) or restart from the guess with the
/// same weight (reinitialize).
inline ExactSearchOutcome exact_search_outcome(const OrbitalSystem &sys, const StateVector &guess,
                                               int max_rounds, std::size_t target_clock,
                                               SearchStrategy strategy) {
    if (max_rounds < 1) {
        detail::argument_error("max_rounds must be >= 1");
    }
    const CompositeSpace &space = sys.space();
    if (target_clock >= space.clock_levels) {
        detail::argument_error("target clock out of range");
    }
    const CVector start = embed_initial(space, guess).amplitudes();
    const CMatrix rho0 = start * start.adjoint();
    const CMatrix &v = sys.decomposition.eigenvectors;
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    const auto n = static_cast<Eigen::Index>(space.qubit_dim);
    std::vector<std::size_t> group(static_cast<std::size_t>(d));
    for (std::size_t g = 0; g < sys.levels.groups.size(); ++g) {
        for (std::size_t i : sys.levels.groups[g].members) {
            group[i] = g;
        }
    }
    ExactSearchOutcome res{0.0, 0.0, 0.0, CMatrix::Zero(n, n), 0};
    CMatrix active = rho0;
    double remaining = 1.0;
    const auto tb = static_cast<Eigen::Index>(target_clock) * n;
    for (int r = 1; r <= max_rounds; ++r) {
        CMatrix eb = v.adjoint() * active * v;
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                if (group[static_cast<std::size_t>(i)] != group[static_cast<std::size_t>(j)]) {
                    eb(i, j) = 0.0;
                }
            }
        }
        const CMatrix dephased = v * eb * v.adjoint();
        const CMatrix hit = dephased.block(tb, tb, n, n);
        const double p = hit.trace().real();
        res.success_operator += hit;
        res.success_probability += p;
        res.expected_rounds += static_cast<double>(r) * p;
        res.rounds_evaluated = r;
        CMatrix fail = CMatrix::Zero(d, d);
        for (std::size_t t = 0; t < space.clock_levels; ++t) {
            if (t == target_clock) {
                continue;
            }
            const auto b = static_cast<Eigen::Index>(t) * n;
            fail.block(b, b, n, n) = dephased.block(b, b, n, n);
        }
        remaining = fail.trace().real();
        if (strategy == SearchStrategy::reinitialize) {
            active = remaining * rho0;
        } else {
            active = std::move(fail);
        }
        if (remaining < 1e-17) {
            remaining = std::max(remaining, 0.0);
            break;
        }
    }
    res.expected_rounds_given_success = res.expected_rounds / res.success_probability;
    if (res.rounds_evaluated == max_rounds) {
        res.expected_rounds += static_cast<double>(max_rounds) * remaining;
    }
    return res;
}

struct EnergyStat {
    double energy;
    double exact_branch_probability;
    double exact_clock_probability;
    double exact_success_given_branch; // P(w | group, clock = target)
    std::size_t sampled_count = 0;     // successful searches ending in this group
    std::size_t sampled_successes = 0;
};

struct GroverOrbitalResult {
    double exact_conditional_success; // P(w | search succeeded)
    double exact_search_success;      // P(search succeeds within max_rounds)
    double exact_expected_rounds;
    double empirical_success;         // successes / sampled search successes
    double claimed_success = 0.5;
    std::size_t trials;
    std::size_t search_successes;
    std::size_t successes;
    double mean_rounds;
    std::vector<EnergyStat> per_energy;
};

struct GroverOrbitalConfig {
    int n_qubits = 2;
    std::size_t marked = 0;
    double flux = 0.0;
    std::size_t trials = 10000;
    std::uint64_t master_seed = 0;
    int max_rounds = 1000;
    std::size_t target_clock = 0;
    SearchStrategy strategy = SearchStrategy::reinitialize;
    double gap_tol = kDefaultGapTol;
    unsigned workers = 0;
};

/// eigenvector_search on [I_w, H, I_0, H] from |s>, then a logical
/// measurement of the qubit register. Trial i draws from
/// RngStream(master_seed, i).
inline GroverOrbitalResult grover_orbital_experiment(const GroverOrbitalConfig &cfg) {
    if (cfg.trials < 1) {
        detail::argument_error("trials must be >= 1");
    }
    const OrbitalSystem sys =
        make_orbital_system(grover_gates(cfg.n_qubits, cfg.marked), cfg.flux, cfg.gap_tol);
    const StateVector s = uniform_superposition(cfg.n_qubits);
    const ExactSearchOutcome exact =
        exact_search_outcome(sys, s, cfg.max_rounds, cfg.target_clock, cfg.strategy);

    GroverOrbitalResult res{};
    res.exact_search_success = exact.success_probability;
    res.exact_conditional_success = exact.conditional_probability(cfg.marked);
    res.exact_expected_rounds = exact.expected_rounds;
    res.trials = cfg.trials;
    for (const auto &b : single_round_branches(sys, s, cfg.target_clock)) {
        const double hit = b.probability * b.clock_probability;
        const double cond =
            hit > 0.0 ? std::norm(b.target_component(static_cast<Eigen::Index>(cfg.marked))) / hit
                      : 0.0;
        res.per_energy.push_back({b.energy, b.probability, b.clock_probability, cond});
    }

    struct Trial {
        bool found = false;
        bool success = false;
        int rounds = 0;
        std::size_t group = 0;
    };
    const auto trials = run_trials<Trial>(cfg.trials, cfg.workers, [&](std::size_t i) {
        RngStream rng(cfg.master_seed, i);
        const SearchResult r =
            eigenvector_search(sys, s, cfg.max_rounds, cfg.target_clock, cfg.strategy, rng);
        Trial out{r.success, false, r.rounds_used, 0};
        if (r.success) {
            out.success = measure_logical(r.final_qubit_state, rng).outcome_index == cfg.marked;
            out.group = r.energy_group;
        }
        return out;
    });
    double rounds = 0.0;
    for (const auto &t : trials) {
        rounds += t.rounds;
        if (!t.found) {
            continue;
        }
        ++res.search_successes;
        auto &stat = res.per_energy[t.group];
        ++stat.sampled_count;
        if (t.success) {
            ++res.successes;
            ++stat.sampled_successes;
        }
    }
    res.mean_rounds = rounds / static_cast<double>(cfg.trials);
    res.empirical_success = res.search_successes > 0
                                ? static_cast<double>(res.successes) /
                                      static_cast<double>(res.search_successes)
                                : 0.0;
    return res;
}

} // namespace orbitalsim
