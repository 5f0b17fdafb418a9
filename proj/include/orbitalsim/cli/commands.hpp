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
 * The orbitalsim command line: configuration, validation, one function per
 * experiment, and run().
 *
 * Exit status: 0 success, 2 usage or validation error (no output file is
 * written), 1 runtime error.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "../orbitalsim.hpp"
#include "gates_io.hpp"
#include "record.hpp"

namespace orbitalsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kMaxOrbitalQubits = 6;
inline constexpr const char *kSeedEnv = "ORBITALSIM_SEED";

struct ExperimentConfig {
    std::string command;
    // integer parameters
    int qubits = 2;
    std::size_t marked = 0;
    std::size_t trials = 0; // 0: command default
    int max_rounds = 1000;
    std::size_t target_clock = 0;
    int kmax = -1; // -1: command default
    int steps = 2001;
    int random_gates = 0;
    int gate_qubits = 1;
    std::size_t guess_index = 0;
    unsigned workers = 0;
    // real parameters
    double energy = 1.0;
    double flux = 0.0;
    double t_max = 0.0; // 0: command default
    double gap_tol = kDefaultGapTol;
    double delta = 2.0 * std::numbers::pi / 1024.0;
    double threshold = -1.0; // -1: command default
    std::vector<int> k_list;
    // run control
    std::uint64_t seed = 0;
    std::string seed_source = "default";
    std::string out;
    OutputFormat format = OutputFormat::json;
    SearchStrategy strategy = SearchStrategy::reinitialize;
    std::string gates_path;
};

inline std::string to_string(SearchStrategy s) {
    return s == SearchStrategy::reinitialize ? "reinitialize" : "persist";
}

inline json config_to_json(const ExperimentConfig &c) {
    return {{"command", c.command},
            {"qubits", c.qubits},
            {"marked", c.marked},
            {"trials", c.trials},
            {"max_rounds", c.max_rounds},
            {"target_clock", c.target_clock},
            {"kmax", c.kmax},
            {"steps", c.steps},
            {"random_gates", c.random_gates},
            {"gate_qubits", c.gate_qubits},
            {"guess_index", c.guess_index},
            {"energy_scale", c.energy},
            {"flux", c.flux},
            {"t_max", c.t_max},
            {"gap_tol", c.gap_tol},
            {"delta", c.delta},
            {"threshold", c.threshold},
            {"k_list", c.k_list},
            {"seed", c.seed},
            {"seed_source", c.seed_source},
            {"format", c.format == OutputFormat::json ? "json" : "csv"},
            {"strategy", to_string(c.strategy)},
            {"gates", c.gates_path}};
}

namespace detail {

inline void require(bool ok, const std::string &msg) {
    if (!ok) {
        throw ArgumentError(msg);
    }
}

inline bool is_tabular(const std::string &cmd) {
    return cmd == "grover-curve" || cmd == "fg-evolve" || cmd == "al-converge" ||
           cmd == "orbital-spectrum";
}

inline bool uses_gate_source(const std::string &cmd) {
    return cmd.rfind("orbital-", 0) == 0;
}

inline double three_sigma(double p, std::size_t n) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

inline std::vector<double> col(const std::vector<std::vector<double>> &rows, std::size_t c) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(r[c]);
    }
    return out;
}

} // namespace detail

/// Fills command defaults and checks every parameter. Throws ArgumentError.
inline void validate(ExperimentConfig &c) {
    using detail::require;
    const std::string &cmd = c.command;
    if (c.trials == 0) {
        c.trials = (cmd == "orbital-search") ? 1 : 10000;
    }
    if (c.threshold < 0.0) {
        c.threshold = (cmd == "al-converge") ? 0.99 : 0.9;
    }
    if (c.kmax < 0) {
        c.kmax = (cmd == "al-converge") ? 100000 : 10;
    }
    require(c.qubits >= 1 && c.qubits <= kMaxGroverQubits,
            "--qubits must be in [1, " + std::to_string(kMaxGroverQubits) + "]");
    if (detail::uses_gate_source(cmd) && c.gates_path.empty() && c.random_gates == 0) {
        require(c.qubits <= kMaxOrbitalQubits,
                "orbital commands support --qubits <= " + std::to_string(kMaxOrbitalQubits));
    }
    require(c.marked < (std::size_t{1} << c.qubits), "--marked out of range for --qubits");
    require(c.trials >= 1 && c.trials <= 10'000'000, "--trials must be in [1, 1e7]");
    require(c.max_rounds >= 1, "--max-rounds must be >= 1");
    require(c.steps >= 2 && c.steps <= 10'000'000, "--steps must be >= 2");
    require(c.kmax >= 0 && c.kmax <= 10'000'000, "--kmax must be in [0, 1e7]");
    require(std::isfinite(c.energy) && c.energy > 0.0, "--energy must be positive");
    require(std::isfinite(c.flux), "--flux must be finite");
    require(std::isfinite(c.t_max) && c.t_max >= 0.0, "--t-max must be positive");
    require(std::isfinite(c.gap_tol) && c.gap_tol > 0.0, "--gap-tol must be positive");
    require(std::isfinite(c.delta) && c.delta > 0.0 && c.delta < 2.0 * std::numbers::pi,
            "--delta must lie in (0, 2π)");
    require(c.threshold > 0.0 && c.threshold <= 1.0, "--threshold must lie in (0, 1]");
    for (std::size_t i = 0; i < c.k_list.size(); ++i) {
        require(c.k_list[i] >= 1, "--k-list entries must be >= 1");
        require(i == 0 || c.k_list[i] >= c.k_list[i - 1], "--k-list must be ascending");
    }
    require(!(c.random_gates != 0 && !c.gates_path.empty()),
            "--gates and --random-gates are mutually exclusive");
    require(c.random_gates >= 0 && c.random_gates <= static_cast<int>(kMaxClockLevels),
            "--random-gates must be in [1, 16]");
    require(c.gate_qubits >= 1 && c.gate_qubits <= 4, "--gate-qubits must be in [1, 4]");
    require(c.format == OutputFormat::json || detail::is_tabular(cmd),
            "--format csv is only available for grover-curve, fg-evolve, al-converge and "
            "orbital-spectrum");
}

/// Gate source for orbital commands: --gates file, --random-gates M, or the
/// Grover sequence for --qubits/--marked.
inline GateSequence resolve_gates(const ExperimentConfig &c) {
    if (!c.gates_path.empty()) {
        return load_gates(c.gates_path);
    }
    if (c.random_gates > 0) {
        // Gate stream ids sit far from trial ids so the two never collide.
        RngStream rng(c.seed, 0xFFFF'0000'0000'0000ULL);
        std::vector<DenseOperator> gates;
        for (int i = 0; i < c.random_gates; ++i) {
            gates.push_back(haar_unitary(std::size_t{1} << c.gate_qubits, rng));
        }
        return GateSequence(std::move(gates));
    }
    return grover_gates(c.qubits, c.marked);
}

inline bool grover_source(const ExperimentConfig &c) {
    return c.gates_path.empty() && c.random_gates == 0;
}

struct CommandOutput {
    json result = json::object();
    std::optional<Table> table;
};

inline CommandOutput cmd_grover_curve(const ExperimentConfig &c, std::ostream &summary) {
    const GroverInstance inst = make_grover(c.qubits, c.marked);
    const auto curve = grover_success_curve(inst, c.kmax);
    CommandOutput out;
    Table t{{"k", "probability"}, {}};
    std::vector<double> probs;
    int first = -1;
    for (const auto &pt : curve) {
        t.rows.push_back({static_cast<double>(pt.k), pt.probability});
        probs.push_back(pt.probability);
        if (first < 0 && pt.probability >= c.threshold) {
            first = pt.k;
        }
    }
    const double theta = 2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(inst.dim)));
    out.result["exact"] = {{"probabilities", probs},
                           {"first_k_reaching_threshold", first},
                           {"rotation_angle", theta},
                           {"predicted_optimal_k", std::round(std::numbers::pi / (2.0 * theta))}};
    out.table = std::move(t);
    summary << "grover-curve: N=" << inst.dim << " P(k=0)=" << probs[0];
    if (probs.size() > 1) {
        summary << " P(k=1)=" << probs[1];
    }
    summary << " first k with P>=" << c.threshold << ": " << first << "\n";
    return out;
}

inline CommandOutput cmd_grover_eigensystem(const ExperimentConfig &c, std::ostream &summary) {
    const GroverInstance inst = make_grover(c.qubits, c.marked);
    const PlaneEigensystem eig = plane_eigensystem(inst);
    const auto [closed_plus, closed_minus] = plane_phases_closed_form(inst.dim);
    const auto brute = plane_phases_by_diagonalization(inst);
    const CVector s = inst.start().amplitudes();
    const CVector w = inst.target().amplitudes();
    const CVector circ_plus = (s + Complex(0, 1) * w) / std::sqrt(2.0);
    const CVector circ_minus = (s - Complex(0, 1) * w) / std::sqrt(2.0);
    auto fid = [](const StateVector &v, const CVector &r) { return std::norm(v.amplitudes().dot(r)); };
    const double pairing_a = std::min(fid(eig.plus, circ_plus), fid(eig.minus, circ_minus));
    const double pairing_b = std::min(fid(eig.plus, circ_minus), fid(eig.minus, circ_plus));
    const double a = std::abs(eig.plus.amplitudes().dot(s));
    const double b = std::abs(eig.minus.amplitudes().dot(s));
    CommandOutput out;
    out.result["exact"] = {
        {"plus_eigenphase", eig.eigenphase},
        {"minus_eigenphase", orbitalsim::detail::wrap_phase(2.0 * std::numbers::pi - eig.eigenphase)},
        {"closed_form_phases", {closed_plus, closed_minus}},
        {"diagonalization_phases", brute},
        {"circular_form_fidelity", std::max(pairing_a, pairing_b)},
        {"circular_form_bound", 1.0 - 4.0 / static_cast<double>(inst.dim)},
        {"start_weight_plus", a * a},
        {"start_weight_minus", b * b},
        {"plus", vector_to_json(eig.plus.amplitudes())},
        {"minus", vector_to_json(eig.minus.amplitudes())}};
    summary << "grover-eigensystem: N=" << inst.dim << " plus phase=" << eig.eigenphase
            << " circular-form fidelity=" << std::max(pairing_a, pairing_b) << "\n";
    return out;
}

inline CommandOutput cmd_fg_evolve(const ExperimentConfig &c, std::ostream &summary) {
    const FGInstance inst = fg_hamiltonian(c.qubits, c.marked, c.energy);
    const double predicted = std::numbers::pi / (2.0 * c.energy * inst.overlap_x);
    const double t_max = c.t_max > 0.0 ? c.t_max : 2.0 * predicted;
    const EvolutionTrace trace = fg_evolution_sweep(inst, t_max, c.steps);
    const std::size_t peak = trace.peak_index();
    CommandOutput out;
    out.result["exact"] = {{"times", trace.times},
                           {"success_probability", trace.success_probability},
                           {"peak_time", trace.times[peak]},
                           {"peak_probability", trace.success_probability[peak]},
                           {"predicted_peak_time", predicted},
                           {"grid_spacing", t_max / (c.steps - 1)}};
    Table t{{"t", "success_probability"}, {}};
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        t.rows.push_back({trace.times[i], trace.success_probability[i]});
    }
    out.table = std::move(t);
    summary << "fg-evolve: N=" << inst.dim() << " peak P=" << trace.success_probability[peak]
            << " at t=" << trace.times[peak] << " (predicted " << predicted << ")\n";
    return out;
}

inline CommandOutput cmd_fg_shortcut(const ExperimentConfig &c, std::ostream &summary) {
    const FGInstance inst = fg_hamiltonian(c.qubits, c.marked, c.energy);
    const ShortcutResult r = fg_shortcut_experiment(inst, c.trials, c.seed, c.gap_tol, c.workers);
    json exact_branches = json::array();
    json sampled_branches = json::array();
    for (const auto &b : r.branches) {
        exact_branches.push_back({{"energy", b.energy},
                                  {"probability", b.exact_probability},
                                  {"success_given_branch", b.exact_success_given_branch}});
        sampled_branches.push_back({{"energy", b.energy},
                                    {"count", b.sampled_count},
                                    {"successes", b.sampled_successes}});
    }
    const double x = inst.overlap_x;
    CommandOutput out;
    out.result["exact"] = {{"exact_success", r.exact_success},
                           {"closed_form_success", (1.0 + x * x) / 2.0},
                           {"overlap_x", x},
                           {"kernel_probability", r.kernel_probability},
                           {"branches", exact_branches},
                           {"three_sigma", detail::three_sigma(r.exact_success, r.trials)}};
    out.result["sampled"] = {{"empirical_success", r.empirical_success},
                             {"successes", r.successes},
                             {"trials", r.trials},
                             {"branches", sampled_branches}};
    out.result["reference"] = {{"claimed_success_probability", 0.5}};
    summary << "fg-shortcut: N=" << inst.dim() << " exact=" << r.exact_success
            << " sampled=" << r.empirical_success << " (" << r.trials << " trials)\n";
    return out;
}

inline json levels_to_json(const DegenerateSpectrum &levels) {
    json out = json::array();
    for (const auto &g : levels.groups) {
        out.push_back({{"energy", g.energy}, {"size", g.members.size()}});
    }
    return out;
}

inline CommandOutput cmd_orbital_spectrum(const ExperimentConfig &c, std::ostream &summary) {
    const GateSequence gates = resolve_gates(c);
    const OrbitalSystem sys = make_orbital_system(gates, c.flux, c.gap_tol);
    const auto predicted = predicted_orbital_energies(gates, c.flux);
    double err = 0.0;
    Table t{{"index", "energy", "predicted"}, {}};
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        err = std::max(err, std::abs(predicted[i] - sys.decomposition.eigenvalues[i]));
        t.rows.push_back({static_cast<double>(i), sys.decomposition.eigenvalues[i], predicted[i]});
    }
    CommandOutput out;
    out.result["exact"] = {{"energies", sys.decomposition.eigenvalues},
                           {"predicted_energies", predicted},
                           {"max_prediction_error", err},
                           {"levels", levels_to_json(sys.levels)},
                           {"loop_eigenphases", unitary_eigenphases(gates.product())},
                           {"clock_levels", gates.size()},
                           {"qubit_dim", gates.qubit_dim()},
                           {"hermiticity_error", sys.hamiltonian.op.hermiticity_error()}};
    out.table = std::move(t);
    summary << "orbital-spectrum: M=" << gates.size() << " N=" << gates.qubit_dim() << " "
            << sys.levels.groups.size() << " levels, max deviation from U-prediction " << err
            << "\n";
    return out;
}

inline CommandOutput cmd_orbital_verify(const ExperimentConfig &c, std::ostream &summary) {
    const GateSequence gates = resolve_gates(c);
    const OrbitalSystem sys = make_orbital_system(gates, c.flux, c.gap_tol);
    const EigenstructureSummary s = summarize_eigenstructure(sys);
    json per_level = json::array();
    for (const auto &level : sys.levels.groups) {
        if (level.members.size() != 1) {
            continue;
        }
        const auto rep = verify_step_structure(
            CVector(sys.decomposition.eigenvectors.col(static_cast<Eigen::Index>(level.members[0]))),
            gates);
        per_level.push_back({{"energy", level.energy},
                             {"max_residual", rep.max_residual()},
                             {"step_phase", rep.step_phase},
                             {"loop_phase", rep.loop_phase},
                             {"clock_distribution", rep.clock_distribution}});
    }
    const bool pass = s.max_residual <= 1e-8 && s.max_clock_deviation <= 1e-9 &&
                      s.max_energy_error <= 1e-7;
    CommandOutput out;
    out.result["exact"] = {{"nondegenerate_levels", s.nondegenerate_levels},
                           {"total_levels", sys.levels.groups.size()},
                           {"max_residual", s.max_residual},
                           {"max_clock_deviation", s.max_clock_deviation},
                           {"max_loop_phase_error", s.max_loop_phase_error},
                           {"max_energy_error", s.max_energy_error},
                           {"structure_holds", pass},
                           {"levels", per_level}};
    summary << "orbital-verify: " << s.nondegenerate_levels << " nondegenerate levels, max residual "
            << s.max_residual << ", max clock deviation " << s.max_clock_deviation
            << (pass ? " [structure holds]" : " [structure violated]") << "\n";
    return out;
}

inline CommandOutput cmd_orbital_search(const ExperimentConfig &c, std::ostream &summary) {
    const GateSequence gates = resolve_gates(c);
    detail::require(c.target_clock < gates.size(), "--target-clock must be < M");
    const OrbitalSystem sys = make_orbital_system(gates, c.flux, c.gap_tol);
    detail::require(c.guess_index < gates.qubit_dim(), "--guess-index must be < N");
    const StateVector guess = grover_source(c) ? uniform_superposition(c.qubits)
                                               : basis_state(gates.qubit_dim(), c.guess_index);
    const ExactSearchOutcome exact =
        exact_search_outcome(sys, guess, c.max_rounds, c.target_clock, c.strategy);
    const auto results = run_trials<SearchResult>(c.trials, c.workers, [&](std::size_t i) {
        RngStream rng(c.seed, i);
        return eigenvector_search(sys, guess, c.max_rounds, c.target_clock, c.strategy, rng);
    });
    json trials = json::array();
    double rounds = 0.0;
    std::size_t found = 0;
    for (const auto &r : results) {
        rounds += r.rounds_used;
        found += r.success ? 1 : 0;
        trials.push_back({{"success", r.success},
                          {"rounds_used", r.rounds_used},
                          {"final_clock", r.final_clock},
                          {"measured_energy", r.measured_energy},
                          {"clock_probability_exact", r.clock_probability},
                          {"eigenphase_estimate", r.eigenphase_estimate},
                          {"eigen_residual", r.eigen_residual},
                          {"candidate_phases", r.candidate_phases},
                          {"phase_consistent", r.phase_consistent()},
                          {"guess_fidelity", r.guess_fidelity},
                          {"final_qubit_state", vector_to_json(r.final_qubit_state.amplitudes())}});
    }
    CommandOutput out;
    out.result["exact"] = {{"search_success_probability", exact.success_probability},
                           {"expected_rounds", exact.expected_rounds},
                           {"expected_rounds_given_success", exact.expected_rounds_given_success},
                           {"clock_levels", gates.size()}};
    out.result["sampled"] = {{"trials", c.trials},
                             {"search_successes", found},
                             {"mean_rounds", rounds / static_cast<double>(c.trials)},
                             {"runs", trials}};
    summary << "orbital-search: " << found << "/" << c.trials << " searches reached clock "
            << c.target_clock << ", mean rounds " << rounds / static_cast<double>(c.trials)
            << " (exact " << exact.expected_rounds << ")\n";
    return out;
}

inline CommandOutput cmd_grover_orbital(const ExperimentConfig &c, std::ostream &summary) {
    detail::require(c.target_clock < 4, "--target-clock must be < 4 for the Grover orbital");
    GroverOrbitalConfig g;
    g.n_qubits = c.qubits;
    g.marked = c.marked;
    g.flux = c.flux;
    g.trials = c.trials;
    g.master_seed = c.seed;
    g.max_rounds = c.max_rounds;
    g.target_clock = c.target_clock;
    g.strategy = c.strategy;
    g.gap_tol = c.gap_tol;
    g.workers = c.workers;
    const GroverOrbitalResult r = grover_orbital_experiment(g);
    json exact_levels = json::array();
    json sampled_levels = json::array();
    for (const auto &e : r.per_energy) {
        exact_levels.push_back({{"energy", e.energy},
                                {"branch_probability", e.exact_branch_probability},
                                {"clock_probability", e.exact_clock_probability},
                                {"success_given_branch", e.exact_success_given_branch}});
        sampled_levels.push_back({{"energy", e.energy},
                                  {"count", e.sampled_count},
                                  {"successes", e.sampled_successes}});
    }
    const double sig = r.search_successes > 0
                           ? detail::three_sigma(r.exact_conditional_success, r.search_successes)
                           : 0.0;
    CommandOutput out;
    out.result["exact"] = {{"conditional_success_probability", r.exact_conditional_success},
                           {"search_success_probability", r.exact_search_success},
                           {"expected_rounds", r.exact_expected_rounds},
                           {"three_sigma", sig},
                           {"per_energy_single_round", exact_levels}};
    out.result["sampled"] = {{"success_frequency", r.empirical_success},
                             {"successes", r.successes},
                             {"search_successes", r.search_successes},
                             {"trials", r.trials},
                             {"mean_rounds", r.mean_rounds},
                             {"per_energy_final_round", sampled_levels}};
    out.result["reference"] = {
        {"claimed_success_probability", r.claimed_success},
        {"exact_matches_claim", std::abs(r.exact_conditional_success - r.claimed_success) <= 1e-9}};
    summary << "grover-orbital: N=" << (std::size_t{1} << c.qubits) << " flux=" << c.flux
            << " exact=" << r.exact_conditional_success << " sampled=" << r.empirical_success
            << " reference=" << r.claimed_success << "\n";
    return out;
}

inline CommandOutput cmd_al_converge(const ExperimentConfig &c, std::ostream &summary) {
    const DenseOperator u = phase_rotation(c.delta);
    const StateVector psi = StateVector::normalized(CVector::Ones(2));
    const StateVector target = basis_state(2, 0);
    std::vector<int> ks = c.k_list;
    if (ks.empty()) {
        for (int k = 1; k <= std::min(c.kmax, 1 << 20); k *= 2) {
            ks.push_back(k);
        }
    }
    const auto rows = convergence_study(u, psi, target, ks);
    Table t{{"k", "overlap", "residual", "gain_formula_overlap"}, {}};
    for (const auto &r : rows) {
        const double half = c.delta / 2.0;
        const double ratio = std::abs(std::sin(r.k * half) / (r.k * std::sin(half)));
        t.rows.push_back({static_cast<double>(r.k), r.overlap, r.residual, 1.0 / (1.0 + ratio * ratio)});
    }
    const int first = first_k_reaching(u, psi, target, c.threshold, std::max(c.kmax, 1));
    CommandOutput out;
    out.result["exact"] = {{"k", detail::col(t.rows, 0)},
                           {"overlap", detail::col(t.rows, 1)},
                           {"residual", detail::col(t.rows, 2)},
                           {"gain_formula_overlap", detail::col(t.rows, 3)},
                           {"first_k_reaching_threshold", first},
                           {"delta", c.delta}};
    out.table = std::move(t);
    summary << "al-converge: delta=" << c.delta << " first k with overlap>=" << c.threshold << ": "
            << first << "\n";
    return out;
}

using CommandFn = std::function<CommandOutput(const ExperimentConfig &, std::ostream &)>;

inline const std::map<std::string, std::pair<CommandFn, std::string>> &command_table() {
    static const std::map<std::string, std::pair<CommandFn, std::string>> table{
        {"grover-curve", {cmd_grover_curve, "success probability |<w|G^k|s>|^2 for k = 0..kmax"}},
        {"grover-eigensystem", {cmd_grover_eigensystem, "exact eigenvectors of G in the s-w plane"}},
        {"fg-evolve", {cmd_fg_evolve, "continuous search success probability over time"}},
        {"fg-shortcut", {cmd_fg_shortcut, "energy measurement then logical measurement"}},
        {"orbital-spectrum", {cmd_orbital_spectrum, "orbital Hamiltonian spectrum vs U prediction"}},
        {"orbital-verify", {cmd_orbital_verify, "check the eigenstate step structure"}},
        {"orbital-search", {cmd_orbital_search, "measurement-based eigenvector search"}},
        {"grover-orbital", {cmd_grover_orbital, "Grover orbital search success statistics"}},
        {"al-converge", {cmd_al_converge, "power-sum filter convergence on diag(1, e^{i delta})"}},
    };
    return table;
}

namespace detail {

inline void add_options(CLI::App &sub, ExperimentConfig &c, std::string &format,
                        std::string &strategy, double &delta_denom) {
    // shared
    sub.add_option("--seed", c.seed, "master seed (falls back to $ORBITALSIM_SEED, then 0)");
    sub.add_option("--out", c.out, "output file (stdout when omitted)");
    sub.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--trials", c.trials, "Monte Carlo trials");
    sub.add_option("--flux", c.flux, "hopping phase on the clock ring");
    sub.add_option("--gap-tol", c.gap_tol, "degeneracy tolerance for energy levels");
    sub.add_option("--strategy", strategy, "reinitialize or persist")
        ->check(CLI::IsMember({"reinitialize", "persist"}));
    sub.add_option("--target-clock", c.target_clock, "clock value that ends a search");
    sub.add_option("--gates", c.gates_path, "gate-file JSON");
    sub.add_option("--workers", c.workers, "worker threads (0 = all cores)");
    // per-experiment
    sub.add_option("--qubits", c.qubits, "number of qubits n (N = 2^n)");
    sub.add_option("--marked", c.marked, "marked basis index w");
    sub.add_option("--kmax", c.kmax, "largest iteration count");
    sub.add_option("--energy", c.energy, "energy scale E");
    sub.add_option("--t-max", c.t_max, "end of the time grid");
    sub.add_option("--steps", c.steps, "time grid points");
    sub.add_option("--max-rounds", c.max_rounds, "search round limit");
    sub.add_option("--random-gates", c.random_gates, "use M Haar-random gates");
    sub.add_option("--gate-qubits", c.gate_qubits, "qubits per random gate");
    sub.add_option("--guess-index", c.guess_index, "basis-state guess for --gates sources");
    sub.add_option("--delta", c.delta, "eigenphase of the rotated branch (radians)");
    sub.add_option("--delta-denom", delta_denom, "set delta = 2π / D");
    sub.add_option("--k-list", c.k_list, "ascending k values")->delimiter(',');
    sub.add_option("--threshold", c.threshold, "success / overlap threshold");
}

inline std::uint64_t parse_seed_env(const char *text) {
    std::string s(text);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos, 0);
    } catch (const std::exception &) {
        pos = 0;
    }
    require(pos == s.size() && !s.empty(), std::string(kSeedEnv) + " is not an integer: '" + s + "'");
    return static_cast<std::uint64_t>(v);
}

} // namespace detail

/// Parses args (without the program name), runs the experiment and writes the
/// record. Returns the process exit status.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    ExperimentConfig cfg;
    std::string format = "json";
    std::string strategy = "reinitialize";
    double delta_denom = 0.0;

    CLI::App app{"orbitalsim: measurement-based eigenvector search experiments", "orbitalsim"};
    app.require_subcommand(1);
    for (const auto &[name, entry] : command_table()) {
        CLI::App *sub = app.add_subcommand(name, entry.second);
        detail::add_options(*sub, cfg, format, strategy, delta_denom);
        sub->callback([&cfg, n = name] { cfg.command = n; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    std::optional<CommandOutput> result;
    std::ostringstream summary;
    ExperimentRecord rec;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const CLI::App *sub = app.get_subcommands().front();
        if (sub->count("--seed") > 0) {
            cfg.seed_source = "flag";
        } else if (const char *env = std::getenv(kSeedEnv)) {
            cfg.seed = detail::parse_seed_env(env);
            cfg.seed_source = "env";
        }
        // 0 and -1 mark "use the command default", so explicit values must be real.
        detail::require(sub->count("--trials") == 0 || cfg.trials >= 1, "--trials must be >= 1");
        detail::require(sub->count("--kmax") == 0 || cfg.kmax >= 0, "--kmax must be >= 0");
        detail::require(sub->count("--threshold") == 0 || cfg.threshold > 0.0,
                        "--threshold must lie in (0, 1]");
        detail::require(sub->count("--t-max") == 0 || cfg.t_max > 0.0, "--t-max must be positive");
        if (sub->count("--delta-denom") > 0) {
            detail::require(std::isfinite(delta_denom) && delta_denom > 1.0,
                            "--delta-denom must be > 1");
            cfg.delta = 2.0 * std::numbers::pi / delta_denom;
        }
        cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        cfg.strategy = strategy == "persist" ? SearchStrategy::persist : SearchStrategy::reinitialize;
        validate(cfg);
        if (detail::uses_gate_source(cfg.command)) {
            // Load and validate gate files before any computation.
            const GateSequence g = resolve_gates(cfg);
            detail::require(cfg.target_clock < g.size(), "--target-clock must be < M");
        }
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        result = command_table().at(cfg.command).first(cfg, summary);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    const auto t1 = std::chrono::steady_clock::now();

    rec.version = kVersion;
    rec.config = config_to_json(cfg);
    rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    rec.result = std::move(result->result);
    rec.table = std::move(result->table);
    const std::string bytes = emit(rec, cfg.format);
    if (cfg.out.empty() || cfg.out == "-") {
        // stdout carries the record, so the summary goes to stderr.
        err << summary.str();
        out << bytes;
        return kExitOk;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file || !(file << bytes) || !file.flush()) {
        err << "runtime error: cannot write '" << cfg.out << "'\n";
        return kExitRuntime;
    }
    out << summary.str();
    return kExitOk;
}

} // namespace orbitalsim::cli
