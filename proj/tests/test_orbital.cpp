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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <orbitalsim/orbital.hpp>

using namespace orbitalsim;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kGolden = 2.0 * std::numbers::pi * 0.381966;

GateSequence random_gates(std::size_t m, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<DenseOperator> g;
    for (std::size_t i = 0; i < m; ++i) {
        g.push_back(haar_unitary(n, rng));
    }
    return GateSequence(std::move(g));
}

CMatrix clock_hop(std::size_t m, std::size_t from, std::size_t to) {
    CMatrix c = CMatrix::Zero(m, m);
    c(to, from) = 1.0;
    return c;
}
} // namespace

TEST_CASE("gate sequences are validated", "[orbital]") {
    REQUIRE_THROWS_AS(GateSequence({}), ArgumentError);
    CMatrix bad(2, 2);
    bad << 1.0, 1.0, 0.0, 1.0;
    REQUIRE_THROWS_AS(GateSequence({DenseOperator(bad)}), ValidationError);
    REQUIRE_THROWS_AS(GateSequence({DenseOperator::identity(2), DenseOperator::identity(4)}),
                      ArgumentError);
    REQUIRE_THROWS_AS(random_gates(17, 2, 1), ArgumentError);
    REQUIRE_NOTHROW(random_gates(16, 2, 1));
}

TEST_CASE("products and cyclic permutations", "[orbital]") {
    const GateSequence g = random_gates(3, 2, 4);
    const CMatrix& a = g.gates()[0].matrix();
    const CMatrix& b = g.gates()[1].matrix();
    const CMatrix& c = g.gates()[2].matrix();
    REQUIRE(max_abs_diff(g.product().matrix(), c * b * a) < 1e-12);
    REQUIRE(max_abs_diff(g.cyclic_permutation(1).matrix(), a * c * b) < 1e-12);
    REQUIRE(max_abs_diff(g.cyclic_permutation(2).matrix(), b * a * c) < 1e-12);
    const auto p0 = unitary_eigenphases(g.product());
    const auto p2 = unitary_eigenphases(g.cyclic_permutation(2));
    for (std::size_t i = 0; i < p0.size(); ++i) {
        REQUIRE(detail::phase_distance(p0[i], p2[i]) < 1e-10);
    }
}

TEST_CASE("Grover gates loop to the Grover operator", "[orbital]") {
    const GateSequence g = grover_gates(3, 6);
    REQUIRE(max_abs_diff(g.product().matrix(), make_grover(3, 6).op.matrix()) < 1e-12);
}

TEST_CASE("ring Hamiltonian from Kronecker products", "[orbital]") {
    for (std::size_t m : {1u, 2u, 3u, 5u}) {
        const GateSequence g = random_gates(m, 2, 10 + m);
        const double phi = 0.37;
        CMatrix ref = CMatrix::Zero(2 * m, 2 * m);
        for (std::size_t t = 0; t < m; ++t) {
            const CMatrix term = std::polar(1.0, phi) *
                                 kron(clock_hop(m, t, (t + 1) % m), g.gates()[t].matrix());
            ref += term + term.adjoint();
        }
        const auto h = orbital_hamiltonian(g, phi);
        REQUIRE(max_abs_diff(h.op.matrix(), ref) < 1e-13);
        REQUIRE(h.op.is_hermitian());
    }
}

TEST_CASE("constructed ring eigenstates", "[orbital]") {
    const std::size_t m = 4;
    const GateSequence g = random_gates(m, 3, 21);
    const double phi = 0.61;
    const auto h = orbital_hamiltonian(g, phi);
    Eigen::ComplexEigenSolver<CMatrix> es(g.product().matrix());
    for (Eigen::Index j = 0; j < 3; ++j) {
        const double alpha = std::arg(es.eigenvalues()(j));
        const CVector phi_j = es.eigenvectors().col(j).normalized();
        for (std::size_t k = 0; k < m; ++k) {
            const double kappa = (2 * std::numbers::pi * k - alpha) / m;
            CVector c(3 * m);
            for (std::size_t t = 0; t < m; ++t) {
                c.segment(3 * t, 3) =
                    std::polar(1.0, kappa * t) * g.partial_product(t) * phi_j / std::sqrt(m);
            }
            const double e = 2 * std::cos(kappa - phi);
            REQUIRE((h.op.matrix() * c - e * c).norm() < 1e-10);

            const auto rep = verify_step_structure(c, g);
            REQUIRE(rep.passes());
            REQUIRE(rep.max_clock_deviation() < 1e-12);
            REQUIRE(detail::phase_distance(rep.loop_phase, detail::wrap_phase(alpha)) < 1e-9);
            const auto cand = eigenphase_candidates(e, m, phi);
            bool hit = false;
            for (double a : cand) {
                hit = hit || detail::phase_distance(a, detail::wrap_phase(alpha)) < 1e-8;
            }
            REQUIRE(hit);
        }
    }
}

TEST_CASE("step structure rejects non-eigenstates", "[orbital]") {
    const GateSequence g = random_gates(3, 2, 5);
    CVector v = CVector::Zero(6);
    v(0) = 1.0;
    const auto rep = verify_step_structure(v, g);
    REQUIRE_FALSE(rep.passes());
    REQUIRE_THAT(rep.max_clock_deviation(), WithinAbs(2.0 / 3.0, 1e-12));
    REQUIRE_THROWS_AS(verify_step_structure(CVector::Zero(6), g), ArgumentError);
    REQUIRE_THROWS_AS(verify_step_structure(CVector::Ones(4), g), ArgumentError);
    REQUIRE_THROWS_AS(eigenphase_candidates(2.5, 3, 0.0), ArgumentError);
}

TEST_CASE("eigenstructure of random sequences", "[orbital]") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t m = 3 + seed % 3;
        const auto sys = make_orbital_system(random_gates(m, 4, 100 + seed), 0.3 + 0.1 * seed);
        const auto s = summarize_eigenstructure(sys);
        REQUIRE(s.nondegenerate_levels > 0);
        REQUIRE(s.max_residual <= 1e-8);
        REQUIRE(s.max_clock_deviation <= 1e-9);
        REQUIRE(s.max_loop_phase_error <= 1e-7);
        REQUIRE(s.max_energy_error <= 1e-7);
    }
}

TEST_CASE("clock measurement", "[orbital]") {
    const CompositeSpace space{3, 2};
    CVector v(6);
    v << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
    const StateVector psi = StateVector::normalized(v);
    const auto p = clock_probabilities(psi, space);
    REQUIRE_THAT(p[0], WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(p[2], WithinAbs(0.5, 1e-15));
    RngStream rng(3);
    const auto out = measure_clock(psi, space, rng);
    REQUIRE(clock_probabilities(out.post_state, space)[out.outcome_index] == 1.0);
    const auto proj = space.clock_projectors();
    const auto probs = outcome_probabilities(psi, proj);
    for (std::size_t t = 0; t < 3; ++t) {
        REQUIRE_THAT(probs[t], WithinAbs(p[t], 1e-15));
    }
}

TEST_CASE("search output is a loop eigenvector", "[orbital]") {
    const auto sys = make_orbital_system(grover_gates(2, 3), 0.7);
    const StateVector s = uniform_superposition(2);
    for (std::size_t i = 0; i < 200; ++i) {
        RngStream rng(17, i);
        const auto r = eigenvector_search(sys, s, 1000, 0, SearchStrategy::reinitialize, rng);
        REQUIRE(r.success);
        REQUIRE(r.final_clock == 0);
        REQUIRE(r.eigen_residual <= 1e-6);
        REQUIRE(r.phase_consistent());
        REQUIRE_THAT(r.clock_probability, WithinAbs(0.25, 1e-9));
        const CVector gpsi = make_grover(2, 3).op.matrix() * r.final_qubit_state.amplitudes();
        REQUIRE((gpsi - std::polar(1.0, r.eigenphase_estimate) *
                            r.final_qubit_state.amplitudes()).norm() <= 1e-6);
    }
}

TEST_CASE("search with other target clocks and persistence", "[orbital]") {
    const auto sys = make_orbital_system(random_gates(3, 2, 8), 0.45);
    const StateVector g = basis_state(2, 1);
    for (auto strategy : {SearchStrategy::reinitialize, SearchStrategy::persist}) {
        for (std::size_t target = 0; target < 3; ++target) {
            RngStream rng(2, target);
            const auto r = eigenvector_search(sys, g, 1000, target, strategy, rng);
            REQUIRE(r.success);
            REQUIRE(r.final_clock == target);
            REQUIRE(r.eigen_residual <= 1e-6);
            REQUIRE(r.phase_consistent());
        }
    }
    RngStream rng(0);
    REQUIRE_THROWS_AS(eigenvector_search(sys, g, 10, 3, SearchStrategy::persist, rng),
                      ArgumentError);
    REQUIRE_THROWS_AS(eigenvector_search(sys, g, 0, 0, SearchStrategy::persist, rng),
                      ArgumentError);
}

TEST_CASE("exact search statistics are geometric at generic flux", "[orbital]") {
    const auto sys = make_orbital_system(grover_gates(2, 1), 0.7);
    const StateVector s = uniform_superposition(2);
    for (auto strategy : {SearchStrategy::reinitialize, SearchStrategy::persist}) {
        const auto ex = exact_search_outcome(sys, s, 1000, 0, strategy);
        REQUIRE_THAT(ex.success_probability, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(ex.expected_rounds, WithinAbs(4.0, 1e-9));
        REQUIRE_THAT(ex.success_operator.trace().real(), WithinAbs(1.0, 1e-12));
    }
    const auto one = exact_search_outcome(sys, s, 1, 0, SearchStrategy::reinitialize);
    REQUIRE_THAT(one.success_probability, WithinAbs(0.25, 1e-12));
    const auto two = exact_search_outcome(sys, s, 2, 0, SearchStrategy::reinitialize);
    REQUIRE_THAT(two.success_probability, WithinAbs(1 - 0.75 * 0.75, 1e-12));
    REQUIRE_THAT(two.expected_rounds, WithinAbs(0.25 + 2 * 0.75, 1e-12));
}

TEST_CASE("exact chain agrees with sampling on random gates", "[orbital]") {
    const auto sys = make_orbital_system(random_gates(3, 2, 31), 0.2);
    const StateVector g = basis_state(2, 0);
    for (auto strategy : {SearchStrategy::reinitialize, SearchStrategy::persist}) {
        const auto ex = exact_search_outcome(sys, g, 3, 1, strategy);
        const std::size_t n = 20000;
        std::size_t hits = 0, q0 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            RngStream rng(12, i);
            const auto r = eigenvector_search(sys, g, 3, 1, strategy, rng);
            if (r.success) {
                ++hits;
                q0 += measure_logical(r.final_qubit_state, rng).outcome_index == 0;
            }
        }
        const double p = ex.success_probability;
        REQUIRE(std::abs(hits / double(n) - p) <= 4 * std::sqrt(p * (1 - p) / n));
        const double c = ex.conditional_probability(0);
        REQUIRE(std::abs(q0 / double(hits) - c) <= 4 * std::sqrt(c * (1 - c) / hits));
    }
}

TEST_CASE("Grover orbital exact conditional success", "[orbital]") {
    // Frozen from an independent numpy projector-chain computation.
    struct Case {
        int n;
        std::size_t w;
        double flux;
        double expect;
    };
    for (const auto& c : {Case{2, 3, 0.0, 0.25}, Case{2, 3, kGolden, 0.5},
                          Case{3, 5, 0.0, 0.125}, Case{3, 5, kGolden, 0.5}}) {
        GroverOrbitalConfig cfg;
        cfg.n_qubits = c.n;
        cfg.marked = c.w;
        cfg.flux = c.flux;
        cfg.trials = 2000;
        cfg.master_seed = 3;
        const auto r = grover_orbital_experiment(cfg);
        REQUIRE_THAT(r.exact_conditional_success, WithinAbs(c.expect, 1e-9));
        REQUIRE_THAT(r.exact_search_success, WithinAbs(1.0, 1e-9));
        REQUIRE(r.claimed_success == 0.5);
        const double p = r.exact_conditional_success;
        REQUIRE(std::abs(r.empirical_success - p) <=
                4 * std::sqrt(p * (1 - p) / r.search_successes));
        cfg.workers = 3;
        REQUIRE(grover_orbital_experiment(cfg).successes == r.successes);
    }
}

TEST_CASE("Grover orbital level degeneracies", "[orbital]") {
    const auto flat = make_orbital_system(grover_gates(2, 3), 0.0);
    std::vector<std::size_t> sizes;
    for (const auto& l : flat.levels.groups) {
        sizes.push_back(l.members.size());
    }
    std::sort(sizes.begin(), sizes.end());
    REQUIRE(sizes == std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 4});

    const auto gold = make_orbital_system(grover_gates(2, 3), kGolden);
    std::size_t singles = 0, pairs = 0;
    for (const auto& l : gold.levels.groups) {
        singles += l.members.size() == 1;
        pairs += l.members.size() == 2;
    }
    REQUIRE(singles == 8);
    REQUIRE(pairs == 4);
}
