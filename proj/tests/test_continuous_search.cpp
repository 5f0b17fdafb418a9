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

#include <orbitalsim/continuous_search.hpp>

using namespace orbitalsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("FG Hamiltonian entries", "[continuous]") {
    const FGInstance f = fg_hamiltonian(3, 6, 2.5);
    REQUIRE(f.dim() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const double expect = 2.5 / 8.0 + (i == 6 && j == 6 ? 2.5 : 0.0);
            REQUIRE(std::abs(f.hamiltonian(i, j) - expect) < 1e-14);
        }
    }
    REQUIRE_THROWS_AS(fg_hamiltonian(3, 0, 0.0), ArgumentError);
    REQUIRE_THROWS_AS(fg_hamiltonian(3, 8), ArgumentError);
}

TEST_CASE("FG spectrum is E(1 ± x) plus a kernel", "[continuous]") {
    for (int n = 1; n <= 6; ++n) {
        const FGInstance f = fg_hamiltonian(n, 0, 1.5);
        const double x = std::pow(2.0, -0.5 * n);
        const auto& ev = f.decomposition.eigenvalues;
        REQUIRE_THAT(ev.back(), WithinAbs(1.5 * (1 + x), 1e-10));
        REQUIRE_THAT(ev[ev.size() - 2], WithinAbs(1.5 * (1 - x), 1e-10));
        for (std::size_t i = 0; i + 2 < ev.size(); ++i) {
            REQUIRE_THAT(ev[i], WithinAbs(0.0, 1e-10));
        }
        const auto eig = fg_plane_eigensystem(f);
        const CVector hp = f.hamiltonian.matrix() * eig.plus.amplitudes();
        const CVector hm = f.hamiltonian.matrix() * eig.minus.amplitudes();
        REQUIRE((hp - eig.plus_energy * eig.plus.amplitudes()).norm() < 1e-12);
        REQUIRE((hm - eig.minus_energy * eig.minus.amplitudes()).norm() < 1e-12);
        const auto [fp, fm] = diagonal_form_fidelities(f);
        REQUIRE_THAT(fp, WithinAbs(1 + x, 1e-12));
        REQUIRE_THAT(fm, WithinAbs(1 - x, 1e-12));
    }
}

TEST_CASE("evolution matches sin²(Ext) + x²cos²(Ext)", "[continuous]") {
    const FGInstance f = fg_hamiltonian(4, 9, 0.8);
    const double x = 0.25;
    const auto tr = fg_evolution_sweep(f, 20.0, 101);
    REQUIRE(tr.times.size() == 101);
    REQUIRE(tr.times.front() == 0.0);
    REQUIRE(tr.times.back() == 20.0);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double a = 0.8 * x * tr.times[i];
        const double expect = std::pow(std::sin(a), 2) + x * x * std::pow(std::cos(a), 2);
        REQUIRE_THAT(tr.success_probability[i], WithinAbs(expect, 1e-10));
    }
}

TEST_CASE("peak time scales with sqrt(N)", "[continuous]") {
    double prev = 0.0;
    for (int n : {2, 4, 6}) {
        const FGInstance f = fg_hamiltonian(n, 1);
        const double predicted = std::numbers::pi / 2 * std::pow(2.0, 0.5 * n);
        const auto tr = fg_evolution_sweep(f, 2 * predicted, 2001);
        const std::size_t p = tr.peak_index();
        REQUIRE_THAT(tr.success_probability[p], WithinAbs(1.0, 1e-6));
        REQUIRE(std::abs(tr.times[p] - predicted) <= tr.times[1]);
        if (prev > 0.0) {
            REQUIRE_THAT(tr.times[p] / prev, WithinAbs(2.0, 0.04));
        }
        prev = tr.times[p];
    }
}

TEST_CASE("shortcut exact branches", "[continuous]") {
    for (int n = 1; n <= 8; ++n) {
        const FGInstance f = fg_hamiltonian(n, 0);
        const double x = f.overlap_x;
        const auto br = fg_exact_branches(f, group_degenerate(f.decomposition));
        int live = 0;
        double total = 0.0;
        for (const auto& b : br) {
            if (b.exact_probability > 1e-12) {
                ++live;
                const bool up = b.energy > 1.0;
                REQUIRE_THAT(b.exact_probability, WithinAbs(up ? (1 + x) / 2 : (1 - x) / 2, 1e-9));
                REQUIRE_THAT(b.exact_success_given_branch,
                             WithinAbs(up ? (1 + x) / 2 : (1 - x) / 2, 1e-9));
            }
            total += b.exact_probability * b.exact_success_given_branch;
        }
        REQUIRE(live == 2);
        REQUIRE_THAT(total, WithinAbs((1 + x * x) / 2, 1e-12));
    }
}

TEST_CASE("shortcut sampling", "[continuous]") {
    const FGInstance f = fg_hamiltonian(4, 3);
    const auto r = fg_shortcut_experiment(f, 10000, 7);
    REQUIRE_THAT(r.exact_success, WithinAbs(0.53125, 1e-12));
    REQUIRE_THAT(r.kernel_probability, WithinAbs(0.0, 1e-12));
    const double sigma = std::sqrt(r.exact_success * (1 - r.exact_success) / 10000.0);
    REQUIRE(std::abs(r.empirical_success - r.exact_success) <= 3 * sigma);
    std::size_t counted = 0;
    for (const auto& b : r.branches) {
        counted += b.sampled_count;
        if (b.exact_probability < 1e-12) {
            REQUIRE(b.sampled_count == 0);
        }
    }
    REQUIRE(counted == 10000);

    const auto again = fg_shortcut_experiment(f, 10000, 7, kDefaultGapTol, 3);
    REQUIRE(again.successes == r.successes);
    REQUIRE(fg_shortcut_experiment(fg_hamiltonian(8, 0), 10, 1).exact_success <= 0.502);
}
