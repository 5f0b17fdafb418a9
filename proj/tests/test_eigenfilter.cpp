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

#include <orbitalsim/eigenfilter.hpp>

using namespace orbitalsim;
using Catch::Matchers::WithinAbs;

namespace {
const StateVector plus_state = StateVector::normalized(CVector::Ones(2));
const StateVector zero_state = basis_state(2, 0);

// 1 / (1 + g²) with g = |sin(kδ/2) / (k sin(δ/2))|.
double gain_overlap(double delta, int k) {
    const double g = std::sin(k * delta / 2) / (k * std::sin(delta / 2));
    return 1.0 / (1.0 + g * g);
}
} // namespace

TEST_CASE("power sum equals the explicit loop", "[eigenfilter]") {
    RngStream rng(6);
    const DenseOperator u = haar_unitary(4, rng);
    const StateVector psi = StateVector::normalized(CVector::Ones(4));
    CMatrix p = CMatrix::Identity(4, 4);
    CVector sum = CVector::Zero(4);
    for (int j = 1; j <= 7; ++j) {
        p = u.matrix() * p;
        sum += p * psi.amplitudes();
    }
    const StateVector f = power_sum(u, psi, 7);
    REQUIRE((f.amplitudes() - sum.normalized()).norm() < 1e-12);
}

TEST_CASE("exact cancellation at δ = π/2", "[eigenfilter]") {
    const auto u = phase_rotation(std::numbers::pi / 2);
    const auto row = convergence_row(u, power_sum(u, plus_state, 4), zero_state, 4);
    REQUIRE_THAT(row.overlap, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(row.residual, WithinAbs(0.0, 1e-12));
}

TEST_CASE("small rotations barely filter", "[eigenfilter]") {
    for (int denom : {256, 512, 1024}) {
        const double d = 2 * std::numbers::pi / denom;
        const auto u = phase_rotation(d);
        const auto rows = convergence_study(u, plus_state, zero_state, {1, 2, 4, 64, 200});
        for (const auto& r : rows) {
            REQUIRE_THAT(r.overlap, WithinAbs(gain_overlap(d, r.k), 1e-12));
        }
        REQUIRE(rows[2].overlap <= 0.51);
    }
    // Frozen from an independent numpy computation.
    const auto u = phase_rotation(2 * std::numbers::pi / 1024);
    REQUIRE_THAT(power_sum(u, plus_state, 4).probability(0), WithinAbs(0.5000118, 1e-7));
}

TEST_CASE("steps to 0.99 overlap scale as 1/δ", "[eigenfilter]") {
    const int expected[] = {233, 465, 930};
    int i = 0;
    for (int denom : {256, 512, 1024}) {
        const auto u = phase_rotation(2 * std::numbers::pi / denom);
        REQUIRE(first_k_reaching(u, plus_state, zero_state, 0.99, 5000) == expected[i++]);
    }
    REQUIRE(first_k_reaching(phase_rotation(0.01), plus_state, zero_state, 0.99, 10) == -1);
}

TEST_CASE("cancellation and bad inputs throw", "[eigenfilter]") {
    // Σ_{j=1..2} (-1)^j |1> = 0.
    const auto u = phase_rotation(std::numbers::pi);
    REQUIRE_THROWS_AS(power_sum(u, basis_state(2, 1), 2), CancellationError);
    REQUIRE_THROWS_AS(power_sum(u, plus_state, 0), ArgumentError);
    REQUIRE_THROWS_AS(power_sum(u, basis_state(3, 0), 1), ArgumentError);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = 1.0;
    REQUIRE_THROWS_AS(power_sum(DenseOperator(bad), plus_state, 1), ValidationError);
    REQUIRE_THROWS_AS(convergence_study(u, plus_state, zero_state, {4, 2}), ArgumentError);
}
