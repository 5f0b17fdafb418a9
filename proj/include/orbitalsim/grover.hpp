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
 * Discrete search operator G = H I_0 H I_w and its invariant plane.
 *
 * Reflections are I_k = I - 2|k><k|, so G is the negative of the textbook
 * "diffusion after oracle" product. In the (|s>, |w>) plane its eigenphases
 * are π ± θ̃ with θ̃ = 2 arcsin(N^{-1/2}); G is the identity on the
 * orthogonal complement.
 */
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qstate.hpp"

namespace orbitalsim {

inline constexpr int kMaxGroverQubits = 10;

namespace detail {
inline void check_search_params(int n, std::size_t w) {
    if (n < 1 || n > kMaxGroverQubits) {
        argument_error("qubit count must be in [1, " +
                       std::to_string(kMaxGroverQubits) + "]");
    }
    if (w >= (std::size_t{1} << n)) {
        argument_error("marked index " + std::to_string(w) +
                       " out of range for " + std::to_string(n) + " qubits");
    }
}

inline double wrap_phase(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    if (r >= two_pi) {
        r -= two_pi;
    }
    return r;
}

/// Distance between two angles on the circle, in [0, π].
inline double phase_distance(double a, double b) {
    const double d = wrap_phase(a - b);
    return std::min(d, 2.0 * std::numbers::pi - d);
}
} // namespace detail

inline DenseOperator oracle_inversion(int n, std::size_t w) {
    detail::check_search_params(n, w);
    DenseOperator id = DenseOperator::identity(std::size_t{1} << n);
    CMatrix m = id.matrix();
    m(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) = -1.0;
    return DenseOperator(std::move(m));
}

inline DenseOperator zero_inversion(int n) { return oracle_inversion(n, 0); }

/// H^{⊗n}, entries (-1)^{popcount(i & j)} / √N.
inline DenseOperator walsh_hadamard(int n) {
    detail::check_search_params(n, 0);
    const std::size_t dim = std::size_t{1} << n;
    const double a = std::pow(2.0, -0.5 * n);
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix m(d, d);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (std::popcount(i & j) % 2 == 0) ? a : -a;
        }
    }
    return DenseOperator(std::move(m));
}

struct GroverInstance {
    int n_qubits;
    std::size_t marked;
    std::size_t dim;
    DenseOperator oracle;   // I_w
    DenseOperator zero_inv; // I_0
    DenseOperator hadamard; // H^{⊗n}
    DenseOperator op;       // G = H I_0 H I_w

    [[nodiscard]] StateVector start() const { return uniform_superposition(n_qubits); }
    [[nodiscard]] StateVector target() const { return basis_state(dim, marked); }
    [[nodiscard]] double overlap_x() const { return std::pow(2.0, -0.5 * n_qubits); }
};

inline GroverInstance make_grover(int n, std::size_t w) {
    detail::check_search_params(n, w);
    DenseOperator iw = oracle_inversion(n, w);
    DenseOperator i0 = zero_inversion(n);
    DenseOperator h = walsh_hadamard(n);
    // I_0 and I_w are diagonal sign flips; apply them as row/column scalings
    // around the single dense product.
    CMatrix right = h.matrix();
    right.col(static_cast<Eigen::Index>(w)) *= -1.0; // H I_w
    right.row(0) *= -1.0;                            // I_0 H I_w
    CMatrix g = h.matrix() * right;
    return {n, w, std::size_t{1} << n, std::move(iw), std::move(i0), std::move(h),
            DenseOperator(std::move(g))};
}

inline const DenseOperator &grover_operator(const GroverInstance &inst) {
    return inst.op;
}

/// The two eigenvectors of G spanning the (|s>, |w>) plane. plus carries the
/// eigenphase in (0, π); minus carries its negative.
struct PlaneEigensystem {
    StateVector plus;
    StateVector minus;
    double eigenphase; // of plus, in (0, π); minus has 2π - eigenphase
};

/// Orthonormal basis {e0, e1} of span{|s>, |w>} with e0 = |s>.
inline std::pair<CVector, CVector> search_plane_basis(int n, std::size_t w) {
    const StateVector s = uniform_superposition(n);
    const StateVector t = basis_state(s.dim(), w);
    const CVector e0 = s.amplitudes();
    CVector e1 = t.amplitudes() - e0.dot(t.amplitudes()) * e0;
    e1.normalize();
    return {e0, e1};
}

inline PlaneEigensystem plane_eigensystem(const GroverInstance &inst) {
    const auto [e0, e1] = search_plane_basis(inst.n_qubits, inst.marked);
    CMatrix basis(e0.size(), 2);
    basis.col(0) = e0;
    basis.col(1) = e1;
    const Eigen::Matrix2cd restricted = basis.adjoint() * inst.op.matrix() * basis;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(restricted);
    const auto &vals = solver.eigenvalues();
    const int ip = std::arg(vals(0)) > 0.0 ? 0 : 1;
    const int im = 1 - ip;
    const double phase = detail::wrap_phase(std::arg(vals(ip)));
    auto lift = [&](int k) {
        CVector v = basis * solver.eigenvectors().col(k);
        const Eigen::Index pivot = [&] {
            Eigen::Index best = 0;
            v.cwiseAbs().maxCoeff(&best);
            return best;
        }();
        v *= std::conj(v(pivot)) / std::abs(v(pivot));
        return StateVector::normalized(std::move(v));
    };
    return {lift(ip), lift(im), phase};
}

/// Eigenphases predicted in closed form: {π - θ̃, π + θ̃} (plus first).
inline std::pair<double, double> plane_phases_closed_form(std::size_t dim) {
    const double theta = 2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(dim)));
    return {detail::wrap_phase(std::numbers::pi - theta),
            detail::wrap_phase(std::numbers::pi + theta)};
}

/// Eigenphases of G found by diagonalizing the full N×N operator and keeping
/// the eigenvectors with most of their weight in the search plane. Ascending.
inline std::vector<double> plane_phases_by_diagonalization(const GroverInstance &inst) {
    Eigen::ComplexEigenSolver<CMatrix> solver(inst.op.matrix());
    const auto [e0, e1] = search_plane_basis(inst.n_qubits, inst.marked);
    std::vector<double> out;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const CVector v = solver.eigenvectors().col(k).normalized();
        const double in_plane = std::norm(e0.dot(v)) + std::norm(e1.dot(v));
        if (in_plane > 0.5) {
            out.push_back(detail::wrap_phase(std::arg(solver.eigenvalues()(k))));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct SuccessPoint {
    int k;
    double probability;
};

/// |<w|G^k|s>|² for k = 0..k_max by repeated application.
inline std::vector<SuccessPoint> grover_success_curve(const GroverInstance &inst, int k_max) {
    if (k_max < 0) {
        detail::argument_error("k_max must be >= 0");
    }
    std::vector<SuccessPoint> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    StateVector psi = inst.start();
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            psi = apply(inst.op, psi);
        }
        out.push_back({k, psi.probability(inst.marked)});
    }
    return out;
}

/// First k with success probability >= threshold, or -1 within k_max.
inline int first_k_reaching(const GroverInstance &inst, double threshold, int k_max) {
    for (const auto &pt : grover_success_curve(inst, k_max)) {
        if (pt.probability >= threshold) {
            return pt.k;
        }
    }
    return -1;
}

} // namespace orbitalsim
