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
 * Dense pure states, square operators and projective measurement.
 *
 * Basis index i encodes qubit values big-endian: qubit 0 is the most
 * significant bit of i.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"

namespace orbitalsim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-9;
inline constexpr double kOperatorTol = 1e-10;
inline constexpr std::size_t kMaxDim = 4096;

/// Unit-norm amplitude vector. Construction rejects anything off the unit
/// sphere by more than kNormTol; use normalized() to rescale explicitly.
class StateVector {
  public:
    explicit StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() < 1) {
            detail::argument_error("state dimension must be >= 1");
        }
        const double n = amps_.norm();
        if (!(std::abs(n - 1.0) <= kNormTol)) {
            detail::argument_error("state is not normalized (norm " +
                                   std::to_string(n) + ")");
        }
    }

    static StateVector normalized(CVector v, double min_norm = 1e-300) {
        const double n = v.norm();
        if (!(n > min_norm)) {
            detail::argument_error("cannot normalize a zero vector");
        }
        v /= n;
        return StateVector(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }
    [[nodiscard]] double probability(std::size_t i) const {
        return std::norm((*this)[i]);
    }

  private:
    CVector amps_;
};

class DenseOperator {
  public:
    explicit DenseOperator(CMatrix m) : m_(std::move(m)) {
        if (m_.rows() < 1 || m_.rows() != m_.cols()) {
            detail::argument_error("operator must be square with dim >= 1");
        }
    }

    static DenseOperator identity(std::size_t dim) {
        const auto d = static_cast<Eigen::Index>(dim);
        return DenseOperator(CMatrix::Identity(d, d));
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    [[nodiscard]] DenseOperator adjoint() const {
        return DenseOperator(m_.adjoint());
    }

    /// max |(U†U - I)_ij|
    [[nodiscard]] double unitarity_error() const {
        const CMatrix d = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
        return d.cwiseAbs().maxCoeff();
    }
    /// max |(H - H†)_ij|
    [[nodiscard]] double hermiticity_error() const {
        return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    }
    [[nodiscard]] bool is_unitary(double tol = kOperatorTol) const {
        return unitarity_error() <= tol;
    }
    [[nodiscard]] bool is_hermitian(double tol = kOperatorTol) const {
        return hermiticity_error() <= tol;
    }

    void require_unitary(const std::string &what) const {
        if (!is_unitary()) {
            detail::validation_error(what + " is not unitary (error " +
                                     std::to_string(unitarity_error()) + ")");
        }
    }
    void require_hermitian(const std::string &what) const {
        if (!is_hermitian()) {
            detail::validation_error(what + " is not Hermitian (error " +
                                     std::to_string(hermiticity_error()) +
                                     ")");
        }
    }

    friend DenseOperator operator*(const DenseOperator &a,
                                   const DenseOperator &b) {
        if (a.dim() != b.dim()) {
            detail::argument_error("operator dimension mismatch");
        }
        return DenseOperator(a.m_ * b.m_);
    }

  private:
    CMatrix m_;
};

[[nodiscard]] inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline StateVector basis_state(std::size_t dim, std::size_t index) {
    if (dim < 1) {
        detail::argument_error("dimension must be >= 1");
    }
    if (index >= dim) {
        detail::argument_error("basis index " + std::to_string(index) +
                               " out of range for dim " + std::to_string(dim));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

/// |s> = H^{⊗n}|0...0>: every amplitude 2^(-n/2).
inline StateVector uniform_superposition(int n_qubits) {
    if (n_qubits < 1) {
        detail::argument_error("uniform_superposition needs n_qubits >= 1");
    }
    if (n_qubits > 12) {
        detail::argument_error("at most 12 qubits are supported");
    }
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const double a = std::pow(2.0, -0.5 * n_qubits);
    return StateVector(CVector::Constant(dim, Complex(a, 0.0)));
}

/// Amplitude at (i * dim(b) + j) is a_i * b_j.
inline CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    CMatrix out(a.rows() * br, a.cols() * bc);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

inline StateVector tensor_state(const StateVector &a, const StateVector &b) {
    if (a.dim() * b.dim() > kMaxDim) {
        detail::argument_error("tensor product exceeds the supported dimension");
    }
    return StateVector::normalized(kron(a.amplitudes(), b.amplitudes()));
}

inline DenseOperator tensor_op(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() * b.dim() > kMaxDim) {
        detail::argument_error("tensor product exceeds the supported dimension");
    }
    return DenseOperator(kron(a.matrix(), b.matrix()));
}

/// Applies a unitary. The output norm is checked, so a non-unitary operator
/// that happens to move psi off the unit sphere is rejected.
inline StateVector apply(const DenseOperator &op, const StateVector &psi) {
    if (op.dim() != psi.dim()) {
        detail::argument_error("apply: operator dim " + std::to_string(op.dim()) +
                               " != state dim " + std::to_string(psi.dim()));
    }
    CVector out = op.matrix() * psi.amplitudes();
    const double n = out.norm();
    if (!(std::abs(n - 1.0) <= kNormTol)) {
        detail::validation_error("apply: operator did not preserve the norm");
    }
    return StateVector(std::move(out));
}

/// <a|b>, conjugate-linear in a.
inline Complex overlap(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        detail::argument_error("overlap: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

inline double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(overlap(a, b));
}

struct MeasurementOutcome {
    std::size_t outcome_index;
    double probability;
    StateVector post_state;
};

namespace detail {

/// Draws an index with weight probs[k]. Zero-weight entries are never chosen.
inline std::size_t sample_index(std::span<const double> probs, RngStream &rng) {
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    if (!(total > 0.0)) {
        validation_error("sample_index: all outcome probabilities are zero");
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) {
            continue;
        }
        acc += probs[k];
        last_nonzero = k;
        if (u < acc) {
            return k;
        }
    }
    return last_nonzero;
}

inline void check_projector_family(std::span<const DenseOperator> projectors,
                                   std::size_t dim) {
    if (projectors.empty()) {
        validation_error("projector family is empty");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        const CMatrix &p = projectors[k].matrix();
        if (projectors[k].dim() != dim) {
            argument_error("projector " + std::to_string(k) +
                           " has the wrong dimension");
        }
        // A complete family of Hermitian idempotents is automatically
        // pairwise orthogonal.
        if (!projectors[k].is_hermitian(kNormTol) ||
            max_abs_diff(p * p, p) > kNormTol) {
            validation_error("operator " + std::to_string(k) +
                             " is not an orthogonal projector");
        }
        sum += p;
    }
    if (max_abs_diff(sum, CMatrix::Identity(d, d)) > kNormTol) {
        validation_error("projectors do not sum to the identity");
    }
}

} // namespace detail

/// ‖P_k ψ‖² for each projector, without validating the family.
inline std::vector<double>
outcome_probabilities(const StateVector &psi,
                      std::span<const DenseOperator> projectors) {
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const auto &p : projectors) {
        probs.push_back((p.matrix() * psi.amplitudes()).squaredNorm());
    }
    return probs;
}

inline MeasurementOutcome
measure_projective(const StateVector &psi,
                   std::span<const DenseOperator> projectors, RngStream &rng) {
    detail::check_projector_family(projectors, psi.dim());
    const auto probs = outcome_probabilities(psi, projectors);
    const std::size_t k = detail::sample_index(probs, rng);
    CVector post = projectors[k].matrix() * psi.amplitudes();
    return {k, probs[k], StateVector::normalized(std::move(post))};
}

/// Measurement in the logical (computational) basis. Equivalent to
/// measure_projective with {|k><k|} but O(dim).
inline MeasurementOutcome measure_logical(const StateVector &psi,
                                          RngStream &rng) {
    std::vector<double> probs(psi.dim());
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        probs[k] = psi.probability(k);
    }
    const std::size_t k = detail::sample_index(probs, rng);
    return {k, probs[k], basis_state(psi.dim(), k)};
}

/// Computational-basis projector family {|k><k|}.
inline std::vector<DenseOperator> logical_projectors(std::size_t dim) {
    std::vector<DenseOperator> out;
    out.reserve(dim);
    const auto d = static_cast<Eigen::Index>(dim);
    for (Eigen::Index k = 0; k < d; ++k) {
        CMatrix p = CMatrix::Zero(d, d);
        p(k, k) = 1.0;
        out.emplace_back(std::move(p));
    }
    return out;
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
/// phases divided out.
inline DenseOperator haar_unitary(std::size_t dim, RngStream &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix z(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix &r = qr.matrixQR();
    for (Eigen::Index c = 0; c < d; ++c) {
        const Complex diag = r(c, c);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(c) *= diag / mag;
        }
    }
    return DenseOperator(std::move(q));
}

} // namespace orbitalsim
