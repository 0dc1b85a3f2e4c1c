// Copyright 2026 The swapsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense linear algebra over small registers of photon-number qubit modes.
//
// Every mode holds either vacuum |0> or a single photon |1>. Registers are
// ordered big-endian: for labels (q0, q1, ..., q{n-1}) the basis index of
// |b0 b1 ... b{n-1}> is sum_k b_k * 2^(n-1-k).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace swapsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace tolerance {
inline constexpr double kEquality = 1e-12;
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNorm = 1e-12;
/// Lower bound accepted for the smallest eigenvalue of a density matrix.
inline constexpr double kPsd = -1e-10;
}  // namespace tolerance

/// Name of one photon-number qubit mode.
class ModeLabel {
public:
    ModeLabel() = default;
    explicit ModeLabel(std::string name);

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;

private:
    std::string name_;
};

namespace modes {
inline const ModeLabel A{"A"};
inline const ModeLabel C1{"C1"};
inline const ModeLabel E1{"E1"};
inline const ModeLabel C2{"C2"};
inline const ModeLabel E2{"E2"};
inline const ModeLabel B{"B"};
}  // namespace modes

/// Ordered sequence of unique mode labels.
class Register {
public:
    Register() = default;
    Register(std::initializer_list<ModeLabel> labels);
    explicit Register(std::vector<ModeLabel> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dimension() const noexcept { return std::size_t{1} << labels_.size(); }
    const std::vector<ModeLabel>& labels() const noexcept { return labels_; }
    const ModeLabel& operator[](std::size_t i) const { return labels_[i]; }

    bool contains(const ModeLabel& label) const;
    /// Position of `label`; throws LabelError when absent.
    std::size_t position(const ModeLabel& label) const;
    /// Bit shift of `label` within a basis index.
    std::size_t shift(const ModeLabel& label) const { return size() - 1 - position(label); }

    /// Concatenation; throws LabelError on overlapping labels.
    Register concat(const Register& other) const;

    std::string to_string() const;

    friend bool operator==(const Register&, const Register&) = default;

private:
    std::vector<ModeLabel> labels_;
};

/// Amplitude vector over a register. Unnormalized states carry their
/// squared norm as weight.
class PureState {
public:
    PureState(Register labels, Vector amplitudes);

    /// Computational basis state; `bits` lists one '0'/'1' per label.
    static PureState basis(Register labels, std::string_view bits);

    const Register& labels() const noexcept { return labels_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::string_view bits) const;

    double weight() const { return amplitudes_.squaredNorm(); }
    bool is_normalized() const;
    PureState normalized() const;

private:
    Register labels_;
    Vector amplitudes_;
};

/// Possibly subnormalized density matrix; `weight` is its trace.
class DensityMatrix {
public:
    /// Weight is taken as the real part of the trace.
    DensityMatrix(Register labels, Matrix entries);
    /// Explicit weight, for matrices whose consistency is to be validated.
    DensityMatrix(Register labels, Matrix entries, double weight);

    static DensityMatrix from_pure(const PureState& psi);

    const Register& labels() const noexcept { return labels_; }
    const Matrix& entries() const noexcept { return entries_; }
    double weight() const noexcept { return weight_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

    Complex entry(std::string_view row_bits, std::string_view col_bits) const;

    /// Rescaled to unit trace; throws ImpossibleOutcomeError on zero weight.
    DensityMatrix normalized() const;

private:
    Register labels_;
    Matrix entries_;
    double weight_;
};

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out `discard`; remaining labels keep their relative order.
/// Discarding every label yields a 1x1 matrix holding the trace.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const ModeLabel> discard);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<ModeLabel> discard);

/// Applies the projector |k><k| on the modes of `ket` and traces those modes
/// out. The output weight is the post-selection probability.
DensityMatrix project(const DensityMatrix& rho, const PureState& ket);

/// Reorders the register of `rho` to `order` (a permutation of its labels).
DensityMatrix reorder(const DensityMatrix& rho, const Register& order);

/// Embeds a single-mode operator acting on `label` into the full register.
Matrix embed(const Eigen::Matrix2cd& op, const Register& labels, const ModeLabel& label);

struct ValidationReport {
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;
    bool hermitian = false;
    bool positive_semidefinite = false;
    bool trace_consistent = false;

    bool ok() const noexcept { return hermitian && positive_semidefinite && trace_consistent; }
    std::string summary() const;
};

ValidationReport validate(const DensityMatrix& rho);

/// Eigenvalues of the Hermitian part of `m`, sorted ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace swapsim
