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

#include "swapsim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swapsim/errors.hpp"

namespace swapsim {

namespace {

// Maximum register width; 2^12 x 2^12 complex matrices are already 256 MiB.
constexpr std::size_t kMaxModes = 12;

std::size_t bits_to_index(const Register& labels, std::string_view bits) {
    if (bits.size() != labels.size()) {
        throw ValidationError("basis string '" + std::string(bits) + "' does not match register " +
                              labels.to_string());
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("basis string must contain only '0' and '1': " + std::string(bits));
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

// Extracts the sub-index formed by the bits at `shifts`, most significant first.
std::size_t gather(std::size_t index, std::span<const std::size_t> shifts) {
    std::size_t out = 0;
    for (std::size_t s : shifts) {
        out = (out << 1) | ((index >> s) & 1U);
    }
    return out;
}

struct Split {
    std::vector<std::size_t> keep_shifts;
    std::vector<std::size_t> drop_shifts;
    std::vector<ModeLabel> keep_labels;
};

Split split_register(const Register& labels, const std::vector<bool>& dropped) {
    Split s;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const std::size_t shift = labels.size() - 1 - k;
        if (dropped[k]) {
            s.drop_shifts.push_back(shift);
        } else {
            s.keep_shifts.push_back(shift);
            s.keep_labels.push_back(labels[k]);
        }
    }
    return s;
}

}  // namespace

ModeLabel::ModeLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw LabelError("mode label must be non-empty");
    }
}

Register::Register(std::initializer_list<ModeLabel> labels)
    : Register(std::vector<ModeLabel>(labels)) {}

Register::Register(std::vector<ModeLabel> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxModes) {
        throw LabelError("register exceeds " + std::to_string(kMaxModes) + " modes");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw LabelError("duplicate mode label '" + labels_[i].name() + "'");
            }
        }
    }
}

bool Register::contains(const ModeLabel& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t Register::position(const ModeLabel& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw LabelError("unknown mode label '" + label.name() + "' in register " + to_string());
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

Register Register::concat(const Register& other) const {
    std::vector<ModeLabel> joined = labels_;
    joined.insert(joined.end(), other.labels_.begin(), other.labels_.end());
    return Register(std::move(joined));
}

std::string Register::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i > 0) out += ", ";
        out += labels_[i].name();
    }
    return out + ")";
}

PureState::PureState(Register labels, Vector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != labels_.dimension()) {
        throw ValidationError("amplitude vector of length " + std::to_string(amplitudes_.size()) +
                              " does not match register " + labels_.to_string());
    }
}

PureState PureState::basis(Register labels, std::string_view bits) {
    const std::size_t index = bits_to_index(labels, bits);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(labels.dimension()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(labels), std::move(v));
}

Complex PureState::amplitude(std::string_view bits) const {
    return amplitudes_(static_cast<Eigen::Index>(bits_to_index(labels_, bits)));
}

bool PureState::is_normalized() const {
    return std::abs(weight() - 1.0) <= tolerance::kNorm;
}

PureState PureState::normalized() const {
    const double w = weight();
    if (w <= 0.0) {
        throw ImpossibleOutcomeError("cannot normalize a zero state");
    }
    return PureState(labels_, amplitudes_ / std::sqrt(w));
}

DensityMatrix::DensityMatrix(Register labels, Matrix entries)
    : DensityMatrix(labels, entries, entries.trace().real()) {}

DensityMatrix::DensityMatrix(Register labels, Matrix entries, double weight)
    : labels_(std::move(labels)), entries_(std::move(entries)), weight_(weight) {
    const auto dim = static_cast<Eigen::Index>(labels_.dimension());
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw ValidationError("density matrix of shape " + std::to_string(entries_.rows()) + "x" +
                              std::to_string(entries_.cols()) + " does not match register " +
                              labels_.to_string());
    }
    if (!(weight_ >= 0.0)) {
        throw ValidationError("density matrix weight must be non-negative");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(psi.labels(), v * v.adjoint());
}

Complex DensityMatrix::entry(std::string_view row_bits, std::string_view col_bits) const {
    return entries_(static_cast<Eigen::Index>(bits_to_index(labels_, row_bits)),
                    static_cast<Eigen::Index>(bits_to_index(labels_, col_bits)));
}

DensityMatrix DensityMatrix::normalized() const {
    if (weight_ <= 0.0) {
        throw ImpossibleOutcomeError("cannot normalize a zero-weight density matrix");
    }
    return DensityMatrix(labels_, entries_ / weight_, 1.0);
}

PureState tensor(const PureState& a, const PureState& b) {
    Register labels = a.labels().concat(b.labels());
    const Vector& va = a.amplitudes();
    const Vector& vb = b.amplitudes();
    Vector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    }
    return PureState(std::move(labels), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Register labels = a.labels().concat(b.labels());
    const Matrix& ma = a.entries();
    const Matrix& mb = b.entries();
    const Eigen::Index db = mb.rows();
    Matrix out(ma.rows() * db, ma.cols() * db);
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * db, j * db, db, db) = ma(i, j) * mb;
        }
    }
    return DensityMatrix(std::move(labels), std::move(out), a.weight() * b.weight());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const ModeLabel> discard) {
    const Register& labels = rho.labels();
    std::vector<bool> dropped(labels.size(), false);
    for (const ModeLabel& label : discard) {
        dropped[labels.position(label)] = true;
    }
    const Split s = split_register(labels, dropped);
    const std::size_t dim = labels.dimension();
    const std::size_t out_dim = std::size_t{1} << s.keep_shifts.size();

    std::vector<std::size_t> keep(dim);
    std::vector<std::size_t> drop(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        keep[i] = gather(i, s.keep_shifts);
        drop[i] = gather(i, s.drop_shifts);
    }

    const Matrix& m = rho.entries();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (drop[i] == drop[j]) {
                out(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j])) +=
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return DensityMatrix(Register(s.keep_labels), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<ModeLabel> discard) {
    return partial_trace(rho, std::span<const ModeLabel>(discard.begin(), discard.size()));
}

DensityMatrix project(const DensityMatrix& rho, const PureState& ket) {
    if (!ket.is_normalized()) {
        throw ValidationError("projector ket must be normalized (norm^2 = " +
                              std::to_string(ket.weight()) + ")");
    }
    const Register& labels = rho.labels();
    std::vector<bool> dropped(labels.size(), false);
    std::vector<std::size_t> ket_shifts;
    for (const ModeLabel& label : ket.labels().labels()) {
        const std::size_t pos = labels.position(label);
        dropped[pos] = true;
        ket_shifts.push_back(labels.size() - 1 - pos);
    }
    const Split s = split_register(labels, dropped);
    const std::size_t dim = labels.dimension();
    const std::size_t out_dim = std::size_t{1} << s.keep_shifts.size();

    // Coefficient <k|index restricted to the projected modes>, in ket label order.
    const Vector& k = ket.amplitudes();
    std::vector<std::size_t> keep(dim);
    std::vector<Complex> coeff(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        keep[i] = gather(i, s.keep_shifts);
        coeff[i] = k(static_cast<Eigen::Index>(gather(i, ket_shifts)));
    }

    const Matrix& m = rho.entries();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
    for (std::size_t i = 0; i < dim; ++i) {
        if (coeff[i] == Complex{}) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (coeff[j] == Complex{}) continue;
            out(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j])) +=
                std::conj(coeff[i]) * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                coeff[j];
        }
    }
    return DensityMatrix(Register(s.keep_labels), std::move(out));
}

DensityMatrix reorder(const DensityMatrix& rho, const Register& order) {
    const Register& labels = rho.labels();
    if (order.size() != labels.size()) {
        throw LabelError("reorder target " + order.to_string() + " is not a permutation of " +
                         labels.to_string());
    }
    // shifts[k]: bit of the source index that becomes position k of the target.
    std::vector<std::size_t> shifts;
    for (const ModeLabel& label : order.labels()) {
        shifts.push_back(labels.shift(label));
    }
    const std::size_t dim = labels.dimension();
    std::vector<std::size_t> target(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        target[i] = gather(i, shifts);
    }
    const Matrix& m = rho.entries();
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            out(static_cast<Eigen::Index>(target[i]), static_cast<Eigen::Index>(target[j])) =
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityMatrix(order, std::move(out), rho.weight());
}

Matrix embed(const Eigen::Matrix2cd& op, const Register& labels, const ModeLabel& label) {
    const std::size_t shift = labels.shift(label);
    const std::size_t dim = labels.dimension();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const std::size_t mask = std::size_t{1} << shift;
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t b = (col >> shift) & 1U;
        for (std::size_t a = 0; a < 2; ++a) {
            const Complex v = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (v == Complex{}) continue;
            const std::size_t row = (col & ~mask) | (a << shift);
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
        }
    }
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    // SelfAdjointEigenSolver already sorts ascending.
    return solver.eigenvalues();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << "hermiticity_deviation=" << hermiticity_deviation << (hermitian ? " ok" : " FAIL")
       << ", min_eigenvalue=" << min_eigenvalue << (positive_semidefinite ? " ok" : " FAIL")
       << ", trace_deviation=" << trace_deviation << (trace_consistent ? " ok" : " FAIL");
    return os.str();
}

ValidationReport validate(const DensityMatrix& rho) {
    const Matrix& m = rho.entries();
    ValidationReport r;
    r.hermiticity_deviation = max_abs_diff(m, m.adjoint());
    r.min_eigenvalue = hermitian_eigenvalues(m)(0);
    r.trace_deviation = std::abs(m.trace() - Complex{rho.weight(), 0.0});
    r.hermitian = r.hermiticity_deviation <= tolerance::kHermiticity;
    r.positive_semidefinite = r.min_eigenvalue >= tolerance::kPsd;
    r.trace_consistent = r.trace_deviation <= tolerance::kTrace;
    return r;
}

}  // namespace swapsim
