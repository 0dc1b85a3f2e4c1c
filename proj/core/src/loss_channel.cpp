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

#include "swapsim/loss_channel.hpp"

#include <cmath>
#include <string>

#include "swapsim/errors.hpp"

namespace swapsim {

LossChannel::LossChannel(double t) : t_(t), r_(0.0) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ValidationError("amplitude transmittivity must lie in [0, 1], got " + std::to_string(t));
    }
    r_ = std::sqrt((1.0 - t) * (1.0 + t));
}

KrausPair kraus_ops(const LossChannel& ch) {
    KrausPair k;
    k.k0 << 1.0, 0.0, 0.0, ch.t();
    k.k1 << 0.0, ch.r(), 0.0, 0.0;
    return k;
}

DensityMatrix apply_loss(const DensityMatrix& rho, const ModeLabel& mode, const LossChannel& ch) {
    const KrausPair k = kraus_ops(ch);
    const Matrix k0 = embed(k.k0, rho.labels(), mode);
    const Matrix k1 = embed(k.k1, rho.labels(), mode);
    const Matrix& m = rho.entries();
    Matrix out = k0 * m * k0.adjoint() + k1 * m * k1.adjoint();
    return DensityMatrix(rho.labels(), std::move(out));
}

PureState dilate(const PureState& psi, const ModeLabel& mode, const ModeLabel& env,
                 const LossChannel& ch) {
    if (psi.labels().contains(env)) {
        throw LabelError("environment label '" + env.name() + "' already present in " +
                         psi.labels().to_string());
    }
    if (!psi.is_normalized()) {
        throw ValidationError("dilate expects a normalized state");
    }
    const std::size_t shift = psi.labels().shift(mode);
    const std::size_t mask = std::size_t{1} << shift;
    Register labels = psi.labels().concat(Register{env});

    const Vector& in = psi.amplitudes();
    Vector out = Vector::Zero(in.size() * 2);
    for (Eigen::Index i = 0; i < in.size(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Complex a = in(i);
        // The environment bit is the least significant one.
        if ((idx & mask) == 0) {
            out(static_cast<Eigen::Index>(idx << 1)) += a;
        } else {
            out(static_cast<Eigen::Index>(idx << 1)) += ch.t() * a;
            out(static_cast<Eigen::Index>(((idx & ~mask) << 1) | 1U)) += ch.r() * a;
        }
    }
    return PureState(std::move(labels), std::move(out));
}

}  // namespace swapsim
