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

// Pure-loss channel on a photon-number qubit.
//
// All transmittivities are AMPLITUDE transmittivities: a channel with t passes
// a single photon with probability t^2. The loss amplitude is r = sqrt(1 - t^2).

#include <Eigen/Dense>

#include "swapsim/quantum_core.hpp"

namespace swapsim {

class LossChannel {
public:
    /// Throws ValidationError unless 0 <= t <= 1.
    explicit LossChannel(double t);

    static LossChannel lossless() { return LossChannel(1.0); }

    double t() const noexcept { return t_; }
    double r() const noexcept { return r_; }
    double power_transmission() const noexcept { return t_ * t_; }

private:
    double t_;
    double r_;
};

struct KrausPair {
    Eigen::Matrix2cd k0;  ///< |0><0| + t|1><1|
    Eigen::Matrix2cd k1;  ///< r|0><1|
};

KrausPair kraus_ops(const LossChannel& ch);

/// Kraus-sum action of the channel on one mode of `rho`.
DensityMatrix apply_loss(const DensityMatrix& rho, const ModeLabel& mode, const LossChannel& ch);

/// Unitary dilation: couples `mode` to a fresh vacuum environment mode `env`
/// (appended at the end of the register). A photon in `mode` stays with
/// amplitude t and moves to `env` with amplitude r.
PureState dilate(const PureState& psi, const ModeLabel& mode, const ModeLabel& env,
                 const LossChannel& ch);

}  // namespace swapsim
