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

#include "gtest/gtest.h"
#include "swapsim/errors.hpp"
#include "test_support.hpp"

using namespace swapsim;
using swapsim::test_support::Rng;
namespace ts = swapsim::test_support;

namespace {

const ModeLabel q0{"q0"};
const ModeLabel q1{"q1"};
const ModeLabel env{"env"};

DensityMatrix single_photon() {
    return DensityMatrix::from_pure(PureState::basis(Register{q0}, "1"));
}

}  // namespace

TEST(LossChannel, DerivedReflectivity) {
    const LossChannel ch(0.6);
    EXPECT_NEAR(ch.r(), 0.8, 1e-15);
    EXPECT_NEAR(ch.t() * ch.t() + ch.r() * ch.r(), 1.0, 1e-12);
    EXPECT_THROW(LossChannel(1.2), ValidationError);
    EXPECT_THROW(LossChannel(-0.1), ValidationError);
    EXPECT_THROW(LossChannel(std::nan("")), ValidationError);
}

TEST(KrausOps, LosslessIsIdentity) {
    const KrausPair k = kraus_ops(LossChannel(1.0));
    EXPECT_TRUE(k.k0.isApprox(Eigen::Matrix2cd::Identity()));
    EXPECT_EQ(k.k1.norm(), 0.0);
}

TEST(KrausOps, FullLoss) {
    const KrausPair k = kraus_ops(LossChannel(0.0));
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    Eigen::Matrix2cd lower = Eigen::Matrix2cd::Zero();
    lower(0, 1) = 1.0;
    EXPECT_EQ(k.k0, p0);
    EXPECT_EQ(k.k1, lower);
}

TEST(KrausOps, Completeness) {
    for (double t : {0.0, 0.1, 0.37, 0.6, 0.99, 1.0}) {
        const KrausPair k = kraus_ops(LossChannel(t));
        const Eigen::Matrix2cd sum = k.k0.adjoint() * k.k0 + k.k1.adjoint() * k.k1;
        EXPECT_LT((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-12) << t;
    }
}

TEST(KrausOps, DampsSinglePhotonPopulation) {
    // K0 |1><1| K0^ + K1 |1><1| K1^ = t^2 |1><1| + r^2 |0><0| = diag(0.64, 0.36) at t = 0.6.
    const DensityMatrix out = apply_loss(single_photon(), q0, LossChannel(0.6));
    EXPECT_NEAR(out.entries()(0, 0).real(), 0.64, 1e-15);
    EXPECT_NEAR(out.entries()(1, 1).real(), 0.36, 1e-15);
    EXPECT_NEAR(std::abs(out.entries()(0, 1)), 0.0, 1e-15);
}

TEST(ApplyLoss, LosslessLeavesSuperpositionUnchanged) {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::from_pure(PureState(Register{q0}, v));
    const DensityMatrix out = apply_loss(rho, q0, LossChannel(1.0));
    EXPECT_LT(max_abs_diff(out.entries(), rho.entries()), 1e-15);
}

TEST(ApplyLoss, ScalesCoherenceByT) {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::from_pure(PureState(Register{q0}, v));
    const double t = 0.3;
    const DensityMatrix out = apply_loss(rho, q0, LossChannel(t));
    EXPECT_NEAR(out.entries()(0, 1).real(), 0.5 * t, 1e-15);
    EXPECT_NEAR(out.entries()(1, 1).real(), 0.5 * t * t, 1e-15);
    EXPECT_NEAR(out.weight(), 1.0, 1e-12);
}

TEST(ApplyLoss, UnknownMode) {
    EXPECT_THROW(apply_loss(single_photon(), q1, LossChannel(0.5)), LabelError);
}

TEST(Dilate, LosslessKeepsEnvironmentInVacuum) {
    const double alpha = 0.8, beta = 0.6;
    Vector v = Vector::Zero(4);
    v(0) = alpha;
    v(3) = beta;
    const PureState out = dilate(PureState(Register{modes::A, modes::C1}, v), modes::C1, modes::E1,
                                 LossChannel(1.0));
    EXPECT_EQ(out.labels(), (Register{modes::A, modes::C1, modes::E1}));
    EXPECT_NEAR(std::abs(out.amplitude("000") - alpha), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude("110") - beta), 0.0, 1e-15);
    EXPECT_NEAR(out.weight(), 1.0, 1e-15);
}

TEST(Dilate, FullLossMovesPhotonToEnvironment) {
    const PureState out = dilate(PureState::basis(Register{q0}, "1"), q0, env, LossChannel(0.0));
    EXPECT_NEAR(std::abs(out.amplitude("01") - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude("10")), 0.0, 1e-15);
}

TEST(Dilate, AmplitudesOfLossyAlicePair) {
    const double alpha = 0.98;
    const double beta = std::sqrt(1.0 - alpha * alpha);
    Vector v = Vector::Zero(4);
    v(0) = alpha;
    v(3) = beta;
    const PureState out = dilate(PureState(Register{modes::A, modes::C1}, v), modes::C1, modes::E1,
                                 LossChannel(0.6));
    // |1>_A|1>_C1|0>_E1 carries t beta, |1>_A|0>_C1|1>_E1 carries r beta.
    EXPECT_NEAR(out.amplitude("110").real(), 0.6 * beta, 1e-15);
    EXPECT_NEAR(out.amplitude("101").real(), 0.8 * beta, 1e-15);
    EXPECT_NEAR(out.amplitude("000").real(), alpha, 1e-15);
    EXPECT_NEAR(out.weight(), 1.0, 1e-12);
}

TEST(Dilate, EnvironmentCollision) {
    EXPECT_THROW(dilate(PureState::basis(Register{q0, env}, "10"), q0, env, LossChannel(0.5)),
                 LabelError);
}

TEST(Dilate, UnnormalizedInputRejected) {
    Vector v = Vector::Zero(2);
    v(1) = 0.5;
    EXPECT_THROW(dilate(PureState(Register{q0}, v), q0, env, LossChannel(0.5)), ValidationError);
}

TEST(LossChannelProperty, DilationMatchesKrausOnRandomStates) {
    Rng rng(11);
    const Register labels{q0, q1};
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState psi = ts::random_pure(rng, labels);
        const LossChannel ch(ts::uniform(rng));
        const ModeLabel& mode = trial % 2 == 0 ? q0 : q1;
        const DensityMatrix via_dilation =
            partial_trace(DensityMatrix::from_pure(dilate(psi, mode, env, ch)), {env});
        const DensityMatrix via_kraus = apply_loss(DensityMatrix::from_pure(psi), mode, ch);
        ASSERT_EQ(via_dilation.labels(), labels);
        ASSERT_LT(max_abs_diff(via_dilation.entries(), via_kraus.entries()), 1e-12) << trial;
    }
}

TEST(LossChannelProperty, TracePreservingAndMonotone) {
    Rng rng(12);
    const Register labels{q0, q1};
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = ts::random_density(rng, labels);
        const LossChannel ch(ts::uniform(rng));
        const DensityMatrix out = apply_loss(rho, q0, ch);
        ASSERT_LT(std::abs(out.weight() - rho.weight()), 1e-12);
        // Single-photon population of q0: indices 2 and 3.
        const double before = rho.entries()(2, 2).real() + rho.entries()(3, 3).real();
        const double after = out.entries()(2, 2).real() + out.entries()(3, 3).real();
        ASSERT_LE(after, before + 1e-15);
        ASSERT_NEAR(after, ch.t() * ch.t() * before, 1e-12);
    }
}

TEST(LossChannelProperty, TransmittivitiesCompose) {
    Rng rng(13);
    const Register labels{q0, q1};
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = ts::random_density(rng, labels);
        const double ta = ts::uniform(rng);
        const double tb = ts::uniform(rng);
        const DensityMatrix twice = apply_loss(apply_loss(rho, q1, LossChannel(ta)), q1, LossChannel(tb));
        const DensityMatrix once = apply_loss(rho, q1, LossChannel(ta * tb));
        ASSERT_LT(max_abs_diff(twice.entries(), once.entries()), 1e-12);
    }
}
