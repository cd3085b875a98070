// SPDX-License-Identifier: Apache-2.0
//
// dirbf: directional beamforming analysis for sparse mmWave MIMO channels
// Copyright (C) 2026 The dirbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dirbf/beamformer.hpp"
#include "dirbf/closedform.hpp"
#include "dirbf/errors.hpp"
#include "dirbf/oracle.hpp"
#include "dirbf/rng.hpp"

using namespace dirbf;
using cd = std::complex<double>;

namespace {

struct Instance {
    std::vector<PathComponent> paths;
    LinkGeometry link;
    ChannelMatrix h;
};

Instance random_instance(TrialRng &rng, int l, int nt, int nr) {
    Instance in{{}, {ArrayGeometry(nt), ArrayGeometry(nr)}, {}};
    for (int i = 0; i < l; ++i)
        in.paths.push_back({rng.complex_normal(), AngleSpec::from_degrees(rng.uniform(30.0, 150.0)),
                            AngleSpec::from_degrees(rng.uniform(30.0, 150.0))});
    in.h = assemble_channel(in.paths, in.link);
    return in;
}

template <typename T> T pick(TrialRng &rng, std::initializer_list<T> xs) {
    const auto i = std::min<std::size_t>(xs.size() - 1, static_cast<std::size_t>(rng.uniform() * xs.size()));
    return *(xs.begin() + i);
}

CMatrix columns(const std::vector<CVector> &vs) {
    CMatrix m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = vs[i];
    return m;
}

double lambda_max(const ChannelMatrix &h) {
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(h.entries.adjoint() * h.entries);
    return es.eigenvalues().maxCoeff();
}

double triple_product_snr(const ChannelMatrix &h, const CVector &f, const CVector &g) {
    cd acc = 0.0;
    for (int i = 0; i < h.nr(); ++i)
        for (int j = 0; j < h.nt(); ++j)
            acc += std::conj(g(i)) * h.entries(i, j) * f(j);
    return std::norm(acc) / g.squaredNorm();
}

void check_pair_invariants(const ChannelMatrix &h, const BeamformerPair &bf) {
    CHECK(std::abs(bf.tx.norm() - 1.0) < 1e-12);
    CHECK(std::abs(bf.rx.norm() - 1.0) < 1e-12);
    const double direct = std::norm(bf.rx.dot(h.entries * bf.tx)) / (static_cast<double>(h.nt()) * h.nr());
    CHECK(std::abs(direct - bf.normalized_snr) <= 1e-10 * std::max(1.0, direct));
}

} // namespace

TEST_CASE("received SNR: perfect single-path steering gives K^2") {
    const double k = 2.5;
    const std::vector<PathComponent> ps{{cd(0.0, k), AngleSpec::from_degrees(75), AngleSpec::from_degrees(115)}};
    const LinkGeometry link{ArrayGeometry(16), ArrayGeometry(4)};
    const ChannelMatrix h = assemble_channel(ps, link);
    const SnrReport r = received_snr(h, steering_vector(link.tx, ps[0].aod), steering_vector(link.rx, ps[0].aoa), 3.0);
    CHECK(r.normalized_snr == doctest::Approx(k * k).epsilon(1e-12));
    CHECK(r.received_snr == doctest::Approx(3.0 * 16 * 4 * r.normalized_snr).epsilon(1e-14));
    CHECK_FALSE(r.delta_snr_db.has_value());
}

TEST_CASE("received SNR matches the entrywise triple product") {
    TrialRng rng(21, 0);
    for (int i = 0; i < 100; ++i) {
        const Instance in = random_instance(rng, 3, 8, 4);
        CVector f(8), g(4);
        for (auto &x : f)
            x = rng.complex_normal();
        for (auto &x : g)
            x = rng.complex_normal();
        f /= f.norm();
        const double rho = rng.uniform(0.1, 10.0);
        const SnrReport r = received_snr(in.h, f, g, rho);
        const double expected = rho * triple_product_snr(in.h, f, g);
        CHECK(std::abs(r.received_snr - expected) <= 1e-12 * std::max(1.0, expected));
    }
}

TEST_CASE("received SNR argument checks and delta") {
    TrialRng rng(22, 0);
    const Instance in = random_instance(rng, 2, 8, 4);
    const CVector f = CVector::Constant(8, cd(1.0 / std::sqrt(8.0), 0.0));
    CHECK_THROWS_AS(received_snr(in.h, f, CVector::Zero(4)), ArgumentError);
    CHECK_THROWS_AS(received_snr(in.h, 2.0 * f, CVector::Ones(4)), ArgumentError);
    CHECK_THROWS_AS(received_snr(in.h, CVector::Ones(7) / 3.0, CVector::Ones(4)), DimensionError);
    const BeamformerPair opt = optimal_beamformer(in.h);
    const SnrReport r = received_snr(in.h, f, matched_filter(in.h, f), 1.0, opt.normalized_snr);
    REQUIRE(r.delta_snr_db.has_value());
    CHECK(*r.delta_snr_db >= -1e-12);
}

TEST_CASE("matched filter") {
    TrialRng rng(23, 0);
    SUBCASE("single path gives u up to phase") {
        const Instance in = random_instance(rng, 1, 8, 4);
        const CVector v = steering_vector(in.link.tx, in.paths[0].aod);
        const CVector u = steering_vector(in.link.rx, in.paths[0].aoa);
        const CVector g = matched_filter(in.h, v);
        CHECK(std::abs(std::abs(u.dot(g)) - 1.0) < 1e-12);
    }
    SUBCASE("dominates random combiners and equals f^H H^H H f") {
        const Instance in = random_instance(rng, 3, 16, 4);
        CVector f(16);
        for (auto &x : f)
            x = rng.complex_normal();
        f /= f.norm();
        const CVector g = matched_filter(in.h, f);
        const double best = received_snr(in.h, f, g).normalized_snr;
        CHECK(best == doctest::Approx((in.h.entries * f).squaredNorm() / 64.0).epsilon(1e-12));
        for (int i = 0; i < 100; ++i) {
            CVector w(4);
            for (auto &x : w)
                x = rng.complex_normal();
            CHECK(received_snr(in.h, f, w).normalized_snr <= best * (1.0 + 1e-12));
        }
    }
    SUBCASE("scale invariant up to phase") {
        const Instance in = random_instance(rng, 2, 8, 4);
        const CVector f = CVector::Constant(8, cd(1.0 / std::sqrt(8.0), 0.0));
        ChannelMatrix scaled = in.h;
        scaled.entries *= cd(-3.0, 2.0);
        CHECK(std::abs(std::abs(matched_filter(in.h, f).dot(matched_filter(scaled, f))) - 1.0) < 1e-12);
    }
    SUBCASE("zero response throws") {
        ChannelMatrix zero{CMatrix::Zero(4, 8), 1};
        CHECK_THROWS_AS(matched_filter(zero, CVector::Ones(8) / std::sqrt(8.0)), DegenerateChannelError);
    }
}

TEST_CASE("optimal beamformer: single path") {
    TrialRng rng(24, 0);
    const Instance in = random_instance(rng, 1, 16, 4);
    const BeamformerPair bf = optimal_beamformer(in.h);
    const CVector v = steering_vector(in.link.tx, in.paths[0].aod);
    CHECK(std::abs(std::abs(v.dot(bf.tx)) - 1.0) < 1e-10);
    CHECK(bf.normalized_snr == doctest::Approx(std::norm(in.paths[0].gain)).epsilon(1e-10));
    check_pair_invariants(in.h, bf);
}

TEST_CASE("optimal beamformer: v-orthogonal closed form") {
    TrialRng rng(25, 0);
    for (int i = 0; i < 50; ++i) {
        const double uu = rng.uniform(0.0, 1.0);
        const auto r = oracle::realize_two_path(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(-kPi, kPi),
                                                uu, 0.0, 16, 8);
        const double a = r.params.a();
        const double b = r.params.b();
        const double uu_real = r.params.uu_mag;
        const double expected = (a + b + std::sqrt(a * a + b * b + 2 * a * b * (2 * uu_real * uu_real - 1))) / 4.0;
        const BeamformerPair bf = optimal_beamformer(assemble_channel(r.paths, r.link));
        CHECK(bf.normalized_snr == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("optimal beamformer: eigenvalue, invariants, canonical phase, determinism") {
    TrialRng rng(26, 0);
    for (int i = 0; i < 100; ++i) {
        const Instance in = random_instance(rng, pick(rng, {1, 2, 3, 5}), pick(rng, {8, 16, 64}), pick(rng, {2, 4}));
        const BeamformerPair bf = optimal_beamformer(in.h);
        const double lmax = lambda_max(in.h);
        CHECK(bf.normalized_snr * in.h.nt() * in.h.nr() == doctest::Approx(lmax).epsilon(1e-9));
        check_pair_invariants(in.h, bf);
        CHECK(bf.tx(0).imag() == 0.0);
        CHECK(bf.tx(0).real() >= 0.0);
        const BeamformerPair again = optimal_beamformer(in.h);
        CHECK(again.tx == bf.tx);
        CHECK(again.rx == bf.rx);
        CHECK(again.normalized_snr == bf.normalized_snr);
    }
}

TEST_CASE("optimal beamformer on a zero channel or with no iterations") {
    ChannelMatrix zero{CMatrix::Zero(4, 8), 1};
    CHECK_THROWS_AS(optimal_beamformer(zero), DegenerateChannelError);
    TrialRng rng(27, 0);
    const Instance in = random_instance(rng, 3, 16, 4);
    PowerIterationOptions opts;
    opts.max_iters = 1;
    try {
        optimal_beamformer(in.h, opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError &e) {
        CHECK(e.best_iterate().size() == 16);
        CHECK(e.best_rayleigh_quotient() > 0.0);
        CHECK(e.best_rayleigh_quotient() <= lambda_max(in.h) * (1 + 1e-12));
    }
}

TEST_CASE("reduced eigenproblem: orthogonal diagonal case") {
    const LinkGeometry link{ArrayGeometry(8), ArrayGeometry(4)};
    const std::vector<PathComponent> ps{
        {cd(2.0, 0.0), AngleSpec(std::acos(0.1)), AngleSpec(std::acos(-0.3))},
        {cd(0.0, 1.0), AngleSpec(std::acos(0.1 + 0.25)), AngleSpec(std::acos(-0.3 + 0.5))},
    };
    const Eigen::VectorXd ev = reduced_eigenvalues(ps, link);
    REQUIRE(ev.size() == 2);
    CHECK(ev(0) == doctest::Approx(4.0 * 8 * 4 / 2).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(1.0 * 8 * 4 / 2).epsilon(1e-12));
    const BeamformerPair bf = reduced_optimal_beamformer(ps, link);
    CHECK(std::abs(std::abs(steering_vector(link.tx, ps[0].aod).dot(bf.tx)) - 1.0) < 1e-12);
    CHECK_FALSE(bf.fallback_used);
}

TEST_CASE("reduced route agrees with power iteration; span properties") {
    TrialRng rng(28, 0);
    int fallbacks = 0;
    for (int i = 0; i < 1000; ++i) {
        const int l = pick(rng, {1, 2, 3, 5});
        const Instance in = random_instance(rng, l, pick(rng, {8, 16, 64}), pick(rng, {2, 4}));
        const BeamformerPair power = optimal_beamformer(in.h);
        const BeamformerPair reduced = reduced_optimal_beamformer(in.paths, in.link);
        fallbacks += reduced.fallback_used ? 1 : 0;
        CHECK(std::abs(reduced.normalized_snr - power.normalized_snr) <= 1e-9 * power.normalized_snr);
        check_pair_invariants(in.h, reduced);

        const CMatrix v = columns(transmit_steering(in.paths, in.link.tx));
        const CMatrix u = columns(receive_steering(in.paths, in.link.rx));
        CHECK(oracle::span_residual(reduced.tx, v) < 1e-9);
        CHECK(oracle::span_residual(power.rx, u) < 1e-8);

        // Every significant eigenvector of H^H H lies in span{v_l}.
        if (i % 10 == 0) {
            const Eigen::SelfAdjointEigenSolver<CMatrix> es(in.h.entries.adjoint() * in.h.entries);
            const double top = es.eigenvalues().maxCoeff();
            for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
                if (es.eigenvalues()(k) > 1e-9 * top)
                    CHECK(oracle::span_residual(es.eigenvectors().col(k), v) < 1e-8);
        }
    }
    MESSAGE("reduced-route fallbacks: " << fallbacks << " / 1000");
}

TEST_CASE("dominant path beamformer") {
    const LinkGeometry link{ArrayGeometry(16), ArrayGeometry(4)};
    const double k = 3.0;
    SUBCASE("coherent parallel paths give (K+1)^2 / L") {
        const std::vector<PathComponent> ps{{cd(k, 0.0), AngleSpec::from_degrees(80), AngleSpec::from_degrees(100)},
                                            {cd(1.0, 0.0), AngleSpec::from_degrees(80), AngleSpec::from_degrees(100)}};
        CHECK(dominant_path_beamformer(ps, link).normalized_snr == doctest::Approx((k + 1) * (k + 1) / 2).epsilon(1e-12));
        CHECK(equal_power_beamformer(ps, link).normalized_snr == doctest::Approx((k + 1) * (k + 1) / 2).epsilon(1e-9));
    }
    SUBCASE("orthogonal paths give K^2 / L") {
        const std::vector<PathComponent> ps{
            {cd(0.0, k), AngleSpec(std::acos(0.2)), AngleSpec(std::acos(-0.1))},
            {cd(1.0, 0.0), AngleSpec(std::acos(0.2 + 0.125)), AngleSpec(std::acos(-0.1 + 0.5))}};
        CHECK(dominant_path_beamformer(ps, link).normalized_snr == doctest::Approx(k * k / 2).epsilon(1e-12));
        CHECK(bidirectional_beamformer(ps, link).normalized_snr == doctest::Approx(k * k / 2).epsilon(1e-12));
        CHECK(equal_power_beamformer(ps, link).normalized_snr == doctest::Approx((k * k + 1) / 4).epsilon(1e-9));
    }
    SUBCASE("ties go to the lower index") {
        const std::vector<PathComponent> ps{{cd(1.0, 0.0), AngleSpec::from_degrees(60), AngleSpec::from_degrees(60)},
                                            {cd(0.0, 1.0), AngleSpec::from_degrees(120), AngleSpec::from_degrees(120)}};
        CHECK(dominant_path_index(ps) == 0);
    }
    SUBCASE("generic pairs match the closed form") {
        TrialRng rng(29, 0);
        for (int i = 0; i < 100; ++i) {
            const auto r = oracle::realize_two_path(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(-kPi, kPi),
                                                    rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), 16, 8);
            CHECK(dominant_path_beamformer(r.paths, r.link).normalized_snr ==
                  doctest::Approx(closedform::snr_dominant_path(r.params)).epsilon(1e-9));
        }
    }
}

TEST_CASE("bidirectional beamformer") {
    TrialRng rng(30, 0);
    const Instance single = random_instance(rng, 1, 16, 4);
    CHECK(bidirectional_beamformer(single.paths, single.link).normalized_snr ==
          doctest::Approx(optimal_beamformer(single.h).normalized_snr).epsilon(1e-10));
    for (int i = 0; i < 200; ++i) {
        const Instance in = random_instance(rng, pick(rng, {2, 3, 5}), 16, 4);
        const BeamformerPair b = bidirectional_beamformer(in.paths, in.link);
        check_pair_invariants(in.h, b);
        const std::size_t d = dominant_path_index(in.paths);
        CHECK(std::abs(std::abs(steering_vector(in.link.tx, in.paths[d].aod).dot(b.tx)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(steering_vector(in.link.rx, in.paths[d].aoa).dot(b.rx)) - 1.0) < 1e-12);
        CHECK(b.normalized_snr <= optimal_beamformer(in.h).normalized_snr + 1e-9);
    }
}

TEST_CASE("equal power beamformer matches the two-path objective at its phase") {
    TrialRng rng(31, 0);
    for (int i = 0; i < 50; ++i) {
        const auto r = oracle::realize_two_path(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(-kPi, kPi),
                                                rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.95), 16, 8);
        const double theta = equal_power_phase(r.paths, r.link);
        const BeamformerPair bf = equal_power_beamformer(r.paths, r.link);
        const closedform::AllocationPoint half{1.0 / std::sqrt(2.0), theta};
        CHECK(bf.normalized_snr == doctest::Approx(closedform::two_path_objective(r.params, half)).epsilon(1e-9));
        // No grid phase beats the refined one.
        for (int k = 0; k < 72; ++k)
            CHECK(closedform::two_path_objective(r.params, {1.0 / std::sqrt(2.0), k * 2 * kPi / 72}) <=
                  bf.normalized_snr * (1 + 1e-12));
    }
    const std::vector<PathComponent> three(3, PathComponent{});
    CHECK_THROWS_AS(equal_power_beamformer(three, {ArrayGeometry(4), ArrayGeometry(4)}), UnsupportedError);
}

TEST_CASE("grid search beamformer") {
    TrialRng rng(32, 0);
    SUBCASE("single path returns v") {
        const Instance in = random_instance(rng, 1, 8, 4);
        const GridSearchResult g = grid_search_beamformer(in.paths, in.link, {2, 2, 1000});
        CHECK(std::abs(std::abs(steering_vector(in.link.tx, in.paths[0].aod).dot(g.pair.tx)) - 1.0) < 1e-12);
    }
    SUBCASE("v-orthogonal pair recovers the closed-form beta") {
        const auto r = oracle::realize_two_path(1.5, 1.0, 0.7, 0.6, 0.0, 16, 8);
        const GridSearchResult g = grid_search_beamformer(r.paths, r.link, {201, 360, 1'000'000});
        const double beta_closed = closedform::beta_opt_v_orth(r.params).beta;
        CHECK(std::abs(g.beta[0] - beta_closed) <= 1.0 / 200);
    }
    SUBCASE("L = 3, 4 x 8 random within 1e-3 of optimal on a fine grid") {
        const Instance in = random_instance(rng, 3, 8, 4);
        const GridSearchResult g = grid_search_beamformer(in.paths, in.link, {41, 72, 50'000'000});
        const double opt = optimal_beamformer(in.h).normalized_snr;
        CHECK(g.pair.normalized_snr <= opt + 1e-9);
        CHECK(g.pair.normalized_snr >= opt * (1 - 1e-3));
        check_pair_invariants(in.h, g.pair);
    }
    SUBCASE("L = 3 with 50 points per axis within 1e-2") {
        const Instance in = random_instance(rng, 3, 16, 4);
        const GridSearchResult g = grid_search_beamformer(in.paths, in.link, {50, 50, 50'000'000});
        const double opt = optimal_beamformer(in.h).normalized_snr;
        CHECK(g.pair.normalized_snr >= opt * (1 - 1e-2));
    }
    SUBCASE("resource cap") {
        const Instance in = random_instance(rng, 5, 8, 4);
        CHECK_THROWS_AS(grid_search_beamformer(in.paths, in.link, {50, 50, 1000}), ResourceError);
    }
}

TEST_CASE("optimality dominance over all schemes") {
    TrialRng rng(33, 0);
    for (int i = 0; i < 100; ++i) {
        const Instance in = random_instance(rng, 2, 16, 4);
        const double opt = optimal_beamformer(in.h).normalized_snr;
        CHECK(dominant_path_beamformer(in.paths, in.link).normalized_snr <= opt + 1e-9);
        CHECK(bidirectional_beamformer(in.paths, in.link).normalized_snr <= opt + 1e-9);
        CHECK(equal_power_beamformer(in.paths, in.link).normalized_snr <= opt + 1e-9);
        if (i % 20 == 0)
            CHECK(grid_search_beamformer(in.paths, in.link, {11, 12, 1'000'000}).pair.normalized_snr <= opt + 1e-9);
    }
}
