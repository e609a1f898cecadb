#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "scrub/datagen.hpp"
#include "scrub/removal.hpp"
#include "support/oracles.hpp"

using oracles::make_dataset;
using namespace scrub;

TEST_CASE("mean projection removes the axis-aligned centroid difference") {
    Dataset ds = make_dataset({{1.0, 0.0}, {1.0, 2.0}, {-1.0, 0.0}, {-1.0, 2.0}}, {0, 0, 1, 1});
    const RemovalResult result = mean_projection(ds);
    REQUIRE(result.projection.count() == 1);
    const Eigen::VectorXd u = result.projection.direction(0);
    CHECK(std::abs(std::abs(u(0)) - 1.0) < 1e-12);
    CHECK(std::abs(u(1)) < 1e-12);
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(std::abs(result.projected.features(i, 0)) < 1e-12);
    }
    const Centroids cents = class_centroids(result.projected);
    CHECK((cents.c0 - cents.c1).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(cents.c0(1) == doctest::Approx(1.0));
}

TEST_CASE("class centroids coincide after mean projection on random data") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Dataset ds = generate_gaussian({16, 12, Seed{seed}});
        const RemovalResult result = mean_projection(ds);
        const Centroids cents = class_centroids(result.projected);
        CHECK((cents.c0 - cents.c1).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("mean projection of its own output reports the degenerate direction") {
    const Dataset ds = generate_gaussian({12, 6, Seed{2}});
    const RemovalResult first = mean_projection(ds);
    CHECK_THROWS_AS(mean_projection(first.projected), DataError);
}

TEST_CASE("single nearest-centroid iteration reproduces mean projection") {
    for (std::uint64_t seed = 10; seed < 13; ++seed) {
        const Dataset ds = generate_gaussian({14, 9, Seed{seed}});
        const RemovalResult mp = mean_projection(ds);
        InlpConfig cfg;
        cfg.iterations = 1;
        cfg.classifier = ClassifierKind::NearestCentroid;
        const RemovalResult nc = inlp(ds, cfg, Seed{seed});
        REQUIRE(nc.completed_iterations() == 1);
        CHECK((mp.projected.features - nc.projected.features).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((mp.projection.direction(0) - nc.projection.direction(0)).norm() < 1e-10);
    }
}

TEST_CASE("running for the full dimension wipes the dataset") {
    const Dataset ds = generate_gaussian({8, 3, Seed{6}});
    InlpConfig cfg;
    cfg.iterations = 3;
    const RemovalResult result = inlp(ds, cfg, Seed{6});
    REQUIRE(result.completed_iterations() == 3);
    CHECK(result.projected.features.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("removed directions stay orthonormal across iterations") {
    const Dataset ds = generate_gaussian({20, 16, Seed{3}});
    InlpConfig cfg;
    cfg.iterations = 6;
    const RemovalResult result = inlp(ds, cfg, Seed{3});
    const Eigen::MatrixXd& u = result.projection.direction_matrix();
    REQUIRE(u.cols() == 6);
    for (Eigen::Index a = 0; a < u.cols(); ++a) {
        CHECK(std::abs(u.col(a).norm() - 1.0) < 1e-10);
        for (Eigen::Index b = a + 1; b < u.cols(); ++b) {
            CHECK(std::abs(u.col(a).dot(u.col(b))) <= 1e-8);
        }
    }
}

TEST_CASE("reapplying the cumulative projection changes nothing") {
    const Dataset ds = generate_gaussian({18, 10, Seed{4}});
    InlpConfig cfg;
    cfg.iterations = 4;
    const RemovalResult result = inlp(ds, cfg, Seed{4});
    const Dataset again = apply_projection(result.projection, result.projected);
    CHECK((again.features - result.projected.features).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("every completed iteration lowers the rank by exactly one") {
    // N > D: full column rank to start.
    {
        const Dataset ds = generate_gaussian({20, 6, Seed{8}});
        REQUIRE(oracles::matrix_rank(ds.features) == 6);
        InlpConfig cfg;
        cfg.iterations = 3;
        const RemovalResult result = inlp(ds, cfg, Seed{8});
        CHECK(oracles::matrix_rank(result.projected.features) == 3);
    }
    // D > N: rank N to start, solved through the row-span reduction.
    {
        const Dataset ds = generate_gaussian({8, 32, Seed{8}});
        REQUIRE(oracles::matrix_rank(ds.features) == 8);
        InlpConfig cfg;
        cfg.iterations = 3;
        const RemovalResult result = inlp(ds, cfg, Seed{8});
        CHECK(oracles::matrix_rank(result.projected.features) == 5);
    }
}

TEST_CASE("history snapshots equal the cumulative application of directions") {
    const Dataset ds = generate_gaussian({12, 8, Seed{13}});
    InlpConfig cfg;
    cfg.iterations = 4;
    cfg.record_history = true;
    const RemovalResult result = inlp(ds, cfg, Seed{13});
    REQUIRE(result.snapshots.size() == 4);
    for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
        Projection partial(ds.d());
        for (std::size_t j = 0; j <= k; ++j) {
            partial.add_direction(result.projection.direction(static_cast<Eigen::Index>(j)));
        }
        const Dataset cumulative = apply_projection(partial, ds);
        CHECK((cumulative.features - result.snapshots[k].features).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK((result.snapshots.back().features - result.projected.features).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("mean projection direction is translation invariant") {
    const Dataset ds = generate_gaussian({10, 7, Seed{21}});
    auto gen = rng::derive(Seed{21}, "translate");
    Eigen::VectorXd shift(7);
    for (Eigen::Index j = 0; j < 7; ++j) shift(j) = 3.0 * gen.normal();

    Dataset moved = ds;
    moved.features.rowwise() += shift.transpose();

    const RemovalResult a = mean_projection(ds);
    const RemovalResult b = mean_projection(moved);
    CHECK((a.projection.direction(0) - b.projection.direction(0)).norm() < 1e-9);

    // Projected outputs differ by the projected shift only: geometry is
    // preserved row for row.
    const Eigen::VectorXd projected_shift =
        shift - a.projection.direction(0) * a.projection.direction(0).dot(shift);
    const Eigen::MatrixXd expected =
        a.projected.features.rowwise() + projected_shift.transpose();
    CHECK((b.projected.features - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("nearest-centroid removal degenerates after one iteration and stops") {
    const Dataset ds = generate_gaussian({10, 5, Seed{33}});
    InlpConfig cfg;
    cfg.iterations = 3;
    cfg.classifier = ClassifierKind::NearestCentroid;
    const RemovalResult result = inlp(ds, cfg, Seed{33});
    CHECK(result.completed_iterations() == 1);
    CHECK(result.stopped_early);
    CHECK(result.stop_reason.find("rank exhausted or degenerate") != std::string::npos);
}

TEST_CASE("iteration budget larger than the dimension is rejected") {
    const Dataset ds = generate_gaussian({8, 4, Seed{1}});
    InlpConfig cfg;
    cfg.iterations = 5;
    CHECK_THROWS_AS(inlp(ds, cfg, Seed{1}), DataError);
}

TEST_CASE("zero iterations leave the data untouched") {
    const Dataset ds = generate_gaussian({8, 4, Seed{1}});
    InlpConfig cfg;
    cfg.iterations = 0;
    const RemovalResult result = inlp(ds, cfg, Seed{1});
    CHECK(result.completed_iterations() == 0);
    CHECK((result.projected.features - ds.features).cwiseAbs().maxCoeff() == 0.0);
}
