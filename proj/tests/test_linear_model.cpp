#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "scrub/datagen.hpp"
#include "scrub/linear_model.hpp"
#include "support/oracles.hpp"

using oracles::make_dataset;
using namespace scrub;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("nearest centroid predicts the nearer class") {
    Dataset ds = make_dataset({{0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}, {2.0, 0.0}}, {0, 0, 1, 1});
    const LinearModel m = fit_nearest_centroid(ds);
    CHECK(predict_margin(m, vec2(1.5, 0.0)) > 0.0);
    CHECK(predict_margin(m, vec2(0.5, 0.0)) < 0.0);
    CHECK(predict_margin(m, vec2(1.0, 3.0)) == doctest::Approx(0.0));  // equidistant
    CHECK(predict_margin(m, vec2(2.0, 0.0)) == doctest::Approx(2.0));
    // Induced linear form agrees in sign with the distance margin.
    CHECK(m.weights.dot(vec2(1.5, 0.0)) + m.bias > 0.0);
    CHECK(m.weights.dot(vec2(0.5, 0.0)) + m.bias < 0.0);
}

TEST_CASE("coincident centroids give zero margin everywhere") {
    Dataset ds = make_dataset({{1.0, 1.0}, {-1.0, -1.0}, {1.0, 1.0}, {-1.0, -1.0}}, {0, 0, 1, 1});
    const LinearModel m = fit_nearest_centroid(ds);
    CHECK(predict_margin(m, vec2(0.3, -7.0)) == doctest::Approx(0.0));
    CHECK(predict_margin(m, vec2(5.0, 2.0)) == doctest::Approx(0.0));
}

TEST_CASE("nearest centroid margin flips sign across the bisector") {
    auto gen = rng::derive(Seed{31}, "bisector");
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd c0(3);
        Eigen::VectorXd c1(3);
        for (int j = 0; j < 3; ++j) {
            c0(j) = gen.normal();
            c1(j) = gen.normal();
        }
        Dataset ds;
        ds.features.resize(2, 3);
        ds.features.row(0) = c0.transpose();
        ds.features.row(1) = c1.transpose();
        ds.labels.resize(2);
        ds.labels << 0, 1;
        const LinearModel m = fit_nearest_centroid(ds);

        const Eigen::VectorXd mid = 0.5 * (c0 + c1);
        CHECK(std::abs(predict_margin(m, mid)) < 1e-10);
        const Eigen::VectorXd toward1 = mid + 0.1 * (c1 - c0);
        const Eigen::VectorXd toward0 = mid - 0.1 * (c1 - c0);
        CHECK(predict_margin(m, toward1) > 0.0);
        CHECK(predict_margin(m, toward0) < 0.0);
    }
}

TEST_CASE("fit_nearest_centroid rejects single-class data") {
    Dataset ds = make_dataset({{1.0}, {2.0}}, {0, 0});
    CHECK_THROWS_AS(fit_nearest_centroid(ds), DataError);
}

TEST_CASE("symmetric 1-D logistic problem solves to the symmetric optimum") {
    Dataset ds = make_dataset({{-1.0}, {1.0}}, {0, 1});
    const LinearModel m = fit_logistic(ds);
    CHECK(m.weights(0) > 0.0);
    CHECK(std::abs(m.bias) < 1e-8);
    Eigen::VectorXd origin(1);
    origin << 0.0;
    CHECK(predict_probability(m, origin) == doctest::Approx(0.5));
}

TEST_CASE("logistic matches an independent optimizer on a fixed instance") {
    const Dataset ds = generate_gaussian({20, 5, Seed{20240101}});
    const LinearModel m = fit_logistic(ds);
    const double fitted_objective = logistic_objective(ds, {}, m.weights, m.bias);

    const auto oracle = oracles::gd_logistic_oracle(ds, 1.0);
    REQUIRE(oracle.converged);
    CHECK(std::abs(fitted_objective - oracle.objective) < 1e-6);
    CHECK((m.weights - oracle.w).norm() < 1e-5);
}

TEST_CASE("separable data with a wide margin trains to accuracy 1") {
    Dataset ds = make_dataset(
        {{-3.0, 0.5}, {-3.5, -0.5}, {-2.5, 1.0}, {3.0, -0.5}, {3.5, 0.5}, {2.5, -1.0}},
        {0, 0, 0, 1, 1, 1});
    const LinearModel m = fit_logistic(ds);
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const double margin = predict_margin(m, ds.features.row(i).transpose());
        CHECK((margin > 0) == (ds.labels(i) == 1));
    }
}

TEST_CASE("solution satisfies the full-space gradient contract when d > n") {
    const Dataset ds = generate_gaussian({10, 40, Seed{77}});
    const RegularizationConfig cfg;
    const LinearModel m = fit_logistic(ds, cfg);

    // Recompute the gradient in the full space.
    Eigen::VectorXd grad_w = m.weights;
    double grad_b = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const double y = ds.labels(i) == 1 ? 1.0 : -1.0;
        const double margin = y * (m.weights.dot(ds.features.row(i)) + m.bias);
        const double sig = sigmoid(-margin);
        grad_w -= cfg.inverse_strength_c * y * sig * ds.features.row(i).transpose();
        grad_b -= cfg.inverse_strength_c * y * sig;
    }
    CHECK(std::sqrt(grad_w.squaredNorm() + grad_b * grad_b) <= cfg.convergence_tolerance * 10);

    // The weight vector lies in the row span of the features.
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(ds.features.transpose());
    const Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(40, 10);
    const Eigen::VectorXd outside = m.weights - basis * (basis.transpose() * m.weights);
    CHECK(outside.norm() < 1e-8);
}

TEST_CASE("objective at the solution beats random perturbations") {
    const Dataset ds = generate_gaussian({16, 4, Seed{5}});
    const LinearModel m = fit_logistic(ds);
    const double at_solution = logistic_objective(ds, {}, m.weights, m.bias);
    CHECK(at_solution <= logistic_objective(ds, {}, Eigen::VectorXd::Zero(4), 0.0) + 1e-12);

    auto gen = rng::derive(Seed{5}, "perturb");
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd w = m.weights;
        for (Eigen::Index j = 0; j < w.size(); ++j) w(j) += 0.1 * gen.normal();
        const double b = m.bias + 0.1 * gen.normal();
        CHECK(at_solution <= logistic_objective(ds, {}, w, b) + 1e-12);
    }
}

TEST_CASE("label swap negates margins and flips probabilities") {
    const Dataset ds = generate_gaussian({24, 6, Seed{9}});
    Dataset flipped = ds;
    for (Eigen::Index i = 0; i < ds.n(); ++i) flipped.labels(i) = 1 - ds.labels(i);

    const LinearModel a = fit_logistic(ds);
    const LinearModel b = fit_logistic(flipped);
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const Eigen::VectorXd x = ds.features.row(i).transpose();
        CHECK(predict_margin(a, x) == doctest::Approx(-predict_margin(b, x)).epsilon(1e-5));
        CHECK(predict_probability(a, x) ==
              doctest::Approx(1.0 - predict_probability(b, x)).epsilon(1e-5));
    }

    const LinearModel nc_a = fit_nearest_centroid(ds);
    const LinearModel nc_b = fit_nearest_centroid(flipped);
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const Eigen::VectorXd x = ds.features.row(i).transpose();
        CHECK(predict_margin(nc_a, x) == doctest::Approx(-predict_margin(nc_b, x)));
    }
}

TEST_CASE("probability helpers behave at the extremes") {
    LinearModel m;
    m.kind = ClassifierKind::Logistic;
    m.weights = vec2(1.0, 0.0);
    m.bias = -1.0;
    CHECK(predict_margin(m, vec2(1.0, 0.0)) == doctest::Approx(0.0));
    CHECK(predict_probability(m, vec2(1.0, 0.0)) == doctest::Approx(0.5));
    CHECK(predict_probability(m, vec2(100.0, 0.0)) > 0.999);
    CHECK(predict_probability(m, vec2(60.0, 0.0)) <
          predict_probability(m, vec2(80.0, 0.0)) + 1e-15);

    LinearModel zero;
    zero.kind = ClassifierKind::Logistic;
    zero.weights = Eigen::VectorXd::Zero(2);
    zero.bias = 0.0;
    CHECK(predict_probability(zero, vec2(-3.0, 9.0)) == doctest::Approx(0.5));

    Dataset ds = make_dataset({{0.0, 0.0}, {2.0, 0.0}}, {0, 1});
    const LinearModel nc = fit_nearest_centroid(ds);
    CHECK_THROWS_AS(predict_probability(nc, vec2(1.0, 0.0)), DataError);
}

TEST_CASE("non-convergence is reported, not silently accepted") {
    const Dataset ds = generate_gaussian({20, 5, Seed{20240101}});
    RegularizationConfig cfg;
    cfg.max_iterations = 1;
    CHECK_THROWS_AS(fit_logistic(ds, cfg), NumericError);
}

TEST_CASE("fit_logistic rejects single-class data") {
    Dataset ds = make_dataset({{1.0}, {2.0}}, {1, 1});
    CHECK_THROWS_AS(fit_logistic(ds), DataError);
}
