#include "scrub/linear_model.hpp"

#include <cmath>
#include <string>

namespace scrub {

namespace {

// log(1 + exp(-m)) without overflow for large |m|.
double log1p_exp_neg(double m) {
    if (m > 0.0) return std::log1p(std::exp(-m));
    return -m + std::log1p(std::exp(m));
}

Eigen::VectorXd signed_labels(const Dataset& ds) {
    Eigen::VectorXd y(ds.n());
    for (Eigen::Index i = 0; i < ds.n(); ++i) y(i) = ds.labels(i) == 1 ? 1.0 : -1.0;
    return y;
}

void require_both_classes(const Dataset& ds, const char* op) {
    const auto counts = class_counts(ds);
    if (counts.n0 == 0 || counts.n1 == 0) {
        throw DataError(std::string(op) + " requires both classes present; got " +
                        std::to_string(counts.n0) + " / " + std::to_string(counts.n1));
    }
}

}  // namespace

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

LinearModel fit_nearest_centroid(const Dataset& ds) {
    require_both_classes(ds, "fit_nearest_centroid");
    const Centroids cents = class_centroids(ds);
    LinearModel m;
    m.kind = ClassifierKind::NearestCentroid;
    m.centroid0 = cents.c0;
    m.centroid1 = cents.c1;
    m.weights = cents.c1 - cents.c0;
    m.bias = 0.5 * (cents.c0.squaredNorm() - cents.c1.squaredNorm());
    return m;
}

LinearModel fit_logistic(const Dataset& ds, const RegularizationConfig& cfg) {
    require_both_classes(ds, "fit_logistic");
    if (!(cfg.inverse_strength_c > 0.0)) throw DataError("C must be positive");
    if (!(cfg.convergence_tolerance > 0.0)) throw DataError("convergence tolerance must be positive");
    if (cfg.max_iterations < 1) throw DataError("max_iterations must be positive");

    const Eigen::Index n = ds.n();
    const Eigen::Index d = ds.d();
    const double c = cfg.inverse_strength_c;
    const Eigen::VectorXd y = signed_labels(ds);

    // The minimizer's weight vector lies in the row span of the features
    // (the loss gradient is a combination of rows and the regularizer is
    // radial), so for D > N we solve in an orthonormal basis of that span.
    Eigen::MatrixXd basis;  // D x r; empty when solving directly
    Eigen::MatrixXd z;      // N x r working features
    if (d > n) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ds.features.transpose());
        basis = qr.householderQ() * Eigen::MatrixXd::Identity(d, n);
        z = ds.features * basis;
    } else {
        z = ds.features;
    }
    const Eigen::Index r = z.cols();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(r);
    double b = 0.0;

    const auto objective = [&](const Eigen::VectorXd& wv, double bv) {
        double loss = 0.0;
        const Eigen::VectorXd margins = z * wv;
        for (Eigen::Index i = 0; i < n; ++i) loss += log1p_exp_neg(y(i) * (margins(i) + bv));
        return 0.5 * wv.squaredNorm() + c * loss;
    };

    bool converged = false;
    double grad_norm = 0.0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        const Eigen::VectorXd margins = z * w + Eigen::VectorXd::Constant(n, b);
        Eigen::VectorXd sig_neg(n);   // sigmoid(-y_i m_i)
        Eigen::VectorXd curvature(n); // sigmoid(y m) * sigmoid(-y m)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s = sigmoid(-y(i) * margins(i));
            sig_neg(i) = s;
            curvature(i) = s * (1.0 - s);
        }

        Eigen::VectorXd grad(r + 1);
        grad.head(r) = w - c * (z.transpose() * y.cwiseProduct(sig_neg));
        grad(r) = -c * y.dot(sig_neg);
        grad_norm = grad.norm();
        if (grad_norm <= cfg.convergence_tolerance) {
            converged = true;
            break;
        }

        Eigen::MatrixXd hess(r + 1, r + 1);
        hess.topLeftCorner(r, r) =
            Eigen::MatrixXd::Identity(r, r) + c * (z.transpose() * curvature.asDiagonal() * z);
        hess.block(0, r, r, 1) = c * (z.transpose() * curvature);
        hess.block(r, 0, 1, r) = hess.block(0, r, r, 1).transpose();
        hess(r, r) = c * curvature.sum() + 1e-12;

        const Eigen::VectorXd step = hess.ldlt().solve(-grad);
        const double directional = grad.dot(step);
        if (!std::isfinite(directional) || directional >= 0.0) {
            throw NumericError("logistic solver produced a non-descent direction");
        }

        const double f0 = objective(w, b);
        double t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            const Eigen::VectorXd w_new = w + t * step.head(r);
            const double b_new = b + t * step(r);
            if (objective(w_new, b_new) <= f0 + 1e-4 * t * directional) {
                w = w_new;
                b = b_new;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) throw NumericError("logistic solver line search failed to make progress");
    }
    if (!converged) {
        throw NumericError("logistic solver did not reach gradient norm " +
                           std::to_string(cfg.convergence_tolerance) + " within " +
                           std::to_string(cfg.max_iterations) +
                           " iterations (final gradient norm " + std::to_string(grad_norm) + ")");
    }

    LinearModel m;
    m.kind = ClassifierKind::Logistic;
    m.weights = basis.size() > 0 ? Eigen::VectorXd(basis * w) : w;
    m.bias = b;
    return m;
}

double predict_margin(const LinearModel& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != m.weights.size()) {
        throw DataError("query length " + std::to_string(x.size()) +
                        " does not match model dimension " + std::to_string(m.weights.size()));
    }
    if (m.kind == ClassifierKind::NearestCentroid) {
        return (x - m.centroid0).norm() - (x - m.centroid1).norm();
    }
    return m.weights.dot(x) + m.bias;
}

double predict_probability(const LinearModel& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (m.kind != ClassifierKind::Logistic) {
        throw DataError("predict_probability requires a logistic model");
    }
    return sigmoid(predict_margin(m, x));
}

double logistic_objective(const Dataset& ds, const RegularizationConfig& cfg,
                          const Eigen::VectorXd& w, double b) {
    if (w.size() != ds.d()) throw DataError("weight length does not match dataset dimension");
    const Eigen::VectorXd y = signed_labels(ds);
    const Eigen::VectorXd margins = ds.features * w;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) loss += log1p_exp_neg(y(i) * (margins(i) + b));
    return 0.5 * w.squaredNorm() + cfg.inverse_strength_c * loss;
}

}  // namespace scrub
