#include "scrub/projection.hpp"

#include <cmath>
#include <string>

namespace scrub {

Projection::Projection(Eigen::Index dimension) : dim_(dimension), dirs_(dimension, 0) {
    if (dimension < 1) throw DataError("projection dimension must be at least 1");
}

double Projection::add_direction(const Eigen::VectorXd& w, double min_residual) {
    if (w.size() != dim_) {
        throw DataError("direction length " + std::to_string(w.size()) +
                        " does not match projection dimension " + std::to_string(dim_));
    }
    Eigen::VectorXd residual = w;
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < dirs_.cols(); ++j) {
            residual -= dirs_.col(j).dot(residual) * dirs_.col(j);
        }
    }
    const double norm = residual.norm();
    if (!(norm >= min_residual)) return norm;

    residual /= norm;
    // Canonical sign: first coordinate with non-negligible magnitude positive.
    for (Eigen::Index i = 0; i < residual.size(); ++i) {
        if (std::abs(residual(i)) > 1e-12) {
            if (residual(i) < 0.0) residual = -residual;
            break;
        }
    }
    dirs_.conservativeResize(Eigen::NoChange, dirs_.cols() + 1);
    dirs_.col(dirs_.cols() - 1) = residual;
    return norm;
}

Eigen::MatrixXd Projection::apply_to_rows(const Eigen::MatrixXd& rows) const {
    if (rows.cols() != dim_) {
        throw DataError("row length " + std::to_string(rows.cols()) +
                        " does not match projection dimension " + std::to_string(dim_));
    }
    if (dirs_.cols() == 0) return rows;
    return rows - (rows * dirs_) * dirs_.transpose();
}

Eigen::MatrixXd Projection::to_matrix() const {
    return Eigen::MatrixXd::Identity(dim_, dim_) - dirs_ * dirs_.transpose();
}

Dataset apply_projection(const Projection& p, const Dataset& ds) {
    Dataset out;
    out.features = p.apply_to_rows(ds.features);
    out.labels = ds.labels;
    return out;
}

}  // namespace scrub
