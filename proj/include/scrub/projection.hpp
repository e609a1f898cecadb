#pragma once

#include <Eigen/Dense>

#include "scrub/dataset.hpp"

namespace scrub {

/// Orthogonal projection onto the complement of a set of removed directions.
/// Stored as the ordered list of unit direction vectors rather than a dense
/// D x D matrix; the matrix is materialized only on demand. Directions are
/// kept unit-norm and pairwise orthogonal: every added vector is
/// re-orthogonalized against the stored ones before being accepted.
class Projection {
public:
    explicit Projection(Eigen::Index dimension);

    Eigen::Index dimension() const { return dim_; }
    Eigen::Index count() const { return dirs_.cols(); }

    /// Removed directions as columns of a D x k matrix, in insertion order.
    const Eigen::MatrixXd& direction_matrix() const { return dirs_; }
    Eigen::VectorXd direction(Eigen::Index i) const { return dirs_.col(i); }

    /// Orthogonalizes `w` against the stored directions (two passes of
    /// modified Gram-Schmidt), and if the residual norm is at least
    /// `min_residual`, normalizes, fixes the sign so the first
    /// non-negligible coordinate is positive, and appends it. Returns the
    /// residual norm; nothing is stored when it falls below the threshold.
    double add_direction(const Eigen::VectorXd& w, double min_residual = 1e-10);

    /// Rows of `rows` mapped to x - sum_i <x, u_i> u_i.
    Eigen::MatrixXd apply_to_rows(const Eigen::MatrixXd& rows) const;

    /// Dense operator I - sum_i u_i u_i^T.
    Eigen::MatrixXd to_matrix() const;

private:
    Eigen::Index dim_;
    Eigen::MatrixXd dirs_;  // D x k, orthonormal columns
};

/// Projects every row of the dataset; labels are carried over unchanged.
/// Throws DataError on dimension mismatch.
Dataset apply_projection(const Projection& p, const Dataset& ds);

}  // namespace scrub
