#pragma once

#include "qbound/qsystem.hpp"

#include <Eigen/Dense>

namespace qbound {

/// Embedding a ↦ (a, 0) of a chiral category into its product with the
/// opposite category. Fusion, F and R are preserved since the second slot is
/// the unit.
struct LiftMap {
    CatPtr source;
    CatPtr target;
    int operator()(int a) const { return target->pair(a, 0); }
};

LiftMap lift_map(const CatPtr& chiral);
Obj lift_object(const LiftMap& L, const Obj& o);
Morphism lift_morphism(const LiftMap& L, const Morphism& f);
/// A ↦ A⊗1; dimension and all residuals are unchanged.
QSystem lift_qsystem(const QSystem& A, const LiftMap& L);
inline QSystem lift_qsystem(const QSystem& A) { return lift_qsystem(A, lift_map(A.cat)); }

/// Z[σ][τ] = multiplicity of (σ, τ) in Θ; Θ must live in a product category.
Eigen::MatrixXi theta_components(const QSystem& Q2d);

} // namespace qbound
