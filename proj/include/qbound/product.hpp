#pragma once

#include "qbound/qsystem.hpp"

#include <Eigen/Dense>

namespace qbound {

/// A1 ×^± A2 on θ = flatten(θ1⊗θ2): w = w1⊗w2, x = (1⊗ε^±_{θ1,θ2}⊗1)(x1⊗x2).
QSystem braided_product(const QSystem& A1, const QSystem& A2, int sign);

struct ProjectionInTheta {
    Morphism p;
    double idempotency = 0;  ///< ‖p² − p‖
    double selfAdjoint = 0;  ///< ‖p† − p‖
    double intermediate = 0; ///< max residual of pw = w, (p⊗p)x = (p⊗1)xp = (1⊗p)xp
    double leftCentre = 0;   ///< ‖(1⊗p)x − ε^+_{θ,θ}(p⊗1)x‖
    double rightCentre = 0;  ///< ‖(1⊗p)x − ε^-_{θ,θ}(p⊗1)x‖
    bool isProjection = false;
    bool satisfiesIntermediate = false;
    bool satisfiesLeftCentreRel = false;
    bool satisfiesRightCentreRel = false;
};

/// Computes residuals and sets the flags of a candidate projection.
ProjectionInTheta check_projection(const QSystem& A, Morphism p, double tol = default_tolerance());
/// p^± = d⁻¹ (r†⊗1)(1⊗ε^±_{θ,θ})(x⊗1)x with r = xw; equals 1 for commutative A.
ProjectionInTheta centre_projection(const QSystem& A, int side, double tol = default_tolerance());
/// r†(1⊗p)r; equals dim θ for p = 1.
double projection_trace(const QSystem& A, const Morphism& p);

/// Reduced Q-system with the isometry s : θ_p → θ, p = s s†.
struct Reduction {
    QSystem q;
    Morphism s;
};
/// Requires p to satisfy the intermediate relations. The columns of s are
/// Gram-Schmidt orthonormalized columns of each block of p, taken in basis
/// order, with the label-0 columns phased so that w_p is positive.
Reduction reduce(const QSystem& A, const ProjectionInTheta& p, double tol = default_tolerance());

/// Z^±[A] = C^±[(A⊗1) ×^± R] for A over a modular chiral category; side +1 is
/// the left full centre.
Reduction full_centre_reduction(const QSystem& A, int side = +1, double tol = default_tolerance());
QSystem full_centre(const QSystem& A, int side = +1, double tol = default_tolerance());

/// Residual of the claim that u = s1† s2 is a Q-system isomorphism from
/// (target) onto (reduced): u unitary, x_r = (u⊗u) x_t u†, w_r = u w_t.
double equivalence_residual(const Reduction& reduced, const QSystem& target, const Morphism& sTarget);

/// d1^{-1/2} Φ (w1⊗1) : θ2 → θ1 ×^± θ2, the isometric embedding of the
/// second factor.
Morphism second_factor_embedding(const QSystem& A1, const QSystem& A2);

/// Z[σ][τ] = multiplicity of (σ, τ) in Θ.
Eigen::MatrixXi coupling_matrix(const QSystem& Q2d);

} // namespace qbound
