#pragma once

#include "qbound/qsystem.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace qbound {

/// Basis element T = W^L_{ρ,i} W^R_{ρ,j}† of Hom(Θ^R, Θ^L).
struct TLabel {
    int rho;
    int i;
    int j;
};

/// The commutative ∗-algebra Hom(Θ^R, Θ^L) with T1∗T2 = X^L†(T2⊗T1)X^R.
struct CentreAlgebra {
    CatPtr cat; ///< product category carrying Θ^L and Θ^R
    std::vector<TLabel> basis;
    /// Basis morphisms; empty for the closed-form Cardy algebra.
    std::vector<Morphism> T;
    /// f[(a*n+b)*n+c]: coefficient of T_c in T_a∗T_b.
    std::vector<cplx> f;
    /// Column t holds the expansion of the Frobenius conjugate F(T_t†).
    Eigen::MatrixXcd star;
    int unitIndex = 0;
    /// (T,T) = d_L d_R / dim ρ.
    std::vector<double> normSq;
    double dL = 1, dR = 1; ///< Q-system dimensions of Θ^L, Θ^R
    double dA = 1, dB = 1; ///< chiral Q-system dimensions when Θ^Y = Z[A], Z[B]
    double dCat = 1;       ///< sqrt(Σ_ρ dim ρ²) of the chiral category
    Eigen::MatrixXi ZL, ZR;
    std::string leftName, rightName;

    int size() const { return static_cast<int>(basis.size()); }
    cplx fc(int a, int b, int c) const { return f[(static_cast<std::size_t>(a) * size() + b) * size() + c]; }
    /// Left multiplication matrix L_T(c, b) = f[T][b][c].
    Eigen::MatrixXcd left_mult(int t) const;
    /// ∗-product of coefficient vectors.
    Eigen::VectorXcd product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
    double label_dim(int t) const { return cat->dim(basis[t].rho); }
    std::string label_name(int t) const;
};

/// Centre algebra of A^L ×^- A^R for two commutative Q-systems. dA/dB are the
/// chiral dimensions d_A, d_B when Θ^L = Z[A], Θ^R = Z[B]; they only rescale
/// dimBeta (the full centre itself has dimension d_R whatever A is).
CentreAlgebra centre_algebra(const QSystem& AL, const QSystem& AR, double dA = 1, double dB = 1,
                             double tol = default_tolerance());
/// Closed form for canonical-canonical: f = dim τ/(dim ρ·dim σ)·N_{ρσ}^τ.
CentreAlgebra cardy_algebra(const CatPtr& chiral);

struct BoundaryCondition {
    int index = 0;
    Eigen::VectorXcd idempotent; ///< coefficients over the T-basis
    Eigen::VectorXcd values;     ///< π_m(B_T)
    double dimBeta = 1;
};

struct ClassifyOptions {
    double clusterTol = 1e-7; ///< relative eigenvalue clustering tolerance
    double tol = default_tolerance();
    std::uint64_t seed = 0x5eed5eedULL;
};

/// Minimal idempotents by simultaneous diagonalization of the left
/// multiplications. Rows are sorted by dimBeta, then by descending values.
std::vector<BoundaryCondition> classify(const CentreAlgebra& alg, const ClassifyOptions& opt = {});

/// Residuals of the idempotent system: I_m∗I_n = δ I_m, Σ I_m = unit,
/// I_m self-adjoint under the Frobenius conjugation.
struct IdempotentReport {
    double idempotency = 0;
    double completeness = 0;
    double selfAdjoint = 0;
    double max() const { return std::max({idempotency, completeness, selfAdjoint}); }
};
IdempotentReport check_idempotents(const CentreAlgebra& alg, const std::vector<BoundaryCondition>& conds);

/// π_σ(B_{ρ⊗ρ̄}) = S_ρσ S_00 / (S_ρ0 S_0σ), rows σ, columns ρ.
Eigen::MatrixXcd verlinde_table(const CategoryData& chiral);

/// S^{AB}_{m,T} = dimBeta_m √dim ρ_T π_m(B_T)/(d_A d_B d_R); throws when not unitary to 1e-8.
Eigen::MatrixXcd s_matrix(const std::vector<BoundaryCondition>& conds, const CentreAlgebra& alg);

/// N_{m1,m2}^{m3} = Σ dim(ρ)^{3/2}/d_R² (T3, T1T2) S^{AB}_{m1,T1} S^{BC}_{m2,T2} conj(S^{AC}_{m3,T3}).
/// Scalar products come from trace_pair when basis morphisms are present,
/// otherwise from the multiplicity-free closed form. Throws when an entry is
/// further than 1e-6 from a nonnegative integer.
std::vector<long> recovered_fusion(const Eigen::MatrixXcd& SAB, const Eigen::MatrixXcd& SBC,
                                   const Eigen::MatrixXcd& SAC, const CentreAlgebra& AB,
                                   const CentreAlgebra& BC, const CentreAlgebra& AC);
/// Raw (unrounded) version of the above.
std::vector<cplx> recovered_fusion_raw(const Eigen::MatrixXcd& SAB, const Eigen::MatrixXcd& SBC,
                                       const Eigen::MatrixXcd& SAC, const CentreAlgebra& AB,
                                       const CentreAlgebra& BC, const CentreAlgebra& AC);

} // namespace qbound
