#pragma once

#include "qbound/morphism.hpp"

#include <string>
#include <vector>

namespace qbound {

/// (θ, w, x) with w : 1 → θ and x : θ → θ⊗θ. Unit law w†x = 1 is used
/// literally; standardness reads w†w = x†x = d with d = sqrt(dim θ).
struct QSystem {
    CatPtr cat;
    Obj theta;
    Morphism w;
    Morphism x;
    std::string name;

    double dim() const { return std::sqrt(theta.dim(*cat)); }
    Space th() const { return Space{theta}; }
};

struct QReport {
    double unitLeft = 0;  ///< ‖(w†⊗1)x − 1‖
    double unitRight = 0; ///< ‖(1⊗w†)x − 1‖
    double associativity = 0;
    double frobenius = 0;
    double standardW = 0; ///< |w†w − d|
    double standardX = 0; ///< ‖x†x − d·1‖
    double max() const;
    bool pass(double tol) const { return max() <= tol; }
    std::string str() const;
};

/// Residuals of all Q-system relations; throws on shape mismatch.
QReport verify_qsystem(const QSystem& A);
/// Throws Error carrying the report when any residual exceeds tol.
void require_qsystem(const QSystem& A, double tol = default_tolerance());
/// ‖ε^±_{θ,θ}∘x − x‖.
double commutativity_residual(const QSystem& A, int sign = +1);
bool is_commutative(const QSystem& A, double tol = default_tolerance());
/// sqrt(dim θ).
double qsystem_dimension(const QSystem& A);

QSystem trivial_qsystem(const CatPtr& cat);
/// Group algebra ⊕_{h∈H} h of invertible labels closed under fusion, with
/// w = |H|^{1/4} and x = |H|^{-1/4} on every admissible channel.
QSystem group_qsystem(const CatPtr& cat, const std::vector<int>& H, std::string name = {});
/// Θ = ⊕_ρ ρ⊠ρ̄ over product_opposite(chiral), W = sqrt(d_R),
/// X = d_R^{-1/2} sqrt(d_ρ d_σ / d_τ) on each admissible channel.
QSystem canonical_qsystem(const CatPtr& chiral);

struct ChargedField {
    int label;
    int copy;
    Morphism W; ///< [ρ] → [θ], W†W = d_A/dim ρ
};
std::vector<ChargedField> charged_fields(const QSystem& A);

/// Built-in Q-systems: "<cat>:trivial", "<cat>:canonical", "ising:fermi",
/// "z9:condensate", "<cat>:group:<l1>,<l2>,...", and "Z:<qsys>" for the full
/// centre of a chiral built-in.
QSystem builtin_qsystem(const std::string& spec);

} // namespace qbound
