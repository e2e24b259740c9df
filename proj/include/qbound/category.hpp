#pragma once

#include "qbound/common.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qbound {

/// Fusion rules of a finite semisimple category. Label 0 is the unit.
class FusionRing {
public:
    FusionRing() = default;
    /// N is row-major with N[(a*n+b)*n+c] = dim Hom(c, a⊗b).
    FusionRing(std::vector<std::string> names, std::vector<int> dual, std::vector<int> N);

    int rank() const { return n_; }
    int N(int a, int b, int c) const { return N_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c]; }
    int dual(int a) const { return dual_[a]; }
    const std::string& name(int a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    /// Labels c with N[a][b][c] > 0, ascending.
    const std::vector<int>& products(int a, int b) const { return prod_[static_cast<std::size_t>(a) * n_ + b]; }
    /// Index of a label name, or -1.
    int label(const std::string& name) const;
    bool multiplicity_free() const;
    /// Axiom violations (unit law, duality, associativity); empty when valid.
    std::vector<std::string> check() const;
    /// Perron-Frobenius dimensions of the fusion matrices.
    std::vector<double> perron_frobenius_dims() const;

private:
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<int> dual_;
    std::vector<int> N_;
    std::vector<std::vector<int>> prod_;
};

class CategoryData;
using CatPtr = std::shared_ptr<const CategoryData>;

/// Packed F/R keys; labels must fit into 8 bits.
std::uint64_t pack_F(int a, int b, int c, int d, int e, int f);
std::uint64_t pack_R(int a, int b, int c);

/// Skeletal braided fusion category with multiplicity-free F and R symbols.
///
/// Convention: ((a b)_e c)_d = Σ_f F^{abc}_d[e,f] (a (b c)_f)_d on splitting
/// trees, and the braiding sends the vertex (a b; c) to R^{ab}_c (b a; c).
class CategoryData {
public:
    using FMap = std::unordered_map<std::uint64_t, cplx>;
    using RMap = std::unordered_map<std::uint64_t, cplx>;

    /// Base category from explicit symbol tables.
    static CatPtr make(std::string name, FusionRing ring, FMap F, RMap R, std::string gaugeNote);
    /// C ⊠ C^opp; labels (a,b) have index a*rank(C)+b.
    static CatPtr make_product_opposite(const CatPtr& base);

    const std::string& name() const { return name_; }
    /// Process-unique identity, used as cache key by the morphism engine.
    std::uint64_t id() const { return id_; }
    const std::string& gauge_note() const { return gauge_; }
    const FusionRing& ring() const { return ring_; }
    int rank() const { return ring_.rank(); }
    int N(int a, int b, int c) const { return ring_.N(a, b, c); }
    int dual(int a) const { return ring_.dual(a); }

    bool admissible_F(int a, int b, int c, int d, int e, int f) const;
    std::optional<cplx> find_F(int a, int b, int c, int d, int e, int f) const;
    std::optional<cplx> find_R(int a, int b, int c) const;
    /// Throws Error when the entry is missing.
    cplx F(int a, int b, int c, int d, int e, int f) const;
    cplx R(int a, int b, int c) const;

    /// Quantum dimension from the F-loop value 1/|F^{a ā a}_a[0,0]|.
    double dim(int a) const { return dims_[a]; }
    const std::vector<double>& dims() const { return dims_; }
    /// D = sqrt(Σ d_a²).
    double global_dim() const { return globalDim_; }

    bool is_product() const { return static_cast<bool>(base_); }
    /// Chiral factor of a product category (null for base categories).
    const CatPtr& base() const { return base_; }
    int first(int label) const { return label / base_->rank(); }
    int second(int label) const { return label % base_->rank(); }
    int pair(int a, int b) const { return a * base_->rank() + b; }

    /// Enumerates all admissible F tuples (a,b,c,d,e,f).
    void for_each_F_tuple(const std::function<void(int, int, int, int, int, int)>& fn) const;
    /// Enumerates all admissible R triples (a,b,c).
    void for_each_R_triple(const std::function<void(int, int, int)>& fn) const;

    /// Cached product_opposite of this category (weakly held).
    CatPtr cached_product() const;
    void remember_product(const CatPtr& p) const;

private:
    CategoryData() = default;
    void compute_dims();

    std::uint64_t id_ = 0;
    std::string name_;
    std::string gauge_;
    FusionRing ring_;
    FMap F_;
    RMap R_;
    CatPtr base_;
    std::vector<double> dims_;
    double globalDim_ = 1;
    mutable std::mutex productMutex_;
    mutable std::weak_ptr<const CategoryData> product_;
};

struct Failure {
    std::string kind;         ///< "pentagon", "hexagon", "hexagon-inverse", "unitarity", "unit", "modulus"
    std::vector<int> indices; ///< offending index tuple
    double residual = 0;
    std::string describe(const CategoryData& cat) const;
};

struct ValidationReport {
    std::vector<std::string> structural; ///< missing entries, broken fusion axioms
    std::vector<Failure> failures;
    bool ok() const { return structural.empty() && failures.empty(); }
};

ValidationReport validate(const CategoryData& cat, double tol = default_tolerance());

struct ModularData {
    std::vector<double> dims;
    std::vector<cplx> twists;
    double globalDim = 1;
    Eigen::MatrixXcd S;
    Eigen::MatrixXcd T;
    bool isModular = false;
    /// max |d_F - d_PF| between loop-value and Perron-Frobenius dimensions.
    double dimCrossCheck = 0;
};

ModularData modular_data(const CategoryData& cat, double tol = default_tolerance());

/// ising | fibonacci | pointed(N,a) | pointed:N:a | zN (a = 1).
CatPtr build_builtin(const std::string& name);
/// Same as above but returns nullptr for unknown names instead of throwing.
CatPtr try_builtin(const std::string& name);

CatPtr product_opposite(const CatPtr& cat);

/// True when both pointers name the same category object.
inline bool same_category(const CatPtr& a, const CatPtr& b) { return a.get() == b.get(); }

} // namespace qbound
