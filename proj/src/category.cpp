#include "qbound/category.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

namespace qbound {

// ---------------------------------------------------------------- FusionRing

FusionRing::FusionRing(std::vector<std::string> names, std::vector<int> dual, std::vector<int> N)
    : n_(static_cast<int>(names.size())), names_(std::move(names)), dual_(std::move(dual)), N_(std::move(N))
{
    if (n_ == 0) throw Error("fusion ring needs at least the unit label");
    if (static_cast<int>(dual_.size()) != n_) throw Error("dual map has wrong length");
    if (N_.size() != static_cast<std::size_t>(n_) * n_ * n_) throw Error("fusion tensor has wrong size");
    for (int a = 0; a < n_; ++a)
        if (dual_[a] < 0 || dual_[a] >= n_) throw Error("dual of label " + std::to_string(a) + " out of range");
    prod_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c) {
                if (this->N(a, b, c) < 0) throw Error("negative fusion multiplicity");
                if (this->N(a, b, c) > 0) prod_[static_cast<std::size_t>(a) * n_ + b].push_back(c);
            }
}

int FusionRing::label(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool FusionRing::multiplicity_free() const
{
    return std::all_of(N_.begin(), N_.end(), [](int v) { return v <= 1; });
}

std::vector<std::string> FusionRing::check() const
{
    std::vector<std::string> out;
    if (dual_[0] != 0) out.push_back("duality: dual(0) must be 0");
    for (int a = 0; a < n_; ++a)
        if (dual_[dual_[a]] != a) out.push_back("duality: dual(dual(" + names_[a] + ")) != " + names_[a]);
    for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
            int want = b == c ? 1 : 0;
            if (N(0, b, c) != want || N(b, 0, c) != want)
                out.push_back("unit law: N[0][" + names_[b] + "][" + names_[c] + "] != delta");
        }
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (N(a, b, 0) != (b == dual_[a] ? 1 : 0))
                out.push_back("duality: N[" + names_[a] + "][" + names_[b] + "][0] != delta(b, dual(a))");
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                for (int d = 0; d < n_; ++d) {
                    long l = 0, r = 0;
                    for (int e = 0; e < n_; ++e) {
                        l += static_cast<long>(N(a, b, e)) * N(e, c, d);
                        r += static_cast<long>(N(b, c, e)) * N(a, e, d);
                    }
                    if (l != r)
                        out.push_back("associativity: (" + names_[a] + "," + names_[b] + "," + names_[c] + "," +
                                      names_[d] + ")");
                }
    return out;
}

std::vector<double> FusionRing::perron_frobenius_dims() const
{
    // d is the common positive eigenvector of all fusion matrices; power
    // iteration on the sum of N_a converges to it.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c) M(c, b) += N(a, b, c);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n_);
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd w = M * v + v;
        w /= w(0);
        if ((w - v).norm() < 1e-15) {
            v = w;
            break;
        }
        v = w;
    }
    return {v.data(), v.data() + n_};
}

// ---------------------------------------------------------------- keys

std::uint64_t pack_F(int a, int b, int c, int d, int e, int f)
{
    auto u = [](int x) { return static_cast<std::uint64_t>(x) & 0xffu; };
    return u(a) | u(b) << 8 | u(c) << 16 | u(d) << 24 | u(e) << 32 | u(f) << 40;
}

std::uint64_t pack_R(int a, int b, int c)
{
    auto u = [](int x) { return static_cast<std::uint64_t>(x) & 0xffu; };
    return u(a) | u(b) << 8 | u(c) << 16;
}

// ---------------------------------------------------------------- CategoryData

namespace {
std::atomic<std::uint64_t> nextCategoryId{1};
}

CatPtr CategoryData::make(std::string name, FusionRing ring, FMap F, RMap R, std::string gaugeNote)
{
    if (ring.rank() > 255) throw Error("at most 255 labels are supported");
    auto cat = std::shared_ptr<CategoryData>(new CategoryData());
    cat->id_ = nextCategoryId.fetch_add(1);
    cat->name_ = std::move(name);
    cat->ring_ = std::move(ring);
    cat->F_ = std::move(F);
    cat->R_ = std::move(R);
    cat->gauge_ = std::move(gaugeNote);
    cat->compute_dims();
    return cat;
}

CatPtr CategoryData::make_product_opposite(const CatPtr& base)
{
    if (base->is_product()) throw Error("product of a product category is not supported");
    const int n = base->rank();
    if (n * n > 255) throw Error("product category would exceed 255 labels");
    const FusionRing& r = base->ring();
    std::vector<std::string> names;
    std::vector<int> dual;
    std::vector<int> N(static_cast<std::size_t>(n) * n * n * n * n * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            names.push_back("(" + r.name(a) + "," + r.name(b) + ")");
            dual.push_back(r.dual(a) * n + r.dual(b));
        }
    const int m = n * n;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                N[(static_cast<std::size_t>(x) * m + y) * m + z] =
                    r.N(x / n, y / n, z / n) * r.N(x % n, y % n, z % n);
    auto cat = std::shared_ptr<CategoryData>(new CategoryData());
    cat->id_ = nextCategoryId.fetch_add(1);
    cat->name_ = base->name() + "⊠" + base->name() + "^opp";
    cat->ring_ = FusionRing(std::move(names), std::move(dual), std::move(N));
    cat->gauge_ = "product of " + base->name() + " with its reverse; F factorizes, R = R ⊗ conj(R^{ba})";
    cat->base_ = base;
    cat->compute_dims();
    return cat;
}

bool CategoryData::admissible_F(int a, int b, int c, int d, int e, int f) const
{
    return N(a, b, e) > 0 && N(e, c, d) > 0 && N(b, c, f) > 0 && N(a, f, d) > 0;
}

std::optional<cplx> CategoryData::find_F(int a, int b, int c, int d, int e, int f) const
{
    if (base_) {
        auto x = base_->find_F(first(a), first(b), first(c), first(d), first(e), first(f));
        auto y = base_->find_F(second(a), second(b), second(c), second(d), second(e), second(f));
        if (!x || !y) return std::nullopt;
        return *x * *y;
    }
    auto it = F_.find(pack_F(a, b, c, d, e, f));
    if (it == F_.end()) return std::nullopt;
    return it->second;
}

std::optional<cplx> CategoryData::find_R(int a, int b, int c) const
{
    if (base_) {
        auto x = base_->find_R(first(a), first(b), first(c));
        // the second slot carries the reversed braiding c^{-1}_{b,a}
        auto y = base_->find_R(second(b), second(a), second(c));
        if (!x || !y) return std::nullopt;
        return *x * std::conj(*y);
    }
    auto it = R_.find(pack_R(a, b, c));
    if (it == R_.end()) return std::nullopt;
    return it->second;
}

cplx CategoryData::F(int a, int b, int c, int d, int e, int f) const
{
    auto v = find_F(a, b, c, d, e, f);
    if (!v) {
        std::ostringstream os;
        os << "missing F entry " << a << "," << b << "," << c << "," << d << ";" << e << "," << f << " in "
           << name_;
        throw Error(os.str());
    }
    return *v;
}

cplx CategoryData::R(int a, int b, int c) const
{
    auto v = find_R(a, b, c);
    if (!v) {
        std::ostringstream os;
        os << "missing R entry " << a << "," << b << ";" << c << " in " << name_;
        throw Error(os.str());
    }
    return *v;
}

void CategoryData::compute_dims()
{
    const int n = rank();
    dims_.assign(n, 1.0);
    if (base_) {
        for (int x = 0; x < n; ++x) dims_[x] = base_->dim(first(x)) * base_->dim(second(x));
    } else {
        std::vector<double> pf = ring_.perron_frobenius_dims();
        for (int a = 0; a < n; ++a) {
            auto f = find_F(a, dual(a), a, a, 0, 0);
            dims_[a] = (f && std::abs(*f) > 1e-14) ? 1.0 / std::abs(*f) : pf[a];
        }
    }
    double s = 0;
    for (double d : dims_) s += d * d;
    globalDim_ = std::sqrt(s);
}

void CategoryData::for_each_F_tuple(const std::function<void(int, int, int, int, int, int)>& fn) const
{
    const int n = rank();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e : ring_.products(a, b))
                    for (int d : ring_.products(e, c))
                        for (int f : ring_.products(b, c))
                            if (N(a, f, d) > 0) fn(a, b, c, d, e, f);
}

void CategoryData::for_each_R_triple(const std::function<void(int, int, int)>& fn) const
{
    const int n = rank();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c : ring_.products(a, b)) fn(a, b, c);
}

CatPtr CategoryData::cached_product() const
{
    std::lock_guard<std::mutex> lock(productMutex_);
    return product_.lock();
}

void CategoryData::remember_product(const CatPtr& p) const
{
    std::lock_guard<std::mutex> lock(productMutex_);
    product_ = p;
}

// ---------------------------------------------------------------- validation

std::string Failure::describe(const CategoryData& cat) const
{
    std::ostringstream os;
    os << kind << " (";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) os << (kind != "modulus" && kind != "unit-R" && i == 4 ? ";" : ",");
        os << cat.ring().name(indices[i]);
    }
    os << ") residual " << residual;
    return os.str();
}

namespace {

void check_structure(const CategoryData& cat, ValidationReport& rep)
{
    for (const auto& msg : cat.ring().check()) rep.structural.push_back(msg);
    if (!cat.ring().multiplicity_free()) {
        rep.structural.push_back("fusion multiplicities > 1 are not supported at the F/R tier");
        return;
    }
    cat.for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
        if (!cat.find_F(a, b, c, d, e, f)) {
            std::ostringstream os;
            os << "missing F entry " << a << "," << b << "," << c << "," << d << ";" << e << "," << f;
            rep.structural.push_back(os.str());
        }
    });
    cat.for_each_R_triple([&](int a, int b, int c) {
        if (!cat.find_R(a, b, c)) {
            std::ostringstream os;
            os << "missing R entry " << a << "," << b << ";" << c;
            rep.structural.push_back(os.str());
        }
    });
}

} // namespace

ValidationReport validate(const CategoryData& cat, double tol)
{
    ValidationReport rep;
    check_structure(cat, rep);
    if (!rep.structural.empty()) return rep;

    const int n = cat.rank();
    const FusionRing& ring = cat.ring();
    auto fail = [&](std::string kind, std::vector<int> idx, double res) {
        rep.failures.push_back({std::move(kind), std::move(idx), res});
    };

    // unit normalization and modulus
    cat.for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
        if (a == 0 || b == 0 || c == 0) {
            double res = std::abs(cat.F(a, b, c, d, e, f) - 1.0);
            if (res > tol) fail("unit", {a, b, c, d, e, f}, res);
        }
    });
    cat.for_each_R_triple([&](int a, int b, int c) {
        cplx r = cat.R(a, b, c);
        double res = std::abs(std::abs(r) - 1.0);
        if (res > tol) fail("modulus", {a, b, c}, res);
        if ((a == 0 || b == 0) && std::abs(r - 1.0) > tol) fail("unit-R", {a, b, c}, std::abs(r - 1.0));
    });

    // unitarity of each F^{abc}_d
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    std::vector<int> es, fs;
                    for (int e : ring.products(a, b))
                        if (cat.N(e, c, d)) es.push_back(e);
                    for (int f : ring.products(b, c))
                        if (cat.N(a, f, d)) fs.push_back(f);
                    if (es.empty() && fs.empty()) continue;
                    if (es.size() != fs.size()) {
                        fail("unitarity", {a, b, c, d}, 1.0);
                        continue;
                    }
                    Eigen::MatrixXcd M(es.size(), fs.size());
                    for (std::size_t i = 0; i < es.size(); ++i)
                        for (std::size_t j = 0; j < fs.size(); ++j) M(i, j) = cat.F(a, b, c, d, es[i], fs[j]);
                    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(es.size(), es.size());
                    double res = (M * M.adjoint() - I).cwiseAbs().maxCoeff();
                    if (res > tol) fail("unitarity", {a, b, c, d}, res);
                }

    // pentagon: F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int f : ring.products(a, b))
                        for (int g : ring.products(f, c))
                            for (int e : ring.products(g, d))
                                for (int l : ring.products(c, d))
                                    for (int k : ring.products(b, l)) {
                                        if (!cat.N(a, k, e)) continue;
                                        cplx lhs = 0;
                                        if (cat.N(f, l, e)) lhs = cat.F(f, c, d, e, g, l) * cat.F(a, b, l, e, f, k);
                                        cplx rhs = 0;
                                        for (int h : ring.products(b, c)) {
                                            if (!cat.N(a, h, g) || !cat.N(h, d, k)) continue;
                                            rhs += cat.F(a, b, c, g, f, h) * cat.F(a, h, d, e, g, k) *
                                                   cat.F(b, c, d, k, h, l);
                                        }
                                        double res = std::abs(lhs - rhs);
                                        if (res > tol) fail("pentagon", {a, b, c, d, e, f, g, k, l}, res);
                                    }

    // hexagon: F^{abc}_d[e,f] R^{af}_d = Σ_g R^{ab}_e F^{bac}_d[e,g] R^{ac}_g conj(F^{bca}_d[f,g])
    auto hexagon = [&](const std::string& kind, const std::function<cplx(int, int, int)>& Rs) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int e : ring.products(a, b))
                        for (int d : ring.products(e, c))
                            for (int f : ring.products(b, c)) {
                                if (!cat.N(a, f, d)) continue;
                                cplx lhs = cat.F(a, b, c, d, e, f) * Rs(a, f, d);
                                cplx rhs = 0;
                                for (int g : ring.products(a, c)) {
                                    if (!cat.N(b, g, d)) continue;
                                    rhs += Rs(a, b, e) * cat.F(b, a, c, d, e, g) * Rs(a, c, g) *
                                           std::conj(cat.F(b, c, a, d, f, g));
                                }
                                double res = std::abs(lhs - rhs);
                                if (res > tol) fail(kind, {a, b, c, d, e, f}, res);
                            }
    };
    hexagon("hexagon", [&](int a, int b, int c) { return cat.R(a, b, c); });
    hexagon("hexagon-inverse", [&](int a, int b, int c) { return std::conj(cat.R(b, a, c)); });
    return rep;
}

// ---------------------------------------------------------------- modular data

ModularData modular_data(const CategoryData& cat, double tol)
{
    const int n = cat.rank();
    ModularData md;
    md.dims = cat.dims();
    md.globalDim = cat.global_dim();
    if (!cat.is_product()) {
        auto pf = cat.ring().perron_frobenius_dims();
        for (int a = 0; a < n; ++a) md.dimCrossCheck = std::max(md.dimCrossCheck, std::abs(pf[a] - md.dims[a]));
    }
    md.twists.resize(n);
    for (int a = 0; a < n; ++a) {
        cplx s = 0;
        for (int c : cat.ring().products(a, a)) s += md.dims[c] * cat.R(a, a, c);
        md.twists[a] = s / md.dims[a];
    }
    md.S = Eigen::MatrixXcd::Zero(n, n);
    md.T = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        md.T(a, a) = md.twists[a];
        for (int b = 0; b < n; ++b) {
            // S_ab = D⁻¹ Σ_c N_{āb}^c θ_c/(θ_a θ_b) d_c
            const int ad = cat.dual(a);
            cplx s = 0;
            for (int c : cat.ring().products(ad, b))
                s += static_cast<double>(cat.N(ad, b, c)) * md.twists[c] / (md.twists[a] * md.twists[b]) * md.dims[c];
            md.S(a, b) = s / md.globalDim;
        }
    }
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    md.isModular = (md.S * md.S.adjoint() - I).cwiseAbs().maxCoeff() <= std::max(tol, 1e-9);
    return md;
}

// ---------------------------------------------------------------- built-ins

namespace {

std::vector<int> ring_tensor(int n, const std::function<int(int, int, int)>& N)
{
    std::vector<int> out(static_cast<std::size_t>(n) * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) out[(static_cast<std::size_t>(a) * n + b) * n + c] = N(a, b, c);
    return out;
}

void fill_trivial_F(const FusionRing& ring, CategoryData::FMap& F)
{
    const int n = ring.rank();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e : ring.products(a, b))
                    for (int d : ring.products(e, c))
                        for (int f : ring.products(b, c))
                            if (ring.N(a, f, d)) F.emplace(pack_F(a, b, c, d, e, f), 1.0);
}

CatPtr make_ising()
{
    // labels: 0 = id, 1 = tau (fermion), 2 = sigma
    const int n = 3;
    auto N = ring_tensor(n, [](int a, int b, int c) {
        if (a == 0) return b == c ? 1 : 0;
        if (b == 0) return a == c ? 1 : 0;
        if (a == 1 && b == 1) return c == 0 ? 1 : 0;
        if ((a == 1 && b == 2) || (a == 2 && b == 1)) return c == 2 ? 1 : 0;
        return (c == 0 || c == 1) ? 1 : 0; // sigma x sigma
    });
    FusionRing ring({"id", "tau", "sigma"}, {0, 1, 2}, N);
    CategoryData::FMap F;
    fill_trivial_F(ring, F);
    const double h = 1.0 / std::sqrt(2.0);
    F[pack_F(2, 2, 2, 2, 0, 0)] = h;
    F[pack_F(2, 2, 2, 2, 0, 1)] = h;
    F[pack_F(2, 2, 2, 2, 1, 0)] = h;
    F[pack_F(2, 2, 2, 2, 1, 1)] = -h;
    F[pack_F(2, 1, 2, 1, 2, 2)] = -1.0;
    F[pack_F(1, 2, 1, 2, 2, 2)] = -1.0;
    const double pi = std::numbers::pi;
    CategoryData::RMap R;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c : ring.products(a, b)) R[pack_R(a, b, c)] = 1.0;
    R[pack_R(1, 1, 0)] = -1.0;
    R[pack_R(1, 2, 2)] = cplx(0, -1);
    R[pack_R(2, 1, 2)] = cplx(0, -1);
    R[pack_R(2, 2, 0)] = std::polar(1.0, -pi / 8);
    R[pack_R(2, 2, 1)] = std::polar(1.0, 3 * pi / 8);
    return CategoryData::make("ising", std::move(ring), std::move(F), std::move(R),
                              "eps(sigma,sigma) eigenvalues kappa^-1 on id and i kappa^-1 on tau, kappa = e^{2 pi i/16}; "
                              "eps(tau,tau) = -1; F^{sigma sigma sigma}_sigma = Hadamard/sqrt2");
}

CatPtr make_fibonacci()
{
    const int n = 2;
    auto N = ring_tensor(n, [](int a, int b, int c) {
        if (a == 0) return b == c ? 1 : 0;
        if (b == 0) return a == c ? 1 : 0;
        return 1; // sigma x sigma = id + sigma
    });
    FusionRing ring({"id", "sigma"}, {0, 1}, N);
    CategoryData::FMap F;
    fill_trivial_F(ring, F);
    const double phi = (1 + std::sqrt(5.0)) / 2;
    F[pack_F(1, 1, 1, 1, 0, 0)] = 1 / phi;
    F[pack_F(1, 1, 1, 1, 0, 1)] = 1 / std::sqrt(phi);
    F[pack_F(1, 1, 1, 1, 1, 0)] = 1 / std::sqrt(phi);
    F[pack_F(1, 1, 1, 1, 1, 1)] = -1 / phi;
    const double pi = std::numbers::pi;
    CategoryData::RMap R;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c : ring.products(a, b)) R[pack_R(a, b, c)] = 1.0;
    R[pack_R(1, 1, 0)] = std::polar(1.0, -4 * pi / 5);
    R[pack_R(1, 1, 1)] = std::polar(1.0, 3 * pi / 5);
    return CategoryData::make("fibonacci", std::move(ring), std::move(F), std::move(R),
                              "R^{ss}_1 = e^{-4 pi i/5}, R^{ss}_s = e^{3 pi i/5}; real F gauge");
}

CatPtr make_pointed(int N, int a)
{
    if (N < 1) throw Error("pointed category needs N >= 1");
    if (N % 2 == 0) throw Error("pointed(N, a) requires odd N (even N needs nontrivial F cocycles)");
    std::vector<std::string> names;
    std::vector<int> dual;
    for (int j = 0; j < N; ++j) {
        names.push_back(std::to_string(j));
        dual.push_back((N - j) % N);
    }
    auto Nt = ring_tensor(N, [N](int x, int y, int z) { return (x + y) % N == z ? 1 : 0; });
    FusionRing ring(std::move(names), std::move(dual), std::move(Nt));
    CategoryData::FMap F;
    fill_trivial_F(ring, F);
    CategoryData::RMap R;
    const double pi = std::numbers::pi;
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            long e = (static_cast<long>(a) % N * j % N * k) % N;
            if (e < 0) e += N;
            R[pack_R(j, k, (j + k) % N)] = std::polar(1.0, 2 * pi * static_cast<double>(e) / N);
        }
    std::string name = "pointed(" + std::to_string(N) + "," + std::to_string(a) + ")";
    return CategoryData::make(name, std::move(ring), std::move(F), std::move(R),
                              "F = 1, R^{jk} = exp(2 pi i a j k / N)");
}

} // namespace

CatPtr try_builtin(const std::string& name)
{
    // Built-ins are shared instances so that Q-systems built from the same
    // name can be combined.
    static std::mutex mu;
    static std::map<std::string, CatPtr> made;
    std::string key;
    std::function<CatPtr()> build;
    std::smatch m;
    static const std::regex paren(R"(pointed\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
    static const std::regex colon(R"(pointed:(-?\d+):(-?\d+))");
    static const std::regex zn(R"(z(\d+))");
    if (name == "ising") {
        key = "ising";
        build = make_ising;
    } else if (name == "fibonacci" || name == "fib") {
        key = "fibonacci";
        build = make_fibonacci;
    } else if (std::regex_match(name, m, paren) || std::regex_match(name, m, colon) ||
               std::regex_match(name, m, zn)) {
        const int N = std::stoi(m[1]);
        const int a = m.size() > 2 && m[2].matched ? std::stoi(m[2]) : 1;
        key = "pointed(" + std::to_string(N) + "," + std::to_string(a) + ")";
        build = [N, a] { return make_pointed(N, a); };
    } else {
        return nullptr;
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = made.find(key);
    if (it != made.end()) return it->second;
    CatPtr c = build();
    made.emplace(key, c);
    return c;
}

CatPtr build_builtin(const std::string& name)
{
    auto c = try_builtin(name);
    if (!c) throw Error("unknown built-in category '" + name + "'");
    return c;
}

CatPtr product_opposite(const CatPtr& cat)
{
    if (auto p = cat->cached_product()) return p;
    auto p = CategoryData::make_product_opposite(cat);
    cat->remember_product(p);
    return p;
}

} // namespace qbound
