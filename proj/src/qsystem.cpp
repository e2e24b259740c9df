#include "qbound/qsystem.hpp"

#include "qbound/product.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qbound {

double QReport::max() const
{
    return std::max({unitLeft, unitRight, associativity, frobenius, standardW, standardX});
}

std::string QReport::str() const
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "unit-left " << unitLeft << ", unit-right " << unitRight << ", associativity "
       << associativity << ", frobenius " << frobenius << ", standard-w " << standardW << ", standard-x "
       << standardX;
    return os.str();
}

QReport verify_qsystem(const QSystem& A)
{
    const CatPtr& cat = A.cat;
    const Space th = A.th();
    if (A.w.source() != Space{} || A.w.target() != th) throw Error("Q-system shape mismatch: w must map 1 → θ");
    if (A.x.source() != th || A.x.target() != Space{A.theta, A.theta})
        throw Error("Q-system shape mismatch: x must map θ → θ⊗θ");
    const Morphism id = Morphism::identity(cat, th);
    const Morphism wd = A.w.dagger();
    const Morphism xd = A.x.dagger();
    const double d = A.dim();
    QReport r;
    r.unitLeft = distance(tensor(wd, id) * A.x, id);
    r.unitRight = distance(tensor(id, wd) * A.x, id);
    r.associativity = distance(tensor(A.x, id) * A.x, tensor(id, A.x) * A.x);
    r.frobenius = distance(A.x * xd, tensor(id, xd) * tensor(A.x, id));
    r.standardW = std::abs(scalar(wd * A.w) - d);
    r.standardX = distance(xd * A.x, d * id);
    return r;
}

void require_qsystem(const QSystem& A, double tol)
{
    QReport r = verify_qsystem(A);
    if (!r.pass(tol)) throw Error("'" + A.name + "' is not a Q-system within " + std::to_string(tol) + ": " + r.str());
}

double commutativity_residual(const QSystem& A, int sign)
{
    return distance(braid(A.cat, A.th(), A.th(), sign) * A.x, A.x);
}

bool is_commutative(const QSystem& A, double tol) { return commutativity_residual(A, +1) <= tol; }

double qsystem_dimension(const QSystem& A) { return A.dim(); }

QSystem trivial_qsystem(const CatPtr& cat)
{
    QSystem q;
    q.cat = cat;
    q.theta = Obj::unit(cat->rank());
    q.name = cat->name() + ":trivial";
    q.w = Morphism(cat, Space{}, q.th());
    q.w.block(0)(0, 0) = 1.0;
    q.x = Morphism(cat, q.th(), Space{q.theta, q.theta});
    q.x.block(0)(0, 0) = 1.0;
    return q;
}

QSystem group_qsystem(const CatPtr& cat, const std::vector<int>& H, std::string name)
{
    std::set<int> hs(H.begin(), H.end());
    if (!hs.count(0)) throw Error("group Q-system: subgroup must contain the unit label");
    for (int h : hs) {
        if (h < 0 || h >= cat->rank()) throw Error("group Q-system: label out of range");
        if (std::abs(cat->dim(h) - 1.0) > 1e-9) throw Error("group Q-system: label " + cat->ring().name(h) + " is not invertible");
        for (int k : hs) {
            const auto& p = cat->ring().products(h, k);
            if (p.size() != 1 || !hs.count(p[0]))
                throw Error("group Q-system: labels are not closed under fusion");
        }
    }
    QSystem q;
    q.cat = cat;
    q.theta = Obj(cat->rank());
    for (int h : hs) q.theta.set(h, 1);
    q.name = name.empty() ? cat->name() + ":group" : std::move(name);
    const double n = static_cast<double>(hs.size());
    q.w = Morphism(cat, Space{}, q.th());
    q.w.block(0)(0, 0) = std::pow(n, 0.25);
    q.x = Morphism(cat, q.th(), Space{q.theta, q.theta});
    auto b = basis(*cat, q.x.target());
    for (int c : hs)
        for (int row = 0; row < b->dim(c); ++row) q.x.block(c)(row, 0) = std::pow(n, -0.25);
    return q;
}

QSystem canonical_qsystem(const CatPtr& chiral)
{
    if (chiral->is_product()) throw Error("canonical Q-system takes a chiral (non-product) category");
    CatPtr P = product_opposite(chiral);
    const int n = chiral->rank();
    const double dR = chiral->global_dim();
    QSystem q;
    q.cat = P;
    q.theta = Obj(P->rank());
    for (int r = 0; r < n; ++r) q.theta.set(P->pair(r, chiral->dual(r)), 1);
    q.name = chiral->name() + ":canonical";
    q.w = Morphism(P, Space{}, q.th());
    q.w.block(0)(0, 0) = std::sqrt(dR);
    q.x = Morphism(P, q.th(), Space{q.theta, q.theta});
    auto b = basis(*P, q.x.target());
    for (int t = 0; t < n; ++t) {
        const int c = P->pair(t, chiral->dual(t));
        for (int row = 0; row < b->dim(c); ++row) {
            const Channel& ch = b->channels[c][row];
            const int rho = P->first(ch.labels[0]), sig = P->first(ch.labels[1]);
            q.x.block(c)(row, 0) = std::sqrt(chiral->dim(rho) * chiral->dim(sig) / chiral->dim(t) / dR);
        }
    }
    return q;
}

std::vector<ChargedField> charged_fields(const QSystem& A)
{
    std::vector<ChargedField> out;
    const double d = A.dim();
    for (int r : A.theta.support())
        for (int i = 0; i < A.theta.mult(r); ++i) {
            ChargedField f{r, i, Morphism(A.cat, Space{Obj::simple(A.cat->rank(), r)}, A.th())};
            f.W.block(r)(i, 0) = std::sqrt(d / A.cat->dim(r));
            out.push_back(std::move(f));
        }
    return out;
}

namespace {

std::vector<int> parse_labels(const CategoryData& cat, const std::string& list)
{
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int l = cat.ring().label(item);
        if (l < 0) {
            try {
                std::size_t pos = 0;
                l = std::stoi(item, &pos);
                if (pos != item.size()) l = -1;
            } catch (const std::exception&) {
                l = -1;
            }
        }
        if (l < 0 || l >= cat.rank()) throw Error("unknown label '" + item + "' in " + cat.name());
        out.push_back(l);
    }
    return out;
}

} // namespace

QSystem builtin_qsystem(const std::string& spec)
{
    if (spec.rfind("Z:", 0) == 0) {
        QSystem z = full_centre(builtin_qsystem(spec.substr(2)));
        z.name = spec;
        return z;
    }
    auto g = spec.find(":group:");
    std::string catName, kind, arg;
    if (g != std::string::npos) {
        catName = spec.substr(0, g);
        kind = "group";
        arg = spec.substr(g + 7);
    } else {
        auto c = spec.rfind(':');
        if (c == std::string::npos) throw Error("Q-system name '" + spec + "' must look like <category>:<kind>");
        catName = spec.substr(0, c);
        kind = spec.substr(c + 1);
    }
    CatPtr cat = build_builtin(catName);
    QSystem q;
    if (kind == "trivial") {
        q = trivial_qsystem(cat);
    } else if (kind == "canonical") {
        q = canonical_qsystem(cat);
    } else if (kind == "fermi") {
        if (cat->name() != "ising") throw Error("the fermion Q-system exists only over ising");
        q = group_qsystem(cat, {0, 1});
    } else if (kind == "condensate") {
        if (cat->name() != "pointed(9,1)") throw Error("the condensate Q-system is defined over z9");
        q = group_qsystem(cat, {0, 3, 6});
    } else if (kind == "group") {
        q = group_qsystem(cat, parse_labels(*cat, arg));
    } else {
        throw Error("unknown Q-system kind '" + kind + "'");
    }
    q.name = spec;
    return q;
}

} // namespace qbound
