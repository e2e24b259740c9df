#include "qbound/oracle/expr.hpp"

#include "qbound/common.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qbound::oracle {

// ---------------------------------------------------------------- words

bool append_letter(std::string& w, char c)
{
    if (!w.empty() && std::isupper(static_cast<unsigned char>(w.back())) && std::islower(static_cast<unsigned char>(c))) {
        if (std::tolower(static_cast<unsigned char>(w.back())) != c) return false;
        w.pop_back();
        return true;
    }
    w.push_back(c);
    return true;
}

std::optional<std::string> reduce_word(const std::string& letters)
{
    std::string w;
    for (char c : letters)
        if (!append_letter(w, c)) return std::nullopt;
    return w;
}

std::string adjoint_word(const std::string& w)
{
    std::string out(w.rbegin(), w.rend());
    for (char& c : out) c = std::isupper(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : static_cast<char>(std::toupper(c));
    return out;
}

namespace {

bool concat(std::string& into, const std::string& w)
{
    for (char c : w)
        if (!append_letter(into, c)) return false;
    return true;
}

std::string word_str(const std::string& w)
{
    if (w.empty()) return "1";
    std::string s;
    for (char c : w) {
        if (!s.empty()) s += ' ';
        s += static_cast<char>(std::tolower(c));
        if (std::isupper(static_cast<unsigned char>(c))) s += '*';
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------- Expr

Expr::Expr(const Scalar& s)
{
    if (!s.is_zero()) terms_.emplace(Word{}, s);
}

Expr Expr::word(Word w, Scalar c)
{
    Expr e;
    if (!c.is_zero()) e.terms_.emplace(std::move(w), std::move(c));
    return e;
}

Expr Expr::gen(char g, int copy)
{
    if (g != 'r' && g != 't') throw Error("oracle: unknown generator");
    return copy == 0 ? word({std::string(1, g), ""}) : word({"", std::string(1, g)});
}

std::optional<Scalar> Expr::as_scalar() const
{
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() == 1 && terms_.begin()->first == Word{}) return terms_.begin()->second;
    return std::nullopt;
}

bool Expr::is_chiral() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.r.empty(); });
}

Expr& Expr::add(const Word& w, const Scalar& c)
{
    if (c.is_zero()) return *this;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

Expr& Expr::operator+=(const Expr& o)
{
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

Expr Expr::operator+(const Expr& o) const
{
    Expr r = *this;
    r += o;
    return r;
}

Expr Expr::operator-() const
{
    Expr r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const
{
    Expr r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            Word w = w1;
            if (!concat(w.l, w2.l) || !concat(w.r, w2.r)) continue;
            r.add(w, c1 * c2);
        }
    return r;
}

Expr Expr::scaled(const Scalar& s) const
{
    if (s.is_zero()) return {};
    Expr r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
    return r;
}

Expr Expr::adjoint() const
{
    Expr r;
    for (const auto& [w, c] : terms_) r.add(Word{adjoint_word(w.l), adjoint_word(w.r)}, c.conj());
    return r;
}

Expr Expr::primed() const
{
    Expr r;
    for (const auto& [w, c] : terms_) {
        if (!w.r.empty()) throw Error("oracle: prime() expects an expression in the first copy");
        r.terms_.emplace(Word{"", w.l}, c);
    }
    return r;
}

std::string Expr::str(std::size_t maxTerms) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    std::size_t k = 0;
    for (const auto& [w, c] : terms_) {
        if (k++ == maxTerms) {
            os << " + ... (" << terms_.size() << " terms)";
            break;
        }
        if (k > 1) os << " + ";
        os << "[" << c.str() << "] ";
        if (w.r.empty()) os << word_str(w.l);
        else os << "(" << word_str(w.l) << " ⊗ " << word_str(w.r) << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------- resolution

namespace {

struct Shape {
    int degree; // #s − #s*
    int level;  // #s*
};

Shape shape(const std::string& w)
{
    int up = 0;
    for (char c : w) up += std::isupper(static_cast<unsigned char>(c)) ? 1 : 0;
    return {static_cast<int>(w.size()) - 2 * up, up};
}

/// All words obtained from w by inserting rr* + tt* at the split point
/// `times` times.
std::vector<std::string> expand(const std::string& w, int times)
{
    std::vector<std::string> cur{w};
    for (int k = 0; k < times; ++k) {
        std::vector<std::string> next;
        next.reserve(cur.size() * 2);
        for (const auto& x : cur) {
            const auto split = std::find_if(x.begin(), x.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); }) - x.begin();
            for (const char* g : {"rR", "tT"}) next.push_back(x.substr(0, split) + g + x.substr(split));
        }
        cur = std::move(next);
    }
    return cur;
}

using Levels = std::map<std::pair<int, int>, std::pair<int, int>>;

void collect_levels(const Expr& e, Levels& lv)
{
    for (const auto& [w, c] : e.terms()) {
        const Shape a = shape(w.l), b = shape(w.r);
        auto [it, fresh] = lv.try_emplace({a.degree, b.degree}, a.level, b.level);
        if (!fresh) {
            it->second.first = std::max(it->second.first, a.level);
            it->second.second = std::max(it->second.second, b.level);
        }
    }
}

Expr expand_to(const Expr& e, const Levels& lv, int depth)
{
    Expr out;
    for (const auto& [w, c] : e.terms()) {
        const Shape a = shape(w.l), b = shape(w.r);
        const auto& target = lv.at({a.degree, b.degree});
        const int da = target.first - a.level, db = target.second - b.level;
        if (da > depth || db > depth) {
            std::ostringstream os;
            os << "identity resolution needs depth " << std::max(da, db) << " > " << depth;
            throw ResolutionDepthExceeded(os.str());
        }
        for (const auto& l : expand(w.l, da))
            for (const auto& r : expand(w.r, db)) out.add(Word{l, r}, c);
    }
    return out;
}

} // namespace

Expr contract(const Expr& e)
{
    Expr cur = e;
    for (bool changed = true; changed;) {
        changed = false;
        Expr next;
        std::set<Word> used;
        for (const auto& [w, c] : cur.terms()) {
            if (used.count(w)) continue;
            bool merged = false;
            for (int side = 0; side < 2 && !merged; ++side) {
                const std::string& s = side == 0 ? w.l : w.r;
                const auto p = std::find_if(s.begin(), s.end(), [](char ch) { return std::isupper(static_cast<unsigned char>(ch)); }) - s.begin();
                if (p == 0 || p == static_cast<long>(s.size()) || std::toupper(static_cast<unsigned char>(s[p - 1])) != s[p]) continue;
                std::string sib = s;
                sib[p - 1] = s[p - 1] == 'r' ? 't' : 'r';
                sib[p] = static_cast<char>(std::toupper(static_cast<unsigned char>(sib[p - 1])));
                const Word ws = side == 0 ? Word{sib, w.r} : Word{w.l, sib};
                auto it = cur.terms().find(ws);
                if (it == cur.terms().end() || used.count(ws) || !(it->second == c)) continue;
                std::string shorter = s;
                shorter.erase(p - 1, 2);
                next.add(side == 0 ? Word{shorter, w.r} : Word{w.l, shorter}, c);
                used.insert(w);
                used.insert(ws);
                merged = changed = true;
            }
            if (!merged) {
                next.add(w, c);
                used.insert(w);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Expr resolved(const Expr& e, int depth)
{
    const Expr c = contract(e);
    Levels lv;
    collect_levels(c, lv);
    return expand_to(c, lv, depth);
}

std::vector<Expr> resolved_jointly(const std::vector<Expr>& es, int depth)
{
    Levels lv;
    std::vector<Expr> cs;
    for (const auto& e : es) cs.push_back(contract(e));
    for (const auto& e : cs) collect_levels(e, lv);
    std::vector<Expr> out;
    out.reserve(es.size());
    for (const auto& e : cs) out.push_back(expand_to(e, lv, depth));
    return out;
}

bool equal(const Expr& a, const Expr& b, int depth, Expr* residual)
{
    Expr d = a - b;
    if (d.is_zero()) return true;
    d = resolved(d, depth);
    if (residual) *residual = d;
    return d.is_zero();
}

std::optional<std::vector<Scalar>> decompose(const Expr& target, const std::vector<Expr>& basis, int depth)
{
    std::vector<Expr> all{target};
    all.insert(all.end(), basis.begin(), basis.end());
    const auto res = resolved_jointly(all, depth);
    std::map<Word, int> rowOf;
    for (const auto& e : res)
        for (const auto& [w, c] : e.terms()) rowOf.try_emplace(w, static_cast<int>(rowOf.size()));
    const int rows = static_cast<int>(rowOf.size()), cols = static_cast<int>(basis.size());
    std::vector<std::vector<Scalar>> M(rows, std::vector<Scalar>(cols + 1));
    for (int k = 0; k < cols; ++k)
        for (const auto& [w, c] : res[k + 1].terms()) M[rowOf[w]][k] = c;
    for (const auto& [w, c] : res[0].terms()) M[rowOf[w]][cols] = c;
    std::vector<int> pivotCol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && M[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        const Scalar inv = M[r][c].inverse();
        for (int k = c; k <= cols; ++k) M[r][k] = M[r][k] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            const Scalar f = M[i][c];
            for (int k = c; k <= cols; ++k)
                if (!M[r][k].is_zero()) M[i][k] = M[i][k] - f * M[r][k];
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!M[i][cols].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols);
    for (int i = 0; i < r; ++i) x[pivotCol[i]] = M[i][cols];
    return x;
}

// ---------------------------------------------------------------- endomorphisms

ChiralMap::ChiralMap(std::string name, Expr imageR, Expr imageT) : name_(std::move(name))
{
    if (!imageR.is_chiral() || !imageT.is_chiral()) throw Error("oracle: chiral map images must lie in the first copy");
    img_[2] = imageR.adjoint();
    img_[3] = imageT.adjoint();
    img_[0] = std::move(imageR);
    img_[1] = std::move(imageT);
}

const Expr& ChiralMap::apply_word(const std::string& w) const
{
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Expr out;
    if (w.empty()) {
        out = Expr(1);
    } else {
        const char c = w.back();
        const int idx = (c == 'r' ? 0 : c == 't' ? 1 : c == 'R' ? 2 : 3);
        out = contract(apply_word(w.substr(0, w.size() - 1)) * img_[idx]);
    }
    return memo_.emplace(w, std::move(out)).first->second;
}

Expr Endo::apply(const Expr& e) const
{
    Expr out;
    for (const auto& [w, c] : e.terms()) out += apply_word(w).scaled(c);
    return contract(out);
}

Expr Endo::apply_after(const Expr& pre, const Expr& e) const
{
    // Words arrive sorted, so consecutive ones share letter prefixes; stack[k]
    // holds pre·φ(first k letters) of the previous word.
    Expr out;
    std::string prev;
    std::vector<Expr> stack{pre};
    for (const auto& [w, c] : e.terms()) {
        const std::string seq = w.l + '|' + w.r;
        std::size_t common = 0;
        while (common < seq.size() && common < prev.size() && seq[common] == prev[common]) ++common;
        stack.resize(common + 1);
        for (std::size_t k = common; k < seq.size(); ++k) {
            const char ch = seq[k];
            const bool second = k > w.l.size();
            if (ch == '|' || stack.back().is_zero()) {
                stack.push_back(stack.back());
                continue;
            }
            const Expr& img = apply_word(second ? Word{"", std::string(1, ch)} : Word{std::string(1, ch), ""});
            stack.push_back(contract(stack.back() * img));
        }
        prev = seq;
        out += stack.back().scaled(c);
    }
    return contract(out);
}

const Expr& Endo::apply_word(const Word& w) const
{
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(w, contract(compute(w))).first->second;
}

Expr PairEndo::compute(const Word& w) const
{
    const Expr L = left_ ? left_->apply_word(w.l) : Expr::word({w.l, ""});
    const Expr R = right_ ? right_->apply_word(w.r).primed() : Expr::word({"", w.r});
    return L * R;
}

std::string PairEndo::name() const
{
    return (left_ ? left_->name() : "id") + "⊗" + (right_ ? right_->name() : "id");
}

Expr SectorEndo::compute(const Word& w) const
{
    Expr out;
    for (const auto& p : parts_) out += p.T * p.endo->apply_word(w) * p.T.adjoint();
    return out;
}

Expr CompositeEndo::compute(const Word& w) const
{
    Expr cur = Expr::word(w);
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) cur = (*it)->apply(cur);
    return cur;
}

Expr BraidTable::chiral(const ChiralMapPtr& a, const ChiralMapPtr& b) const
{
    if (!a || !b) return Expr(1);
    auto it = table_.find({a->name(), b->name()});
    if (it == table_.end()) throw Error("oracle: braiding ε(" + a->name() + ", " + b->name() + ") is not defined");
    return it->second;
}

Expr BraidTable::eps(const EndoPtr& X, const EndoPtr& Y, int sign) const
{
    if (sign < 0) return eps(Y, X, +1).adjoint();
    if (auto c = std::dynamic_pointer_cast<const CompositeEndo>(X)) {
        const auto& f = c->factors();
        if (f.size() == 1) return eps(f[0], Y);
        auto rest = std::make_shared<CompositeEndo>(c->name() + "'", std::vector<EndoPtr>(f.begin() + 1, f.end()));
        return eps(f[0], Y) * f[0]->apply(eps(rest, Y));
    }
    if (auto c = std::dynamic_pointer_cast<const CompositeEndo>(Y)) {
        const auto& f = c->factors();
        if (f.size() == 1) return eps(X, f[0]);
        auto rest = std::make_shared<CompositeEndo>(c->name() + "'", std::vector<EndoPtr>(f.begin() + 1, f.end()));
        return f[0]->apply(eps(X, rest)) * eps(X, f[0]);
    }
    if (auto s = std::dynamic_pointer_cast<const SectorEndo>(X)) {
        Expr out;
        for (const auto& p : s->parts()) out += Y->apply(p.T) * eps(p.endo, Y) * p.T.adjoint();
        return out;
    }
    if (auto s = std::dynamic_pointer_cast<const SectorEndo>(Y)) {
        Expr out;
        for (const auto& p : s->parts()) out += p.T * eps(X, p.endo) * X->apply(p.T.adjoint());
        return out;
    }
    auto a = std::dynamic_pointer_cast<const PairEndo>(X), b = std::dynamic_pointer_cast<const PairEndo>(Y);
    if (!a || !b) throw Error("oracle: cannot braid " + X->name() + " with " + Y->name());
    return chiral(a->left(), b->left()) * chiral(b->right(), a->right()).adjoint().primed();
}

// ---------------------------------------------------------------- extensions

Scalar QContext::dim() const
{
    auto d = (w.adjoint() * w).as_scalar();
    if (!d) throw Error("oracle: w*w is not a scalar in context " + name);
    return *d;
}

Expr QContext::cond_expect(const Expr& a) const
{
    return (theta->apply_after(w.adjoint(), a) * xw()).scaled(dim().inverse());
}

const Expr& QContext::xw() const
{
    if (!xw_) xw_ = x * w;
    return *xw_;
}

} // namespace qbound::oracle
