#pragma once

#include "qbound/oracle/field.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qbound::oracle {

/// Reduced word in two commuting copies of the Cuntz algebra O₂ = C*(r, t).
/// Letters are 'r', 't' and their adjoints 'R', 'T'; `l` lives in the first
/// copy and `r` in the second, so a word is the tensor pair l⊗r. A reduced
/// chiral word has no adjacent s_i* s_j, i.e. it reads s_μ s_ν*.
struct Word {
    std::string l, r;
    auto operator<=>(const Word&) const = default;
};

/// Appends a letter to a reduced chiral word; returns false when the result
/// is zero (s_i* s_j with i ≠ j).
bool append_letter(std::string& w, char c);
/// Reduces an arbitrary letter string; nullopt for zero.
std::optional<std::string> reduce_word(const std::string& letters);
std::string adjoint_word(const std::string& w);

/// Finite linear combination of reduced words with exact coefficients. Every
/// operation returns a canonical form (reduced words, no zero coefficients).
/// The completeness relation rr* + tt* = 1 is not a rewrite rule; see
/// `resolved` for equality decisions.
class Expr {
public:
    using Terms = std::map<Word, Scalar>;

    Expr() = default;
    Expr(const Scalar& s);
    Expr(long n) : Expr(Scalar(n)) {}
    static Expr word(Word w, Scalar c = 1);
    /// Generator 'r'/'t' of the first (copy 0) or second (copy 1) chiral copy.
    static Expr gen(char g, int copy = 0);

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// The coefficient when the expression is a multiple of 1.
    std::optional<Scalar> as_scalar() const;
    /// True when no letter of the second copy occurs.
    bool is_chiral() const;

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator-() const;
    Expr operator*(const Expr& o) const;
    Expr& operator+=(const Expr& o);
    Expr& add(const Word& w, const Scalar& c);
    Expr scaled(const Scalar& s) const;
    Expr adjoint() const;
    /// Moves a chiral expression into the second copy.
    Expr primed() const;
    /// Numeric value of the coefficients (for diagnostics).
    std::string str(std::size_t maxTerms = 12) const;

private:
    Terms terms_;
};

/// Replaces s_μ (rr* + tt*) s_ν* by s_μ s_ν* wherever both terms carry the
/// same coefficient. Sound in O₂ ⊗ O₂ and keeps intermediate results short.
Expr contract(const Expr& e);

/// Rewrites every word into the s_μ s_ν* basis at a common level per
/// gauge-degree class, inserting rr* + tt* = 1 at most `depth` times per
/// word; in that basis Cuntz monomials are linearly independent, so the
/// result is zero exactly when the expression vanishes in O₂ ⊗ O₂. Throws
/// ResolutionDepthExceeded when a larger depth would be required.
Expr resolved(const Expr& e, int depth);
/// Resolves a family of expressions to common levels.
std::vector<Expr> resolved_jointly(const std::vector<Expr>& es, int depth);

struct ResolutionDepthExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact equality in O₂ ⊗ O₂ with identity resolution depth `depth`.
bool equal(const Expr& a, const Expr& b, int depth, Expr* residual = nullptr);

/// Solves target = Σ c_k basis_k exactly; nullopt when not in the span.
std::optional<std::vector<Scalar>> decompose(const Expr& target, const std::vector<Expr>& basis, int depth);

// ---------------------------------------------------------------- endomorphisms

/// *-endomorphism of O₂ given by the images of r and t (chiral, first copy).
class ChiralMap {
public:
    ChiralMap(std::string name, Expr imageR, Expr imageT);
    const std::string& name() const { return name_; }
    /// Image of a reduced chiral word (result in the first copy).
    const Expr& apply_word(const std::string& w) const;

private:
    std::string name_;
    Expr img_[4]; // r, t, r*, t*
    mutable std::unordered_map<std::string, Expr> memo_;
};
using ChiralMapPtr = std::shared_ptr<const ChiralMap>;

class Endo;
using EndoPtr = std::shared_ptr<const Endo>;

/// Endomorphism of O₂ ⊗ O₂, extended linearly from its values on words.
/// Word images are memoized, so repeated applications cost one lookup per
/// word; instances belong to one thread.
class Endo {
public:
    virtual ~Endo() = default;
    Expr apply(const Expr& e) const;
    /// pre·φ(e), multiplied in one letter at a time so that annihilation by
    /// `pre` happens before the images of long words are ever formed.
    Expr apply_after(const Expr& pre, const Expr& e) const;
    const Expr& apply_word(const Word& w) const;
    virtual std::string name() const = 0;

protected:
    virtual Expr compute(const Word& w) const = 0;

private:
    mutable std::map<Word, Expr> memo_;
};

/// φ₁ ⊗ φ₂ acting componentwise; null means the identity.
class PairEndo : public Endo {
public:
    PairEndo(ChiralMapPtr left, ChiralMapPtr right) : left_(std::move(left)), right_(std::move(right)) {}
    std::string name() const override;
    const ChiralMapPtr& left() const { return left_; }
    const ChiralMapPtr& right() const { return right_; }

protected:
    Expr compute(const Word& w) const override;

private:
    ChiralMapPtr left_, right_;
};

/// θ(a) = Σ_i T_i ρ_i(a) T_i* for a Cuntz family T_i.
class SectorEndo : public Endo {
public:
    struct Part {
        EndoPtr endo;
        Expr T;
    };
    SectorEndo(std::string name, std::vector<Part> parts) : name_(std::move(name)), parts_(std::move(parts)) {}
    std::string name() const override { return name_; }
    const std::vector<Part>& parts() const { return parts_; }

protected:
    Expr compute(const Word& w) const override;

private:
    std::string name_;
    std::vector<Part> parts_;
};

/// φ₁∘φ₂∘...: the last factor acts first.
class CompositeEndo : public Endo {
public:
    CompositeEndo(std::string name, std::vector<EndoPtr> factors) : name_(std::move(name)), factors_(std::move(factors)) {}
    std::string name() const override { return name_; }
    const std::vector<EndoPtr>& factors() const { return factors_; }

protected:
    Expr compute(const Word& w) const override;

private:
    std::string name_;
    std::vector<EndoPtr> factors_;
};

/// Chiral braiding operators ε⁺_{ρ,σ} between named chiral maps; the
/// identity braids trivially. Two-dimensional and reducible braidings
/// are derived: ε_{ρ⊗ρ', σ⊗σ'} = ε_{ρ,σ} ⊗ ε_{σ',ρ'}*,
/// ε_{θ,φ} = Σ_i φ(T_i) ε_{ρ_i,φ} T_i*, ε_{θ,φ} = Σ_j S_j ε_{θ,σ_j} θ(S_j*),
/// ε_{ρσ,φ} = ε_{ρ,φ} ρ(ε_{σ,φ}) and ε_{ρ,φσ} = φ(ε_{ρ,σ}) ε_{ρ,φ}.
class BraidTable {
public:
    void set(const std::string& a, const std::string& b, Expr eps) { table_[{a, b}] = std::move(eps); }
    /// ε⁺_{X,Y}; sign = -1 gives ε⁻_{X,Y} = (ε⁺_{Y,X})*.
    Expr eps(const EndoPtr& X, const EndoPtr& Y, int sign = +1) const;

private:
    Expr chiral(const ChiralMapPtr& a, const ChiralMapPtr& b) const;
    std::map<std::pair<std::string, std::string>, Expr> table_;
};

// ---------------------------------------------------------------- extensions

/// Q-system (θ, w, x) of endomorphisms; an extension element ι(a)v is
/// represented by its coefficient a.
struct QContext {
    std::string name;
    EndoPtr theta;
    Expr w, x;

    /// (ι(a)v)(ι(b)v) = ι(a θ(b) x)v.
    Expr mul(const Expr& a, const Expr& b) const { return theta->apply_after(a, b) * x; }
    /// (ι(a)v)* = ι(w* x* θ(a*))v.
    Expr star(const Expr& a) const { return theta->apply_after(xw().adjoint(), a.adjoint()); }
    /// ι(a) = ι(a w*)v.
    Expr obs(const Expr& a) const { return a * w.adjoint(); }
    /// d = w*w.
    Scalar dim() const;
    /// μ(ι(a)v) = d⁻¹ w* θ(a) x w, an element of the observable algebra.
    Expr cond_expect(const Expr& a) const;

private:
    /// x w, cached: multiplying by it first keeps products short.
    const Expr& xw() const;
    mutable std::optional<Expr> xw_;
};

} // namespace qbound::oracle
