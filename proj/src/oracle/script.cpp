#include "qbound/oracle/script.hpp"

#include "qbound/common.hpp"

#include <cctype>
#include <chrono>
#include <sstream>

namespace qbound::oracle {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Splits at `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

/// Position of `token` outside parentheses, or npos.
std::size_t find_top(const std::string& s, const std::string& token)
{
    int depth = 0;
    for (std::size_t k = 0; k + token.size() <= s.size(); ++k) {
        if (s[k] == '(') ++depth;
        if (s[k] == ')') --depth;
        if (depth == 0 && s.compare(k, token.size(), token) == 0) return k;
    }
    return std::string::npos;
}

bool is_ident(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    return true;
}

struct Token {
    enum Kind { Ident, Number, Sym, End } kind;
    std::string text;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        const char c = s[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++k;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t e = k;
            while (e < s.size() && (std::isalnum(static_cast<unsigned char>(s[e])) || s[e] == '_')) ++e;
            while (e < s.size() && s[e] == '\'') ++e;
            out.push_back({Token::Ident, s.substr(k, e - k)});
            k = e;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t e = k;
            while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
            out.push_back({Token::Number, s.substr(k, e - k)});
            k = e;
        } else if (std::string("()*&+-/^.,").find(c) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, c)});
            ++k;
        } else {
            throw Error(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::End, ""});
    return out;
}

} // namespace

/// Recursive-descent evaluator for one expression.
class Parser {
public:
    Parser(const Interpreter& in, const std::string& text) : in_(in), toks_(lex(text)) {}

    Expr parse_all()
    {
        Expr e = sum();
        if (peek().kind != Token::End) throw Error("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool sym(const char* s)
    {
        if (peek().kind == Token::Sym && peek().text == s) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const char* s)
    {
        if (!sym(s)) throw Error(std::string("expected '") + s + "'");
    }
    std::string ident()
    {
        if (peek().kind != Token::Ident) throw Error("expected a name");
        return toks_[pos_++].text;
    }

    Expr sum()
    {
        Expr e = tensor();
        for (;;) {
            if (sym("+")) e += tensor();
            else if (sym("-")) e += -tensor();
            else return e;
        }
    }

    Expr tensor()
    {
        Expr e = product();
        while (sym("&")) {
            const Expr b = product();
            if (!e.is_chiral() || !b.is_chiral()) throw Error("& expects first-copy operands");
            e = e * b.primed();
        }
        return e;
    }

    bool starts_factor() const
    {
        const auto& t = peek();
        return t.kind == Token::Ident || t.kind == Token::Number || (t.kind == Token::Sym && t.text == "(");
    }

    Expr product()
    {
        if (sym("-")) return -product();
        Expr e = power();
        for (;;) {
            if (sym("/")) {
                const auto s = power().as_scalar();
                if (!s) throw Error("division by a non-scalar");
                e = e.scaled(s->inverse());
            } else if (starts_factor()) {
                e = e * power();
            } else {
                return e;
            }
        }
    }

    Expr power()
    {
        Expr e = primary();
        for (;;) {
            if (sym("*")) {
                e = e.adjoint();
            } else if (sym("^")) {
                const bool neg = sym("-");
                if (peek().kind != Token::Number) throw Error("expected an integer exponent");
                const long n = std::stol(toks_[pos_++].text);
                Expr base = e;
                if (neg) {
                    const auto s = e.as_scalar();
                    if (!s || s->is_zero()) throw Error("negative power of a non-scalar");
                    base = Expr(s->inverse());
                }
                e = Expr(1);
                for (long k = 0; k < n; ++k) e = e * base;
            } else {
                return e;
            }
        }
    }

    std::vector<Expr> args()
    {
        std::vector<Expr> out;
        expect("(");
        if (sym(")")) return out;
        do out.push_back(sum());
        while (sym(","));
        expect(")");
        return out;
    }

    Expr one_arg(const std::string& f)
    {
        auto a = args();
        if (a.size() != 1) throw Error(f + " takes one argument");
        return a[0];
    }

    Expr primary()
    {
        if (sym("(")) {
            Expr e = sum();
            expect(")");
            return e;
        }
        if (peek().kind == Token::Number) return Expr(std::stol(toks_[pos_++].text));
        const std::string name = ident();
        // a call only when the name is a function; otherwise "T (a)" multiplies
        if (peek().kind == Token::Sym && peek().text == "(" && is_function(name)) return call(name);
        if (sym(".")) return method(name);
        if (name == "r" || name == "t") return Expr::gen(name[0], 0);
        if (name == "r'" || name == "t'") return Expr::gen(name[0], 1);
        if (name == "sqrt2") return Expr(Scalar::sqrt2());
        if (name == "i") return Expr(Scalar::i());
        if (name == "zeta") return Expr(Scalar::zeta(1));
        if (name == "q") return Expr(Scalar::q());
        if (name == "sqrti") return Expr(Scalar::zeta(2));
        if (name == "sqrtmi") return Expr(Scalar::zeta(-2));
        return in_.value(name);
    }

    bool is_function(const std::string& f) const
    {
        return f == "prime" || f == "eps" || f == "epsm" || in_.endos_.count(f);
    }

    Expr call(const std::string& f)
    {
        if (f == "prime") return one_arg(f).primed();
        if (f == "eps" || f == "epsm") {
            expect("(");
            const std::string a = ident();
            expect(",");
            const std::string b = ident();
            expect(")");
            return in_.braid_.eps(in_.endo(a), in_.endo(b), f == "eps" ? +1 : -1);
        }
        return in_.endo(f)->apply(one_arg(f));
    }

    Expr method(const std::string& ctxName)
    {
        const QContext& A = in_.context(ctxName);
        const std::string m = ident();
        if (m == "unit") return A.w.adjoint();
        if (m == "mul") {
            auto a = args();
            if (a.empty()) throw Error("mul needs arguments");
            Expr e = a[0];
            for (std::size_t k = 1; k < a.size(); ++k) e = A.mul(e, a[k]);
            return e;
        }
        if (m == "star") return A.star(one_arg(m));
        if (m == "obs") return A.obs(one_arg(m));
        if (m == "E") return A.cond_expect(one_arg(m));
        throw Error("unknown Q-system operation '" + m + "'");
    }

    const Interpreter& in_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

Interpreter::Interpreter() = default;

const Expr& Interpreter::value(const std::string& name) const
{
    auto it = vars_.find(name);
    if (it == vars_.end()) throw Error("undefined name '" + name + "'");
    return it->second;
}

const QContext& Interpreter::context(const std::string& name) const
{
    auto it = contexts_.find(name);
    if (it == contexts_.end()) throw Error("undefined Q-system '" + name + "'");
    return it->second;
}

EndoPtr Interpreter::endo(const std::string& name) const
{
    auto it = endos_.find(name);
    if (it == endos_.end()) throw Error("undefined endomorphism '" + name + "'");
    return it->second;
}

namespace {

Expr eval(const Interpreter& in, const std::string& text) { return Parser(in, text).parse_all(); }

std::string first_word(const std::string& s, std::string& rest)
{
    const auto sp = s.find_first_of(" \t");
    if (sp == std::string::npos) {
        rest.clear();
        return s;
    }
    rest = trim(s.substr(sp));
    return s.substr(0, sp);
}

} // namespace

void Interpreter::statement(const std::string& line, int lineNo, SuiteReport& rep)
{
    std::string rest;
    const std::string kw = first_word(line, rest);
    auto need_ident = [](const std::string& s) {
        if (!is_ident(s)) throw Error("invalid name '" + s + "'");
        return s;
    };
    auto chiral_of = [this](const std::string& s) -> ChiralMapPtr {
        if (s == "id") return nullptr;
        auto it = chiral_.find(s);
        if (it == chiral_.end()) throw Error("undefined chiral map '" + s + "'");
        return it->second;
    };

    if (kw == "suite") {
        rep.suite = rest;
    } else if (kw == "resolve") {
        depth_ = std::stoi(rest);
        if (depth_ < 0) throw Error("resolve expects a nonnegative depth");
    } else if (kw == "echo") {
        rep.log.push_back(rest);
    } else if (kw == "let") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw Error("let NAME = EXPR");
        vars_[need_ident(trim(rest.substr(0, eq)))] = eval(*this, rest.substr(eq + 1));
    } else if (kw == "endo") {
        const auto colon = rest.find(':'), eq = rest.find('=');
        if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
            const std::string name = need_ident(trim(rest.substr(0, colon)));
            std::map<std::string, Expr> img;
            for (const auto& part : split_top(rest.substr(colon + 1), ',')) {
                const auto arrow = part.find("->");
                if (arrow == std::string::npos) throw Error("expected 'g -> EXPR'");
                img[trim(part.substr(0, arrow))] = eval(*this, part.substr(arrow + 2));
            }
            if (img.size() != 2 || !img.count("r") || !img.count("t")) throw Error("chiral map needs images of r and t");
            auto m = std::make_shared<ChiralMap>(name, img["r"], img["t"]);
            chiral_[name] = m;
            endos_[name] = std::make_shared<PairEndo>(m, nullptr);
        } else if (eq != std::string::npos) {
            const std::string name = need_ident(trim(rest.substr(0, eq)));
            std::istringstream is(rest.substr(eq + 1));
            std::vector<std::string> words;
            for (std::string w; is >> w;) words.push_back(w);
            if (words.size() == 3 && words[1] == "x") {
                endos_[name] = std::make_shared<PairEndo>(chiral_of(words[0]), chiral_of(words[2]));
            } else if (words.size() >= 3 && words.size() % 2 == 1) {
                std::vector<EndoPtr> f;
                for (std::size_t k = 0; k < words.size(); k += 2) {
                    if (k + 1 < words.size() && words[k + 1] != "o") throw Error("expected 'A o B o ...'");
                    f.push_back(endo(words[k]));
                }
                endos_[name] = std::make_shared<CompositeEndo>(name, std::move(f));
            } else {
                throw Error("expected 'A x B' or 'A o B'");
            }
        } else {
            throw Error("endo NAME: r -> EXPR, t -> EXPR | endo NAME = A x B | endo NAME = A o B");
        }
    } else if (kw == "sector") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw Error("sector NAME = E @ T, ...");
        const std::string name = need_ident(trim(rest.substr(0, eq)));
        std::vector<SectorEndo::Part> parts;
        for (const auto& part : split_top(rest.substr(eq + 1), ',')) {
            const auto at = part.find('@');
            if (at == std::string::npos) throw Error("expected 'E @ T'");
            parts.push_back({endo(trim(part.substr(0, at))), eval(*this, part.substr(at + 1))});
        }
        endos_[name] = std::make_shared<SectorEndo>(name, std::move(parts));
    } else if (kw == "braid") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw Error("braid A, B = EXPR");
        const auto names = split_top(rest.substr(0, eq), ',');
        if (names.size() != 2) throw Error("braid A, B = EXPR");
        chiral_of(names[0]);
        chiral_of(names[1]);
        braid_.set(names[0], names[1], eval(*this, rest.substr(eq + 1)));
    } else if (kw == "qsystem") {
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw Error("qsystem NAME: theta = E, w = EXPR, x = EXPR");
        QContext q;
        q.name = need_ident(trim(rest.substr(0, colon)));
        bool haveW = false, haveX = false;
        for (const auto& part : split_top(rest.substr(colon + 1), ',')) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw Error("expected 'key = value'");
            const std::string key = trim(part.substr(0, eq)), val = trim(part.substr(eq + 1));
            if (key == "theta") q.theta = endo(val);
            else if (key == "w") q.w = eval(*this, val), haveW = true;
            else if (key == "x") q.x = eval(*this, val), haveX = true;
            else throw Error("unknown Q-system field '" + key + "'");
        }
        if (!q.theta || !haveW || !haveX) throw Error("Q-system needs theta, w and x");
        contexts_[q.name] = std::move(q);
    } else if (kw == "check") {
        std::string body = rest, var;
        std::vector<std::string> values;
        if (const auto f = find_top(body, " for "); f != std::string::npos) {
            std::string loop = trim(body.substr(f + 5));
            body = trim(body.substr(0, f));
            const auto in = loop.find(" in ");
            if (in == std::string::npos) throw Error("expected 'for v in EXPR, ...'");
            var = need_ident(trim(loop.substr(0, in)));
            values = split_top(loop.substr(in + 4), ',');
        }
        bool negate = false;
        auto op = find_top(body, "==");
        if (op == std::string::npos) {
            op = find_top(body, "!=");
            negate = true;
        }
        if (op == std::string::npos) throw Error("check needs '==' or '!='");
        const std::string lhs = body.substr(0, op), rhs = body.substr(op + 2);
        if (values.empty()) values.push_back("");
        const bool hadVar = !var.empty() && vars_.count(var);
        const Expr saved = hadVar ? vars_[var] : Expr();
        for (const auto& v : values) {
            std::string label = "line " + std::to_string(lineNo) + ": " + trim(body);
            if (!var.empty()) {
                vars_[var] = eval(*this, v);
                label += " [" + var + " = " + v + "]";
            }
            try {
                Expr residual;
                const bool eq = equal(eval(*this, lhs), eval(*this, rhs), depth_, &residual);
                if (eq != negate) {
                    ++rep.passed;
                } else {
                    ++rep.failed;
                    rep.failures.push_back(label + (negate ? ": sides are equal" : ": residual " + residual.str()));
                }
            } catch (const ResolutionDepthExceeded& e) {
                ++rep.failed;
                rep.failures.push_back(label + ": " + e.what());
            }
        }
        if (!var.empty()) {
            if (hadVar) vars_[var] = saved;
            else vars_.erase(var);
        }
    } else {
        throw Error("unknown statement '" + kw + "'");
    }
}

SuiteReport Interpreter::run(const std::string& text, const std::string& defaultName)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = defaultName;
    std::istringstream is(text);
    int lineNo = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineNo;
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            statement(line, lineNo, rep);
            if (trace_)
                *trace_ << "[" << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "s] "
                        << lineNo << ": " << line << "\n";
        } catch (const ResolutionDepthExceeded& e) {
            throw Error(rep.suite + ": line " + std::to_string(lineNo) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(rep.suite + ": line " + std::to_string(lineNo) + ": " + e.what());
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace qbound::oracle
