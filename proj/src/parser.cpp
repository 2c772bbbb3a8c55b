#include "monoval/parser.hpp"
#include <cctype>
#include <functional>

namespace monoval {

namespace {

struct Token {
    enum class T { num, ident, op, end } type;
    std::string text;
    int line, column;
};

std::vector<Token> lex(const std::string& s, int line, int column) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++column;
            continue;
        }
        int col = column;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::T::num, s.substr(i, j - i), line, col});
            column += static_cast<int>(j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::T::ident, s.substr(i, j - i), line, col});
            column += static_cast<int>(j - i);
            i = j;
        } else if (std::string("+-*/^()").find(c) != std::string::npos) {
            out.push_back({Token::T::op, std::string(1, c), line, col});
            ++i;
            ++column;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Token::T::end, "", line, column});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> t, const ExprOptions& o) : toks_(std::move(t)), opt_(o) {}

    Expr parse() {
        Expr e = expr();
        if (peek().type != Token::T::end) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool is_op(const char* s) const { return peek().type == Token::T::op && peek().text == s; }
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, peek().line, peek().column); }
    void expect(const char* s) {
        if (!is_op(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }

    Expr node(ExprNode::Kind k, std::vector<Expr> args, const Token& at) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->args = std::move(args);
        n->line = at.line;
        n->column = at.column;
        return n;
    }

    Expr expr() {
        Expr a = term();
        while (is_op("+") || is_op("-")) {
            Token t = peek();
            ++pos_;
            Expr b = term();
            a = node(t.text == "+" ? ExprNode::Kind::add : ExprNode::Kind::sub, {a, b}, t);
        }
        return a;
    }

    Expr term() {
        Expr a = unary();
        while (is_op("*") || is_op("/")) {
            Token t = peek();
            ++pos_;
            Expr b = unary();
            a = node(t.text == "*" ? ExprNode::Kind::mul : ExprNode::Kind::div, {a, b}, t);
        }
        return a;
    }

    Expr unary() {
        if (is_op("-")) {
            Token t = peek();
            ++pos_;
            return node(ExprNode::Kind::neg, {unary()}, t);
        }
        if (is_op("+")) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Rational integer() {
        if (peek().type != Token::T::num) fail("expected an integer");
        Rational r(mpz_class(peek().text));
        ++pos_;
        return r;
    }

    Expr power() {
        Expr a = atom();
        if (!is_op("^")) return a;
        Token t = peek();
        ++pos_;
        Rational e;
        Token at = peek();
        if (is_op("(")) {
            ++pos_;
            bool neg = false;
            if (is_op("-")) {
                neg = true;
                ++pos_;
            }
            e = integer();
            if (is_op("/")) {
                ++pos_;
                Rational d = integer();
                if (d.is_zero()) fail("zero denominator in exponent");
                e /= d;
            }
            expect(")");
            if (neg) e = -e;
        } else if (is_op("-")) {
            ++pos_;
            e = -integer();
        } else {
            e = integer();
        }
        if (!e.is_integer() && !opt_.fractional_exponents)
            throw ParseError("fractional exponents are not allowed in inputs", at.line, at.column);
        if (e.sign() < 0 && !opt_.negative_exponents)
            throw ParseError("negative exponents are not allowed here", at.line, at.column);
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::pow;
        n->args = {a};
        n->value = e;
        n->line = t.line;
        n->column = t.column;
        return n;
    }

    Expr atom() {
        const Token& t = peek();
        if (t.type == Token::T::num) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::number;
            n->value = Rational(mpz_class(t.text));
            n->line = t.line;
            n->column = t.column;
            ++pos_;
            return n;
        }
        if (t.type == Token::T::ident) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::symbol;
            n->name = t.text;
            n->line = t.line;
            n->column = t.column;
            ++pos_;
            return n;
        }
        if (is_op("(")) {
            ++pos_;
            Expr e = expr();
            expect(")");
            return e;
        }
        fail(t.type == Token::T::end ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ExprOptions opt_;
};

std::size_t var_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') return 0;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
    if (name[1] == '0') return 0;
    return std::stoul(name.substr(1));
}

[[noreturn]] void fail_at(const ExprNode& n, const std::string& m) { throw ParseError(m, n.line, n.column); }

} // namespace

Expr parse_expr(const std::string& text, const ExprOptions& opt, int line, int column) {
    return Parser(lex(text, line, column), opt).parse();
}

std::size_t max_variable_index(const Expr& e) {
    std::size_t m = e->kind == ExprNode::Kind::symbol ? var_index(e->name) : 0;
    for (auto& a : e->args) m = std::max(m, max_variable_index(a));
    return m;
}

SparsePoly to_sparse(const Expr& e, std::size_t nvars, bool allow_z, const ExprOptions& opt) {
    std::size_t total = nvars + (allow_z ? 1 : 0);
    std::function<SparsePoly(const ExprNode&)> ev = [&](const ExprNode& n) -> SparsePoly {
        switch (n.kind) {
        case ExprNode::Kind::number: return SparsePoly(total, n.value);
        case ExprNode::Kind::symbol: {
            if (allow_z && n.name == "Z") return SparsePoly::variable(total, nvars);
            std::size_t k = var_index(n.name);
            if (k == 0 || k > nvars) fail_at(n, "unknown variable '" + n.name + "'");
            return SparsePoly::variable(total, k - 1);
        }
        case ExprNode::Kind::add: return ev(*n.args[0]) + ev(*n.args[1]);
        case ExprNode::Kind::sub: return ev(*n.args[0]) - ev(*n.args[1]);
        case ExprNode::Kind::mul: return ev(*n.args[0]) * ev(*n.args[1]);
        case ExprNode::Kind::neg: return -ev(*n.args[0]);
        case ExprNode::Kind::div: {
            SparsePoly a = ev(*n.args[0]), b = ev(*n.args[1]);
            if (b.is_zero()) fail_at(n, "division by zero");
            if (b.size() == 1 && (b.is_constant() || opt.negative_exponents || opt.general_division)) {
                auto q = SparsePoly::exact_div(a, b);
                if (!opt.negative_exponents && !q->is_polynomial()) fail_at(n, "division leaves negative exponents");
                return *q;
            }
            if (opt.general_division)
                if (auto q = SparsePoly::exact_div(a, b)) return *q;
            fail_at(n, "division by a non-constant is not allowed here");
        }
        case ExprNode::Kind::pow: {
            SparsePoly a = ev(*n.args[0]);
            if (n.value.is_integer() && n.value.sign() >= 0) return a.pow(static_cast<unsigned>(n.value.to_long()));
            if (a.size() != 1) fail_at(n, "non-integer or negative powers apply only to monomials");
            auto& [ex, c] = *a.terms().begin();
            if (!c.is_one()) {
                if (!n.value.is_integer()) fail_at(n, "fractional power of a non-unit coefficient");
                return SparsePoly::monomial(ex.scaled(n.value), c.pow(n.value.to_long()));
            }
            return SparsePoly::monomial(ex.scaled(n.value));
        }
        }
        fail_at(n, "bad expression");
    };
    return ev(*e);
}

SparsePoly parse_sparse(const std::string& text, std::size_t nvars, bool allow_z, const ExprOptions& opt) {
    return to_sparse(parse_expr(text, opt), nvars, allow_z, opt);
}

TowerElem to_tower_elem(const Expr& e, const TowerPtr& t) {
    std::size_t nv = t->nvars();
    std::function<TowerElem(const ExprNode&)> ev = [&](const ExprNode& n) -> TowerElem {
        switch (n.kind) {
        case ExprNode::Kind::number: return TowerElem(t, n.value);
        case ExprNode::Kind::symbol: {
            int lvl = t->find(n.name);
            if (lvl >= 0) return TowerElem::generator(t, static_cast<std::size_t>(lvl));
            std::size_t k = var_index(n.name);
            if (k == 0 || k > nv) fail_at(n, "unknown symbol '" + n.name + "'");
            return TowerElem(t, RatFunc(SparsePoly::variable(nv, k - 1)));
        }
        case ExprNode::Kind::add: return ev(*n.args[0]) + ev(*n.args[1]);
        case ExprNode::Kind::sub: return ev(*n.args[0]) - ev(*n.args[1]);
        case ExprNode::Kind::mul: return ev(*n.args[0]) * ev(*n.args[1]);
        case ExprNode::Kind::neg: return -ev(*n.args[0]);
        case ExprNode::Kind::div: return ev(*n.args[0]) / ev(*n.args[1]);
        case ExprNode::Kind::pow: {
            if (n.value.is_integer()) return ev(*n.args[0]).pow(n.value.to_long());
            const ExprNode& b = *n.args[0];
            std::size_t k = b.kind == ExprNode::Kind::symbol ? var_index(b.name) : 0;
            if (k == 0 || k > nv) fail_at(n, "fractional powers apply only to variables");
            return TowerElem(t, RatFunc(SparsePoly::monomial(Exponent::unit(nv, k - 1).scaled(n.value))));
        }
        }
        fail_at(n, "bad expression");
    };
    return ev(*e);
}

TowerElem parse_tower_elem(const std::string& text, const TowerPtr& t) {
    ExprOptions o{true, true, true};
    return to_tower_elem(parse_expr(text, o), t);
}

UniPoly<TowerElem> parse_tower_poly(const std::string& text, const TowerPtr& t) {
    ExprOptions o{true, true, true};
    return to_tower_poly(parse_expr(text, o), t);
}

UniPoly<TowerElem> to_tower_poly(const Expr& e, const TowerPtr& t) {
    // evaluate as a polynomial in Z by treating Z through a dedicated recursion
    std::function<UniPoly<TowerElem>(const ExprNode&)> ev = [&](const ExprNode& n) -> UniPoly<TowerElem> {
        TowerElem zero(t, Rational(0));
        switch (n.kind) {
        case ExprNode::Kind::symbol:
            if (n.name == "Z") return UniPoly<TowerElem>::monomial(TowerElem(t, Rational(1)), 1);
            [[fallthrough]];
        case ExprNode::Kind::number: return UniPoly<TowerElem>::constant(to_tower_elem(std::make_shared<ExprNode>(n), t));
        case ExprNode::Kind::add: return ev(*n.args[0]) + ev(*n.args[1]);
        case ExprNode::Kind::sub: return ev(*n.args[0]) - ev(*n.args[1]);
        case ExprNode::Kind::mul: return ev(*n.args[0]) * ev(*n.args[1]);
        case ExprNode::Kind::neg: return -ev(*n.args[0]);
        case ExprNode::Kind::div: {
            UniPoly<TowerElem> d = ev(*n.args[1]);
            if (d.degree() != 0) fail_at(n, "division by a polynomial in Z");
            return ev(*n.args[0]).scaled(d[0].inverse());
        }
        case ExprNode::Kind::pow: {
            UniPoly<TowerElem> b = ev(*n.args[0]);
            if (b.degree() <= 0) {
                TowerElem c = to_tower_elem(std::make_shared<ExprNode>(n), t);
                return UniPoly<TowerElem>::constant(c);
            }
            if (!n.value.is_integer() || n.value.sign() < 0) fail_at(n, "Z powers must be nonnegative integers");
            return b.pow(static_cast<unsigned>(n.value.to_long()), zero);
        }
        }
        fail_at(n, "bad expression");
    };
    return ev(*e);
}

} // namespace monoval
