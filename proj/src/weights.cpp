#include "monoval/weights.hpp"
#include "monoval/error.hpp"
#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace monoval {

// ---- GradeValue -------------------------------------------------------------

bool GradeValue::is_zero() const {
    for (auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

bool GradeValue::is_rational() const {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!c[i].is_zero()) return false;
    return true;
}

GradeValue GradeValue::operator+(const GradeValue& o) const {
    if (c.size() != o.c.size()) throw DomainError("grade values over different bases");
    GradeValue r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

GradeValue GradeValue::operator-() const {
    GradeValue r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

GradeValue GradeValue::operator-(const GradeValue& o) const { return *this + (-o); }

GradeValue GradeValue::operator*(const Rational& k) const {
    GradeValue r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

// ---- enclosures -------------------------------------------------------------

namespace {

Rational eval_poly(const std::vector<Rational>& p, const Rational& x) {
    Rational r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

Rational two_pow_neg(int bits) { return Rational(mpz_class(1), mpz_class(1) << bits); }

std::pair<Rational, Rational> refine(const BasisSymbol& s, Rational lo, Rational hi, int bits) {
    if (lo == hi || s.defining.empty()) return {lo, hi};
    Rational width = two_pow_neg(bits);
    int slo = eval_poly(s.defining, lo).sign();
    while (hi - lo > width) {
        Rational mid = (lo + hi) / Rational(2);
        int sm = eval_poly(s.defining, mid).sign();
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

} // namespace

Weights::Weights(std::vector<BasisSymbol> basis, std::vector<GradeValue> rows) : basis_(std::move(basis)), rows_(std::move(rows)) {
    if (basis_.empty() || basis_[0].name != "1" || basis_[0].lo != Rational(1) || basis_[0].hi != Rational(1))
        throw DomainError("weight basis must start with the exact symbol 1");
    for (auto& s : basis_) {
        if (s.hi < s.lo) throw DomainError("empty enclosure for " + s.name);
        if (!s.defining.empty() && s.lo != s.hi) {
            int a = eval_poly(s.defining, s.lo).sign(), b = eval_poly(s.defining, s.hi).sign();
            if (a * b >= 0 && a != 0 && b != 0)
                throw DomainError("enclosure of " + s.name + " does not isolate a root of its defining polynomial");
            if (a == 0) s.hi = s.lo;
            if (b == 0) s.lo = s.hi;
        }
        cache_.push_back(refine(s, s.lo, s.hi, 96));
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != basis_.size()) throw DomainError("weight row has wrong length");
        if (rows_[i].is_zero()) throw DomainError("weight a" + std::to_string(i + 1) + " is zero");
        if (sign(rows_[i]) <= 0) throw DomainError("weight a" + std::to_string(i + 1) + " is not positive");
    }
    std::vector<std::vector<Rational>> m;
    for (auto& r : rows_) m.push_back(r.c);
    rank_ = rational_rank(m);
}

WeightsPtr Weights::rational(const std::vector<Rational>& alpha) {
    std::vector<GradeValue> rows;
    for (auto& a : alpha) rows.push_back(GradeValue(std::vector<Rational>{a}));
    return std::make_shared<const Weights>(std::vector<BasisSymbol>{{"1", Rational(1), Rational(1), {}}}, rows);
}

WeightsPtr Weights::ones(std::size_t n) { return rational(std::vector<Rational>(n, Rational(1))); }

bool Weights::all_rational() const {
    for (auto& r : rows_)
        if (!r.is_rational()) return false;
    return true;
}

GradeValue Weights::constant(const Rational& r) const {
    GradeValue g(basis_.size());
    g.c[0] = r;
    return g;
}

GradeValue Weights::degree(const Exponent& e) const {
    if (e.size() != rows_.size()) throw DomainError("exponent length does not match the weights");
    GradeValue g(basis_.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e.numerators()[i] == 0) continue;
        Rational k = e[i];
        for (std::size_t j = 0; j < g.c.size(); ++j)
            if (!rows_[i].c[j].is_zero()) g.c[j] += rows_[i].c[j] * k;
    }
    return g;
}

std::pair<Rational, Rational> Weights::enclose(const GradeValue& a, int bits) const {
    Rational lo(0), hi(0);
    for (std::size_t j = 0; j < a.c.size(); ++j) {
        const Rational& k = a.c[j];
        if (k.is_zero()) continue;
        auto [l, h] = bits <= 96 ? cache_[j] : refine(basis_[j], cache_[j].first, cache_[j].second, bits);
        if (k.sign() > 0) {
            lo += k * l;
            hi += k * h;
        } else {
            lo += k * h;
            hi += k * l;
        }
    }
    return {lo, hi};
}

int Weights::sign(const GradeValue& a) const {
    if (a.is_zero()) return 0;
    if (a.is_rational()) return a.c[0].sign();
    for (int bits = 96; bits <= 1536; bits *= 2) {
        auto [lo, hi] = enclose(a, bits);
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
    }
    throw DomainError("cannot separate " + format(a) + " from 0; check the basis declaration");
}

int Weights::compare(const GradeValue& a, const GradeValue& b) const {
    if (a == b) return 0;
    return sign(a - b);
}

double Weights::approx(const GradeValue& a) const {
    auto [lo, hi] = enclose(a);
    return ((lo + hi) / Rational(2)).to_double();
}

std::string Weights::format(const GradeValue& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < a.c.size(); ++j) {
        const Rational& k = a.c[j];
        if (k.is_zero()) continue;
        std::string mag = k.abs().str();
        if (!first) os << (k.sign() < 0 ? " + -" : " + ");
        else if (k.sign() < 0) os << "-";
        first = false;
        if (j == 0)
            os << mag;
        else if (k.abs().is_one())
            os << basis_[j].name;
        else
            os << mag << "*" << basis_[j].name;
    }
    if (first) return "0";
    return os.str();
}

std::string Weights::describe() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? ", " : "") << format(rows_[i]);
    os << ")";
    return os.str();
}

bool operator==(const Weights& a, const Weights& b) {
    if (&a == &b) return true;
    if (a.rows_ != b.rows_ || a.basis_.size() != b.basis_.size()) return false;
    for (std::size_t j = 0; j < a.basis_.size(); ++j)
        if (a.basis_[j].name != b.basis_[j].name) return false;
    return true;
}

// ---- linear algebra ---------------------------------------------------------

namespace {

// in-place reduced row echelon form; returns pivot columns
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = m[r][c].inverse();
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::vector<Rational> primitive_integer(std::vector<Rational> v) {
    mpz_class d = 1, g = 0;
    for (auto& x : v) d = lcm(d, x.den());
    for (auto& x : v) {
        x *= Rational(d);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.num().get_mpz_t());
    }
    if (g != 0 && g != 1)
        for (auto& x : v) x /= Rational(g);
    return v;
}

} // namespace

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    return rref(m, m[0].size()).size();
}

std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& m0, std::size_t cols) {
    auto m = m0;
    auto piv = rref(m, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(cols);
        v[f] = Rational(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        out.push_back(v);
    }
    return out;
}

std::vector<std::vector<Rational>> kernel_relations(const Weights& w) {
    // solve sum_i r_i C_ij = 0 for all j: rows of the system are the columns of C
    std::size_t n = w.nvars(), m = w.basis_size();
    std::vector<std::vector<Rational>> sys(m, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) sys[j][i] = w.weight(i).c[j];
    auto ns = nullspace(sys, n);
    for (auto& v : ns) {
        v = primitive_integer(v);
        // sign: first nonzero entry negative matches the usual (-13,-1,1,0) presentation
        for (auto& x : v) {
            if (x.is_zero()) continue;
            if (x.sign() > 0)
                for (auto& y : v) y = -y;
            break;
        }
    }
    return ns;
}

// ---- divisorial approximation ----------------------------------------------

namespace {

struct RelSearch {
    std::vector<std::size_t> pivots;                 // rows chosen as free coordinates
    std::vector<std::vector<Rational>> dependence;   // for each row: coefficients over pivots
};

RelSearch dependence_structure(const Weights& w) {
    std::size_t n = w.nvars(), m = w.basis_size();
    RelSearch rs;
    std::vector<std::vector<Rational>> chosen;
    for (std::size_t i = 0; i < n; ++i) {
        auto trial = chosen;
        trial.push_back(w.weight(i).c);
        if (rational_rank(trial) > chosen.size()) {
            chosen = trial;
            rs.pivots.push_back(i);
        }
    }
    std::size_t k = rs.pivots.size();
    for (std::size_t i = 0; i < n; ++i) {
        // solve sum_l L_l C_{pivot l} = C_i
        std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(k + 1));
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t l = 0; l < k; ++l) aug[j][l] = w.weight(rs.pivots[l]).c[j];
            aug[j][k] = w.weight(i).c[j];
        }
        auto mm = aug;
        auto piv = rref(mm, k);
        std::vector<Rational> coef(k);
        for (std::size_t r = 0; r < piv.size(); ++r) coef[piv[r]] = mm[r][k];
        rs.dependence.push_back(coef);
    }
    return rs;
}

std::optional<RelApproximation> try_q(const Weights& w, const RelSearch& rs, long q, const Rational& eps,
                                      std::size_t& budget, Rational& best_seen) {
    std::size_t k = rs.pivots.size(), n = w.nvars();
    Rational Q(q);
    std::vector<std::vector<mpz_class>> ranges(k);
    for (std::size_t l = 0; l < k; ++l) {
        auto [lo, hi] = w.enclose(w.weight(rs.pivots[l]));
        Rational a = Q * (Rational(1) - eps) * lo, b = Q * (Rational(1) + eps) * hi;
        mpz_class from = a.floor() + 1, to = b.ceil() - 1;
        Rational centre = Q * (lo + hi) / Rational(2);
        std::vector<mpz_class> vals;
        for (mpz_class v = from; v <= to; ++v) vals.push_back(v);
        std::stable_sort(vals.begin(), vals.end(), [&](const mpz_class& x, const mpz_class& y) {
            return (Rational(x) - centre).abs() < (Rational(y) - centre).abs();
        });
        if (vals.empty()) return std::nullopt;
        ranges[l] = vals;
    }
    std::optional<RelApproximation> best;
    double best_disp = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        if (budget == 0) break;
        --budget;
        std::vector<mpz_class> alpha(n);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            Rational v(0);
            for (std::size_t l = 0; l < k; ++l) v += rs.dependence[i][l] * Rational(ranges[l][idx[l]]);
            if (!v.is_integer() || v.sign() <= 0) ok = false;
            else alpha[i] = v.num();
        }
        if (ok) {
            // certify |q - alpha'_i / alpha_i| < q eps, i.e. q(1-eps) alpha_i < alpha'_i < q(1+eps) alpha_i
            Rational disp(0);
            double disp_d = 0;
            for (std::size_t i = 0; i < n && ok; ++i) {
                bool certified = false;
                for (int bits = 96; bits <= 768 && !certified; bits *= 2) {
                    auto [lo, hi] = w.enclose(w.weight(i), bits);
                    Rational ap(alpha[i]);
                    if (Q * (Rational(1) - eps) * hi < ap && ap < Q * (Rational(1) + eps) * lo) {
                        certified = true;
                        Rational d = max((Q - ap / hi).abs(), (Q - ap / lo).abs());
                        disp = max(disp, d);
                    }
                }
                if (!certified) ok = false;
                disp_d = std::max(disp_d, disp.to_double());
            }
            if (ok) {
                if (!best || disp_d < best_disp) {
                    best = RelApproximation{q, alpha, disp, 0};
                    best_disp = disp_d;
                }
            } else if (best_seen.is_zero() || disp < best_seen) {
                best_seen = disp;
            }
        }
        std::size_t l = 0;
        while (l < k && ++idx[l] == ranges[l].size()) idx[l++] = 0;
        if (l == k) break;
    }
    return best;
}

} // namespace

RelApproximation rel_approx(const Weights& w, long q, const Rational& eps, std::size_t budget) {
    if (eps.sign() <= 0) throw DomainError("epsilon must be positive");
    if (q < 0) throw DomainError("q must be positive");
    RelSearch rs = dependence_structure(w);
    std::size_t start = budget;
    Rational best_seen(0);
    if (q > 0) {
        auto r = try_q(w, rs, q, eps, budget, best_seen);
        if (!r)
            throw BudgetExhausted("no approximation for q=" + std::to_string(q) + " within budget; best uncertified displacement " +
                                  best_seen.str());
        r->candidates = start - budget;
        return *r;
    }
    for (long qq = 1; budget > 0; ++qq) {
        auto r = try_q(w, rs, qq, eps, budget, best_seen);
        if (r) {
            r->candidates = start - budget;
            return *r;
        }
    }
    throw BudgetExhausted("no approximation found within budget");
}

TransferBounds homogeneity_transfer_check(const SparsePoly& p, const Weights& w, const RelApproximation& a, const Rational& eps) {
    if (p.is_zero()) throw DomainError("zero polynomial has no degree");
    TransferBounds out;
    const Exponent* first = nullptr;
    for (auto& [e, c] : p.terms()) {
        GradeValue d = w.degree(e);
        if (!first) {
            first = &e;
            out.degree = d;
        } else if (d != out.degree) {
            throw DomainError("not homogeneous: " + format_monomial(*first, default_names(w.nvars())) + " has degree " +
                              w.format(out.degree) + " but " + format_monomial(e, default_names(w.nvars())) + " has degree " +
                              w.format(d));
        }
    }
    std::optional<Rational> dp;
    for (auto& [e, c] : p.terms()) {
        Rational v(0);
        for (std::size_t i = 0; i < e.size(); ++i) v += e[i] * Rational(a.alpha[i]);
        if (dp && *dp != v) return out;  // not homogeneous for alpha'
        dp = v;
    }
    out.degree_prime = *dp;
    Rational Q(a.q);
    for (int bits = 96; bits <= 768; bits *= 2) {
        auto [lo, hi] = w.enclose(out.degree, bits);
        out.lower = Q * (Rational(1) - eps) * hi;
        out.upper = Q * (Rational(1) + eps) * lo;
        if (out.lower <= out.degree_prime && out.degree_prime <= out.upper) {
            out.holds = true;
            break;
        }
    }
    return out;
}

// ---- parsing ----------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct WeightParser {
    std::vector<BasisSymbol> basis{{"1", Rational(1), Rational(1), {}}};

    std::size_t symbol(const std::string& name) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis[j].name == name) return j;
        if (name.size() > 1 && name[0] == 'b' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
            std::size_t k = std::stoul(name.substr(1));
            if (k >= 1 && k < basis.size()) return k;
            throw ParseError("unknown basis reference " + name);
        }
        if (name.rfind("sqrt", 0) == 0 && name.size() > 4 && std::all_of(name.begin() + 4, name.end(), ::isdigit)) {
            mpz_class N(name.substr(4)), r;
            mpz_sqrt(r.get_mpz_t(), N.get_mpz_t());
            if (r * r == N) throw ParseError(name + " is rational; write it as a number");
            basis.push_back({name, Rational(r), Rational(mpz_class(r + 1)), {Rational(mpz_class(-N)), Rational(0), Rational(1)}});
            return basis.size() - 1;
        }
        throw ParseError("unknown weight symbol '" + name + "'");
    }

    void declare(const std::string& name, const std::string& rhs) {
        for (auto& b : basis)
            if (b.name == name) throw ParseError("symbol " + name + " declared twice");
        std::string r = trim(rhs);
        if (r.size() < 2 || r.front() != '[' || r.back() != ']') throw ParseError("expected [lo,hi] enclosure for " + name);
        auto parts = split(r.substr(1, r.size() - 2), ',');
        if (parts.size() != 2) throw ParseError("expected [lo,hi] enclosure for " + name);
        BasisSymbol s{name, Rational::parse(parts[0]), Rational::parse(parts[1]), {}};
        if (name.rfind("sqrt", 0) == 0 && name.size() > 4 && std::all_of(name.begin() + 4, name.end(), ::isdigit)) {
            mpz_class N(name.substr(4));
            s.defining = {Rational(mpz_class(-N)), Rational(0), Rational(1)};
        }
        basis.push_back(s);
    }

    // linear combination of numbers and symbols
    std::map<std::size_t, Rational> linear(const std::string& text) {
        std::map<std::size_t, Rational> out;
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) throw ParseError("empty weight expression");
        std::size_t i = 0;
        while (i < s.size()) {
            int sgn = 1;
            while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                if (s[i] == '-') sgn = -sgn;
                ++i;
            }
            std::size_t j = i;
            while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
            std::string term = s.substr(i, j - i);
            if (term.empty()) throw ParseError("bad weight expression '" + text + "'");
            Rational coef(sgn);
            std::size_t sym = 0;
            for (auto& f : split(term, '*')) {
                if (f.empty()) throw ParseError("bad weight expression '" + text + "'");
                if (std::isdigit(static_cast<unsigned char>(f[0])) || f[0] == '.')
                    coef *= Rational::parse(f);
                else {
                    if (sym) throw ParseError("nonlinear weight expression '" + text + "'");
                    sym = symbol(f);
                }
            }
            out[sym] += coef;
            i = j;
        }
        return out;
    }
};

} // namespace

WeightsPtr parse_weights(const std::string& text) {
    WeightParser wp;
    std::vector<std::map<std::size_t, Rational>> rows;
    std::map<std::size_t, std::map<std::size_t, Rational>> named;
    bool has_statements = text.find(':') != std::string::npos || text.find('=') != std::string::npos;
    if (!has_statements) {
        for (auto& item : split(text, ',')) rows.push_back(wp.linear(item));
    } else {
        for (auto& stmt : split(text, ';')) {
            if (stmt.empty()) continue;
            auto colon = stmt.find(':'), eq = stmt.find('=');
            if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
                wp.declare(trim(stmt.substr(0, colon)), stmt.substr(colon + 1));
            } else if (eq != std::string::npos) {
                std::string lhs = trim(stmt.substr(0, eq));
                if (lhs.size() < 2 || lhs[0] != 'a' || !std::all_of(lhs.begin() + 1, lhs.end(), ::isdigit))
                    throw ParseError("expected a weight name a1, a2, ... before '='");
                std::size_t k = std::stoul(lhs.substr(1));
                if (k == 0 || named.count(k)) throw ParseError("weight " + lhs + " repeated or invalid");
                named[k] = wp.linear(stmt.substr(eq + 1));
            } else {
                throw ParseError("bad weight statement '" + stmt + "'");
            }
        }
        std::size_t k = 1;
        for (auto& [idx, row] : named) {
            if (idx != k++) throw ParseError("weights must be a1..an without gaps");
            rows.push_back(row);
        }
    }
    if (rows.empty()) throw ParseError("no weights given");
    std::vector<GradeValue> gv;
    for (auto& r : rows) {
        GradeValue g(wp.basis.size());
        for (auto& [j, c] : r) g.c[j] = c;
        gv.push_back(g);
    }
    return std::make_shared<const Weights>(wp.basis, gv);
}

} // namespace monoval
