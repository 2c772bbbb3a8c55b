// Dense univariate polynomials over a coefficient type F, lowest degree first.
// F provides the free functions is_zero, zero_like, one_like, from_rational_like,
// and either inverse (fields) or exact_quotient (domains).
#pragma once
#include "monoval/error.hpp"
#include "monoval/rational.hpp"
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace monoval {

namespace detail {
template <class F>
bool coeff_is_zero(const F& a) { return is_zero(a); }  // ADL at instantiation
} // namespace detail

template <class F>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(const F& a) { return UniPoly(std::vector<F>{a}); }
    // (Z - r)
    static UniPoly linear_root(const F& r) { return UniPoly(std::vector<F>{-r, one_like(r)}); }
    static UniPoly monomial(const F& a, int k) {
        std::vector<F> c(k + 1, zero_like(a));
        c[k] = a;
        return UniPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& lead() const { return c_.back(); }
    const F& operator[](int i) const { return c_.at(i); }
    F coeff(int i, const F& like) const { return i >= 0 && i <= degree() ? c_[i] : zero_like(like); }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<F> r = c_.size() >= o.c_.size() ? c_ : o.c_;
        const auto& s = c_.size() >= o.c_.size() ? o.c_ : c_;
        for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
        return UniPoly(std::move(r));
    }
    UniPoly operator-() const {
        std::vector<F> r;
        for (auto& a : c_) r.push_back(-a);
        return UniPoly(std::move(r));
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<F> r(c_.size() + o.c_.size() - 1, zero_like(c_[0]));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (detail::coeff_is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly scaled(const F& a) const {
        std::vector<F> r;
        for (auto& x : c_) r.push_back(x * a);
        return UniPoly(std::move(r));
    }
    UniPoly shifted(int k) const {  // multiply by Z^k
        if (is_zero()) return {};
        std::vector<F> r(k, zero_like(c_[0]));
        r.insert(r.end(), c_.begin(), c_.end());
        return UniPoly(std::move(r));
    }
    UniPoly pow(unsigned e, const F& like) const {
        UniPoly r = constant(one_like(like)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
    UniPoly derivative() const {
        std::vector<F> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * from_rational_like(c_[i], Rational(static_cast<long>(i))));
        return UniPoly(std::move(r));
    }
    F eval(const F& x) const {
        if (is_zero()) return zero_like(x);
        F r = c_.back();
        for (int i = degree() - 1; i >= 0; --i) r = r * x + c_[i];
        return r;
    }
    template <class G>
    UniPoly<G> map(const std::function<G(const F&)>& f) const {
        std::vector<G> r;
        for (auto& a : c_) r.push_back(f(a));
        return UniPoly<G>(std::move(r));
    }
    // substitute Z -> Z + s
    UniPoly taylor_shift(const F& s) const {
        if (is_zero()) return {};
        UniPoly r, lin(std::vector<F>{s, one_like(s)});
        for (int i = degree(); i >= 0; --i) r = r * lin + constant(c_[i]);
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    std::string str(const std::function<std::string(const F&)>& fmt, const std::string& var = "Z") const;

private:
    void trim() {
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

// ---- field algorithms -------------------------------------------------------

template <class F>
UniPoly<F> monic(const UniPoly<F>& p) {
    if (p.is_zero()) return p;
    return p.scaled(inverse(p.lead()));
}

template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly<F>(), a};
    F inv = inverse(b.lead());
    std::vector<F> r = a.coeffs();
    std::vector<F> q(a.degree() - b.degree() + 1, zero_like(a.lead()));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        F c = r[k + b.degree()] * inv;
        q[k] = c;
        if (is_zero(c)) continue;
        for (int j = 0; j <= b.degree(); ++j) r[k + j] = r[k + j] - c * b[j];
    }
    r.resize(b.degree());
    return {UniPoly<F>(std::move(q)), UniPoly<F>(std::move(r))};
}

template <class F>
UniPoly<F> operator%(const UniPoly<F>& a, const UniPoly<F>& b) { return divmod(a, b).second; }

template <class F>
UniPoly<F> exact_poly_div(const UniPoly<F>& a, const UniPoly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
}

template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
    while (!b.is_zero()) {
        UniPoly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

template <class F>
struct ExtGcd {
    UniPoly<F> g, s, t;  // s*a + t*b = g, g monic
};

template <class F>
ExtGcd<F> ext_gcd(const UniPoly<F>& a, const UniPoly<F>& b, const F& like) {
    UniPoly<F> r0 = a, r1 = b;
    UniPoly<F> s0 = UniPoly<F>::constant(one_like(like)), s1, t0, t1 = UniPoly<F>::constant(one_like(like));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = inverse(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class F>
struct SquarefreeResult {
    std::vector<std::pair<UniPoly<F>, int>> factors;
    bool normalized = false;  // input was not monic and was scaled first
};

// Yun's algorithm, characteristic zero
template <class F>
SquarefreeResult<F> squarefree_decomposition(const UniPoly<F>& p) {
    if (p.is_zero()) throw DomainError("squarefree decomposition of zero polynomial");
    SquarefreeResult<F> out;
    UniPoly<F> f = p;
    if (!(f.lead() == one_like(f.lead()))) {
        f = monic(f);
        out.normalized = true;
    }
    if (f.degree() == 0) return out;
    UniPoly<F> a = gcd(f, f.derivative());
    UniPoly<F> b = exact_poly_div(f, a);
    UniPoly<F> c = exact_poly_div(f.derivative(), a);
    UniPoly<F> d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        UniPoly<F> g = gcd(b, d);
        b = exact_poly_div(b, g);
        c = exact_poly_div(d, g);
        d = c - b.derivative();
        if (g.degree() > 0) out.factors.emplace_back(g, i);
    }
    return out;
}

template <class F>
UniPoly<F> squarefree_part(const UniPoly<F>& p) {
    auto sf = squarefree_decomposition(p);
    UniPoly<F> r = UniPoly<F>::constant(one_like(p.lead()));
    for (auto& [g, m] : sf.factors) r = r * g;
    return r;
}

// ---- domain algorithms ------------------------------------------------------

// lc(b)^(deg a - deg b + 1) * a mod b, using only ring operations
template <class F>
UniPoly<F> pseudo_remainder(const UniPoly<F>& a, const UniPoly<F>& b) {
    std::vector<F> r = a.coeffs();
    int db = b.degree();
    int k = a.degree() - db + 1;
    const F& lb = b.lead();
    for (int top = a.degree(); top >= db; --top) {
        F c = r[top];
        for (int i = 0; i < top; ++i) r[i] = r[i] * lb;
        r[top] = zero_like(lb);
        for (int j = 0; j < db; ++j) r[top - db + j] = r[top - db + j] - c * b[j];
        --k;
    }
    UniPoly<F> out(std::move(r));
    F extra = one_like(lb);
    for (int i = 0; i < k; ++i) extra = extra * lb;
    return k > 0 ? out.scaled(extra) : out;
}

template <class F>
F power(const F& a, int e) {
    F r = one_like(a);
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// Resultant by the subresultant pseudo-remainder sequence. Convention:
// res(p, q) = lc(p)^deg q * prod over roots r of p of q(r).
template <class F>
F resultant(UniPoly<F> a, UniPoly<F> b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("resultant of zero polynomial");
    F like = a.lead();
    bool neg = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) neg = true;
        std::swap(a, b);
    }
    F g = one_like(like), h = one_like(like);
    while (b.degree() > 0) {
        int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        UniPoly<F> r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return zero_like(like);
        F div = g * power(h, delta);
        std::vector<F> rc;
        for (auto& x : r.coeffs()) rc.push_back(exact_quotient(x, div));
        b = UniPoly<F>(std::move(rc));
        g = a.lead();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_quotient(power(g, delta), power(h, delta - 1));
        }
    }
    if (b.is_zero()) return zero_like(like);
    int da = a.degree();
    F res = da == 0 ? one_like(like) : exact_quotient(power(b.lead(), da), power(h, da - 1));
    return neg ? -res : res;
}

template <class F>
std::string UniPoly<F>::str(const std::function<std::string(const F&)>& fmt, const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (detail::coeff_is_zero(c_[i])) continue;
        std::string c = fmt(c_[i]);
        bool neg = !c.empty() && c[0] == '-' && c.find_first_of("+-", 1) == std::string::npos;
        if (neg) c = c.substr(1);
        bool compound = c.find_first_of("+-", 1) != std::string::npos || (c.size() > 1 && c[0] == '-');
        std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (mon.empty())
            term = compound ? "(" + c + ")" : c;
        else if (c == "1")
            term = mon;
        else
            term = (compound ? "(" + c + ")" : c) + "*" + mon;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

} // namespace monoval
