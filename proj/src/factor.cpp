// Factorization over Q. Candidate factors come from products of numerically
// located complex roots of the integer-scaled polynomial; every candidate is
// confirmed by exact division, so numerics only steer the search.
#include "monoval/factor.hpp"
#include <algorithm>
#include <cmath>
#include <complex>

namespace monoval {

namespace {

using cld = std::complex<long double>;

std::vector<cld> numeric_roots(const std::vector<long double>& c) {
    int d = static_cast<int>(c.size()) - 1;
    long double bound = 0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[i]));
    bound += 1;
    std::vector<cld> z(d);
    for (int k = 0; k < d; ++k)
        z[k] = std::polar(bound * 0.7L, 2 * 3.14159265358979323846L * k / d + 0.4L);
    auto eval = [&](cld x, cld& dv) {
        cld v = c[d];
        dv = 0;
        for (int i = d - 1; i >= 0; --i) {
            dv = dv * x + v;
            v = v * x + c[i];
        }
        return v;
    };
    for (int it = 0; it < 800; ++it) {
        long double move = 0;
        for (int k = 0; k < d; ++k) {
            cld dv;
            cld v = eval(z[k], dv);
            if (v == cld(0)) continue;
            cld ratio = v / dv;
            cld s = 0;
            for (int j = 0; j < d; ++j)
                if (j != k && z[k] != z[j]) s += cld(1) / (z[k] - z[j]);
            cld w = ratio / (cld(1) - ratio * s);
            z[k] -= w;
            move = std::max(move, std::abs(w) / (1 + std::abs(z[k])));
        }
        if (move < 1e-17L) break;
    }
    return z;
}

QPoly to_integer_monic(const QPoly& p, mpz_class& scale) {
    scale = 1;
    for (auto& a : p.coeffs()) scale = lcm(scale, a.den());
    int d = p.degree();
    std::vector<Rational> c(d + 1);
    Rational L(scale), pw(1);
    for (int i = d; i >= 0; --i) {
        c[i] = p[i] * pw;
        pw *= L;
    }
    return QPoly(std::move(c));
}

QPoly from_integer_monic(const QPoly& g, const mpz_class& scale) {
    int d = g.degree();
    std::vector<Rational> c(d + 1);
    Rational L(scale), pw(1);
    for (int i = d; i >= 0; --i) {
        c[i] = g[i] / pw;
        pw *= L;
    }
    return QPoly(std::move(c));
}

bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// p is monic with integer coefficients and squarefree
void split_integer(const QPoly& p, std::vector<QPoly>& out) {
    int d = p.degree();
    if (d <= 1) {
        out.push_back(p);
        return;
    }
    if (p[0].is_zero()) {
        QPoly z(std::vector<Rational>{0, 1});
        out.push_back(z);
        split_integer(exact_poly_div(p, z), out);
        return;
    }
    std::vector<long double> c;
    for (auto& a : p.coeffs()) c.push_back(static_cast<long double>(a.to_double()));
    auto z = numeric_roots(c);
    for (int k = 1; k <= d / 2; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        do {
            std::vector<cld> prod{cld(1)};
            for (int i : idx) {
                std::vector<cld> nx(prod.size() + 1, cld(0));
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    nx[j + 1] += prod[j];
                    nx[j] -= prod[j] * z[i];
                }
                prod = std::move(nx);
            }
            bool ok = true;
            std::vector<Rational> cand;
            for (auto& v : prod) {
                long double tol = 1e-6L * (1 + std::abs(v));
                long double r = std::round(v.real());
                if (std::abs(v.imag()) > tol || std::abs(v.real() - r) > tol || std::abs(r) > 9e18L) {
                    ok = false;
                    break;
                }
                cand.emplace_back(static_cast<long>(r));
            }
            if (!ok) continue;
            QPoly g(std::move(cand));
            auto [q, r] = divmod(p, g);
            if (!r.is_zero()) continue;
            split_integer(g, out);
            split_integer(q, out);
            return;
        } while (next_combination(idx, d));
    }
    out.push_back(p);
}

} // namespace

bool qpoly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::vector<QPoly> factor_rational_univariate(const QPoly& p, int max_degree) {
    if (p.is_zero()) throw DomainError("factorization of zero polynomial");
    if (p.degree() > max_degree)
        throw Unsupported("degree " + std::to_string(p.degree()) + " above factorization bound " + std::to_string(max_degree));
    std::vector<QPoly> out;
    for (auto& [f, m] : squarefree_decomposition(p).factors) {
        mpz_class scale;
        QPoly g = to_integer_monic(f, scale);
        std::vector<QPoly> parts;
        split_integer(g, parts);
        for (auto& h : parts)
            for (int i = 0; i < m; ++i) out.push_back(from_integer_monic(h, scale));
    }
    std::sort(out.begin(), out.end(), qpoly_less);
    return out;
}

std::string format_qpoly(const QPoly& p, const std::string& var) {
    return p.str([](const Rational& r) { return r.str(); }, var);
}

} // namespace monoval
