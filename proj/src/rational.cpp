#include "monoval/rational.hpp"
#include "monoval/error.hpp"

namespace monoval {

Rational::Rational(long n, long d) {
    if (d == 0) throw DomainError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw DomainError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    std::string t(s);
    auto bad = [&] { return ParseError("bad number '" + t + "'"); };
    if (t.empty()) throw bad();
    auto dot = t.find('.');
    try {
        if (dot != std::string::npos) {
            std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
            bool neg = !ip.empty() && ip[0] == '-';
            if (neg || (!ip.empty() && ip[0] == '+')) ip = ip.substr(1);
            if (ip.empty()) ip = "0";
            if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos ||
                ip.find_first_not_of("0123456789") != std::string::npos)
                throw bad();
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
            mpz_class n(ip + fp);
            Rational r(n, scale);
            return neg ? -r : r;
        }
        if (t[0] == '+') t = t.substr(1);
        mpq_class q(t);
        if (q.get_den() == 0) throw bad();
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p()) throw DomainError("not a machine integer: " + str());
    return v_.get_num().get_si();
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace monoval
