#include "msh/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace msh {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

mpz_class binomial_exact(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

namespace {

mpz_class parse_integer(std::string_view text) {
    if (text.empty()) throw precondition_error("empty integer literal");
    std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (i == text.size()) throw precondition_error("malformed integer literal");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
            throw precondition_error("malformed integer literal: " + std::string(text));
        }
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return mpz_class(digits, 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
    return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw precondition_error("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw precondition_error("zero denominator");
        Rational out(num, den);
        out.canonicalize();
        return out;
    }

    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        i = 1;
    }
    std::string mantissa;
    long frac_digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (mantissa.empty()) throw precondition_error("malformed rational literal: " + std::string(text));
    long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') {
            throw precondition_error("malformed rational literal: " + std::string(text));
        }
        exponent = parse_integer(text.substr(i + 1)).get_si();
    }
    Rational out(mpz_class(mantissa, 10));
    long shift = exponent - frac_digits;
    if (shift >= 0) {
        out *= pow10(static_cast<unsigned long>(shift));
    } else {
        out /= pow10(static_cast<unsigned long>(-shift));
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw precondition_error("cannot convert non-finite double to rational");
    Rational out(x);
    return out;
}

Rational rationalize(double x, std::int64_t max_den) {
    if (max_den < 1) throw precondition_error("denominator cap must be positive");
    Rational target = exact_rational(x);
    const mpz_class cap(static_cast<long>(max_den));
    if (target.get_den() <= cap) return target;

    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpz_class num = target.get_num(), den = target.get_den();
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class q2 = q0 + a * q1;
        if (q2 > cap) break;
        mpz_class p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        mpz_class rem = num - a * den;
        num = den;
        den = rem;
        if (den == 0) break;
    }
    mpz_class steps;
    mpz_fdiv_q(steps.get_mpz_t(), mpz_class(cap - q0).get_mpz_t(), q1.get_mpz_t());
    Rational semi(p0 + steps * p1, q0 + steps * q1);
    Rational conv(p1, q1);
    semi.canonicalize();
    conv.canonicalize();
    return abs(conv - target) <= abs(semi - target) ? conv : semi;
}

bool exact_root(const Rational& x, unsigned long root, Rational& out) {
    if (root == 0) return false;
    if (root == 1) {
        out = x;
        return true;
    }
    if (sgn(x) < 0 && root % 2 == 0) return false;
    mpz_class num = abs(x.get_num());
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), root)) return false;
    if (!mpz_root(rd.get_mpz_t(), x.get_den_mpz_t(), root)) return false;
    out = Rational(sgn(x) < 0 ? mpz_class(-rn) : rn, rd);
    out.canonicalize();
    return true;
}

}  // namespace msh
