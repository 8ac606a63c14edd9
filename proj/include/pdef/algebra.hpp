#ifndef PDEF_ALGEBRA_HPP
#define PDEF_ALGEBRA_HPP

// Exact rational arithmetic and polynomials in x, y, z.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <pdef/error.hpp>

namespace pdef
{

// Always kept canonical by gmpxx: reduced, positive denominator, 0 == 0/1.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline constexpr std::array<char, 3> variable_names{'x', 'y', 'z'};

struct Monomial {
    std::array<unsigned, 3> exps{0, 0, 0};

    unsigned total_degree() const
    {
        return exps[0] + exps[1] + exps[2];
    }

    Monomial operator*(const Monomial &o) const
    {
        return {{exps[0] + o.exps[0], exps[1] + o.exps[1], exps[2] + o.exps[2]}};
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;
};

// Canonical order: higher total degree first, then lexicographic with x > y > z.
struct MonomialOrder {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const auto da = a.total_degree(), db = b.total_degree();
        if (da != db) {
            return da > db;
        }
        return a.exps > b.exps;
    }
};

class WeightSystem
{
public:
    WeightSystem() = default;

    WeightSystem(int w1, int w2, int w3) : m_w{w1, w2, w3}
    {
        if (w1 < 1 || w2 < 1 || w3 < 1) {
            throw error(error_kind::no_weights, "weights must be positive integers");
        }
        if (std::gcd(std::gcd(w1, w2), w3) != 1) {
            throw error(error_kind::no_weights, "weights must have gcd 1");
        }
    }

    int operator[](std::size_t i) const
    {
        return m_w[i];
    }

    int abs_weight() const
    {
        return m_w[0] + m_w[1] + m_w[2];
    }

    int max_weight() const
    {
        return std::max({m_w[0], m_w[1], m_w[2]});
    }

    int of(const Monomial &m) const
    {
        return static_cast<int>(m.exps[0]) * m_w[0] + static_cast<int>(m.exps[1]) * m_w[1]
               + static_cast<int>(m.exps[2]) * m_w[2];
    }

    const std::array<int, 3> &weights() const
    {
        return m_w;
    }

    friend bool operator==(const WeightSystem &, const WeightSystem &) = default;

private:
    std::array<int, 3> m_w{1, 1, 1};
};

inline std::string to_string(const WeightSystem &w)
{
    return std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]);
}

// All monomials of weighted degree exactly `deg`, in canonical order.
inline std::vector<Monomial> monomials_of_weight(const WeightSystem &w, int deg)
{
    std::vector<Monomial> out;
    if (deg < 0) {
        return out;
    }
    for (int a = deg / w[0]; a >= 0; --a) {
        const int r1 = deg - a * w[0];
        for (int b = r1 / w[1]; b >= 0; --b) {
            const int r2 = r1 - b * w[1];
            if (r2 % w[2] == 0) {
                out.push_back({{static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(r2 / w[2])}});
            }
        }
    }
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

class Poly
{
public:
    using container_type = std::map<Monomial, Rational, MonomialOrder>;

    Poly() = default;

    static Poly constant(const Rational &c)
    {
        Poly p;
        p.add_term({}, c);
        return p;
    }

    static Poly variable(std::size_t i)
    {
        Monomial m;
        m.exps[i] = 1;
        Poly p;
        p.m_terms.emplace(m, Rational(1));
        return p;
    }

    static Poly term(const Monomial &m, const Rational &c)
    {
        Poly p;
        p.add_term(m, c);
        return p;
    }

    bool is_zero() const
    {
        return m_terms.empty();
    }

    std::size_t size() const
    {
        return m_terms.size();
    }

    const container_type &terms() const
    {
        return m_terms;
    }

    Rational coefficient(const Monomial &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial &m, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    Poly &operator+=(const Poly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }

    Poly &operator-=(const Poly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }

    Poly &operator*=(const Rational &s)
    {
        if (s == 0) {
            m_terms.clear();
        } else {
            for (auto &[m, c] : m_terms) {
                c *= s;
            }
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly &b)
    {
        a += b;
        return a;
    }

    friend Poly operator-(Poly a, const Poly &b)
    {
        a -= b;
        return a;
    }

    friend Poly operator-(Poly a)
    {
        for (auto &[m, c] : a.m_terms) {
            c = -c;
        }
        return a;
    }

    friend Poly operator*(Poly a, const Rational &s)
    {
        a *= s;
        return a;
    }

    friend Poly operator*(const Rational &s, Poly a)
    {
        a *= s;
        return a;
    }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        Poly out;
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }

    Poly &operator*=(const Poly &o)
    {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const Poly &, const Poly &) = default;

private:
    container_type m_terms;
};

inline Poly pow(const Poly &p, unsigned n)
{
    Poly out = Poly::constant(1);
    Poly base = p;
    while (n != 0) {
        if (n & 1u) {
            out *= base;
        }
        n >>= 1;
        if (n != 0) {
            base *= base;
        }
    }
    return out;
}

inline Poly derivative(const Poly &p, std::size_t var)
{
    Poly out;
    for (const auto &[m, c] : p.terms()) {
        if (m.exps[var] == 0) {
            continue;
        }
        Monomial dm = m;
        --dm.exps[var];
        out.add_term(dm, c * m.exps[var]);
    }
    return out;
}

inline std::array<Poly, 3> gradient(const Poly &p)
{
    return {derivative(p, 0), derivative(p, 1), derivative(p, 2)};
}

// Terms of p whose weighted degree equals deg.
inline Poly weighted_part(const Poly &p, const WeightSystem &w, int deg)
{
    Poly out;
    for (const auto &[m, c] : p.terms()) {
        if (w.of(m) == deg) {
            out.add_term(m, c);
        }
    }
    return out;
}

inline std::optional<int> max_weighted_degree(const Poly &p, const WeightSystem &w)
{
    std::optional<int> out;
    for (const auto &[m, c] : p.terms()) {
        const int d = w.of(m);
        if (!out || d > *out) {
            out = d;
        }
    }
    return out;
}

// Weighted degree of a weight-homogeneous polynomial; nullopt if p is not
// weight-homogeneous.
inline std::optional<int> weighted_degree(const Poly &p, const WeightSystem &w)
{
    if (p.is_zero()) {
        throw error(error_kind::zero_polynomial, "weighted degree of the zero polynomial is undefined");
    }
    const int d = w.of(p.terms().begin()->first);
    for (const auto &[m, c] : p.terms()) {
        if (w.of(m) != d) {
            return std::nullopt;
        }
    }
    return d;
}

// The unique gcd-1 weight triple (each weight <= bound) making p
// weight-homogeneous.
inline WeightSystem infer_weights(const Poly &p, int bound = 64)
{
    if (p.is_zero()) {
        throw error(error_kind::zero_polynomial, "cannot infer weights of the zero polynomial");
    }
    std::vector<std::array<int, 3>> found;
    const auto &terms = p.terms();
    const Monomial first = terms.begin()->first;
    for (int a = 1; a <= bound; ++a) {
        for (int b = 1; b <= bound; ++b) {
            for (int c = 1; c <= bound; ++c) {
                if (std::gcd(std::gcd(a, b), c) != 1) {
                    continue;
                }
                auto deg = [&](const Monomial &m) {
                    return static_cast<long>(m.exps[0]) * a + static_cast<long>(m.exps[1]) * b
                           + static_cast<long>(m.exps[2]) * c;
                };
                const long d0 = deg(first);
                bool ok = true;
                for (const auto &[m, coeff] : terms) {
                    if (deg(m) != d0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    found.push_back({a, b, c});
                    if (found.size() > 1) {
                        throw error(error_kind::ambiguous_weights,
                                    "weights are not unique up to scaling; supply them explicitly");
                    }
                }
            }
        }
    }
    if (found.empty()) {
        throw error(error_kind::no_weights,
                    "no positive weights <= " + std::to_string(bound) + " make the polynomial weight-homogeneous");
    }
    return WeightSystem(found[0][0], found[0][1], found[0][2]);
}

// w1 x dp/dx + w2 y dp/dy + w3 z dp/dz
inline Poly euler_apply(const Poly &p, const WeightSystem &w)
{
    Poly out;
    for (const auto &[m, c] : p.terms()) {
        out.add_term(m, c * w.of(m));
    }
    return out;
}

inline std::string to_string(const Poly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        const bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) {
                out += "-";
            }
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < 3; ++i) {
            if (m.exps[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += variable_names[i];
            if (m.exps[i] > 1) {
                mono += "^" + std::to_string(m.exps[i]);
            }
        }
        if (mono.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += mono;
        } else {
            out += a.get_str() + "*" + mono;
        }
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const Poly &p)
{
    return os << to_string(p);
}

namespace detail
{

// Recursive descent over
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | variable | '(' expr ')'
class poly_parser
{
public:
    explicit poly_parser(std::string_view text) : m_text(text) {}

    Poly parse()
    {
        skip_ws();
        if (at_end()) {
            throw parse_error(error_kind::syntax, m_pos, "empty expression");
        }
        Poly p = expr();
        skip_ws();
        if (!at_end()) {
            throw parse_error(error_kind::syntax, m_pos, std::string("unexpected '") + m_text[m_pos] + "'");
        }
        return p;
    }

private:
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }

    char peek()
    {
        skip_ws();
        return at_end() ? '\0' : m_text[m_pos];
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    Poly expr()
    {
        Poly acc = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++m_pos;
            Poly rhs = term();
            if (c == '+') {
                acc += rhs;
            } else {
                acc -= rhs;
            }
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = unary();
        while (peek() == '*') {
            ++m_pos;
            acc *= unary();
        }
        return acc;
    }

    Poly unary()
    {
        const char c = peek();
        if (c == '-') {
            ++m_pos;
            return -unary();
        }
        if (c == '+') {
            ++m_pos;
            return unary();
        }
        return power();
    }

    Poly power()
    {
        Poly base = atom();
        if (peek() == '^') {
            ++m_pos;
            skip_ws();
            const std::size_t start = m_pos;
            const std::string digits = read_digits();
            if (digits.empty()) {
                throw parse_error(error_kind::syntax, start, "expected a nonnegative integer exponent");
            }
            if (digits.size() > 6) {
                throw parse_error(error_kind::syntax, start, "exponent too large");
            }
            return pow(base, static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Poly atom()
    {
        const char c = peek();
        const std::size_t start = m_pos;
        if (c == '\0') {
            throw parse_error(error_kind::syntax, start, "unexpected end of input");
        }
        if (c == '(') {
            ++m_pos;
            Poly inner = expr();
            if (peek() != ')') {
                throw parse_error(error_kind::syntax, m_pos, "expected ')'");
            }
            ++m_pos;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(read_digits());
            mpz_class den(1);
            if (peek() == '/') {
                ++m_pos;
                skip_ws();
                const std::size_t dpos = m_pos;
                const std::string d = read_digits();
                if (d.empty()) {
                    throw parse_error(error_kind::syntax, dpos, "expected an integer denominator");
                }
                den = mpz_class(d);
                if (den == 0) {
                    throw parse_error(error_kind::syntax, dpos, "zero denominator");
                }
            }
            Rational q(num, den);
            q.canonicalize();
            return Poly::constant(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!at_end()
                   && (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
                name += m_text[m_pos++];
            }
            if (name == "x") {
                return Poly::variable(0);
            }
            if (name == "y") {
                return Poly::variable(1);
            }
            if (name == "z") {
                return Poly::variable(2);
            }
            throw parse_error(error_kind::unknown_variable, start, "unknown variable '" + name + "'");
        }
        throw parse_error(error_kind::syntax, start, std::string("unexpected '") + c + "'");
    }

    std::string read_digits()
    {
        std::string out;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            out += m_text[m_pos++];
        }
        return out;
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text)
{
    return detail::poly_parser(text).parse();
}

} // namespace pdef

#endif
