#ifndef PDEF_MULTIVEC_HPP
#define PDEF_MULTIVEC_HPP

// Skew-symmetric multiderivations of F[x,y,z]: wedge product, evaluation,
// Schouten bracket and the Poisson coboundary.

#include <array>
#include <cstddef>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <pdef/algebra.hpp>
#include <pdef/combinatorics.hpp>
#include <pdef/error.hpp>

namespace pdef
{

namespace detail
{

inline std::size_t binom3(int k)
{
    switch (k) {
        case 0:
        case 3:
            return 1;
        case 1:
        case 2:
            return 3;
        default:
            return 0;
    }
}

// Coordinate index sets of the basis k-vectors. Degree 2 follows the cyclic
// order dy^dz, dz^dx, dx^dy.
inline const std::vector<std::vector<std::size_t>> &index_sets(int k)
{
    static const std::vector<std::vector<std::size_t>> none;
    static const std::array<std::vector<std::vector<std::size_t>>, 4> sets{{
        {{}},
        {{0}, {1}, {2}},
        {{1, 2}, {2, 0}, {0, 1}},
        {{0, 1, 2}},
    }};
    if (k < 0 || k > 3) {
        return none;
    }
    return sets[static_cast<std::size_t>(k)];
}

inline const std::array<std::string, 4> &basis_names(int k)
{
    static const std::array<std::array<std::string, 4>, 4> names{{
        {"", "", "", ""},
        {"dx", "dy", "dz", ""},
        {"dy^dz", "dz^dx", "dx^dy", ""},
        {"dx^dy^dz", "", "", ""},
    }};
    return names[static_cast<std::size_t>(k)];
}

} // namespace detail

// A k-vector field. Degrees outside 0..3 are allowed as tags of the zero
// space (brackets and wedges land there in dimension three), and carry no
// components.
class MultiVec
{
public:
    MultiVec() : MultiVec(0) {}

    explicit MultiVec(int degree) : m_degree(degree), m_comp(detail::binom3(degree)) {}

    MultiVec(int degree, std::vector<Poly> comps) : m_degree(degree), m_comp(std::move(comps))
    {
        if (m_comp.size() != detail::binom3(degree)) {
            throw error(error_kind::arity_mismatch, "wrong number of components for degree " + std::to_string(degree));
        }
    }

    static MultiVec function(Poly f)
    {
        return MultiVec(0, {std::move(f)});
    }

    static MultiVec vector_field(Poly a, Poly b, Poly c)
    {
        return MultiVec(1, {std::move(a), std::move(b), std::move(c)});
    }

    static MultiVec bivector(Poly yz, Poly zx, Poly xy)
    {
        return MultiVec(2, {std::move(yz), std::move(zx), std::move(xy)});
    }

    static MultiVec top(Poly f)
    {
        return MultiVec(3, {std::move(f)});
    }

    int degree() const
    {
        return m_degree;
    }

    // Degree as an element of the shifted dg Lie algebra.
    int g_degree() const
    {
        return m_degree - 1;
    }

    const std::vector<Poly> &components() const
    {
        return m_comp;
    }

    const Poly &operator[](std::size_t i) const
    {
        return m_comp[i];
    }

    Poly &operator[](std::size_t i)
    {
        return m_comp[i];
    }

    bool is_zero() const
    {
        for (const auto &c : m_comp) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    MultiVec &operator+=(const MultiVec &o)
    {
        check_same(o);
        for (std::size_t i = 0; i < m_comp.size(); ++i) {
            m_comp[i] += o.m_comp[i];
        }
        return *this;
    }

    MultiVec &operator-=(const MultiVec &o)
    {
        check_same(o);
        for (std::size_t i = 0; i < m_comp.size(); ++i) {
            m_comp[i] -= o.m_comp[i];
        }
        return *this;
    }

    MultiVec &operator*=(const Rational &s)
    {
        for (auto &c : m_comp) {
            c *= s;
        }
        return *this;
    }

    friend MultiVec operator+(MultiVec a, const MultiVec &b)
    {
        a += b;
        return a;
    }

    friend MultiVec operator-(MultiVec a, const MultiVec &b)
    {
        a -= b;
        return a;
    }

    friend MultiVec operator-(MultiVec a)
    {
        a *= Rational(-1);
        return a;
    }

    friend MultiVec operator*(const Rational &s, MultiVec a)
    {
        a *= s;
        return a;
    }

    // Multiplication by a function (wedge with a 0-vector).
    friend MultiVec operator*(const Poly &f, MultiVec a)
    {
        for (auto &c : a.m_comp) {
            c = f * c;
        }
        return a;
    }

    friend bool operator==(const MultiVec &, const MultiVec &) = default;

private:
    void check_same(const MultiVec &o) const
    {
        if (o.m_degree != m_degree) {
            throw error(error_kind::degree_overflow, "cannot add multivectors of degrees " + std::to_string(m_degree)
                                                          + " and " + std::to_string(o.m_degree));
        }
    }

    int m_degree;
    std::vector<Poly> m_comp;
};

namespace detail
{

inline Poly det_gradients(const std::vector<std::array<Poly, 3>> &grads, const std::vector<std::size_t> &cols)
{
    switch (cols.size()) {
        case 1:
            return grads[0][cols[0]];
        case 2:
            return grads[0][cols[0]] * grads[1][cols[1]] - grads[0][cols[1]] * grads[1][cols[0]];
        case 3: {
            const auto &a = grads[0];
            const auto &b = grads[1];
            const auto &c = grads[2];
            return a[cols[0]] * (b[cols[1]] * c[cols[2]] - b[cols[2]] * c[cols[1]])
                   - a[cols[1]] * (b[cols[0]] * c[cols[2]] - b[cols[2]] * c[cols[0]])
                   + a[cols[2]] * (b[cols[0]] * c[cols[1]] - b[cols[1]] * c[cols[0]]);
        }
        default:
            return Poly::constant(1);
    }
}

} // namespace detail

// P[F_1, ..., F_k].
inline Poly evaluate(const MultiVec &p, const std::vector<Poly> &args)
{
    const int k = p.degree();
    if (k < 0 || k > 3) {
        return Poly{};
    }
    if (args.size() != static_cast<std::size_t>(k)) {
        throw error(error_kind::arity_mismatch, "a " + std::to_string(k) + "-vector needs " + std::to_string(k)
                                                    + " arguments, got " + std::to_string(args.size()));
    }
    if (k == 0) {
        return p[0];
    }
    std::vector<std::array<Poly, 3>> grads;
    grads.reserve(args.size());
    for (const auto &a : args) {
        grads.push_back(gradient(a));
    }
    const auto &sets = detail::index_sets(k);
    Poly out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (p[i].is_zero()) {
            continue;
        }
        out += p[i] * detail::det_gradients(grads, sets[i]);
    }
    return out;
}

namespace detail
{

inline std::vector<Poly> coordinates(const std::vector<std::size_t> &idx)
{
    std::vector<Poly> out;
    out.reserve(idx.size());
    for (auto i : idx) {
        out.push_back(Poly::variable(i));
    }
    return out;
}

template <typename T>
std::vector<T> permuted(const std::vector<T> &xs, const Permutation &perm, std::size_t from, std::size_t to)
{
    std::vector<T> out;
    for (std::size_t k = from; k < to; ++k) {
        out.push_back(xs[perm[k]]);
    }
    return out;
}

} // namespace detail

inline MultiVec wedge(const MultiVec &p, const MultiVec &q)
{
    const int a = p.degree(), b = q.degree();
    if (a < 0 || b < 0 || a > 3 || b > 3 || a + b > 3) {
        throw error(error_kind::degree_overflow, "wedge of degrees " + std::to_string(a) + " and " + std::to_string(b)
                                                      + " exceeds dimension three");
    }
    MultiVec out(a + b);
    const auto &sets = detail::index_sets(a + b);
    const auto sh = shuffles(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    for (std::size_t c = 0; c < sets.size(); ++c) {
        const auto coords = detail::coordinates(sets[c]);
        Poly acc;
        for (const auto &sigma : sh) {
            Poly l = evaluate(p, detail::permuted(coords, sigma, 0, static_cast<std::size_t>(a)));
            if (l.is_zero()) {
                continue;
            }
            Poly r = evaluate(q, detail::permuted(coords, sigma, static_cast<std::size_t>(a), coords.size()));
            if (permutation_sign(sigma) > 0) {
                acc += l * r;
            } else {
                acc -= l * r;
            }
        }
        out[c] = std::move(acc);
    }
    return out;
}

// Schouten bracket, evaluated on coordinate functions through
//   [P,Q][F..] = sum_{S_{q,p-1}} sign P[Q[F..], F..]
//              - (-1)^{(p-1)(q-1)} sum_{S_{p,q-1}} sign Q[P[F..], F..].
// For vector fields this is the commutator PQ - QP and [P, F] = P[F].
inline MultiVec schouten(const MultiVec &p, const MultiVec &q)
{
    const int a = p.degree(), b = q.degree();
    const int r = a + b - 1;
    MultiVec out(r);
    if (r < 0 || r > 3 || a < 0 || b < 0 || a > 3 || b > 3 || p.is_zero() || q.is_zero()) {
        return out;
    }
    const auto &sets = detail::index_sets(r);
    const int outer_sign = minus_one_pow(static_cast<long>(a - 1) * (b - 1));
    // Returns sum_{sigma in S_{inner, outer-1}} sign(sigma) Outer[Inner[F_sigma..], F_sigma..].
    auto half = [](const MultiVec &outer, const MultiVec &inner, const std::vector<Poly> &coords) {
        Poly acc;
        const int po = outer.degree(), qi = inner.degree();
        if (po < 1) {
            return acc;
        }
        for (const auto &sigma : shuffles(static_cast<std::size_t>(qi), static_cast<std::size_t>(po - 1))) {
            Poly in = evaluate(inner, detail::permuted(coords, sigma, 0, static_cast<std::size_t>(qi)));
            if (in.is_zero()) {
                continue;
            }
            std::vector<Poly> args;
            args.reserve(static_cast<std::size_t>(po));
            args.push_back(std::move(in));
            for (std::size_t k = static_cast<std::size_t>(qi); k < coords.size(); ++k) {
                args.push_back(coords[sigma[k]]);
            }
            Poly v = evaluate(outer, args);
            if (permutation_sign(sigma) > 0) {
                acc += v;
            } else {
                acc -= v;
            }
        }
        return acc;
    };
    for (std::size_t c = 0; c < sets.size(); ++c) {
        const auto coords = detail::coordinates(sets[c]);
        Poly v = half(p, q, coords);
        Poly w = half(q, p, coords);
        if (outer_sign > 0) {
            v -= w;
        } else {
            v += w;
        }
        out[c] = std::move(v);
    }
    return out;
}

// pi_psi = dpsi/dx dy^dz + dpsi/dy dz^dx + dpsi/dz dx^dy
inline MultiVec poisson_from_potential(const Poly &psi)
{
    auto g = gradient(psi);
    return MultiVec::bivector(std::move(g[0]), std::move(g[1]), std::move(g[2]));
}

inline MultiVec euler_field(const WeightSystem &w)
{
    return MultiVec::vector_field(Poly::variable(0) * Rational(w[0]), Poly::variable(1) * Rational(w[1]),
                                  Poly::variable(2) * Rational(w[2]));
}

// dx^dy^dz
inline MultiVec top_field()
{
    return MultiVec::top(Poly::constant(1));
}

// The differential of the dg Lie algebra: [pi_phi, P]_S.
inline MultiVec coboundary_with(const MultiVec &pi, const MultiVec &p)
{
    return schouten(pi, p);
}

inline MultiVec coboundary(const MultiVec &p, const Poly &phi)
{
    return schouten(poisson_from_potential(phi), p);
}

// True when [pi, P]_S == (-1)^{p-1} * (-[P, pi]_S) on P.
inline bool differential_conventions_agree(const MultiVec &pi, const MultiVec &p)
{
    MultiVec lhs = schouten(pi, p);
    MultiVec rhs = schouten(p, pi);
    rhs *= Rational(-minus_one_pow(p.degree() - 1));
    return lhs == rhs;
}

// Weight of the term m * d_I: weighted degree of m minus the weights of I.
inline int term_weight(const WeightSystem &w, int degree, std::size_t comp, const Monomial &m)
{
    int out = w.of(m);
    for (auto i : detail::index_sets(degree)[comp]) {
        out -= w[i];
    }
    return out;
}

inline std::map<int, MultiVec> weight_parts(const MultiVec &p, const WeightSystem &w)
{
    std::map<int, MultiVec> out;
    for (std::size_t c = 0; c < p.components().size(); ++c) {
        for (const auto &[m, coeff] : p[c].terms()) {
            const int wt = term_weight(w, p.degree(), c, m);
            auto it = out.try_emplace(wt, MultiVec(p.degree())).first;
            it->second[c].add_term(m, coeff);
        }
    }
    return out;
}

// Largest weighted degree among the coefficient polynomials.
inline std::optional<int> coefficient_degree(const MultiVec &p, const WeightSystem &w)
{
    std::optional<int> out;
    for (const auto &c : p.components()) {
        if (auto d = max_weighted_degree(c, w); d && (!out || *d > *out)) {
            out = d;
        }
    }
    return out;
}

inline std::string to_string(const MultiVec &p)
{
    std::string out = "deg" + std::to_string(p.degree()) + ":";
    bool any = false;
    const int k = p.degree();
    for (std::size_t c = 0; c < p.components().size(); ++c) {
        if (p[c].is_zero()) {
            continue;
        }
        out += any ? " + " : " ";
        any = true;
        out += "(" + to_string(p[c]) + ")";
        if (k > 0) {
            out += "*" + detail::basis_names(k)[c];
        }
    }
    if (!any) {
        out += " 0";
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const MultiVec &p)
{
    return os << to_string(p);
}

// Reader for the to_string format.
inline MultiVec parse_multivec(std::string_view text)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') {
            ++pos;
        }
    };
    if (text.substr(0, 3) != "deg") {
        throw parse_error(error_kind::syntax, 0, "expected 'deg'");
    }
    pos = 3;
    std::size_t end = pos;
    bool neg = false;
    if (end < text.size() && text[end] == '-') {
        neg = true;
        ++end;
    }
    const std::size_t digits_start = end;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) {
        ++end;
    }
    if (end == digits_start || end >= text.size() || text[end] != ':') {
        throw parse_error(error_kind::syntax, pos, "expected degree tag 'deg<k>:'");
    }
    int k = std::stoi(std::string(text.substr(digits_start, end - digits_start)));
    if (neg) {
        k = -k;
    }
    pos = end + 1;
    MultiVec out(k);
    skip();
    if (text.substr(pos) == "0") {
        return out;
    }
    while (true) {
        skip();
        if (pos >= text.size() || text[pos] != '(') {
            throw parse_error(error_kind::syntax, pos, "expected '('");
        }
        int depth = 0;
        std::size_t close = pos;
        for (; close < text.size(); ++close) {
            if (text[close] == '(') {
                ++depth;
            } else if (text[close] == ')' && --depth == 0) {
                break;
            }
        }
        if (close >= text.size()) {
            throw parse_error(error_kind::syntax, pos, "unbalanced parentheses");
        }
        Poly coeff = parse_poly(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        std::size_t comp = 0;
        if (k > 0) {
            if (pos >= text.size() || text[pos] != '*') {
                throw parse_error(error_kind::syntax, pos, "expected '*' before basis name");
            }
            ++pos;
            std::size_t stop = pos;
            while (stop < text.size() && text[stop] != ' ') {
                ++stop;
            }
            const std::string name(text.substr(pos, stop - pos));
            const auto &names = detail::basis_names(k);
            std::size_t found = detail::binom3(k);
            for (std::size_t c = 0; c < detail::binom3(k); ++c) {
                if (names[c] == name) {
                    found = c;
                }
            }
            if (found == detail::binom3(k)) {
                throw parse_error(error_kind::syntax, pos, "unknown basis element '" + name + "'");
            }
            comp = found;
            pos = stop;
        } else if (k != 0) {
            throw parse_error(error_kind::syntax, pos, "degree has no components");
        }
        out[comp] += coeff;
        skip();
        if (pos >= text.size()) {
            break;
        }
        if (text[pos] != '+') {
            throw parse_error(error_kind::syntax, pos, "expected '+'");
        }
        ++pos;
    }
    return out;
}

} // namespace pdef

#endif
