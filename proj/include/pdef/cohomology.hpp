#ifndef PDEF_COHOMOLOGY_HPP
#define PDEF_COHOMOLOGY_HPP

// Poisson cohomology of pi_phi: basis labels with explicit representatives,
// the inclusion f1, the projection p and coboundary solving. Everything is
// done on (multivector degree, weight) slices, built lazily.

#include <array>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <pdef/algebra.hpp>
#include <pdef/error.hpp>
#include <pdef/linalg.hpp>
#include <pdef/multivec.hpp>
#include <pdef/singularity.hpp>

namespace pdef
{

enum class label_kind { casimir, euler, type_a, type_b, top };

// Cas(i) = phi^i, Eul(i) = phi^i e, A(i,q) = phi^i u_q pi_phi, B(r) = pi_{u_r},
// Top(i,s) = phi^i u_s dx^dy^dz.
struct BasisLabel {
    label_kind kind = label_kind::casimir;
    int i = 0;
    int j = 0;

    static BasisLabel cas(int i)
    {
        return {label_kind::casimir, i, 0};
    }
    static BasisLabel eul(int i)
    {
        return {label_kind::euler, i, 0};
    }
    static BasisLabel a(int i, int q)
    {
        return {label_kind::type_a, i, q};
    }
    static BasisLabel b(int r)
    {
        return {label_kind::type_b, 0, r};
    }
    static BasisLabel top(int i, int s)
    {
        return {label_kind::top, i, s};
    }

    // Power of phi carried by the representative (0 for type B).
    int phi_power() const
    {
        return kind == label_kind::type_b ? 0 : i;
    }

    int g_degree() const
    {
        switch (kind) {
            case label_kind::casimir:
                return -1;
            case label_kind::euler:
                return 0;
            case label_kind::type_a:
            case label_kind::type_b:
                return 1;
            case label_kind::top:
                return 2;
        }
        return 0;
    }

    friend auto operator<=>(const BasisLabel &, const BasisLabel &) = default;
};

inline std::string to_string(const BasisLabel &l)
{
    switch (l.kind) {
        case label_kind::casimir:
            return "Cas(" + std::to_string(l.i) + ")";
        case label_kind::euler:
            return "Eul(" + std::to_string(l.i) + ")";
        case label_kind::type_a:
            return "A(" + std::to_string(l.i) + "," + std::to_string(l.j) + ")";
        case label_kind::type_b:
            return "B(" + std::to_string(l.j) + ")";
        case label_kind::top:
            return "Top(" + std::to_string(l.i) + "," + std::to_string(l.j) + ")";
    }
    return {};
}

inline std::ostream &operator<<(std::ostream &os, const BasisLabel &l)
{
    return os << to_string(l);
}

inline BasisLabel parse_label(std::string_view text)
{
    auto bad = [&] { return error(error_kind::invalid_label, "cannot parse label '" + std::string(text) + "'"); };
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')') {
        throw bad();
    }
    const std::string head(text.substr(0, open));
    const std::string_view body = text.substr(open + 1, text.size() - open - 2);
    std::vector<int> args;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto comma = std::min(body.find(',', pos), body.size());
        const std::string_view num = body.substr(pos, comma - pos);
        if (num.empty() || num.size() > 6) {
            throw bad();
        }
        int v = 0;
        for (char c : num) {
            if (c < '0' || c > '9') {
                throw bad();
            }
            v = v * 10 + (c - '0');
        }
        args.push_back(v);
        pos = comma + 1;
    }
    if (head == "Cas" && args.size() == 1) {
        return BasisLabel::cas(args[0]);
    }
    if (head == "Eul" && args.size() == 1) {
        return BasisLabel::eul(args[0]);
    }
    if (head == "A" && args.size() == 2) {
        return BasisLabel::a(args[0], args[1]);
    }
    if (head == "B" && args.size() == 1) {
        return BasisLabel::b(args[0]);
    }
    if (head == "Top" && args.size() == 2) {
        return BasisLabel::top(args[0], args[1]);
    }
    throw bad();
}

// Element of H_phi: a finite combination of labels of one g-degree.
class CohClass
{
public:
    using container_type = std::map<BasisLabel, Rational>;

    CohClass() = default;
    explicit CohClass(int g_degree) : m_degree(g_degree) {}

    static CohClass of(const BasisLabel &l, const Rational &c = Rational(1))
    {
        CohClass out(l.g_degree());
        out.add(l, c);
        return out;
    }

    int g_degree() const
    {
        return m_degree;
    }

    const container_type &coeffs() const
    {
        return m_coeffs;
    }

    bool is_zero() const
    {
        return m_coeffs.empty();
    }

    Rational coefficient(const BasisLabel &l) const
    {
        auto it = m_coeffs.find(l);
        return it == m_coeffs.end() ? Rational(0) : it->second;
    }

    void add(const BasisLabel &l, const Rational &c)
    {
        if (l.g_degree() != m_degree) {
            throw error(error_kind::invalid_label, to_string(l) + " does not have g-degree " + std::to_string(m_degree));
        }
        if (c == 0) {
            return;
        }
        auto [it, fresh] = m_coeffs.try_emplace(l, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) {
                m_coeffs.erase(it);
            }
        }
    }

    CohClass &operator+=(const CohClass &o)
    {
        if (o.is_zero()) {
            return *this;
        }
        if (is_zero()) {
            m_degree = o.m_degree;
        }
        for (const auto &[l, c] : o.m_coeffs) {
            add(l, c);
        }
        return *this;
    }

    CohClass &operator-=(const CohClass &o)
    {
        CohClass n = o;
        n *= Rational(-1);
        return *this += n;
    }

    CohClass &operator*=(const Rational &s)
    {
        if (s == 0) {
            m_coeffs.clear();
            return *this;
        }
        for (auto &[l, c] : m_coeffs) {
            c *= s;
        }
        return *this;
    }

    friend CohClass operator+(CohClass a, const CohClass &b)
    {
        a += b;
        return a;
    }

    friend CohClass operator-(CohClass a, const CohClass &b)
    {
        a -= b;
        return a;
    }

    friend CohClass operator*(const Rational &s, CohClass a)
    {
        a *= s;
        return a;
    }

    friend bool operator==(const CohClass &a, const CohClass &b)
    {
        return a.m_coeffs == b.m_coeffs && (a.is_zero() || a.m_degree == b.m_degree);
    }

private:
    int m_degree = 1;
    container_type m_coeffs;
};

inline std::string to_string(const CohClass &c)
{
    if (c.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[l, v] : c.coeffs()) {
        if (!out.empty()) {
            out += " + ";
        }
        if (v != 1) {
            out += to_string(v) + "*";
        }
        out += to_string(l);
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const CohClass &c)
{
    return os << to_string(c);
}

// A (degree, weight) slice of the multivector space together with the
// boundaries landing in it and the reduced label representatives.
struct CohSlice {
    int degree = 0;
    int weight = 0;
    std::vector<std::pair<std::size_t, Monomial>> terms;
    std::map<std::pair<std::size_t, Monomial>, std::size_t, bool (*)(const std::pair<std::size_t, Monomial> &,
                                                                      const std::pair<std::size_t, Monomial> &)>
        index{&term_less};
    EchelonBasis boundaries; // tags index terms of the (degree-1, weight-shift) slice
    std::vector<BasisLabel> labels;
    EchelonBasis classes; // tags index labels

    static bool term_less(const std::pair<std::size_t, Monomial> &a, const std::pair<std::size_t, Monomial> &b)
    {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return MonomialOrder{}(a.second, b.second);
    }

    std::size_t size() const
    {
        return terms.size();
    }
};

class Cohomology
{
public:
    explicit Cohomology(SingularityData data, std::optional<int> weight_cap = std::nullopt)
        : m_data(std::move(data)), m_pi(poisson_from_potential(m_data.phi())), m_state(std::make_shared<state>())
    {
        m_cap = weight_cap ? *weight_cap : 64 * std::max(m_data.d(), m_data.weights().abs_weight());
        self_test();
    }

    const SingularityData &data() const
    {
        return m_data;
    }

    const MultiVec &pi() const
    {
        return m_pi;
    }

    int weight_cap() const
    {
        return m_cap;
    }

    MultiVec differential(const MultiVec &p) const
    {
        return schouten(m_pi, p);
    }

    // Throws InvalidLabel when the label does not belong to the basis.
    void validate(const BasisLabel &l) const
    {
        const int mu = m_data.mu();
        auto fail = [&](const std::string &why) {
            return error(error_kind::invalid_label, to_string(l) + ": " + why);
        };
        if (l.i < 0 || l.j < 0) {
            throw fail("negative index");
        }
        switch (l.kind) {
            case label_kind::casimir:
                return;
            case label_kind::euler:
                if (!m_data.is_special()) {
                    throw fail("Euler classes exist only when the weighted degree equals the total weight");
                }
                return;
            case label_kind::type_a:
                if (l.j >= mu || (l.j == 0 && !m_data.is_special())) {
                    throw fail("index q outside E_phi");
                }
                return;
            case label_kind::type_b:
                if (l.j < 1 || l.j >= mu) {
                    throw fail("index r must lie in 1.." + std::to_string(mu - 1));
                }
                return;
            case label_kind::top:
                if (l.j >= mu) {
                    throw fail("index s must lie in 0.." + std::to_string(mu - 1));
                }
                return;
        }
    }

    MultiVec realize(const BasisLabel &l) const
    {
        validate(l);
        const Poly phi_i = pow(m_data.phi(), static_cast<unsigned>(l.i));
        switch (l.kind) {
            case label_kind::casimir:
                return MultiVec::function(phi_i);
            case label_kind::euler:
                return phi_i * euler_field(m_data.weights());
            case label_kind::type_a:
                return (phi_i * m_data.u(static_cast<std::size_t>(l.j))) * m_pi;
            case label_kind::type_b:
                return poisson_from_potential(m_data.u(static_cast<std::size_t>(l.j)));
            case label_kind::top:
                return MultiVec::top(phi_i * m_data.u(static_cast<std::size_t>(l.j)));
        }
        return {};
    }

    // Weight of the representative (weighted degree of coefficients minus the
    // weights of the derivations).
    int label_weight(const BasisLabel &l) const
    {
        validate(l);
        const auto &w = m_data.weights();
        const int d = m_data.d();
        const int aw = w.abs_weight();
        auto wu = [&](int k) { return w.of(m_data.basis()[static_cast<std::size_t>(k)]); };
        switch (l.kind) {
            case label_kind::casimir:
            case label_kind::euler:
                return l.i * d;
            case label_kind::type_a:
                return l.i * d + wu(l.j) + d - aw;
            case label_kind::type_b:
                return wu(l.j) - aw;
            case label_kind::top:
                return l.i * d + wu(l.j) - aw;
        }
        return 0;
    }

    MultiVec f1(const CohClass &xi) const
    {
        MultiVec out(xi.g_degree() + 1);
        for (const auto &[l, c] : xi.coeffs()) {
            out += c * realize(l);
        }
        return out;
    }

    // Labels of g-degree g whose representative has coefficient polynomials of
    // weighted degree at most cap.
    std::vector<BasisLabel> enumerate_basis(int g, int cap) const
    {
        std::vector<BasisLabel> out;
        const int mu = m_data.mu();
        auto keep = [&](const BasisLabel &l) {
            const auto deg = coefficient_degree(realize(l), m_data.weights());
            if (deg && *deg <= cap) {
                out.push_back(l);
            }
        };
        // Every phi-power family has coefficient degree >= i*d.
        const int d = m_data.d();
        switch (g) {
            case -1:
                for (int i = 0; i * d <= cap; ++i) {
                    keep(BasisLabel::cas(i));
                }
                break;
            case 0:
                if (m_data.is_special()) {
                    for (int i = 0; i * d <= cap; ++i) {
                        keep(BasisLabel::eul(i));
                    }
                }
                break;
            case 1:
                for (int i = 0; i * d <= cap; ++i) {
                    for (int q = m_data.is_special() ? 0 : 1; q < mu; ++q) {
                        keep(BasisLabel::a(i, q));
                    }
                }
                for (int r = 1; r < mu; ++r) {
                    keep(BasisLabel::b(r));
                }
                break;
            case 2:
                for (int i = 0; i * d <= cap; ++i) {
                    for (int s = 0; s < mu; ++s) {
                        keep(BasisLabel::top(i, s));
                    }
                }
                break;
            default:
                break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // All labels of multivector degree k whose representative has weight W.
    std::vector<BasisLabel> labels_of_weight(int k, int W) const
    {
        std::vector<BasisLabel> out;
        const int d = m_data.d();
        const int mu = m_data.mu();
        const auto &w = m_data.weights();
        const int aw = w.abs_weight();
        auto phi_power = [&](int rest) -> std::optional<int> {
            if (rest < 0 || rest % d != 0) {
                return std::nullopt;
            }
            return rest / d;
        };
        auto wu = [&](int s) { return w.of(m_data.basis()[static_cast<std::size_t>(s)]); };
        switch (k) {
            case 0:
                if (auto i = phi_power(W)) {
                    out.push_back(BasisLabel::cas(*i));
                }
                break;
            case 1:
                if (m_data.is_special()) {
                    if (auto i = phi_power(W)) {
                        out.push_back(BasisLabel::eul(*i));
                    }
                }
                break;
            case 2:
                for (int q = m_data.is_special() ? 0 : 1; q < mu; ++q) {
                    if (auto i = phi_power(W - d + aw - wu(q))) {
                        out.push_back(BasisLabel::a(*i, q));
                    }
                }
                for (int r = 1; r < mu; ++r) {
                    if (wu(r) - aw == W) {
                        out.push_back(BasisLabel::b(r));
                    }
                }
                break;
            case 3:
                for (int s = 0; s < mu; ++s) {
                    if (auto i = phi_power(W + aw - wu(s))) {
                        out.push_back(BasisLabel::top(*i, s));
                    }
                }
                break;
            default:
                break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Basis terms (component, monomial) of the weight-W part of degree-k
    // multivectors.
    std::vector<std::pair<std::size_t, Monomial>> space_terms(int k, int W) const
    {
        std::vector<std::pair<std::size_t, Monomial>> out;
        const auto &sets = detail::index_sets(k);
        const auto &w = m_data.weights();
        for (std::size_t c = 0; c < sets.size(); ++c) {
            int deg = W;
            for (auto i : sets[c]) {
                deg += w[i];
            }
            auto ms = monomials_of_weight(w, deg);
            std::sort(ms.begin(), ms.end(), MonomialOrder{});
            for (auto &m : ms) {
                out.emplace_back(c, m);
            }
        }
        return out;
    }

    const CohSlice &slice(int k, int W) const
    {
        if (W > m_cap) {
            throw error(error_kind::slice_cap_exceeded, "weight " + std::to_string(W) + " in degree "
                                                            + std::to_string(k) + " exceeds the slice cap "
                                                            + std::to_string(m_cap));
        }
        std::lock_guard lock(m_state->mutex);
        auto key = std::make_pair(k, W);
        auto it = m_state->slices.find(key);
        if (it == m_state->slices.end()) {
            it = m_state->slices.emplace(key, build_slice(k, W)).first;
        }
        return it->second;
    }

    SparseVec to_vec(const CohSlice &s, const MultiVec &part) const
    {
        SparseVec v;
        for (std::size_t c = 0; c < part.components().size(); ++c) {
            for (const auto &[m, coeff] : part[c].terms()) {
                v.emplace(s.index.at({c, m}), coeff);
            }
        }
        return v;
    }

    MultiVec from_terms(int k, const std::vector<std::pair<std::size_t, Monomial>> &terms, const SparseVec &v) const
    {
        MultiVec out(k);
        for (const auto &[i, c] : v) {
            out[terms[i].first].add_term(terms[i].second, c);
        }
        return out;
    }

    void require_cocycle(const MultiVec &p) const
    {
        if (!differential(p).is_zero()) {
            throw error(error_kind::not_a_cocycle, "the multivector is not closed under the Poisson coboundary");
        }
    }

    // The unique class xi with P - f1(xi) exact.
    CohClass project(const MultiVec &p) const
    {
        CohClass out(p.g_degree());
        if (p.degree() < 0 || p.degree() > 3) {
            return out;
        }
        require_cocycle(p);
        for (const auto &[W, part] : weight_parts(p, m_data.weights())) {
            const auto &s = slice(p.degree(), W);
            auto v = to_vec(s, part);
            s.boundaries.reduce(v);
            const auto coeffs = s.classes.reduce(v);
            if (!v.empty()) {
                throw error(error_kind::internal, "cocycle of weight " + std::to_string(W)
                                                      + " is not spanned by the cohomology basis");
            }
            for (const auto &[idx, c] : coeffs) {
                out.add(s.labels[idx], c);
            }
        }
        return out;
    }

    // A preimage y with [pi_phi, y] = target, determined by the pivoting order.
    MultiVec solve_coboundary(const MultiVec &target) const
    {
        MultiVec out(target.degree() - 1);
        if (target.degree() < 0 || target.degree() > 3) {
            return out;
        }
        require_cocycle(target);
        const int shift = m_data.shift();
        for (const auto &[W, part] : weight_parts(target, m_data.weights())) {
            const auto &s = slice(target.degree(), W);
            auto v = to_vec(s, part);
            const auto pre = s.boundaries.reduce(v);
            if (!v.empty()) {
                throw error(error_kind::not_a_coboundary, "the cocycle has a nonzero cohomology class");
            }
            out += from_terms(target.degree() - 1, space_terms(target.degree() - 1, W - shift), pre);
        }
        return out;
    }

    struct SliceCheck {
        std::size_t dimension = 0;
        std::size_t cocycles = 0;
        std::size_t boundaries = 0;
        std::size_t labels = 0;

        // Labels complete the boundaries to a basis of the cocycles.
        bool consistent() const
        {
            return boundaries + labels == cocycles;
        }
    };

    // Compares dim Z = dim X - rank(d) against rank B + #labels. Label
    // independence from B is checked while the slice is built.
    SliceCheck check_slice(int k, int W) const
    {
        SliceCheck out;
        const auto &s = slice(k, W);
        out.dimension = s.size();
        out.boundaries = s.boundaries.rank();
        out.labels = s.labels.size();
        if (k >= 3) {
            out.cocycles = s.size();
            return out;
        }
        const auto target = space_terms(k + 1, W + m_data.shift());
        std::map<std::pair<std::size_t, Monomial>, std::size_t, decltype(&CohSlice::term_less)> index(
            &CohSlice::term_less);
        for (std::size_t i = 0; i < target.size(); ++i) {
            index.emplace(target[i], i);
        }
        EchelonBasis image;
        for (const auto &[c, m] : s.terms) {
            MultiVec e(k);
            e[c] = Poly::term(m, 1);
            const auto de = differential(e);
            SparseVec v;
            for (std::size_t cc = 0; cc < de.components().size(); ++cc) {
                for (const auto &[mm, coeff] : de[cc].terms()) {
                    v.emplace(index.at({cc, mm}), coeff);
                }
            }
            image.insert(std::move(v), {});
        }
        out.cocycles = s.size() - image.rank();
        return out;
    }

private:
    // [pi, P] must agree with (-1)^{p-1} (-[P, pi]) in every degree.
    void self_test() const
    {
        const Poly x = Poly::variable(0), y = Poly::variable(1), z = Poly::variable(2);
        const std::array<MultiVec, 4> probes{
            MultiVec::function(x * y + z),
            MultiVec::vector_field(y, z * z, x),
            MultiVec::bivector(z, x * y, Poly::constant(1)),
            MultiVec::top(x * x + y),
        };
        for (const auto &p : probes) {
            if (!differential_conventions_agree(m_pi, p)) {
                throw error(error_kind::convention_mismatch, "[pi, P] and -(-1)^{p-1}[P, pi] disagree in degree "
                                                                 + std::to_string(p.degree()));
            }
        }
    }

    CohSlice build_slice(int k, int W) const
    {
        CohSlice s;
        s.degree = k;
        s.weight = W;
        s.terms = space_terms(k, W);
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            s.index.emplace(s.terms[i], i);
        }
        const auto source = space_terms(k - 1, W - m_data.shift());
        for (std::size_t i = 0; i < source.size(); ++i) {
            MultiVec e(k - 1);
            e[source[i].first] = Poly::term(source[i].second, 1);
            s.boundaries.insert(to_vec(s, differential(e)), SparseVec{{i, Rational(1)}});
        }
        s.labels = labels_of_weight(k, W);
        for (std::size_t i = 0; i < s.labels.size(); ++i) {
            auto v = to_vec(s, realize(s.labels[i]));
            s.boundaries.reduce(v);
            if (!s.classes.insert(std::move(v), SparseVec{{i, Rational(1)}})) {
                throw error(error_kind::internal, "representative of " + to_string(s.labels[i])
                                                      + " is not independent modulo coboundaries");
            }
        }
        return s;
    }

    struct state {
        std::recursive_mutex mutex;
        std::map<std::pair<int, int>, CohSlice> slices;
    };

    SingularityData m_data;
    MultiVec m_pi;
    int m_cap = 0;
    std::shared_ptr<state> m_state;
};

} // namespace pdef

#endif
