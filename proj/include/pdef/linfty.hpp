#ifndef PDEF_LINFTY_HPP
#define PDEF_LINFTY_HPP

// Homotopy transfer of the Schouten dg Lie algebra onto H_phi: the maps
// l_m on cohomology and the L-infinity morphism f_m into multivectors.
// Values are computed on demand per sorted label tuple and memoized.

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include <pdef/cohomology.hpp>
#include <pdef/combinatorics.hpp>
#include <pdef/error.hpp>
#include <pdef/multivec.hpp>

namespace pdef
{

using LabelTuple = std::vector<BasisLabel>;

// Sorts t into canonical order; returns chi(sigma; t) where sorted = t_sigma.
inline int canonicalize(LabelTuple &t)
{
    Permutation sigma(t.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    std::stable_sort(sigma.begin(), sigma.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    std::vector<int> degrees;
    degrees.reserve(t.size());
    for (const auto &l : t) {
        degrees.push_back(l.g_degree());
    }
    const int chi = koszul_chi(sigma, degrees);
    LabelTuple sorted;
    sorted.reserve(t.size());
    for (auto i : sigma) {
        sorted.push_back(t[i]);
    }
    t = std::move(sorted);
    return chi;
}

// A skew map vanishes when an even-degree label repeats.
inline bool has_even_repeat(const LabelTuple &sorted)
{
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k] == sorted[k - 1] && sorted[k].g_degree() % 2 == 0) {
            return true;
        }
    }
    return false;
}

inline int total_degree(const std::vector<int> &degrees)
{
    return std::accumulate(degrees.begin(), degrees.end(), 0);
}

// e_{s,t}(tau) = (-1)^{s-1} (-1)^{(t-1) sum_{p<=s} |xi_tau(p)|}
inline int e_sign(std::size_t s, std::size_t t, const Permutation &tau, const std::vector<int> &degrees)
{
    long sum = 0;
    for (std::size_t p = 0; p < s; ++p) {
        sum += degrees[tau[p]];
    }
    return minus_one_pow(static_cast<long>(s) - 1) * minus_one_pow((static_cast<long>(t) - 1) * sum);
}

// f2 on a pair of basis labels, in any order. Pairs not listed vanish.
//   (Cas F, B s)      -> F'(phi) u_s
//   (Cas F, Top G 0)  -> G F'(phi) e / (|w| - d)        (generic case only)
//   (A F k, B s)      -> F u_k pi_{u_s}
//   (Eul F, B s)      -> ((w(u_s)-|w|)/|w| (F-F(0))/phi - F'(phi)) u_s e
inline MultiVec f2_table(const Cohomology &h, const BasisLabel &first, const BasisLabel &second)
{
    h.validate(first);
    h.validate(second);
    LabelTuple t{first, second};
    const int chi = canonicalize(t);
    const BasisLabel &a = t[0];
    const BasisLabel &b = t[1];
    const auto &data = h.data();
    const auto &w = data.weights();
    const int aw = w.abs_weight();
    MultiVec out(a.g_degree() + b.g_degree());
    auto phi_pow = [&](int k) { return pow(data.phi(), static_cast<unsigned>(k)); };
    if (a.kind == label_kind::casimir && b.kind == label_kind::type_b && a.i >= 1) {
        out = MultiVec::function(Rational(a.i) * phi_pow(a.i - 1) * data.u(static_cast<std::size_t>(b.j)));
    } else if (a.kind == label_kind::casimir && b.kind == label_kind::top && !data.is_special() && b.j == 0
               && a.i >= 1) {
        const Rational c = make_rational(a.i, aw - data.d());
        out = (c * phi_pow(a.i - 1 + b.i)) * euler_field(w);
    } else if (a.kind == label_kind::type_a && b.kind == label_kind::type_b) {
        out = (phi_pow(a.i) * data.u(static_cast<std::size_t>(a.j)))
              * poisson_from_potential(data.u(static_cast<std::size_t>(b.j)));
    } else if (a.kind == label_kind::euler && b.kind == label_kind::type_b && a.i >= 1) {
        const int wu = w.of(data.basis()[static_cast<std::size_t>(b.j)]);
        const Rational c = make_rational(wu - aw, aw) - a.i;
        out = (c * phi_pow(a.i - 1) * data.u(static_cast<std::size_t>(b.j))) * euler_field(w);
    }
    if (chi < 0) {
        out *= Rational(-1);
    }
    return out;
}

struct TransferOptions {
    int arity_cap = 4;
};

// Lazily evaluated L-infinity structure (l_2, l_3, ...) on H_phi together
// with the morphism (f_1, f_2, ...) into the Schouten dg Lie algebra.
class TransferState
{
public:
    explicit TransferState(Cohomology h, TransferOptions opts = {})
        : m_h(std::move(h)), m_opts(opts), m_memo(std::make_shared<memo>())
    {
    }

    const Cohomology &cohomology() const
    {
        return m_h;
    }

    int arity_cap() const
    {
        return m_opts.arity_cap;
    }

    // Highest arity m for which l_m and f_m may be evaluated.
    int established() const
    {
        return m_established;
    }

    // Makes l_m and f_m available and evaluates them on the given tuples.
    // Requires l_{m-1}, f_{m-1}.
    void transfer_step(int m, const std::vector<std::vector<CohClass>> &tuples = {})
    {
        if (m < 3) {
            throw error(error_kind::arity_mismatch, "transfer steps start at arity 3; arity 2 comes from the f2 tables");
        }
        if (m > m_opts.arity_cap) {
            throw error(error_kind::arity_cap_exceeded, "arity " + std::to_string(m) + " exceeds the cap "
                                                            + std::to_string(m_opts.arity_cap));
        }
        if (m - 1 > m_established) {
            throw error(error_kind::missing_lower_maps, "arity " + std::to_string(m - 1) + " has not been transferred");
        }
        m_established = std::max(m_established, m);
        for (const auto &t : tuples) {
            if (t.size() != static_cast<std::size_t>(m)) {
                throw error(error_kind::arity_mismatch, "tuple of length " + std::to_string(t.size()) + " for arity "
                                                            + std::to_string(m));
            }
            f(t);
            ell(t);
        }
    }

    void transfer_up_to(int m)
    {
        for (int k = m_established + 1; k <= m; ++k) {
            transfer_step(k);
        }
    }

    MultiVec f(const std::vector<CohClass> &args) const
    {
        const auto n = args.size();
        require_arity(static_cast<int>(n));
        MultiVec out(g_degree_of(args) + 1 - static_cast<int>(n) + 1);
        expand(args, [&](const LabelTuple &t, const Rational &c) { out += c * f_labels(t); });
        return out;
    }

    CohClass ell(const std::vector<CohClass> &args) const
    {
        const auto n = args.size();
        require_arity(static_cast<int>(n));
        CohClass out(g_degree_of(args) + 2 - static_cast<int>(n));
        if (n < 2) {
            return out;
        }
        expand(args, [&](const LabelTuple &t, const Rational &c) { out += c * ell_labels(t); });
        return out;
    }

    MultiVec f_labels(LabelTuple t) const
    {
        if (t.size() == 1) {
            return m_h.realize(t[0]);
        }
        if (t.size() == 2) {
            return f2_table(m_h, t[0], t[1]);
        }
        const int sign = canonicalize(t);
        MultiVec out = entry(t).f;
        if (sign < 0) {
            out *= Rational(-1);
        }
        return out;
    }

    CohClass ell_labels(LabelTuple t) const
    {
        if (t.size() < 2) {
            return CohClass(t.empty() ? 0 : t[0].g_degree() + 1);
        }
        const int sign = canonicalize(t);
        CohClass out = entry(t).ell;
        if (sign < 0) {
            out *= Rational(-1);
        }
        return out;
    }

    // T_n = S_n - U_n, built from f_1..f_{n-1} and l_2..l_{n-1}.
    MultiVec compute_T(const std::vector<CohClass> &args) const
    {
        const int n = static_cast<int>(args.size());
        if (n - 1 > m_established) {
            throw error(error_kind::missing_lower_maps, "T_" + std::to_string(n) + " needs arity " + std::to_string(n - 1));
        }
        const auto degrees = degrees_of(args);
        MultiVec out(total_degree(degrees) + 2 - n + 1);
        const auto un = static_cast<std::size_t>(n);
        // S_n
        for (std::size_t k = 2; k + 1 <= un; ++k) {
            const std::size_t j = un + 1 - k;
            const int base = minus_one_pow(static_cast<long>(k) * static_cast<long>(j - 1));
            for (const auto &sigma : shuffles(k, un - k)) {
                const int sign = base * koszul_chi(sigma, degrees);
                CohClass inner = ell(pick(args, sigma, 0, k));
                if (inner.is_zero()) {
                    continue;
                }
                std::vector<CohClass> outer{inner};
                for (std::size_t p = k; p < un; ++p) {
                    outer.push_back(args[sigma[p]]);
                }
                MultiVec v = f(outer);
                if (sign < 0) {
                    v *= Rational(-1);
                }
                add_into(out, v);
            }
        }
        // U_n
        for (std::size_t s = 1; s < un; ++s) {
            const std::size_t t = un - s;
            for (const auto &tau : shuffles(s, t)) {
                if (tau[0] != 0) {
                    continue;
                }
                const int sign = koszul_chi(tau, degrees) * e_sign(s, t, tau, degrees);
                MultiVec left = f(pick(args, tau, 0, s));
                if (left.is_zero()) {
                    continue;
                }
                MultiVec right = f(pick(args, tau, s, un));
                MultiVec v = schouten(left, right);
                if (sign > 0) {
                    v *= Rational(-1);
                }
                add_into(out, v);
            }
        }
        return out;
    }

    // J_n from l_2..l_{n-1}; vanishes for an L-infinity structure with l_1 = 0.
    CohClass jacobiator(const std::vector<CohClass> &args) const
    {
        const auto un = args.size();
        const auto degrees = degrees_of(args);
        CohClass out(total_degree(degrees) + 3 - static_cast<int>(un));
        for (std::size_t i = 2; i + 1 <= un; ++i) {
            const std::size_t j = un + 1 - i;
            const int base = minus_one_pow(static_cast<long>(i) * static_cast<long>(j - 1));
            for (const auto &sigma : shuffles(i, un - i)) {
                CohClass inner = ell(pick(args, sigma, 0, i));
                if (inner.is_zero()) {
                    continue;
                }
                std::vector<CohClass> outer{inner};
                for (std::size_t p = i; p < un; ++p) {
                    outer.push_back(args[sigma[p]]);
                }
                out += Rational(base * koszul_chi(sigma, degrees)) * ell(outer);
            }
        }
        return out;
    }

    // d f_n - f_1 l_n - T_n; zero exactly when the morphism equation holds.
    MultiVec check_E(const std::vector<CohClass> &args) const
    {
        MultiVec lhs = m_h.differential(f(args));
        if (args.size() >= 2) {
            add_into(lhs, -m_h.f1(ell(args)));
        }
        if (args.size() >= 2) {
            add_into(lhs, -compute_T(args));
        }
        return lhs;
    }

private:
    struct entry_t {
        MultiVec t;
        CohClass ell;
        MultiVec f;
    };

    struct memo {
        std::recursive_mutex mutex;
        std::map<LabelTuple, entry_t> table;
    };

    static std::vector<int> degrees_of(const std::vector<CohClass> &args)
    {
        std::vector<int> out;
        out.reserve(args.size());
        for (const auto &a : args) {
            out.push_back(a.g_degree());
        }
        return out;
    }

    static int g_degree_of(const std::vector<CohClass> &args)
    {
        return total_degree(degrees_of(args));
    }

    static std::vector<CohClass> pick(const std::vector<CohClass> &args, const Permutation &p, std::size_t from,
                                      std::size_t to)
    {
        std::vector<CohClass> out;
        for (std::size_t k = from; k < to; ++k) {
            out.push_back(args[p[k]]);
        }
        return out;
    }

    // Adds v to out when degrees agree; a zero v of another degree is ignored.
    static void add_into(MultiVec &out, const MultiVec &v)
    {
        if (v.is_zero()) {
            return;
        }
        if (out.is_zero() && out.degree() != v.degree()) {
            out = v;
            return;
        }
        out += v;
    }

    void require_arity(int n) const
    {
        if (n > m_opts.arity_cap) {
            throw error(error_kind::arity_cap_exceeded, "arity " + std::to_string(n) + " exceeds the cap "
                                                            + std::to_string(m_opts.arity_cap));
        }
        if (n > std::max(m_established, 2)) {
            throw error(error_kind::missing_lower_maps, "arity " + std::to_string(n) + " has not been transferred");
        }
    }

    template <typename F>
    static void expand(const std::vector<CohClass> &args, F &&fn)
    {
        LabelTuple labels(args.size());
        std::function<void(std::size_t, const Rational &)> rec = [&](std::size_t k, const Rational &c) {
            if (k == args.size()) {
                fn(labels, c);
                return;
            }
            for (const auto &[l, v] : args[k].coeffs()) {
                labels[k] = l;
                rec(k + 1, c * v);
            }
        };
        rec(0, Rational(1));
    }

    static bool all_h1(const LabelTuple &t)
    {
        return std::all_of(t.begin(), t.end(), [](const BasisLabel &l) { return l.g_degree() == 1; });
    }

    // Memoized T, l and f on a sorted tuple.
    const entry_t &entry(const LabelTuple &sorted) const
    {
        std::lock_guard lock(m_memo->mutex);
        auto it = m_memo->table.find(sorted);
        if (it != m_memo->table.end()) {
            return it->second;
        }
        const int n = static_cast<int>(sorted.size());
        int deg = 0;
        for (const auto &l : sorted) {
            deg += l.g_degree();
        }
        entry_t e{MultiVec(deg + 3 - n), CohClass(deg + 2 - n), MultiVec(deg + 2 - n)};
        if (!has_even_repeat(sorted)) {
            std::vector<CohClass> args;
            for (const auto &l : sorted) {
                args.push_back(CohClass::of(l));
            }
            e.t = compute_T(args);
            e.ell = m_h.project(e.t);
            e.ell *= Rational(-1);
            if (n == 2) {
                e.f = f2_table(m_h, sorted[0], sorted[1]);
            } else if (!all_h1(sorted)) {
                MultiVec target = e.t;
                add_into(target, m_h.f1(e.ell));
                e.f = m_h.solve_coboundary(target);
            }
        }
        return m_memo->table.emplace(sorted, std::move(e)).first->second;
    }

    Cohomology m_h;
    TransferOptions m_opts;
    int m_established = 2;
    std::shared_ptr<memo> m_memo;
};

} // namespace pdef

#endif
