#ifndef PDEF_DEFORM_HPP
#define PDEF_DEFORM_HPP

// Truncated formal deformations pi_phi + sum pi_n nu^n of the Poisson
// bracket of phi, their generator from coefficient families, the
// Maurer-Cartan image of H^1-series and gauge actions.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pdef/cohomology.hpp>
#include <pdef/error.hpp>
#include <pdef/linfty.hpp>
#include <pdef/multivec.hpp>

namespace pdef
{

// Coefficients of nu^1..nu^m; index n is the coefficient of nu^n.
template <typename T>
class NuSeries
{
public:
    NuSeries(int order, T zero) : m_zero(std::move(zero)), m_coeffs(static_cast<std::size_t>(check(order)), m_zero) {}

    int order() const
    {
        return static_cast<int>(m_coeffs.size());
    }

    const T &zero() const
    {
        return m_zero;
    }

    T &operator[](int n)
    {
        return m_coeffs.at(index(n));
    }

    const T &operator[](int n) const
    {
        return m_coeffs.at(index(n));
    }

    bool is_zero() const
    {
        for (const auto &c : m_coeffs) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    NuSeries truncated(int m) const
    {
        NuSeries out(m, m_zero);
        for (int n = 1; n <= std::min(m, order()); ++n) {
            out[n] = (*this)[n];
        }
        return out;
    }

    friend bool operator==(const NuSeries &a, const NuSeries &b)
    {
        return a.m_coeffs == b.m_coeffs;
    }

private:
    static int check(int order)
    {
        if (order < 1) {
            throw error(error_kind::arity_mismatch, "series order must be at least 1");
        }
        return order;
    }

    std::size_t index(int n) const
    {
        if (n < 1 || n > order()) {
            throw std::out_of_range("nu-power " + std::to_string(n) + " outside 1.." + std::to_string(order()));
        }
        return static_cast<std::size_t>(n - 1);
    }

    T m_zero;
    std::vector<T> m_coeffs;
};

// pi_* = base + sum_n tail[n] nu^n.
struct Deformation {
    MultiVec base;
    NuSeries<MultiVec> tail;

    int order() const
    {
        return tail.order();
    }

    // pi_n with pi_0 = base.
    const MultiVec &at(int n) const
    {
        return n == 0 ? base : tail[n];
    }

    friend bool operator==(const Deformation &, const Deformation &) = default;
};

// Families (c^k_{l,i}) and (cbar^k_r).
struct CoeffFamily {
    std::map<std::tuple<int, int, int>, Rational> c; // (k, l, i)
    std::map<std::pair<int, int>, Rational> cbar;    // (k, r)

    int max_order() const
    {
        int out = 0;
        for (const auto &[key, v] : c) {
            out = std::max(out, std::get<0>(key));
        }
        for (const auto &[key, v] : cbar) {
            out = std::max(out, key.first);
        }
        return out;
    }

    friend bool operator==(const CoeffFamily &, const CoeffFamily &) = default;
};

inline void validate_family(const Cohomology &h, const CoeffFamily &fam)
{
    for (const auto &[key, v] : fam.c) {
        const auto [k, l, i] = key;
        if (k < 1 || l < 0) {
            throw error(error_kind::invalid_family, "c entry needs k >= 1 and l >= 0");
        }
        try {
            h.validate(BasisLabel::a(l, i));
        } catch (const error &e) {
            throw error(error_kind::invalid_family, "c^" + std::to_string(k) + "_{" + std::to_string(l) + ","
                                                        + std::to_string(i) + "}: index i outside E_phi");
        }
    }
    for (const auto &[key, v] : fam.cbar) {
        const auto [k, r] = key;
        if (k < 1) {
            throw error(error_kind::invalid_family, "cbar entry needs k >= 1");
        }
        if (r < 1 || r >= h.data().mu()) {
            throw error(error_kind::invalid_family, "cbar^" + std::to_string(k) + "_" + std::to_string(r)
                                                        + ": r outside 1.." + std::to_string(h.data().mu() - 1));
        }
    }
}

// gamma_n = sum c^n_{l,i} A(l,i) + sum cbar^n_r B(r), n = 1..m.
inline NuSeries<CohClass> family_classes(const Cohomology &h, const CoeffFamily &fam, int m)
{
    validate_family(h, fam);
    NuSeries<CohClass> out(m, CohClass(1));
    for (const auto &[key, v] : fam.c) {
        const auto [k, l, i] = key;
        if (k <= m) {
            out[k].add(BasisLabel::a(l, i), v);
        }
    }
    for (const auto &[key, v] : fam.cbar) {
        if (key.first <= m) {
            out[key.first].add(BasisLabel::b(key.second), v);
        }
    }
    return out;
}

// pi_n = sum_{a+b=n} c^a_{l,i} cbar^b_r phi^l u_i pi_{u_r}
//      + sum c^n_{l,j} phi^l u_j pi_phi + sum cbar^n_s pi_{u_s}.
inline Deformation build_deformation(const Cohomology &h, const CoeffFamily &fam, int m)
{
    validate_family(h, fam);
    const auto &data = h.data();
    Deformation out{h.pi(), NuSeries<MultiVec>(m, MultiVec(2))};
    auto phi_u = [&](int l, int i) {
        return pow(data.phi(), static_cast<unsigned>(l)) * data.u(static_cast<std::size_t>(i));
    };
    for (const auto &[key, v] : fam.c) {
        const auto [k, l, i] = key;
        if (k <= m) {
            out.tail[k] += v * (phi_u(l, i) * h.pi());
        }
    }
    for (const auto &[key, v] : fam.cbar) {
        if (key.first <= m) {
            out.tail[key.first] += v * poisson_from_potential(data.u(static_cast<std::size_t>(key.second)));
        }
    }
    for (const auto &[ckey, cv] : fam.c) {
        const auto [a, l, i] = ckey;
        for (const auto &[bkey, bv] : fam.cbar) {
            const int n = a + bkey.first;
            if (n <= m) {
                out.tail[n] += Rational(cv * bv)
                               * (phi_u(l, i) * poisson_from_potential(data.u(static_cast<std::size_t>(bkey.second))));
            }
        }
    }
    return out;
}

// Coefficients of [pi_*, pi_*]_S at nu^1..nu^m.
inline NuSeries<MultiVec> jacobi_residual(const Deformation &pi, int m)
{
    NuSeries<MultiVec> out(m, MultiVec(3));
    for (int n = 1; n <= m; ++n) {
        for (int a = 0; a <= n; ++a) {
            const int b = n - a;
            if (a > pi.order() || b > pi.order()) {
                continue;
            }
            out[n] += schouten(pi.at(a), pi.at(b));
        }
    }
    return out;
}

// Coefficient of nu^n in fn(g, ..., g) for an arity-k multilinear fn.
template <typename R, typename F>
R series_power_coefficient(const NuSeries<CohClass> &g, int k, int n, R zero, F &&fn)
{
    R out = std::move(zero);
    std::vector<CohClass> args(static_cast<std::size_t>(k));
    // Enumerate compositions of n into k positive parts.
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            if (left < 1 || left > g.order()) {
                return;
            }
            args[static_cast<std::size_t>(pos)] = g[left];
            out += fn(args);
            return;
        }
        for (int o = 1; o <= std::min(left - (k - 1 - pos), g.order()); ++o) {
            if (g[o].is_zero()) {
                continue;
            }
            args[static_cast<std::size_t>(pos)] = g[o];
            rec(pos + 1, left - o);
        }
    };
    if (k >= 1 && n >= k) {
        rec(0, n);
    }
    return out;
}

inline void require_h1(const NuSeries<CohClass> &g)
{
    for (int n = 1; n <= g.order(); ++n) {
        if (!g[n].is_zero() && g[n].g_degree() != 1) {
            throw error(error_kind::invalid_label, "Maurer-Cartan series must lie in H^1");
        }
    }
}

// sum_n (-1)^{1+n(n+1)/2}/n! f_n(g, ..., g). Terms with n beyond the arity
// cap vanish since f_n is zero on H^1 tuples for n >= 3.
inline Deformation mc_image(const TransferState &state, const NuSeries<CohClass> &g, int m)
{
    require_h1(g);
    const auto &h = state.cohomology();
    Deformation out{h.pi(), NuSeries<MultiVec>(m, MultiVec(2))};
    const int top = std::min({m, state.arity_cap(), std::max(state.established(), 2)});
    Rational factorial(1);
    for (int k = 1; k <= top; ++k) {
        factorial *= k;
        const Rational weight = Rational(minus_one_pow(1 + static_cast<long>(k) * (k + 1) / 2)) / factorial;
        for (int n = k; n <= m; ++n) {
            MultiVec v = series_power_coefficient(g, k, n, MultiVec(2),
                                                  [&](const std::vector<CohClass> &a) { return state.f(a); });
            out.tail[n] += weight * v;
        }
    }
    return out;
}

// e^{ad_xi}(pi_*) truncated at nu^m; xi holds vector fields.
inline Deformation gauge_apply(const Deformation &pi, const NuSeries<MultiVec> &xi, int m)
{
    // Full series with constant term at index 0.
    std::vector<MultiVec> current(static_cast<std::size_t>(m + 1), MultiVec(2));
    for (int n = 0; n <= std::min(m, pi.order()); ++n) {
        current[static_cast<std::size_t>(n)] = pi.at(n);
    }
    std::vector<MultiVec> total = current;
    Rational factorial(1);
    for (int k = 1; k <= m; ++k) {
        factorial *= k;
        std::vector<MultiVec> next(static_cast<std::size_t>(m + 1), MultiVec(2));
        for (int a = 1; a <= std::min(m, xi.order()); ++a) {
            if (xi[a].is_zero()) {
                continue;
            }
            for (int b = 0; a + b <= m; ++b) {
                next[static_cast<std::size_t>(a + b)] += schouten(xi[a], current[static_cast<std::size_t>(b)]);
            }
        }
        current = std::move(next);
        for (int n = 0; n <= m; ++n) {
            total[static_cast<std::size_t>(n)] += Rational(Rational(1) / factorial) * current[static_cast<std::size_t>(n)];
        }
    }
    Deformation out{total[0], NuSeries<MultiVec>(m, MultiVec(2))};
    for (int n = 1; n <= m; ++n) {
        out.tail[n] = total[static_cast<std::size_t>(n)];
    }
    return out;
}

// g - sum_k (-1)^{k(k-1)/2}/(k-1)! l_k(xi, g, ..., g) with xi in H^0.
inline NuSeries<CohClass> gauge_special(const TransferState &state, const NuSeries<CohClass> &g,
                                        const NuSeries<CohClass> &xi, int m)
{
    require_h1(g);
    for (int n = 1; n <= xi.order(); ++n) {
        if (!xi[n].is_zero() && xi[n].g_degree() != 0) {
            throw error(error_kind::invalid_label, "gauge parameter must lie in H^0");
        }
    }
    NuSeries<CohClass> out = g.truncated(m);
    if (xi.is_zero()) {
        return out;
    }
    if (m > state.arity_cap()) {
        throw error(error_kind::arity_cap_exceeded, "order " + std::to_string(m) + " needs l_" + std::to_string(m)
                                                        + ", above the arity cap "
                                                        + std::to_string(state.arity_cap()));
    }
    Rational factorial(1);
    for (int k = 2; k <= m; ++k) {
        factorial *= (k - 1);
        const Rational weight = Rational(minus_one_pow(static_cast<long>(k) * (k - 1) / 2)) / factorial;
        for (int n = k; n <= m; ++n) {
            CohClass acc(1);
            for (int a = 1; a <= std::min(n - (k - 1), xi.order()); ++a) {
                if (xi[a].is_zero()) {
                    continue;
                }
                acc += series_power_coefficient(g, k - 1, n - a, CohClass(1), [&](const std::vector<CohClass> &rest) {
                    std::vector<CohClass> args{xi[a]};
                    args.insert(args.end(), rest.begin(), rest.end());
                    return state.ell(args);
                });
            }
            out[n] -= weight * acc;
        }
    }
    return out;
}

// Class of pi_1 in H^1.
inline CohClass first_order_class(const Cohomology &h, const Deformation &pi)
{
    return h.project(pi.at(1));
}

// Random family of orders 1..m with phi-powers <= max_phi_power and entries
// p/q, |p| <= 3, 1 <= q <= 3. Each candidate index is used with
// probability 1/3.
template <typename Rng>
CoeffFamily random_family(const Cohomology &h, Rng &rng, int m, int max_phi_power)
{
    CoeffFamily fam;
    const auto &data = h.data();
    auto coeff = [&] {
        long p = 0;
        while (p == 0) {
            p = static_cast<long>(rng() % 7) - 3;
        }
        const long q = static_cast<long>(rng() % 3) + 1;
        Rational r(p, q);
        r.canonicalize();
        return r;
    };
    for (int k = 1; k <= m; ++k) {
        for (int l = 0; l <= max_phi_power; ++l) {
            for (int i = data.is_special() ? 0 : 1; i < data.mu(); ++i) {
                if (rng() % 3 == 0) {
                    fam.c[{k, l, i}] = coeff();
                }
            }
        }
        for (int r = 1; r < data.mu(); ++r) {
            if (rng() % 3 == 0) {
                fam.cbar[{k, r}] = coeff();
            }
        }
    }
    return fam;
}

} // namespace pdef

#endif
