#ifndef PDEF_SINGULARITY_HPP
#define PDEF_SINGULARITY_HPP

// Milnor algebra F[x,y,z]/<dphi/dx, dphi/dy, dphi/dz> of a weight-homogeneous
// polynomial, computed slice by slice in the weighted grading.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <pdef/algebra.hpp>
#include <pdef/error.hpp>
#include <pdef/linalg.hpp>

namespace pdef
{

// Monomials of one weighted degree together with the echelon basis of the
// Jacobian ideal restricted to them.
struct JacobianSlice {
    int degree = 0;
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t, MonomialOrder> index;
    EchelonBasis ideal;

    std::size_t size() const
    {
        return monomials.size();
    }

    SparseVec to_vec(const Poly &p) const
    {
        SparseVec v;
        for (const auto &[m, c] : p.terms()) {
            v.emplace(index.at(m), c);
        }
        return v;
    }

    Poly to_poly(const SparseVec &v) const
    {
        Poly out;
        for (const auto &[i, c] : v) {
            out.add_term(monomials[i], c);
        }
        return out;
    }
};

inline JacobianSlice build_jacobian_slice(const Poly &phi, const WeightSystem &w, int d, int deg)
{
    JacobianSlice s;
    s.degree = deg;
    s.monomials = monomials_of_weight(w, deg);
    std::sort(s.monomials.begin(), s.monomials.end(), MonomialOrder{});
    for (std::size_t i = 0; i < s.monomials.size(); ++i) {
        s.index.emplace(s.monomials[i], i);
    }
    const auto grad = gradient(phi);
    for (std::size_t v = 0; v < 3; ++v) {
        if (grad[v].is_zero()) {
            continue;
        }
        for (const auto &m : monomials_of_weight(w, deg - (d - w[v]))) {
            s.ideal.insert(s.to_vec(Poly::term(m, 1) * grad[v]), {});
        }
    }
    return s;
}

namespace detail
{

inline int require_homogeneous(const Poly &phi, const WeightSystem &w)
{
    const auto d = weighted_degree(phi, w);
    if (!d) {
        throw error(error_kind::not_homogeneous, "'" + to_string(phi) + "' is not weight-homogeneous for weights "
                                                     + to_string(w));
    }
    return *d;
}

} // namespace detail

// Echelon rows of the weighted-degree deg part of the Jacobian ideal.
inline std::vector<Poly> jacobian_slice(const Poly &phi, const WeightSystem &w, int deg)
{
    const int d = detail::require_homogeneous(phi, w);
    const auto s = build_jacobian_slice(phi, w, d, deg);
    std::vector<Poly> out;
    for (const auto &[pivot, row] : s.ideal.rows()) {
        out.push_back(s.to_poly(row.vec));
    }
    return out;
}

// 3d - 2|w|: top degree of the Milnor algebra.
inline int socle_degree(int d, const WeightSystem &w)
{
    return 3 * d - 2 * w.abs_weight();
}

// prod_i (d - w_i) / w_i
inline Rational milnor_product_formula(int d, const WeightSystem &w)
{
    Rational out(1);
    for (std::size_t i = 0; i < 3; ++i) {
        out *= make_rational(d - w[i], w[i]);
    }
    return out;
}

class SingularityData
{
public:
    SingularityData(Poly phi, WeightSystem w, int d, std::vector<Monomial> basis,
                    std::map<int, JacobianSlice> slices)
        : m_phi(std::move(phi)), m_w(w), m_d(d), m_basis(std::move(basis)), m_cache(std::make_shared<cache>())
    {
        m_cache->slices = std::move(slices);
    }

    const Poly &phi() const
    {
        return m_phi;
    }

    const WeightSystem &weights() const
    {
        return m_w;
    }

    int d() const
    {
        return m_d;
    }

    int mu() const
    {
        return static_cast<int>(m_basis.size());
    }

    const std::vector<Monomial> &basis() const
    {
        return m_basis;
    }

    Poly u(std::size_t i) const
    {
        return Poly::term(m_basis.at(i), 1);
    }

    // d == |w|
    bool is_special() const
    {
        return m_d == m_w.abs_weight();
    }

    // d - |w|: the weight shift of the Poisson coboundary.
    int shift() const
    {
        return m_d - m_w.abs_weight();
    }

    const JacobianSlice &slice(int deg) const
    {
        std::lock_guard lock(m_cache->mutex);
        auto it = m_cache->slices.find(deg);
        if (it == m_cache->slices.end()) {
            it = m_cache->slices.emplace(deg, build_jacobian_slice(m_phi, m_w, m_d, deg)).first;
        }
        return it->second;
    }

private:
    struct cache {
        std::mutex mutex;
        std::map<int, JacobianSlice> slices;
    };

    Poly m_phi;
    WeightSystem m_w;
    int m_d;
    std::vector<Monomial> m_basis;
    std::shared_ptr<cache> m_cache;
};

// Throws NotIsolated unless every slice in (socle, socle + max(d, |w|)] lies
// in the Jacobian ideal and the complement dimension matches the product
// formula. Returns mu.
inline int check_isolated(const Poly &phi, const WeightSystem &w)
{
    const int d = detail::require_homogeneous(phi, w);
    const int socle = socle_degree(d, w);
    const int upper = socle + std::max(d, w.abs_weight());
    for (int deg = std::max(socle + 1, 0); deg <= upper; ++deg) {
        const auto s = build_jacobian_slice(phi, w, d, deg);
        if (s.ideal.rank() != s.size()) {
            throw error(error_kind::not_isolated, "'" + to_string(phi)
                                                      + "' has no isolated singularity: the Jacobian ideal misses "
                                                        "monomials of weighted degree "
                                                      + std::to_string(deg));
        }
    }
    long mu = 0;
    for (int deg = 0; deg <= socle; ++deg) {
        const auto s = build_jacobian_slice(phi, w, d, deg);
        mu += static_cast<long>(s.size() - s.ideal.rank());
    }
    if (mu == 0) {
        throw error(error_kind::not_isolated, "'" + to_string(phi) + "' is smooth at the origin");
    }
    if (milnor_product_formula(d, w) != Rational(mu)) {
        throw error(error_kind::not_isolated, "Milnor number " + std::to_string(mu) + " disagrees with the product formula "
                                                  + to_string(milnor_product_formula(d, w)));
    }
    return static_cast<int>(mu);
}

// Monomial basis of the Milnor algebra, sorted by weighted degree and then
// monomial order. degree_cap bounds the slices the isolation test may build.
inline SingularityData milnor_basis(const Poly &phi, const WeightSystem &w, int degree_cap = 1 << 12)
{
    const int d = detail::require_homogeneous(phi, w);
    const int socle = socle_degree(d, w);
    if (socle + std::max(d, w.abs_weight()) > degree_cap) {
        throw error(error_kind::slice_cap_exceeded, "isolation test needs slices up to weighted degree "
                                                        + std::to_string(socle + std::max(d, w.abs_weight()))
                                                        + ", above the cap " + std::to_string(degree_cap));
    }
    check_isolated(phi, w);
    std::vector<Monomial> basis;
    std::map<int, JacobianSlice> slices;
    for (int deg = 0; deg <= socle; ++deg) {
        auto s = build_jacobian_slice(phi, w, d, deg);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s.ideal.is_pivot(i)) {
                basis.push_back(s.monomials[i]);
            }
        }
        slices.emplace(deg, std::move(s));
    }
    // Within a slice the non-pivot columns appear in index order, which is the
    // monomial order, so basis is already sorted.
    return SingularityData(phi, w, d, std::move(basis), std::move(slices));
}

// Infers the weights; ambiguity is reported as NotIsolated since an isolated
// weight-homogeneous singularity has unique weights.
inline SingularityData milnor_basis(const Poly &phi)
{
    WeightSystem w(1, 1, 1);
    try {
        w = infer_weights(phi);
    } catch (const error &e) {
        if (e.kind() != error_kind::ambiguous_weights) {
            throw;
        }
        throw error(error_kind::not_isolated,
                    "'" + to_string(phi) + "' has several weight systems, so its singularity is not isolated");
    }
    return milnor_basis(phi, w);
}

// Unique representative supported on monomials outside the pivot columns of
// each Jacobian slice.
inline Poly normal_form(const Poly &p, const SingularityData &data)
{
    std::map<int, Poly> parts;
    for (const auto &[m, c] : p.terms()) {
        parts[data.weights().of(m)].add_term(m, c);
    }
    Poly out;
    for (const auto &[deg, part] : parts) {
        const auto &s = data.slice(deg);
        auto v = s.to_vec(part);
        s.ideal.reduce(v);
        out += s.to_poly(v);
    }
    return out;
}

} // namespace pdef

#endif
