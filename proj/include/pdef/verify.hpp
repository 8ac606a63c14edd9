#ifndef PDEF_VERIFY_HPP
#define PDEF_VERIFY_HPP

// Verification suites run by the command line tool. Each check counts the
// cases it evaluated and keeps the first counterexample.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <pdef/cohomology.hpp>
#include <pdef/deform.hpp>
#include <pdef/linfty.hpp>
#include <pdef/multivec.hpp>

namespace pdef
{

struct CheckResult {
    std::string name;
    std::size_t cases = 0;
    bool passed = true;
    std::string counterexample;
    std::string detail;

    explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

    // Records one case; keeps the first failure.
    void record(bool ok, const std::string &what = {})
    {
        ++cases;
        if (!ok && passed) {
            passed = false;
            counterexample = what;
        }
    }
};

struct SuiteConfig {
    int weight_cap = 0; // coefficient-degree cap for basis labels
    int order = 3;
    int arity_cap = 4;
    std::uint64_t seed = 1;
    int samples = 20;
    int max_phi_power = 2;
};

using Rng = std::mt19937_64;

inline std::string describe(const std::vector<BasisLabel> &t)
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += (i ? ", " : "") + to_string(t[i]);
    }
    return out + ")";
}

inline std::string describe(const std::vector<CohClass> &t)
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += (i ? ", " : "") + to_string(t[i]);
    }
    return out + ")";
}

inline std::vector<BasisLabel> labels_under_cap(const Cohomology &h, int cap)
{
    std::vector<BasisLabel> out;
    for (int g = -1; g <= 2; ++g) {
        for (const auto &l : h.enumerate_basis(g, cap)) {
            out.push_back(l);
        }
    }
    return out;
}

// Sparse polynomial with up to `terms` monomials of total degree <= max_degree
// and integer coefficients in [-3, 3].
inline Poly random_poly(Rng &rng, unsigned max_degree, unsigned terms)
{
    Poly out;
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m{};
        unsigned left = static_cast<unsigned>(rng() % (max_degree + 1));
        for (std::size_t v = 0; v < 2; ++v) {
            m.exps[v] = static_cast<unsigned>(rng() % (left + 1));
            left -= m.exps[v];
        }
        m.exps[2] = left;
        out.add_term(m, Rational(static_cast<long>(rng() % 7) - 3));
    }
    return out;
}

inline MultiVec random_multivec(Rng &rng, int degree, unsigned max_degree = 3, unsigned terms = 2)
{
    MultiVec out(degree);
    for (std::size_t c = 0; c < out.components().size(); ++c) {
        out[c] = random_poly(rng, max_degree, terms);
    }
    return out;
}

// Labels sampled uniformly from `pool` until the arity-m output degree
// sum + 2 - m lies in -1..2.
inline std::vector<BasisLabel> sample_tuple(Rng &rng, const std::vector<BasisLabel> &pool, int m)
{
    while (true) {
        std::vector<BasisLabel> t;
        int deg = 0;
        for (int i = 0; i < m; ++i) {
            t.push_back(pool[rng() % pool.size()]);
            deg += t.back().g_degree();
        }
        const int out = deg + 2 - m;
        if (out >= -1 && out <= 2) {
            return t;
        }
    }
}

inline std::vector<CohClass> as_classes(const std::vector<BasisLabel> &t)
{
    std::vector<CohClass> out;
    for (const auto &l : t) {
        out.push_back(CohClass::of(l));
    }
    return out;
}

// Poisson property, cocycle representatives and the three bracket identities
// on H^1 representatives.
inline std::vector<CheckResult> verify_schouten(const Cohomology &h, const SuiteConfig &cfg)
{
    std::vector<CheckResult> out;
    const auto &data = h.data();
    CheckResult poisson{"poisson_property"};
    poisson.record(schouten(h.pi(), h.pi()).is_zero(), "[pi_phi, pi_phi] != 0");
    out.push_back(poisson);

    CheckResult cocycles{"representatives_are_cocycles"};
    for (const auto &l : labels_under_cap(h, cfg.weight_cap)) {
        cocycles.record(h.differential(h.realize(l)).is_zero(), to_string(l));
    }
    out.push_back(cocycles);

    std::vector<BasisLabel> as, bs;
    for (const auto &l : h.enumerate_basis(1, cfg.weight_cap)) {
        (l.kind == label_kind::type_a ? as : bs).push_back(l);
    }
    CheckResult aa{"A_A_bracket_vanishes"};
    for (const auto &a : as) {
        for (const auto &b : as) {
            aa.record(schouten(h.realize(a), h.realize(b)).is_zero(), describe({a, b}));
        }
    }
    out.push_back(aa);
    CheckResult ab{"A_B_bracket_is_exact"};
    for (const auto &a : as) {
        for (const auto &b : bs) {
            const MultiVec lhs = schouten(h.realize(a), h.realize(b));
            const MultiVec witness = (pow(data.phi(), static_cast<unsigned>(a.i)) * data.u(static_cast<std::size_t>(a.j)))
                                     * poisson_from_potential(data.u(static_cast<std::size_t>(b.j)));
            ab.record(lhs == -h.differential(witness), describe({a, b}));
        }
    }
    out.push_back(ab);
    CheckResult bb{"B_B_bracket_vanishes"};
    for (const auto &a : bs) {
        for (const auto &b : bs) {
            bb.record(schouten(h.realize(a), h.realize(b)).is_zero(), describe({a, b}));
        }
    }
    out.push_back(bb);
    return out;
}

// d f_2 - f_1 l_2 - T_2 on every pair of labels under the cap.
inline std::vector<CheckResult> verify_tables(const TransferState &state, const SuiteConfig &cfg)
{
    const auto &h = state.cohomology();
    CheckResult conv{"bracket_convention"};
    Rng rng(cfg.seed);
    for (int k = 0; k <= 3; ++k) {
        for (int s = 0; s < cfg.samples; ++s) {
            conv.record(differential_conventions_agree(h.pi(), random_multivec(rng, k)), "degree " + std::to_string(k));
        }
    }
    CheckResult e2{"E2_residual"};
    const auto labels = labels_under_cap(h, cfg.weight_cap);
    for (const auto &a : labels) {
        for (const auto &b : labels) {
            e2.record(state.check_E({CohClass::of(a), CohClass::of(b)}).is_zero(), describe({a, b}));
        }
    }
    return {conv, e2};
}

inline std::vector<CheckResult> verify_transfer(TransferState &state, const SuiteConfig &cfg, CohClass *witness = nullptr)
{
    std::vector<CheckResult> out;
    const auto &h = state.cohomology();
    const auto &data = h.data();
    state.transfer_up_to(cfg.arity_cap);
    Rng rng(cfg.seed);
    const auto pool = labels_under_cap(h, cfg.weight_cap);
    const auto h1 = h.enumerate_basis(1, cfg.weight_cap);

    if (cfg.arity_cap >= 3) {
        CheckResult t3{"T3_vanishes_on_H1"};
        for (std::size_t a = 0; a < h1.size(); ++a) {
            for (std::size_t b = a; b < h1.size(); ++b) {
                for (std::size_t c = b; c < h1.size(); ++c) {
                    const std::vector<BasisLabel> t{h1[a], h1[b], h1[c]};
                    t3.record(state.compute_T(as_classes(t)).is_zero(), describe(t));
                }
            }
        }
        out.push_back(t3);

        CheckResult lh1{"ell_vanishes_on_H1"};
        for (int m = 3; m <= cfg.arity_cap; ++m) {
            for (int s = 0; s < cfg.samples; ++s) {
                std::vector<BasisLabel> t;
                for (int i = 0; i < m; ++i) {
                    t.push_back(h1[rng() % h1.size()]);
                }
                lh1.record(state.ell(as_classes(t)).is_zero(), describe(t));
            }
        }
        out.push_back(lh1);
    }

    CheckResult cocycle{"T_is_cocycle"};
    CheckResult morphism{"E_residual"};
    CheckResult jac{"J_residual"};
    CheckResult skew{"skew_symmetry"};
    for (int m = 2; m <= cfg.arity_cap + 1; ++m) {
        for (int s = 0; s < cfg.samples; ++s) {
            const auto t = sample_tuple(rng, pool, m);
            const auto args = as_classes(t);
            const std::string name = "m=" + std::to_string(m) + " " + describe(t);
            if (m <= cfg.arity_cap) {
                cocycle.record(h.differential(state.compute_T(args)).is_zero(), name);
                morphism.record(state.check_E(args).is_zero(), name);
                // Swap the first two arguments.
                auto swapped = t;
                std::swap(swapped[0], swapped[1]);
                const int chi = -minus_one_pow(static_cast<long>(t[0].g_degree()) * t[1].g_degree());
                const auto sargs = as_classes(swapped);
                skew.record(state.ell(sargs) == Rational(chi) * state.ell(args)
                                && state.f(sargs) == Rational(chi) * state.f(args),
                            name);
            }
            if (m >= 3) {
                jac.record(state.jacobiator(args).is_zero(), name);
            }
        }
    }
    out.push_back(cocycle);
    out.push_back(morphism);
    out.push_back(jac);
    out.push_back(skew);

    if (cfg.arity_cap >= 3) {
        CheckResult l3{"ell3_phi_phi_top"};
        const auto phi = CohClass::of(BasisLabel::cas(1));
        const auto top = CohClass::of(BasisLabel::top(0, 0));
        const CohClass value = state.ell({phi, phi, top});
        l3.detail = to_string(value);
        if (!data.is_special()) {
            const Rational expected = make_rational(2 * data.d(), data.weights().abs_weight() - data.d());
            l3.record(value == CohClass::of(BasisLabel::cas(1), expected),
                      "expected " + to_string(expected) + "*Cas(1), got " + to_string(value));
        } else {
            l3.record(true);
        }
        if (witness) {
            *witness = value;
        }
        out.push_back(l3);
    }
    return out;
}

inline std::vector<CheckResult> verify_deform(const TransferState &state, const SuiteConfig &cfg)
{
    const auto &h = state.cohomology();
    Rng rng(cfg.seed);
    CheckResult jacobi{"jacobi_residual"};
    CheckResult mc{"mc_image_matches_generator"};
    CheckResult prefix{"order_prefixes"};
    CheckResult first{"first_order_class"};
    for (int s = 0; s < cfg.samples; ++s) {
        const auto fam = random_family(h, rng, cfg.order, cfg.max_phi_power);
        const std::string name = "sample " + std::to_string(s);
        const auto def = build_deformation(h, fam, cfg.order);
        jacobi.record(jacobi_residual(def, cfg.order).is_zero(), name);
        mc.record(mc_image(state, family_classes(h, fam, cfg.order), cfg.order) == def, name);
        bool ok = true;
        for (int k = 1; k < cfg.order; ++k) {
            const auto lower = build_deformation(h, fam, k);
            ok = ok && lower.tail == def.tail.truncated(k) && jacobi_residual(lower, k).is_zero();
        }
        prefix.record(ok, name);
        first.record(first_order_class(h, def) == family_classes(h, fam, 1)[1], name);
    }
    return {jacobi, mc, prefix, first};
}

inline std::vector<CheckResult> verify_gauge(const TransferState &state, const SuiteConfig &cfg)
{
    const auto &h = state.cohomology();
    const auto &data = h.data();
    Rng rng(cfg.seed);
    CheckResult poisson{"gauge_preserves_jacobi"};
    CheckResult invariant{"first_order_class_invariant"};
    CheckResult identity{"zero_gauge_is_identity"};
    CheckResult h0{"H0_gauge"};
    for (int s = 0; s < cfg.samples; ++s) {
        const std::string name = "sample " + std::to_string(s);
        const auto fam = random_family(h, rng, cfg.order, cfg.max_phi_power);
        const auto def = build_deformation(h, fam, cfg.order);
        NuSeries<MultiVec> xi(cfg.order, MultiVec(1));
        for (int n = 1; n <= cfg.order; ++n) {
            xi[n] = random_multivec(rng, 1, 2, 2);
        }
        const auto moved = gauge_apply(def, xi, cfg.order);
        poisson.record(moved.base == def.base && jacobi_residual(moved, cfg.order).is_zero(), name);
        invariant.record(first_order_class(h, moved) == first_order_class(h, def), name);
        identity.record(gauge_apply(def, NuSeries<MultiVec>(cfg.order, MultiVec(1)), cfg.order) == def, name);

        const auto gamma = family_classes(h, fam, cfg.order);
        NuSeries<CohClass> eta(cfg.order, CohClass(0));
        if (data.is_special()) {
            for (int n = 1; n <= cfg.order; ++n) {
                eta[n] = CohClass::of(BasisLabel::eul(static_cast<int>(rng() % 2)),
                                      Rational(static_cast<long>(rng() % 5) - 2));
            }
        }
        const auto gauged = gauge_special(state, gamma, eta, std::min(cfg.order, state.arity_cap()));
        const int m = gauged.order();
        const auto image = mc_image(state, gauged, m);
        h0.record(jacobi_residual(image, m).is_zero() && gauged[1] == gamma[1]
                      && (data.is_special() || gauged == gamma.truncated(m)),
                  name);
    }
    return {poisson, invariant, identity, h0};
}

} // namespace pdef

#endif
