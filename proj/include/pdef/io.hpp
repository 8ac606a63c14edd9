#ifndef PDEF_IO_HPP
#define PDEF_IO_HPP

// JSON forms of families, series and classes. Requires nlohmann/json.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include <pdef/cohomology.hpp>
#include <pdef/deform.hpp>
#include <pdef/error.hpp>

namespace pdef
{

using json = nlohmann::ordered_json;

// "p/q" or "p"; the denominator must be positive.
inline Rational parse_rational(std::string_view text)
{
    auto bad = [&] { return error(error_kind::syntax, "bad rational '" + std::string(text) + "'"); };
    const auto slash = text.find('/');
    auto integer = [&](std::string_view s, bool allow_sign) {
        if (s.empty()) {
            throw bad();
        }
        std::size_t start = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size()) {
            throw bad();
        }
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw bad();
            }
        }
        return mpz_class(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    const mpz_class num = integer(text.substr(0, slash), true);
    mpz_class den = 1;
    if (slash != std::string_view::npos) {
        den = integer(text.substr(slash + 1), false);
        if (den == 0) {
            throw bad();
        }
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

namespace detail
{

inline Rational json_rational(const json &v)
{
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    throw error(error_kind::invalid_family, "coefficients must be integers or \"p/q\" strings");
}

inline int json_index(const json &v)
{
    if (!v.is_number_integer()) {
        throw error(error_kind::invalid_family, "indices must be integers");
    }
    return v.get<int>();
}

} // namespace detail

inline CoeffFamily family_from_json(const json &doc)
{
    if (!doc.is_object()) {
        throw error(error_kind::invalid_family, "family document must be an object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "c" && key != "cbar") {
            throw error(error_kind::invalid_family, "unknown family field '" + key + "'");
        }
    }
    CoeffFamily fam;
    try {
        if (doc.contains("c")) {
            for (const auto &row : doc.at("c")) {
                if (!row.is_array() || row.size() != 4) {
                    throw error(error_kind::invalid_family, "c entries are [k, l, i, coefficient]");
                }
                const std::tuple key{detail::json_index(row[0]), detail::json_index(row[1]),
                                     detail::json_index(row[2])};
                fam.c[key] += detail::json_rational(row[3]);
            }
        }
        if (doc.contains("cbar")) {
            for (const auto &row : doc.at("cbar")) {
                if (!row.is_array() || row.size() != 3) {
                    throw error(error_kind::invalid_family, "cbar entries are [k, r, coefficient]");
                }
                const std::pair key{detail::json_index(row[0]), detail::json_index(row[1])};
                fam.cbar[key] += detail::json_rational(row[2]);
            }
        }
    } catch (const error &e) {
        if (e.kind() == error_kind::invalid_family) {
            throw;
        }
        throw error(error_kind::invalid_family, e.what());
    }
    std::erase_if(fam.c, [](const auto &kv) { return kv.second == 0; });
    std::erase_if(fam.cbar, [](const auto &kv) { return kv.second == 0; });
    return fam;
}

inline json to_json(const CoeffFamily &fam)
{
    json c = json::array();
    for (const auto &[key, v] : fam.c) {
        c.push_back(json::array({std::get<0>(key), std::get<1>(key), std::get<2>(key), to_string(v)}));
    }
    json cbar = json::array();
    for (const auto &[key, v] : fam.cbar) {
        cbar.push_back(json::array({key.first, key.second, to_string(v)}));
    }
    return json{{"c", std::move(c)}, {"cbar", std::move(cbar)}};
}

inline CoeffFamily read_family(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw error(error_kind::invalid_family, "cannot open family file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw error(error_kind::invalid_family, std::string("malformed JSON: ") + e.what());
    }
    return family_from_json(doc);
}

inline json to_json(const CohClass &c)
{
    json out = json::object();
    out["g_degree"] = c.g_degree();
    json coeffs = json::object();
    for (const auto &[l, v] : c.coeffs()) {
        coeffs[to_string(l)] = to_string(v);
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

inline CohClass class_from_json(const json &doc)
{
    CohClass out(doc.at("g_degree").get<int>());
    for (const auto &[key, v] : doc.at("coeffs").items()) {
        out.add(parse_label(key), parse_rational(v.get<std::string>()));
    }
    return out;
}

// Ordered coefficient list with a degree tag.
inline json to_json(const NuSeries<MultiVec> &s)
{
    json coeffs = json::array();
    for (int n = 1; n <= s.order(); ++n) {
        coeffs.push_back(to_string(s[n]));
    }
    return json{{"degree", s.zero().degree()}, {"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline NuSeries<MultiVec> multivec_series_from_json(const json &doc)
{
    NuSeries<MultiVec> out(doc.at("order").get<int>(), MultiVec(doc.at("degree").get<int>()));
    int n = 1;
    for (const auto &v : doc.at("coeffs")) {
        out[n++] = parse_multivec(v.get<std::string>());
    }
    return out;
}

inline json to_json(const NuSeries<CohClass> &s)
{
    json coeffs = json::array();
    for (int n = 1; n <= s.order(); ++n) {
        coeffs.push_back(to_string(s[n]));
    }
    return json{{"degree", s.zero().g_degree()}, {"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

} // namespace pdef

#endif
