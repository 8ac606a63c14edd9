// pdeform: Milnor data, cohomology, L-infinity transfer and deformations of
// the Poisson bracket {F,G} = det(grad phi, grad F, grad G).
//
// Exit codes: 0 success, 1 domain or usage error, 2 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pdef/io.hpp>
#include <pdef/pdef.hpp>
#include <pdef/verify.hpp>

namespace
{

using pdef::json;

struct RunConfig {
    std::string phi_text;
    std::string weights_text;
    std::optional<int> weight_cap;
    int order = 3;
    int arity_cap = 4;
    std::string family_path;
    std::string report_path;
    std::uint64_t seed = 1;
    int samples = 20;
    std::string suite;
};

pdef::WeightSystem parse_weights(const std::string &text)
{
    std::vector<int> ws;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const std::string part = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            ws.push_back(std::stoi(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::logic_error &) {
            throw pdef::error(pdef::error_kind::syntax, "weights must be three integers a,b,c");
        }
        pos = comma + 1;
    }
    if (ws.size() != 3) {
        throw pdef::error(pdef::error_kind::syntax, "weights must be three integers a,b,c");
    }
    return pdef::WeightSystem(ws[0], ws[1], ws[2]);
}

pdef::SingularityData load(const RunConfig &cfg)
{
    const pdef::Poly phi = pdef::parse_poly(cfg.phi_text);
    if (cfg.weights_text.empty()) {
        return pdef::milnor_basis(phi);
    }
    return pdef::milnor_basis(phi, parse_weights(cfg.weights_text));
}

json header(const std::string &command, const pdef::SingularityData &data)
{
    json out;
    out["command"] = command;
    out["phi"] = pdef::to_string(data.phi());
    const auto &w = data.weights().weights();
    out["weights"] = json::array({w[0], w[1], w[2]});
    out["d"] = data.d();
    out["abs_weight"] = data.weights().abs_weight();
    out["case"] = data.is_special() ? "special" : "generic";
    out["mu"] = data.mu();
    json basis = json::array();
    for (const auto &m : data.basis()) {
        basis.push_back(pdef::to_string(pdef::Poly::term(m, 1)));
    }
    out["basis"] = std::move(basis);
    return out;
}

int cap_of(const RunConfig &cfg, const pdef::SingularityData &data)
{
    return cfg.weight_cap ? *cfg.weight_cap : 3 * data.d();
}

json cmd_analyze(const RunConfig &cfg)
{
    const auto data = load(cfg);
    json out = header("analyze", data);
    out["socle_degree"] = pdef::socle_degree(data.d(), data.weights());
    const pdef::Cohomology h(data);
    const int cap = cap_of(cfg, data);
    json counts, labels;
    for (int g = -1; g <= 2; ++g) {
        const std::string key = "H^" + std::to_string(g);
        json list = json::array();
        for (const auto &l : h.enumerate_basis(g, cap)) {
            list.push_back(pdef::to_string(l));
        }
        counts[key] = list.size();
        labels[key] = std::move(list);
    }
    out["cohomology"] = {{"weight_cap", cap}, {"counts", std::move(counts)}, {"labels", std::move(labels)}};
    return out;
}

json cmd_deform(const RunConfig &cfg, bool &failed)
{
    const auto data = load(cfg);
    const pdef::Cohomology h(data);
    const pdef::CoeffFamily fam = cfg.family_path.empty() ? pdef::CoeffFamily{} : pdef::read_family(cfg.family_path);
    const auto def = pdef::build_deformation(h, fam, cfg.order);
    const auto residual = pdef::jacobi_residual(def, cfg.order);
    json out = header("deform", data);
    out["order"] = cfg.order;
    out["family"] = pdef::to_json(fam);
    out["deformation"] = {{"pi_0", pdef::to_string(def.base)}, {"tail", pdef::to_json(def.tail)}};
    out["jacobi_residual"] = {{"zero", residual.is_zero()}, {"series", pdef::to_json(residual)}};
    out["first_order_class"] = pdef::to_string(pdef::first_order_class(h, def));
    failed = !residual.is_zero();
    return out;
}

json cmd_verify(const RunConfig &cfg, bool &failed)
{
    const auto data = load(cfg);
    pdef::Cohomology h(data);
    pdef::SuiteConfig sc;
    sc.weight_cap = cap_of(cfg, data);
    sc.order = cfg.order;
    sc.arity_cap = cfg.arity_cap;
    sc.seed = cfg.seed;
    sc.samples = cfg.samples;
    pdef::TransferState state(h, {cfg.arity_cap});
    if (cfg.suite == "deform" || cfg.suite == "gauge") {
        state.transfer_up_to(std::min(cfg.arity_cap, std::max(cfg.order, 2)));
    }
    std::vector<pdef::CheckResult> checks;
    json out = header("verify", data);
    out["suite"] = cfg.suite;
    out["seed"] = cfg.seed;
    out["caps"] = {{"weight_cap", sc.weight_cap}, {"order", sc.order}, {"arity_cap", sc.arity_cap}, {"samples", sc.samples}};
    if (cfg.suite == "schouten") {
        checks = pdef::verify_schouten(h, sc);
    } else if (cfg.suite == "tables") {
        checks = pdef::verify_tables(state, sc);
    } else if (cfg.suite == "transfer") {
        pdef::CohClass witness;
        checks = pdef::verify_transfer(state, sc, &witness);
        if (cfg.arity_cap >= 3) {
            out["ell3_phi_phi_top"] = pdef::to_string(witness);
        }
    } else if (cfg.suite == "deform") {
        checks = pdef::verify_deform(state, sc);
    } else {
        checks = pdef::verify_gauge(state, sc);
    }
    json list = json::array();
    failed = false;
    for (const auto &c : checks) {
        json entry{{"name", c.name}, {"cases", c.cases}, {"passed", c.passed}};
        if (!c.passed) {
            entry["counterexample"] = c.counterexample;
        }
        if (!c.detail.empty()) {
            entry["detail"] = c.detail;
        }
        list.push_back(std::move(entry));
        failed = failed || !c.passed;
    }
    out["checks"] = std::move(list);
    out["passed"] = !failed;
    return out;
}

void emit(const json &doc, const std::string &path)
{
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw pdef::error(pdef::error_kind::internal, "cannot write report '" + path + "'");
    }
    out << text;
}

void add_common(CLI::App *cmd, RunConfig &cfg)
{
    cmd->add_option("--phi", cfg.phi_text, "weight-homogeneous polynomial in x, y, z")->required();
    cmd->add_option("--weights", cfg.weights_text, "weights a,b,c (inferred when omitted)");
    cmd->add_option("--weight-cap", cfg.weight_cap, "coefficient-degree cap for basis labels (default 3d)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--report", cfg.report_path, "write the JSON report here instead of stdout");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Formal deformations of exact Poisson structures on F[x,y,z]"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *analyze = app.add_subcommand("analyze", "Milnor algebra and Poisson cohomology bases");
    add_common(analyze, cfg);

    auto *deform = app.add_subcommand("deform", "deformation generated by a coefficient family");
    add_common(deform, cfg);
    deform->add_option("--order", cfg.order, "truncation order m")->check(CLI::PositiveNumber);
    deform->add_option("--family", cfg.family_path, "JSON family {\"c\": [[k,l,i,\"p/q\"]], \"cbar\": [[k,r,\"p/q\"]]}");

    auto *verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, cfg);
    verify->add_option("suite", cfg.suite, "schouten | tables | transfer | deform | gauge")
        ->required()
        ->check(CLI::IsMember({"schouten", "tables", "transfer", "deform", "gauge"}));
    verify->add_option("--order", cfg.order, "truncation order m")->check(CLI::PositiveNumber);
    verify->add_option("--arity-cap", cfg.arity_cap, "largest transferred arity")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "seed for sampled checks");
    verify->add_option("--samples", cfg.samples, "samples per randomized check")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        bool failed = false;
        json report;
        if (analyze->parsed()) {
            report = cmd_analyze(cfg);
        } else if (deform->parsed()) {
            report = cmd_deform(cfg, failed);
        } else {
            report = cmd_verify(cfg, failed);
        }
        emit(report, cfg.report_path);
        return failed ? 2 : 0;
    } catch (const pdef::error &e) {
        std::cerr << "pdeform: " << e.what() << "\n";
        if (!cfg.report_path.empty()) {
            try {
                emit(json{{"error", {{"kind", pdef::error_kind_name(e.kind())}, {"message", e.what()}}}}, cfg.report_path);
            } catch (const pdef::error &) {
            }
        }
        return 1;
    }
}
