#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "oneill/fixtures.hpp"
#include "oneill/float_path.hpp"

namespace oneill {

using json = nlohmann::ordered_json;

/// Everything needed to reproduce a run: structures, map, check list and the
/// sampling/tolerance knobs.
struct Scenario {
    std::string name;
    // source
    std::string source_type = "sasakian_R";  // or "custom"
    int n = 1;
    std::vector<std::string> source_vars;
    std::vector<std::vector<std::string>> source_phi, source_metric;
    std::vector<std::string> source_xi, source_eta;
    // optional target/map
    std::vector<std::string> target_vars;
    std::vector<std::vector<std::string>> target_metric;
    std::vector<std::string> map_exprs;
    // run parameters
    std::vector<std::string> checks;
    int samples = 7;
    int classify_samples = 25;
    uint64_t seed = 42;
    bool exact_mode = true;
    double tol_first = 1e-9;
    double tol_second = 1e-6;
    double angle_eps = 1e-6;
    int radicand = 2;
    std::vector<std::string> notes;

    bool has_map() const { return !map_exprs.empty(); }

    CheckConfig config() const {
        CheckConfig cfg;
        cfg.samples = samples;
        cfg.classify_samples = classify_samples;
        cfg.seed = seed;
        cfg.exact = exact_mode;
        cfg.tol_first = tol_first;
        cfg.tol_second = tol_second;
        cfg.angle_eps = angle_eps;
        return cfg;
    }
};

inline Scenario scenario_from_fixture(const FixtureDef& d) {
    Scenario sc;
    sc.name = d.name;
    sc.source_type = "sasakian_R";
    sc.n = d.n;
    sc.target_vars = d.target_vars;
    sc.target_metric = d.target_metric;
    sc.map_exprs = d.map_exprs;
    sc.checks = d.checks;
    sc.notes = d.notes;
    return sc;
}

namespace scenario_detail {

inline std::vector<std::string> string_list(const json& j, const std::string& key) {
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (e.is_string())
            out.push_back(e.get<std::string>());
        else if (e.is_number_integer())
            out.push_back(std::to_string(e.get<long long>()));
        else
            throw input_error("expected string or integer in '" + key + "'");
    }
    return out;
}

inline std::vector<std::vector<std::string>> string_matrix(const json& j,
                                                           const std::string& key) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : j) out.push_back(string_list(row, key));
    return out;
}

}  // namespace scenario_detail

inline Scenario scenario_from_json(const json& j) {
    using scenario_detail::string_list;
    using scenario_detail::string_matrix;
    Scenario sc;
    if (!j.is_object()) throw input_error("scenario must be a JSON object");
    sc.name = j.value("name", std::string("scenario"));
    if (!j.contains("source")) throw input_error("scenario needs a 'source'");
    const json& src = j.at("source");
    sc.source_type = src.value("type", std::string("sasakian_R"));
    if (sc.source_type == "sasakian_R") {
        sc.n = src.value("n", 1);
        if (sc.n < 1) throw input_error("source n must be >= 1");
    } else if (sc.source_type == "custom") {
        sc.source_vars = string_list(src.at("vars"), "source.vars");
        sc.source_phi = string_matrix(src.at("phi"), "source.phi");
        sc.source_metric = string_matrix(src.at("metric"), "source.metric");
        sc.source_xi = string_list(src.at("xi"), "source.xi");
        sc.source_eta = string_list(src.at("eta"), "source.eta");
        if (sc.source_vars.size() % 2 == 0)
            throw input_error("custom contact source needs odd dimension");
        sc.n = (static_cast<int>(sc.source_vars.size()) - 1) / 2;
    } else {
        throw input_error("unknown source type: " + sc.source_type);
    }
    if (j.contains("target")) {
        const json& t = j.at("target");
        if (t.contains("vars"))
            sc.target_vars = string_list(t.at("vars"), "target.vars");
        else if (t.contains("dim"))
            sc.target_vars = fixture_detail::uvars(t.at("dim").get<int>());
        else
            throw input_error("target needs 'vars' or 'dim'");
        sc.target_metric = string_matrix(t.at("metric"), "target.metric");
    }
    if (j.contains("map")) sc.map_exprs = string_list(j.at("map"), "map");
    if (sc.has_map() && sc.target_vars.empty())
        throw input_error("a map needs a target");
    if (j.contains("checks")) sc.checks = string_list(j.at("checks"), "checks");
    sc.samples = j.value("samples", 7);
    sc.classify_samples = j.value("classify_samples", 25);
    sc.seed = j.value("seed", uint64_t(42));
    std::string mode = j.value("mode", std::string("exact"));
    if (mode != "exact" && mode != "float") throw input_error("mode must be exact or float");
    sc.exact_mode = mode == "exact";
    if (j.contains("tolerances")) {
        sc.tol_first = j.at("tolerances").value("first", 1e-9);
        sc.tol_second = j.at("tolerances").value("second", 1e-6);
    }
    sc.angle_eps = j.value("angle_eps", 1e-6);
    sc.radicand = j.value("d", 2);
    if (j.contains("notes")) sc.notes = string_list(j.at("notes"), "notes");
    return sc;
}

inline json scenario_to_json(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    json src;
    src["type"] = sc.source_type;
    if (sc.source_type == "sasakian_R") {
        src["n"] = sc.n;
    } else {
        src["vars"] = sc.source_vars;
        src["phi"] = sc.source_phi;
        src["metric"] = sc.source_metric;
        src["xi"] = sc.source_xi;
        src["eta"] = sc.source_eta;
    }
    j["source"] = src;
    if (!sc.target_vars.empty()) {
        json t;
        t["vars"] = sc.target_vars;
        t["metric"] = sc.target_metric;
        j["target"] = t;
    }
    if (sc.has_map()) j["map"] = sc.map_exprs;
    j["checks"] = sc.checks;
    j["samples"] = sc.samples;
    j["classify_samples"] = sc.classify_samples;
    j["seed"] = sc.seed;
    j["mode"] = sc.exact_mode ? "exact" : "float";
    j["tolerances"] = json{{"first", sc.tol_first}, {"second", sc.tol_second}};
    j["angle_eps"] = sc.angle_eps;
    j["d"] = sc.radicand;
    if (!sc.notes.empty()) j["notes"] = sc.notes;
    return j;
}

inline ContactStructure build_source(const Scenario& sc) {
    if (sc.source_type == "sasakian_R") return standard_sasakian(sc.n);
    ChartPtr chart = make_chart(sc.source_vars);
    const int dim = chart->dim();
    auto parse_mat = [&](const std::vector<std::vector<std::string>>& m,
                         const std::string& what) {
        if (static_cast<int>(m.size()) != dim) throw input_error(what + " has wrong row count");
        Matrix<Poly> out(dim, dim, Poly(chart));
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(m[i].size()) != dim)
                throw input_error(what + " has wrong column count");
            for (int j = 0; j < dim; ++j) out(i, j) = parse_poly(m[i][j], chart, sc.radicand);
        }
        return out;
    };
    std::vector<RatFun> xi;
    for (const auto& e : sc.source_xi) xi.emplace_back(parse_poly(e, chart, sc.radicand));
    std::vector<Poly> eta;
    for (const auto& e : sc.source_eta) eta.push_back(parse_poly(e, chart, sc.radicand));
    return ContactStructure{chart,
                            sc.n,
                            Tensor11::from_polys(chart, parse_mat(sc.source_phi, "source.phi")),
                            VectorField(chart, std::move(xi)),
                            OneForm(chart, std::move(eta)),
                            MetricField(chart, parse_mat(sc.source_metric, "source.metric"))};
}

inline SubmersionSetup build_setup(const Scenario& sc) {
    if (!sc.has_map()) throw input_error("scenario has no map");
    ContactStructure src = build_source(sc);
    ChartPtr tchart = make_chart(sc.target_vars);
    const int tn = tchart->dim();
    if (static_cast<int>(sc.target_metric.size()) != tn)
        throw input_error("target metric has wrong row count");
    Matrix<Poly> tg(tn, tn, Poly(tchart));
    for (int i = 0; i < tn; ++i) {
        if (static_cast<int>(sc.target_metric[i].size()) != tn)
            throw input_error("target metric has wrong column count");
        for (int j = 0; j < tn; ++j)
            tg(i, j) = parse_poly(sc.target_metric[i][j], tchart, sc.radicand);
    }
    std::vector<Poly> comp;
    for (const auto& e : sc.map_exprs) comp.push_back(parse_poly(e, src.chart, sc.radicand));
    SmoothMap map(src.chart, tchart, std::move(comp));
    return SubmersionSetup(std::move(src), MetricField(tchart, std::move(tg)), std::move(map));
}

/// Lazily shared state for one scenario run.
class RunContext {
public:
    RunContext(const Scenario& sc) : sc_(sc), cfg_(sc.config()) {}

    const CheckConfig& cfg() const { return cfg_; }
    const Scenario& scenario() const { return sc_; }

    const ContactStructure& source() {
        if (!source_) source_ = build_source(sc_);
        return *source_;
    }
    const SubmersionSetup& setup() {
        if (!setup_) {
            if (!sc_.has_map())
                throw input_error("check requires a map, but the scenario has none");
            setup_ = build_setup(sc_);
        }
        return *setup_;
    }
    const SlantReport& classification() {
        if (!cls_)
            cls_ = sc_.exact_mode ? slant_classify(setup(), cfg_)
                                  : numeric::slant_classify_float(setup(), cfg_);
        return *cls_;
    }
    const FoliationResult& foliation() {
        if (!fol_) fol_ = foliation_suite(setup(), cfg_, classification());
        return *fol_;
    }
    const OmegaParallelResult& omega_suite() {
        if (!omega_) omega_ = omega_parallel_suite(setup(), cfg_, classification());
        return *omega_;
    }

private:
    Scenario sc_;
    CheckConfig cfg_;
    std::optional<ContactStructure> source_;
    std::optional<SubmersionSetup> setup_;
    std::optional<SlantReport> cls_;
    std::optional<FoliationResult> fol_;
    std::optional<OmegaParallelResult> omega_;
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "almost_contact", "sasakian",      "riemannian",     "splitting",
        "basic_fields",   "oneill_ids",    "fiber_geometry", "sff_horizontal",
        "harmonic",       "cross_oracle",  "slant_classify", "theorem1",
        "theorem2_witness", "theorem3",    "lemma3",         "lemma4_mu",
        "corollary1",     "lemma5",        "lemma6_sec1",    "theorem4",
        "prop1",          "prop2",         "prop3",          "prop4",
        "prop5",          "prop6",         "eqW",            "eqF",
        "connection_ids"};
    return names;
}

inline CheckReport exact_only_note(CheckReport r) {
    r.notes.push_back("evaluated with exact arithmetic (this check has no float path)");
    return r;
}

inline CheckReport run_check(RunContext& ctx, const std::string& name) {
    const CheckConfig& cfg = ctx.cfg();
    const bool exact = ctx.scenario().exact_mode;
    auto exact_note = [&](CheckReport r) { return exact ? r : exact_only_note(std::move(r)); };
    if (name == "almost_contact") return check_almost_contact(ctx.source(), cfg);
    if (name == "sasakian") return check_sasakian(ctx.source(), cfg);
    if (name == "riemannian")
        return exact ? check_riemannian(ctx.setup(), cfg)
                     : numeric::check_riemannian_float(ctx.setup(), cfg);
    if (name == "splitting")
        return exact ? check_splitting(ctx.setup(), cfg)
                     : numeric::check_splitting_float(ctx.setup(), cfg);
    if (name == "basic_fields") return exact_note(check_basic_correspondence(ctx.setup(), cfg));
    if (name == "oneill_ids")
        return exact ? check_oneill_identities(ctx.setup(), cfg)
                     : numeric::check_oneill_identities_float(ctx.setup(), cfg);
    if (name == "fiber_geometry") return exact_note(fiber_geometry(ctx.setup(), cfg).report);
    if (name == "sff_horizontal") return exact_note(check_sff_horizontal(ctx.setup(), cfg));
    if (name == "harmonic")
        return exact ? check_harmonic(ctx.setup(), cfg)
                     : numeric::check_harmonic_float(ctx.setup(), cfg);
    if (name == "cross_oracle") {
        CheckReport r = numeric::check_cross_oracle(ctx.source().g, cfg);
        if (ctx.scenario().has_map()) {
            CheckReport t = numeric::check_cross_oracle(ctx.setup().target_metric(), cfg);
            for (double v : t.residuals) r.residuals.push_back(v);
            if (t.verdict == Verdict::fail) r.verdict = Verdict::fail;
        }
        return r;
    }
    if (name == "slant_classify") return ctx.classification().report;
    if (name == "theorem1") return exact_note(check_theorem1(ctx.setup(), cfg));
    if (name == "theorem2_witness")
        return exact_note(check_theorem2_witness(ctx.setup(), cfg));
    // Checks below consume the exact slant coefficient lambda; the float
    // classifier only estimates the angle, so they are exact-mode only.
    const bool needs_exact_lambda = name == "theorem3" || name == "lemma3" ||
                                    name == "corollary1" || name == "lemma5" ||
                                    name == "lemma6_sec1";
    if (!exact && needs_exact_lambda)
        return CheckReport::not_applicable(
            name, "slant-coefficient identity",
            "needs the exact slant coefficient; run in exact mode");
    if (name == "theorem3")
        return exact_note(check_theorem3(ctx.setup(), cfg, ctx.classification()));
    if (name == "lemma3")
        return exact_note(check_lemma3(ctx.setup(), cfg, ctx.classification()));
    if (name == "lemma4_mu" || name == "prop3") {
        CheckReport r = check_mu(ctx.setup(), cfg, ctx.classification());
        r.name = name;
        return exact_note(std::move(r));
    }
    if (name == "corollary1" || name == "lemma5") {
        CheckReport r = check_adapted_frames(ctx.setup(), cfg, ctx.classification());
        r.name = name;
        return r;  // float frames by construction
    }
    if (name == "lemma6_sec1") return exact_note(ctx.omega_suite().sec1);
    if (name == "theorem4") return exact_note(ctx.omega_suite().theorem4);
    if (name == "eqW") return exact_note(ctx.omega_suite().eq_w);
    if (name == "eqF") return exact_note(check_eq_f(ctx.setup(), cfg));
    if (name == "prop1") return exact_note(ctx.foliation().prop1);
    if (name == "prop2") return exact_note(ctx.foliation().prop2);
    if (name == "prop4")
        return exact_note(check_nabla_q(ctx.setup(), cfg, ctx.classification()));
    if (name == "prop5") return exact_note(ctx.foliation().prop5);
    if (name == "prop6") return exact_note(ctx.foliation().prop6);
    if (name == "connection_ids") return exact_note(ctx.foliation().connection_ids);
    throw input_error("unknown check: " + name);
}

struct RunResult {
    json report;
    int exit_code = 0;
};

inline json report_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["anchor"] = r.anchor;
    j["verdict"] = to_string(r.verdict);
    j["exact"] = r.exact;
    j["tolerance"] = residual_str(r.tolerance);
    double mean = 0;
    for (double v : r.residuals) mean += v;
    if (!r.residuals.empty()) mean /= static_cast<double>(r.residuals.size());
    j["residuals"] = json{{"count", r.residuals.size()},
                          {"max", residual_str(r.max_residual())},
                          {"mean", residual_str(mean)}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline RunResult run_scenario(const Scenario& sc_in) {
    Scenario sc = sc_in;
    if (sc.checks.empty()) {
        sc.checks = sc.has_map() ? fixture_detail::submersion_checks()
                                 : fixture_detail::structure_checks();
    }
    // Custom structures are validated before any theorem check consumes them.
    if (sc.source_type == "custom") {
        bool has_ac = false;
        for (const auto& c : sc.checks) has_ac |= c == "almost_contact";
        if (!has_ac) sc.checks.insert(sc.checks.begin(), "almost_contact");
    }
    RunContext ctx(sc);
    json checks = json::array();
    int pass = 0, fail = 0, na = 0;
    for (const auto& name : sc.checks) {
        CheckReport r = run_check(ctx, name);
        switch (r.verdict) {
            case Verdict::pass: ++pass; break;
            case Verdict::fail: ++fail; break;
            case Verdict::inapplicable: ++na; break;
        }
        checks.push_back(report_json(r));
    }
    json out;
    out["schema"] = 1;
    out["scenario"] = scenario_to_json(sc);
    if (!sc.notes.empty()) out["notes"] = sc.notes;
    out["checks"] = checks;
    out["summary"] = json{{"pass", pass}, {"fail", fail}, {"inapplicable", na}};
    return RunResult{std::move(out), fail > 0 ? 1 : 0};
}

}  // namespace oneill
