#pragma once

// Flat JSON run configuration shared by the CLI verbs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "qcg/core.hpp"
#include "qcg/errors.hpp"
#include "qcg/families.hpp"
#include "qcg/field.hpp"
#include "qcg/integrate.hpp"
#include "qcg/radial_table.hpp"
#include "qcg/sweep.hpp"
#include "qcg/weights.hpp"

namespace qcg {

struct RunConfig {
    // Source of the dilatation: a catalog family or a tabulated field.
    std::optional<std::string> family;
    double alpha = 0.5;
    double gamma = 0.5;
    std::optional<std::string> field_csv;
    // Stored report table for verify (skips the sweep).
    std::optional<std::string> reports_csv;

    PlanePoint z0;
    std::optional<double> r0;

    std::string weight = "canonical";  // canonical | reciprocal | constant | tabulated
    int N = 0;
    double weight_value = 1.0;
    std::optional<std::string> weight_csv;

    std::optional<double> R_min;
    std::optional<double> R_max;
    std::size_t count = 13;

    QuadratureSettings quad;
    unsigned threads = 1;

    std::string theorem = "lemma3";
    std::optional<double> c;
    double p = 1.0;
    double tail_fraction = kDefaultTailFraction;

    // Annulus for ring-check.
    std::optional<double> r1;
    std::optional<double> r2;

    std::optional<std::string> out;
    std::string format = "csv";
};

namespace detail {

inline const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys{
        "family", "alpha", "gamma", "field_csv", "reports_csv", "z0_re", "z0_im", "r0",
        "weight", "N", "weight_value", "weight_csv", "R_min", "R_max", "count", "rel_tol",
        "abs_tol", "max_subdivisions", "angular_nodes_initial", "threads", "theorem", "c", "p",
        "tail_fraction", "r1", "r2", "out", "format"};
    return keys;
}

template <class T>
void read_key(const nlohmann::json& doc, const char* key, T& target) {
    if (doc.contains(key)) {
        try {
            target = doc.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("config key '") + key + "': " + e.what());
        }
    }
}

template <class T>
void read_key(const nlohmann::json& doc, const char* key, std::optional<T>& target) {
    if (doc.contains(key) && !doc.at(key).is_null()) {
        T value{};
        read_key(doc, key, value);
        target = value;
    }
}

inline std::string resolve_path(const std::filesystem::path& base, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() || base.empty() ? path : (base / p).string();
}

}  // namespace detail

/// Parses a configuration document. Relative file paths are resolved against
/// `base_dir`.
inline RunConfig parse_run_config(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {}) {
    if (!doc.is_object()) {
        throw ParseError("config: expected a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (!detail::config_keys().count(key)) {
            throw ParseError("config: unknown key '" + key + "'");
        }
    }
    RunConfig cfg;
    detail::read_key(doc, "family", cfg.family);
    detail::read_key(doc, "alpha", cfg.alpha);
    detail::read_key(doc, "gamma", cfg.gamma);
    detail::read_key(doc, "field_csv", cfg.field_csv);
    detail::read_key(doc, "reports_csv", cfg.reports_csv);
    double re = 0.0;
    double im = 0.0;
    detail::read_key(doc, "z0_re", re);
    detail::read_key(doc, "z0_im", im);
    cfg.z0 = PlanePoint(re, im);
    detail::read_key(doc, "r0", cfg.r0);
    detail::read_key(doc, "weight", cfg.weight);
    detail::read_key(doc, "N", cfg.N);
    detail::read_key(doc, "weight_value", cfg.weight_value);
    detail::read_key(doc, "weight_csv", cfg.weight_csv);
    detail::read_key(doc, "R_min", cfg.R_min);
    detail::read_key(doc, "R_max", cfg.R_max);
    detail::read_key(doc, "count", cfg.count);
    detail::read_key(doc, "rel_tol", cfg.quad.rel_tol);
    detail::read_key(doc, "abs_tol", cfg.quad.abs_tol);
    detail::read_key(doc, "max_subdivisions", cfg.quad.max_subdivisions);
    detail::read_key(doc, "angular_nodes_initial", cfg.quad.angular_nodes_initial);
    detail::read_key(doc, "threads", cfg.threads);
    detail::read_key(doc, "theorem", cfg.theorem);
    detail::read_key(doc, "c", cfg.c);
    detail::read_key(doc, "p", cfg.p);
    detail::read_key(doc, "tail_fraction", cfg.tail_fraction);
    detail::read_key(doc, "r1", cfg.r1);
    detail::read_key(doc, "r2", cfg.r2);
    detail::read_key(doc, "out", cfg.out);
    detail::read_key(doc, "format", cfg.format);

    for (auto* path : {&cfg.field_csv, &cfg.reports_csv, &cfg.weight_csv, &cfg.out}) {
        if (*path) {
            *path = detail::resolve_path(base_dir, **path);
        }
    }
    for (const auto* path : {&cfg.field_csv, &cfg.reports_csv, &cfg.weight_csv}) {
        if (*path && !std::filesystem::exists(**path)) {
            throw ParseError("config: file '" + **path + "' does not exist");
        }
    }
    if (cfg.family && cfg.field_csv) {
        throw ParseError("config: give either 'family' or 'field_csv', not both");
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ParseError("config: format must be csv or json");
    }
    parse_statement(cfg.theorem);
    cfg.quad.validate();
    return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config '" + path + "': " + e.what());
    }
    return parse_run_config(doc, std::filesystem::path(path).parent_path());
}

/// Applies QCG_QUAD_RTOL, when set, to the quadrature relative tolerance.
inline void apply_environment(RunConfig& cfg) {
    if (const char* env = std::getenv("QCG_QUAD_RTOL")) {
        double v = 0.0;
        if (!detail::parse_double(env, v) || !(v > 0.0)) {
            throw ParseError("QCG_QUAD_RTOL must be a positive number");
        }
        cfg.quad.rel_tol = v;
    }
}

inline RadialProfile config_profile(const RunConfig& cfg) {
    if (!cfg.family) {
        throw ParseError("config: no 'family' given");
    }
    const auto& name = *cfg.family;
    if (name == "identity") {
        return RadialProfile::identity(cfg.z0);
    }
    if (name == "power") {
        return RadialProfile::power(cfg.alpha, cfg.z0);
    }
    if (name == "log-stretch") {
        return RadialProfile::log_stretch(cfg.gamma, cfg.z0);
    }
    throw ParseError("config: unknown family '" + name + "'");
}

inline CoefficientField config_field(const RunConfig& cfg) {
    if (cfg.field_csv) {
        return CoefficientField::tabulated(load_radial_table(*cfg.field_csv), cfg.z0);
    }
    return CoefficientField::from_profile(config_profile(cfg));
}

inline WeightSpec config_weight(const RunConfig& cfg) {
    const auto statement = parse_statement(cfg.theorem);
    if (statement == Statement::cor1 || statement == Statement::cor2) {
        return WeightSpec::canonical(0);
    }
    if (cfg.weight == "canonical") {
        return WeightSpec::canonical(cfg.N);
    }
    if (statement == Statement::thm2) {
        throw ParseError("config: thm2 requires the canonical weight");
    }
    if (cfg.weight == "reciprocal") {
        return WeightSpec::reciprocal();
    }
    if (cfg.weight == "constant") {
        return WeightSpec::constant(cfg.weight_value);
    }
    if (cfg.weight == "tabulated") {
        if (!cfg.weight_csv) {
            throw ParseError("config: tabulated weight needs 'weight_csv'");
        }
        return WeightSpec::tabulated(load_radial_table(*cfg.weight_csv));
    }
    throw ParseError("config: unknown weight '" + cfg.weight + "'");
}

/// r0 for the selected statement: e_N for thm2, 1 for the corollaries,
/// otherwise the configured value (default e_N for canonical weights, else 1).
inline double config_r0(const RunConfig& cfg) {
    const auto statement = parse_statement(cfg.theorem);
    std::optional<double> required;
    if (statement == Statement::thm2) {
        required = iterated_exp(cfg.N);
    } else if (statement == Statement::cor1 || statement == Statement::cor2) {
        required = 1.0;
    }
    if (required) {
        if (cfg.r0 && *cfg.r0 != *required) {
            throw ParseError("config: " + cfg.theorem + " fixes r0 = " + std::to_string(*required));
        }
        return *required;
    }
    if (cfg.r0) {
        return *cfg.r0;
    }
    return cfg.weight == "canonical" ? iterated_exp(cfg.N) : 1.0;
}

/// Grid radii; checks R_min > r0 and count >= 8.
inline std::vector<double> config_grid(const RunConfig& cfg, double r0) {
    if (!cfg.R_min || !cfg.R_max) {
        throw ParseError("config: 'R_min' and 'R_max' are required");
    }
    if (!(*cfg.R_min > r0)) {
        throw ParseError("config: R_min must exceed r0 = " + std::to_string(r0));
    }
    if (!(*cfg.R_max > *cfg.R_min)) {
        throw ParseError("config: R_max must exceed R_min");
    }
    if (cfg.count < kMinVerdictReports) {
        throw ParseError("config: count must be at least " + std::to_string(kMinVerdictReports));
    }
    return geometric_grid(*cfg.R_min, *cfg.R_max, cfg.count);
}

}  // namespace qcg
