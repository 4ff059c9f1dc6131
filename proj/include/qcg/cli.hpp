#pragma once

// Verb implementations behind the qcg executable. Each returns the process
// exit status; configuration problems surface as exceptions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcg/bounds.hpp"
#include "qcg/config.hpp"
#include "qcg/families.hpp"
#include "qcg/report_io.hpp"
#include "qcg/sweep.hpp"
#include "qcg/weights.hpp"

namespace qcg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitDecay = 3;
inline constexpr int kExitInconclusive = 4;
inline constexpr int kExitViolation = 5;

class UsageError : public Error {
public:
    using Error::Error;
};

namespace detail {

struct PreparedSweep {
    SweepSpec spec;
    GrowthSource source;
    std::vector<double> grid;
};

inline PreparedSweep prepare_sweep(const RunConfig& cfg) {
    PreparedSweep prep;
    auto& spec = prep.spec;
    spec.statement = parse_statement(cfg.theorem);
    spec.field = config_field(cfg);
    spec.weight = config_weight(cfg);
    spec.r0 = config_r0(cfg);
    spec.constant = cfg.c;
    spec.p = cfg.p;
    spec.quad = cfg.quad;
    spec.threads = cfg.threads;
    prep.grid = config_grid(cfg, spec.r0);
    prep.source = cfg.family ? profile_source(config_profile(cfg), spec.r0)
                             : field_solution_source(spec.field, spec.r0, spec.quad);
    return prep;
}

/// Output stream: the configured file, or the fallback.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
        if (path) {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
            if (!*file_) {
                throw ParseError("cannot open output '" + *path + "'");
            }
            stream_ = file_.get();
        }
    }

    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

inline int verdict_exit(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::bounded_below: return kExitOk;
        case VerdictKind::tends_to_zero: return kExitDecay;
        case VerdictKind::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

inline nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace detail

/// Sweeps the R grid and writes one report row per radius.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const auto prep = detail::prepare_sweep(cfg);
    const auto result = growth_sweep(prep.spec, prep.source, prep.grid);
    detail::Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        sink.stream() << reports_to_json(result.reports).dump(2) << '\n';
    } else {
        write_reports_csv(sink.stream(), result.reports);
    }
    return result.all_converged() ? kExitOk : kExitNumerical;
}

/// Liminf verdict for the selected statement, printed as text followed by a
/// single JSON line.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto statement = parse_statement(cfg.theorem);
    std::vector<GrowthReport> reports;
    std::optional<double> floor;
    double constant = std::numeric_limits<double>::quiet_NaN();
    double exponent = std::numeric_limits<double>::quiet_NaN();
    if (cfg.reports_csv) {
        std::ifstream in(*cfg.reports_csv);
        reports = read_reports_csv(in);
        if (!reports.empty()) {
            floor = reports.front().floor;
        }
    } else {
        const auto prep = detail::prepare_sweep(cfg);
        auto result = growth_sweep(prep.spec, prep.source, prep.grid);
        reports = std::move(result.reports);
        floor = prep.source.floor;
        constant = result.constant;
        exponent = result.exponent;
    }
    const auto verdict = liminf_verdict(reports, cfg.tail_fraction, floor, VerdictQuantity::ratio);
    const bool converged = std::all_of(reports.begin(), reports.end(),
                                       [](const GrowthReport& r) { return r.converged; });

    nlohmann::json doc{{"theorem", to_string(statement)},
                       {"verdict", to_string(verdict.kind)},
                       {"tail_min", verdict.tail_min},
                       {"threshold", verdict.threshold},
                       {"constant", detail::number_or_null(constant)},
                       {"exponent", detail::number_or_null(exponent)},
                       {"reports", reports.size()},
                       {"converged", converged}};
    out << "theorem:   " << to_string(statement) << '\n'
        << "verdict:   " << to_string(verdict.kind) << '\n'
        << "tail_min:  " << format_real(verdict.tail_min) << '\n'
        << "threshold: " << format_real(verdict.threshold) << '\n';
    if (std::isfinite(constant)) {
        out << "constant:  " << format_real(constant) << '\n'
            << "exponent:  " << format_real(exponent) << '\n';
    }
    out << doc.dump() << '\n';
    if (cfg.out) {
        detail::Sink sink(cfg.out, out);
        sink.stream() << doc.dump(2) << '\n';
    }
    if (!converged) {
        return kExitNumerical;
    }
    return detail::verdict_exit(verdict.kind);
}

/// Lemma-5 identity check; passes when |numeric - ln_{N+1} R| <= max(1e-8, 1e-8 ln_{N+1} R).
inline int cmd_lemma5(int order, double R, const QuadratureSettings& quad, std::ostream& out) {
    const auto r = lemma5_check(order, R, quad);
    const double tolerance = std::max(1e-8, 1e-8 * std::abs(r.closed_form));
    out << "numeric:     " << format_real(r.numeric) << '\n'
        << "closed_form: " << format_real(r.closed_form) << '\n'
        << "abs_error:   " << format_real(r.abs_error) << '\n';
    return r.abs_error <= tolerance ? kExitOk : kExitNumerical;
}

struct RingTrial {
    std::string kind;  // extremal | random
    std::optional<RingCheckRow> row;  // empty when eta was not admissible
};

/// The extremal eta followed by `trials` seeded random admissible eta.
inline std::vector<RingTrial> run_ring_trials(const RadialProfile& profile, const AnnulusSpec& ann,
                                              int trials, std::uint64_t seed,
                                              const QuadratureSettings& quad) {
    if (trials < 1) {
        throw UsageError("ring-check: --trials must be at least 1");
    }
    const auto field = CoefficientField::from_profile(profile);
    std::vector<std::pair<std::string, RadialTestFunction>> etas;
    etas.emplace_back("extremal", extremal_test_function(field, ann.r_inner(), ann.r_outer(), quad));
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
        etas.emplace_back("random", random_admissible_test_function(rng, ann.r_inner(), ann.r_outer()));
    }
    std::vector<RingTrial> out;
    for (const auto& [kind, eta] : etas) {
        RingTrial t{kind, std::nullopt};
        try {
            t.row = ring_inequality_check(profile, ann, {eta}, quad).front();
        } catch (const AdmissibilityError&) {
        }
        out.push_back(t);
    }
    return out;
}

inline int cmd_ring_check(const RunConfig& cfg, int trials, std::uint64_t seed, std::ostream& out) {
    if (trials < 1) {
        throw UsageError("ring-check: --trials must be at least 1");
    }
    if (!cfg.r1 || !cfg.r2) {
        throw ParseError("ring-check: config needs 'r1' and 'r2'");
    }
    const auto profile = config_profile(cfg);
    const AnnulusSpec ann(cfg.z0, *cfg.r1, *cfg.r2);
    const auto rows = run_ring_trials(profile, ann, trials, seed, cfg.quad);

    bool all_hold = true;
    detail::Sink sink(cfg.out, out);
    auto& s = sink.stream();
    if (cfg.format == "json") {
        auto doc = nlohmann::json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& t = rows[i];
            all_hold = all_hold && t.row && t.row->holds;
            doc.push_back({{"trial", i},
                           {"kind", t.kind},
                           {"admissible", t.row.has_value()},
                           {"lhs", t.row ? nlohmann::json(t.row->lhs) : nlohmann::json(nullptr)},
                           {"rhs", t.row ? nlohmann::json(t.row->rhs) : nlohmann::json(nullptr)},
                           {"holds", t.row && t.row->holds}});
        }
        s << doc.dump(2) << '\n';
    } else {
        s << "trial,kind,lhs,rhs,holds\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& t = rows[i];
            all_hold = all_hold && t.row && t.row->holds;
            s << i << ',' << t.kind << ',';
            if (t.row) {
                s << format_real(t.row->lhs) << ',' << format_real(t.row->rhs) << ','
                  << (t.row->holds ? "true" : "false") << '\n';
            } else {
                s << ",,inadmissible\n";
            }
        }
    }
    return all_hold ? kExitOk : kExitViolation;
}

inline int cmd_families(std::ostream& out) {
    for (const auto& entry : kFamilyCatalog) {
        out << std::left << std::setw(12) << entry.name << std::setw(16) << entry.parameter
            << entry.description << '\n';
    }
    return kExitOk;
}

}  // namespace qcg::cli
