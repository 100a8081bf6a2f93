#pragma once

#include "endsum/invariants.hpp"
#include "endsum/oracle.hpp"
#include "endsum/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace endsum {

struct RunOptions {
    bool structured = false;
    std::optional<int> depth_override; // overrides oracle-check depths
};

struct RunOutput {
    std::string out;  // report stream (stdout)
    std::string log;  // timing and error notes (stderr)
    bool ok = true;
};

namespace detail {

inline std::string prime_list_text(const std::vector<std::int64_t>& primes)
{
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i > 0)
            s += ",";
        s += std::to_string(primes[i]);
    }
    return s;
}

using nlohmann::json;

inline json module_json(std::size_t rank, const std::vector<Int>& torsion)
{
    json j;
    j["rank"] = rank;
    j["torsion"] = json::array();
    for (const Int& d : torsion)
        j["torsion"].push_back(to_int64(d));
    return j;
}

inline json summary_json(const InvariantSummary& s)
{
    json j;
    j["n"] = s.n;
    j["middle"] = json::array();
    for (const auto& [degree, mod] : s.middle) {
        json entry = module_json(mod.free_rank(), mod.torsion());
        entry["degree"] = degree;
        j["middle"].push_back(entry);
    }
    j["degree1"] = module_json(s.deg1_free_rank, s.deg1_torsion);
    j["degree1"]["tau_classes"] = s.deg1_uncountable;
    j["top"] = json{{"sigma_classes", s.degn_uncountable}};
    j["gamma"] = json::array();
    for (const auto& [p, g] : s.gamma)
        j["gamma"].push_back(json{{"p", p}, {"dim", g}});
    return j;
}

inline std::string module_text(std::size_t rank, const std::vector<Int>& torsion)
{
    return FinModule(CoefficientRing::integers(), rank, torsion).to_string();
}

inline void summary_human(std::ostringstream& out, const InvariantSummary& s,
                          const std::string& indent)
{
    out << indent << "n = " << s.n << "\n";
    for (const auto& [degree, mod] : s.middle)
        out << indent << "degree " << degree << ": " << mod.to_string() << "\n";
    out << indent << "degree 1: finite part " << module_text(s.deg1_free_rank, s.deg1_torsion)
        << "; tau classes: " << (s.deg1_uncountable ? "yes" : "no") << "\n";
    out << indent << "degree " << s.n
        << " (top): sigma classes: " << (s.degn_uncountable ? "yes" : "no") << "\n";
    out << indent << "gamma:";
    for (const auto& [p, g] : s.gamma)
        out << " p=" << p << " -> " << g;
    out << "\n";
}

struct OracleReport {
    int requested_depth = 0;
    int used_depth = 0;
    bool stabilized = false;
    int stable_from = 0; // smallest depth whose flags are all set; 0 = none
    bool agree = false;
    bool surjective = false;
    struct DegreeRow {
        int degree;
        std::size_t closed_form;
        std::size_t oracle;
        bool stabilized;
    };
    std::vector<DegreeRow> degrees;
    std::size_t gamma_closed = 0;
    std::size_t gamma_oracle = 0;
};

inline bool oracle_flags_hold(const Space& space, const CoefficientRing& field, int depth,
                              std::int64_t p)
{
    TruncatedSystem sys = oracle_system(space, field, depth);
    for (int k = 1; k <= sys.n(); ++k)
        if (!limit_module(sys, k).stabilized)
            return false;
    return limit_gamma_dim(sys, p).stabilized;
}

inline OracleReport run_oracle_check(const Space& space, std::int64_t p, int depth)
{
    const CoefficientRing field = CoefficientRing::prime_field(p);
    OracleReport report;
    report.requested_depth = depth;

    int used = depth;
    bool stabilized = oracle_flags_hold(space, field, used, p);
    while (!stabilized && used < 64) {
        used = std::min(64, used * 2);
        stabilized = oracle_flags_hold(space, field, used, p);
    }
    report.used_depth = used;
    report.stabilized = stabilized;

    TruncatedSystem sys = oracle_system(space, field, used);
    EndAlgebra closed = end_algebra(space, field);
    report.agree = true;
    for (int k = 1; k <= sys.n(); ++k) {
        LimitModule lim = limit_module(sys, k);
        OracleReport::DegreeRow row{k, closed.finite_dim(k), lim.module.free_rank(),
                                    lim.stabilized};
        report.agree = report.agree && row.closed_form == row.oracle;
        report.degrees.push_back(row);
    }
    LimitGamma lg = limit_gamma_dim(sys, p);
    report.gamma_closed = gamma_dim(closed);
    report.gamma_oracle = lg.dim;
    report.agree = report.agree && report.gamma_closed == report.gamma_oracle;
    report.surjective = check_surjectivity(sys);

    for (int d = 1; d <= used; ++d)
        if (oracle_flags_hold(space, field, d, p)) {
            report.stable_from = d;
            break;
        }
    return report;
}

} // namespace detail

inline RunOutput run_scenario(const ScenarioDoc& doc, const RunOptions& opts = {})
{
    using detail::json;
    RunOutput result;
    std::ostringstream out;
    std::ostringstream log;

    for (const ScenarioItem& item : doc.items) {
        const Directive* dir = std::get_if<Directive>(&item);
        if (!dir)
            continue;
        const auto started = std::chrono::steady_clock::now();
        std::string directive_label;
        try {
            switch (dir->kind) {
            case Directive::Kind::invariants: {
                directive_label = "invariants " + dir->names[0];
                InvariantSummary s = summarize(doc.spaces.at(dir->names[0]), dir->primes);
                if (opts.structured) {
                    json rec;
                    rec["directive"] = "invariants";
                    rec["space"] = dir->names[0];
                    rec["primes"] = dir->primes;
                    rec["summary"] = detail::summary_json(s);
                    out << rec.dump() << "\n";
                } else {
                    out << "invariants " << dir->names[0] << " primes "
                        << detail::prime_list_text(dir->primes) << "\n";
                    detail::summary_human(out, s, "  ");
                    out << "\n";
                }
                break;
            }
            case Directive::Kind::distinguish: {
                directive_label = "distinguish " + dir->names[0] + " " + dir->names[1];
                InvariantSummary a = summarize(doc.spaces.at(dir->names[0]), dir->primes);
                InvariantSummary b = summarize(doc.spaces.at(dir->names[1]), dir->primes);
                Verdict v = distinguish(a, b);
                if (opts.structured) {
                    json rec;
                    rec["directive"] = "distinguish";
                    rec["left"] = dir->names[0];
                    rec["right"] = dir->names[1];
                    rec["primes"] = dir->primes;
                    rec["verdict"] = json{{"distinguished", v.distinguished},
                                          {"witness", v.witness}};
                    out << rec.dump() << "\n";
                } else {
                    out << "distinguish " << dir->names[0] << " vs " << dir->names[1]
                        << " primes " << detail::prime_list_text(dir->primes) << ": "
                        << (v.distinguished ? "DISTINGUISHED by " + v.witness
                                            : v.to_string())
                        << "\n\n";
                }
                break;
            }
            case Directive::Kind::census: {
                directive_label = "census " + dir->names[0];
                CensusTable t = self_csi_census(doc.spaces.at(dir->names[0]), dir->primes);
                if (opts.structured) {
                    json rec;
                    rec["directive"] = "census";
                    rec["space"] = dir->names[0];
                    rec["primes"] = dir->primes;
                    rec["rows"] = json::array();
                    for (const CensusRow& row : t.rows) {
                        json r;
                        r["copy1"] = json{{"index", row.u}, {"label", row.label_u}};
                        r["copy2"] = json{{"index", row.v}, {"label", row.label_v}};
                        r["summary"] = detail::summary_json(row.summary);
                        rec["rows"].push_back(r);
                    }
                    rec["distinct"] = t.distinct;
                    out << rec.dump() << "\n";
                } else {
                    out << "census " << dir->names[0] << " primes "
                        << detail::prime_list_text(dir->primes) << "\n";
                    for (const CensusRow& row : t.rows) {
                        out << "  " << row.label_u << "#" << row.u << " + " << row.label_v
                            << "#" << row.v << " : gamma";
                        for (const auto& [p, g] : row.summary.gamma)
                            out << " " << p << "->" << g;
                        out << "\n";
                    }
                    out << "  distinct classes: " << t.distinct << "\n\n";
                }
                break;
            }
            case Directive::Kind::oracle_check: {
                directive_label = "oracle-check " + dir->space_expr->to_string();
                Space target = elaborate_space(*dir->space_expr, doc);
                const int depth = opts.depth_override.value_or(dir->depth);
                detail::OracleReport rep = detail::run_oracle_check(target, dir->prime, depth);
                if (!rep.stabilized)
                    result.ok = false;
                if (!rep.agree)
                    result.ok = false;
                if (opts.structured) {
                    json rec;
                    rec["directive"] = "oracle-check";
                    rec["space"] = dir->space_expr->to_string();
                    rec["prime"] = dir->prime;
                    rec["depth"] = rep.requested_depth;
                    rec["used_depth"] = rep.used_depth;
                    rec["stabilized"] = rep.stabilized;
                    rec["stable_from"] = rep.stable_from;
                    rec["agree"] = rep.agree;
                    rec["surjective"] = rep.surjective;
                    rec["degrees"] = json::array();
                    for (const auto& row : rep.degrees)
                        rec["degrees"].push_back(json{{"degree", row.degree},
                                                      {"closed_form", row.closed_form},
                                                      {"oracle", row.oracle},
                                                      {"stabilized", row.stabilized}});
                    rec["gamma"] = json{{"closed_form", rep.gamma_closed},
                                        {"oracle", rep.gamma_oracle}};
                    out << rec.dump() << "\n";
                } else {
                    out << "oracle-check " << dir->space_expr->to_string() << " prime "
                        << dir->prime << " depth " << rep.requested_depth << ": ";
                    if (!rep.stabilized) {
                        out << "NOT STABILIZED at depth " << rep.used_depth << "\n\n";
                    } else {
                        out << (rep.agree ? "closed-form and oracle agree"
                                          : "closed-form and oracle DISAGREE")
                            << "; stabilized at depth " << rep.stable_from << "; transition maps "
                            << (rep.surjective ? "surjective" : "NOT surjective") << "\n";
                        for (const auto& row : rep.degrees)
                            out << "  degree " << row.degree << ": closed form "
                                << row.closed_form << ", oracle " << row.oracle << "\n";
                        out << "  gamma: closed form " << rep.gamma_closed << ", oracle "
                            << rep.gamma_oracle << "\n\n";
                    }
                }
                break;
            }
            }
        } catch (const std::exception& e) {
            log << "<scenario>:" << dir->pos.line << ":" << dir->pos.col
                << ": error: " << directive_label << ": " << e.what() << "\n";
            result.ok = false;
            break; // nothing is emitted after the first failing directive
        }
        const auto elapsed = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started);
        std::ostringstream ms;
        ms.setf(std::ios::fixed);
        ms.precision(2);
        ms << elapsed.count();
        log << "# " << directive_label << ": " << ms.str() << " ms\n";
    }
    result.out = out.str();
    result.log += log.str();
    return result;
}

} // namespace endsum
