// report.hpp - end-to-end audit pipeline and the canonical findings
// report (stable-order JSON and one-line-per-finding text).
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdlaudit/cgrs.hpp"
#include "sdlaudit/detectors.hpp"
#include "sdlaudit/version.hpp"

namespace sdlaudit {

struct TraceSummary {
    int iterations = 0;
    std::optional<double> final_distance;

    friend bool operator==(const TraceSummary&, const TraceSummary&) = default;
};

struct AuditReport {
    std::string skill_id;
    std::string tool_version_ = std::string(tool_version);
    std::string template_version_ = std::string(template_version);
    double delta = 0.15;
    double theta = 0.6;
    int budget = 5;
    bool cross_action = true;
    std::string status;  // "ok" | "unauditable"
    std::string sdl;     // canonical serialization of the accepted base
    std::vector<Finding> findings;
    TraceSummary trace;
};

// Pipeline errors carry the stage they happened in.
struct AuditError : std::runtime_error {
    AuditError(const std::string& stage, const std::string& msg)
        : std::runtime_error("[" + stage + "] " + msg), stage(stage) {}
    std::string stage;
};

struct AuditOptions {
    CgrsConfig cgrs;
    bool cross_action = true;
    InlineOptions inliner;
};

inline AuditReport audit(const std::filesystem::path& skill_dir, const AuditOptions& opt,
                         CandidateProvider& provider) {
    AuditReport report;
    report.delta = opt.cgrs.delta;
    report.theta = opt.cgrs.theta;
    report.budget = opt.cgrs.budget;
    report.cross_action = opt.cross_action;

    UnifiedDocument doc;
    try {
        doc = inline_skill(skill_dir, opt.inliner);
    } catch (const EmptySkillError& e) {
        throw AuditError("inline", e.what());
    } catch (const IoError& e) {
        throw AuditError("inline", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        throw AuditError("inline", e.what());
    }
    std::vector<SemanticUnit> units = extract_semantic_units(doc);

    SynthesisTrace trace = synthesize(doc, units, opt.cgrs, provider);
    report.trace.iterations = static_cast<int>(trace.candidates.size());

    if (trace.outcome != SynthesisTrace::Outcome::accepted) {
        report.status = "unauditable";
        report.skill_id = skill_dir.filename().string();
        return report;
    }

    const FactBase& fb = *trace.accepted;
    report.status = "ok";
    report.skill_id = fb.skill_id();
    report.sdl = serialize_fact_base(fb);
    report.trace.final_distance = trace.candidates.back().distance->d;

    DerivedRelations dr = derive(fb, DeriveOptions{opt.cross_action});
    report.findings = run_detectors(fb, dr);
    return report;
}

// ---- serialization ----------------------------------------------------

inline nlohmann::ordered_json tuple_to_json(const Tuple& t) {
    return {{"name", t.name}, {"args", t.args}};
}

inline Tuple tuple_from_json(const nlohmann::json& j) {
    return Tuple{j.at("name").get<std::string>(), j.at("args").get<std::vector<std::string>>()};
}

inline nlohmann::ordered_json witness_to_json(const WitnessPath& w) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : w.steps) {
        nlohmann::ordered_json premises = nlohmann::ordered_json::array();
        for (const auto& p : s.premises) premises.push_back(tuple_to_json(p));
        steps.push_back({{"rule", s.rule},
                         {"premises", premises},
                         {"conclusion", tuple_to_json(s.conclusion)}});
    }
    return {{"conclusion", tuple_to_json(w.conclusion)}, {"steps", steps}};
}

inline WitnessPath witness_from_json(const nlohmann::json& j) {
    WitnessPath w;
    w.conclusion = tuple_from_json(j.at("conclusion"));
    for (const auto& s : j.at("steps")) {
        WitnessStep step;
        step.rule = s.at("rule").get<std::string>();
        for (const auto& p : s.at("premises")) step.premises.push_back(tuple_from_json(p));
        step.conclusion = tuple_from_json(s.at("conclusion"));
        w.steps.push_back(std::move(step));
    }
    return w;
}

inline nlohmann::ordered_json finding_to_json(const Finding& f) {
    nlohmann::ordered_json bindings = nlohmann::ordered_json::array();
    for (const auto& [k, v] : f.bindings) bindings.push_back({{"name", k}, {"value", v}});
    nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
    for (const auto& w : f.witnesses) witnesses.push_back(witness_to_json(w));
    return {{"detector", f.detector},
            {"class", std::string(to_string(f.cls))},
            {"severity", std::string(to_string(f.severity))},
            {"bindings", bindings},
            {"witnesses", witnesses}};
}

inline Finding finding_from_json(const nlohmann::json& j) {
    Finding f;
    f.detector = j.at("detector").get<std::string>();
    const DetectorInfo& info = detector_info(f.detector);
    f.cls = info.cls;
    f.severity = j.at("severity").get<std::string>() == "critical" ? Severity::critical
                                                                   : Severity::warning;
    for (const auto& b : j.at("bindings"))
        f.bindings.emplace_back(b.at("name").get<std::string>(),
                                b.at("value").get<std::string>());
    for (const auto& w : j.at("witnesses")) f.witnesses.push_back(witness_from_json(w));
    return f;
}

inline nlohmann::ordered_json report_to_json(const AuditReport& r) {
    nlohmann::ordered_json j;
    j["skill_id"] = r.skill_id;
    j["tool_version"] = r.tool_version_;
    j["template_version"] = r.template_version_;
    j["config"] = {{"delta", r.delta},
                   {"theta", r.theta},
                   {"budget", r.budget},
                   {"cross_action", r.cross_action}};
    j["status"] = r.status;
    j["sdl"] = r.sdl;
    nlohmann::ordered_json findings = nlohmann::ordered_json::array();
    for (const auto& f : r.findings) findings.push_back(finding_to_json(f));
    j["findings"] = findings;
    j["trace"] = {{"iterations", r.trace.iterations},
                  {"final_distance", r.trace.final_distance
                                         ? nlohmann::ordered_json(*r.trace.final_distance)
                                         : nlohmann::ordered_json(nullptr)}};
    return j;
}

inline AuditReport parse_report(const std::string& bytes) {
    nlohmann::json j = nlohmann::json::parse(bytes);
    AuditReport r;
    r.skill_id = j.at("skill_id").get<std::string>();
    r.tool_version_ = j.at("tool_version").get<std::string>();
    r.template_version_ = j.at("template_version").get<std::string>();
    r.delta = j.at("config").at("delta").get<double>();
    r.theta = j.at("config").at("theta").get<double>();
    r.budget = j.at("config").at("budget").get<int>();
    r.cross_action = j.at("config").at("cross_action").get<bool>();
    r.status = j.at("status").get<std::string>();
    r.sdl = j.at("sdl").get<std::string>();
    for (const auto& f : j.at("findings")) r.findings.push_back(finding_from_json(f));
    r.trace.iterations = j.at("trace").at("iterations").get<int>();
    if (!j.at("trace").at("final_distance").is_null())
        r.trace.final_distance = j.at("trace").at("final_distance").get<double>();
    return r;
}

inline std::string one_line_witness(const Finding& f) {
    if (f.witnesses.empty()) return "structural";
    std::string out;
    for (size_t wi = 0; wi < f.witnesses.size(); ++wi) {
        if (wi) out += " | ";
        const auto& w = f.witnesses[wi];
        for (size_t si = 0; si < w.steps.size(); ++si) {
            if (si) out += "; ";
            const auto& s = w.steps[si];
            out += s.rule + ": " + compact(s.conclusion) + " <- ";
            for (size_t pi = 0; pi < s.premises.size(); ++pi) {
                if (pi) out += ", ";
                out += compact(s.premises[pi]);
            }
        }
    }
    return out;
}

enum class ReportFormat { json, text };

inline std::string render_report(const AuditReport& r, ReportFormat format) {
    if (format == ReportFormat::json)
        return report_to_json(r).dump(2, ' ', false, nlohmann::json::error_handler_t::replace) +
               "\n";
    if (r.status == "unauditable") return "unauditable\n";
    if (r.findings.empty()) return "no findings\n";
    std::string out;
    for (const auto& f : r.findings) {
        out += f.detector;
        out += ' ';
        out += to_string(f.severity);
        out += ' ';
        for (size_t i = 0; i < f.bindings.size(); ++i) {
            if (i) out += '/';
            out += f.bindings[i].second;
        }
        out += " — witness: " + one_line_witness(f);
        out += '\n';
    }
    return out;
}

// Equality used by the JSON round-trip contract.
inline bool findings_equal(const Finding& a, const Finding& b) {
    if (a.detector != b.detector || a.bindings != b.bindings || a.cls != b.cls ||
        a.severity != b.severity || a.witnesses.size() != b.witnesses.size())
        return false;
    for (size_t i = 0; i < a.witnesses.size(); ++i) {
        const auto& wa = a.witnesses[i];
        const auto& wb = b.witnesses[i];
        if (!(wa.conclusion == wb.conclusion) || wa.steps.size() != wb.steps.size()) return false;
        for (size_t j = 0; j < wa.steps.size(); ++j)
            if (wa.steps[j].rule != wb.steps[j].rule ||
                wa.steps[j].premises != wb.steps[j].premises ||
                !(wa.steps[j].conclusion == wb.steps[j].conclusion))
                return false;
    }
    return true;
}

inline bool operator==(const AuditReport& a, const AuditReport& b) {
    if (a.skill_id != b.skill_id || a.tool_version_ != b.tool_version_ ||
        a.template_version_ != b.template_version_ || a.delta != b.delta ||
        a.theta != b.theta || a.budget != b.budget || a.cross_action != b.cross_action ||
        a.status != b.status || a.sdl != b.sdl || a.trace != b.trace ||
        a.findings.size() != b.findings.size())
        return false;
    for (size_t i = 0; i < a.findings.size(); ++i)
        if (!findings_equal(a.findings[i], b.findings[i])) return false;
    return true;
}

}  // namespace sdlaudit
