// sdlaudit - static auditor for agent skills
//
// Subcommands: audit (full pipeline), lift (synthesis only), validate,
// verbalize, distance, derive, detect. Exit codes: 0 clean, 1 internal
// error, 2 validation failure, 3 findings present, 4 unauditable.
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sdlaudit/http_provider.hpp"
#include "sdlaudit/providers.hpp"
#include "sdlaudit/report.hpp"

namespace {

constexpr int exit_clean = 0;
constexpr int exit_internal = 1;
constexpr int exit_invalid = 2;
constexpr int exit_findings = 3;
constexpr int exit_unauditable = 4;

struct ProviderFlags {
    std::string kind = "mock";  // http | mock | replay
    std::string mock_script;
    std::string trace_in;
    std::string trace_out;
    std::string url;
    std::string model;
    std::string token;
    int timeout_sec = 60;

    void attach(CLI::App* cmd) {
        cmd->add_option("--provider", kind, "Candidate provider: http, mock or replay")
            ->check(CLI::IsMember({"http", "mock", "replay"}));
        cmd->add_option("--mock-script", mock_script,
                        "JSON array of candidate texts for --provider mock");
        cmd->add_option("--trace-in", trace_in, "Recorded trace file for --provider replay");
        cmd->add_option("--trace-out", trace_out, "Record provider requests/responses here");
        cmd->add_option("--provider-url", url,
                        "Chat-completion endpoint (or SDLAUDIT_PROVIDER_URL)");
        cmd->add_option("--provider-model", model, "Model name (or SDLAUDIT_PROVIDER_MODEL)");
        cmd->add_option("--provider-token", token, "Bearer token (or SDLAUDIT_PROVIDER_TOKEN)");
        cmd->add_option("--provider-timeout", timeout_sec, "HTTP timeout in seconds");
    }

    std::unique_ptr<sdlaudit::CandidateProvider> make() const {
        using namespace sdlaudit;
        if (kind == "mock") {
            if (mock_script.empty())
                throw TransportError("--provider mock requires --mock-script");
            return std::make_unique<MockProvider>(mock_provider_from_file(mock_script));
        }
        if (kind == "replay") {
            if (trace_in.empty())
                throw TransportError("--provider replay requires --trace-in");
            return std::make_unique<ReplayProvider>(ReplayProvider::from_file(trace_in));
        }
        HttpProviderConfig cfg;
        cfg.url = !url.empty() ? url : env_or("SDLAUDIT_PROVIDER_URL");
        cfg.model = !model.empty() ? model : env_or("SDLAUDIT_PROVIDER_MODEL");
        cfg.token = !token.empty() ? token : env_or("SDLAUDIT_PROVIDER_TOKEN");
        cfg.timeout_sec = timeout_sec;
        if (cfg.url.empty())
            throw TransportError("--provider http requires --provider-url or SDLAUDIT_PROVIDER_URL");
        return std::make_unique<HttpProvider>(std::move(cfg));
    }

    static std::string env_or(const char* name) {
        const char* v = std::getenv(name);
        return v ? v : "";
    }
};

sdlaudit::ParseResult load_sdl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        sdlaudit::ParseError e{sdlaudit::ParseErrorCode::lex_error, 0, 0, "cannot read " + path};
        return {std::nullopt, e};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return sdlaudit::parse_fact_base(buf.str());
}

// Shared precondition of verbalize/derive/detect: a structurally valid
// base. Violations print as hints and exit 2, like the validate command
// (which prints them to stdout since they are its primary output).
int require_valid(const sdlaudit::FactBase& fb, std::vector<sdlaudit::Violation>& out,
                  std::ostream& hint_stream = std::cerr) {
    out = sdlaudit::validate(fb);
    if (out.empty()) return exit_clean;
    auto hints = sdlaudit::diagnose(fb, out);
    for (const auto& h : hints.hints) hint_stream << h << "\n";
    return exit_invalid;
}

// Inliner overrides shared by the commands that read skill directories.
struct InlineFlags {
    std::vector<std::string> include_ext;
    std::vector<std::string> exclude_dir;

    void attach(CLI::App* cmd) {
        cmd->add_option("--include-ext", include_ext,
                        "Replace the file-extension allowlist (e.g. .md .yaml)");
        cmd->add_option("--exclude-dir", exclude_dir,
                        "Replace the directory-name denylist (e.g. dist node_modules)");
    }

    sdlaudit::InlineOptions make() const {
        sdlaudit::InlineOptions opt;
        if (!include_ext.empty())
            opt.extensions = std::set<std::string>(include_ext.begin(), include_ext.end());
        if (!exclude_dir.empty())
            opt.excluded_dirs = std::set<std::string>(exclude_dir.begin(), exclude_dir.end());
        return opt;
    }
};

void write_units_dump(const std::vector<sdlaudit::SemanticUnit>& units, const std::string& path) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& u : units)
        arr.push_back({{"id", u.id},
                       {"kind", std::string(to_string(u.kind))},
                       {"text", u.text},
                       {"file", u.file},
                       {"line_start", u.line_start},
                       {"line_end", u.line_end}});
    std::ofstream out(path, std::ios::binary);
    out << arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";
}

int run_audit_one(const std::filesystem::path& dir, const sdlaudit::AuditOptions& opts,
                  const ProviderFlags& pf, sdlaudit::ReportFormat format, std::string& rendered) {
    auto provider = pf.make();
    sdlaudit::AuditReport report;
    if (!pf.trace_out.empty()) {
        sdlaudit::TraceRecorder recorder(*provider);
        report = sdlaudit::audit(dir, opts, recorder);
        recorder.write(pf.trace_out);
    } else {
        report = sdlaudit::audit(dir, opts, *provider);
    }
    rendered = sdlaudit::render_report(report, format);
    if (report.status == "unauditable") return exit_unauditable;
    return report.findings.empty() ? exit_clean : exit_findings;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sdlaudit;
    CLI::App app{"sdlaudit - static auditor for agent skills"};
    app.require_subcommand(1);

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "Full pipeline over one or more skill dirs");
    std::vector<std::string> audit_dirs;
    audit_cmd->add_option("dirs", audit_dirs, "Skill directories")->required();
    AuditOptions audit_opts;
    bool no_cross_action = false;
    std::string format_name = "json";
    int jobs = 1;
    ProviderFlags audit_pf;
    audit_cmd->add_option("--delta", audit_opts.cgrs.delta, "Fidelity threshold (accept d < delta)")
        ->check(CLI::Range(1e-9, 1.0));
    audit_cmd->add_option("--theta", audit_opts.cgrs.theta, "Unit coverage overlap threshold")
        ->check(CLI::Range(1e-9, 1.0));
    audit_cmd->add_option("--budget", audit_opts.cgrs.budget, "Max provider proposals")
        ->check(CLI::PositiveNumber);
    audit_cmd->add_flag("--no-cross-action", no_cross_action,
                        "Disable the cross-action data-flow rule");
    audit_cmd->add_option("--format", format_name, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    audit_cmd->add_option("--jobs", jobs, "Audit directories concurrently")->check(CLI::PositiveNumber);
    audit_pf.attach(audit_cmd);
    InlineFlags audit_if;
    audit_if.attach(audit_cmd);

    // lift
    auto* lift_cmd = app.add_subcommand("lift", "Synthesis only: print the accepted SDL");
    std::string lift_dir;
    lift_cmd->add_option("dir", lift_dir, "Skill directory")->required();
    CgrsConfig lift_cfg;
    ProviderFlags lift_pf;
    std::string lift_units_dump;
    lift_cmd->add_option("--delta", lift_cfg.delta, "Fidelity threshold")
        ->check(CLI::Range(1e-9, 1.0));
    lift_cmd->add_option("--theta", lift_cfg.theta, "Unit coverage overlap threshold")
        ->check(CLI::Range(1e-9, 1.0));
    lift_cmd->add_option("--budget", lift_cfg.budget, "Max provider proposals")
        ->check(CLI::PositiveNumber);
    lift_cmd->add_option("--dump-units", lift_units_dump, "Write semantic units JSON here");
    lift_pf.attach(lift_cmd);
    InlineFlags lift_if;
    lift_if.attach(lift_cmd);

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check the structural invariants");
    std::string validate_file;
    validate_cmd->add_option("file", validate_file, "SDL file")->required();

    // verbalize
    auto* verbalize_cmd = app.add_subcommand("verbalize", "Print the canonical English projection");
    std::string verbalize_file;
    verbalize_cmd->add_option("file", verbalize_file, "SDL file")->required();

    // distance
    auto* distance_cmd = app.add_subcommand("distance", "Coverage distance of an SDL base vs a skill");
    std::string distance_skill, distance_sdl, distance_units_dump;
    double distance_theta = 0.6;
    distance_cmd->add_option("--skill", distance_skill, "Skill directory")->required();
    distance_cmd->add_option("--sdl", distance_sdl, "SDL file")->required();
    distance_cmd->add_option("--theta", distance_theta, "Unit coverage overlap threshold")
        ->check(CLI::Range(1e-9, 1.0));
    distance_cmd->add_option("--dump-units", distance_units_dump, "Write semantic units JSON here");
    InlineFlags distance_if;
    distance_if.attach(distance_cmd);

    // derive
    auto* derive_cmd = app.add_subcommand("derive", "Dump the five derived relations");
    std::string derive_file;
    bool derive_no_cross = false;
    derive_cmd->add_option("file", derive_file, "SDL file")->required();
    derive_cmd->add_flag("--no-cross-action", derive_no_cross,
                         "Disable the cross-action data-flow rule");

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "Run the detectors over an SDL file");
    std::string detect_file, detect_format = "text";
    bool detect_no_cross = false;
    detect_cmd->add_option("file", detect_file, "SDL file")->required();
    detect_cmd->add_flag("--no-cross-action", detect_no_cross,
                         "Disable the cross-action data-flow rule");
    detect_cmd->add_option("--format", detect_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // keep the exit-code contract closed: usage errors are internal
        int rc = app.exit(e);
        return rc == 0 ? exit_clean : exit_internal;
    }

    try {
        if (*validate_cmd) {
            auto parsed = load_sdl(validate_file);
            if (!parsed.ok()) {
                std::cerr << "parse failed: " << parsed.error->to_string() << "\n";
                return exit_internal;
            }
            std::vector<Violation> violations;
            int rc = require_valid(*parsed.value, violations, std::cout);
            if (rc == exit_clean) std::cout << "pass\n";
            return rc;
        }

        if (*verbalize_cmd) {
            auto parsed = load_sdl(verbalize_file);
            if (!parsed.ok()) {
                std::cerr << "parse failed: " << parsed.error->to_string() << "\n";
                return exit_internal;
            }
            std::vector<Violation> violations;
            int rc = require_valid(*parsed.value, violations);
            if (rc != exit_clean) return rc;
            std::cout << verbalize(*parsed.value).text;
            return exit_clean;
        }

        if (*distance_cmd) {
            auto parsed = load_sdl(distance_sdl);
            if (!parsed.ok()) {
                std::cerr << "parse failed: " << parsed.error->to_string() << "\n";
                return exit_internal;
            }
            UnifiedDocument doc = inline_skill(distance_skill, distance_if.make());
            auto units = extract_semantic_units(doc);
            if (!distance_units_dump.empty()) write_units_dump(units, distance_units_dump);
            DistanceReport report = distance(units, verbalize(*parsed.value), distance_theta);
            nlohmann::ordered_json j;
            j["d"] = report.d;
            j["covered"] = report.covered;
            j["uncovered"] = report.uncovered;
            j["per_unit_overlap"] = report.per_unit_overlap;
            std::cout << j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace)
                      << "\n";
            return exit_clean;
        }

        if (*derive_cmd) {
            auto parsed = load_sdl(derive_file);
            if (!parsed.ok()) {
                std::cerr << "parse failed: " << parsed.error->to_string() << "\n";
                return exit_internal;
            }
            std::vector<Violation> violations;
            int rc = require_valid(*parsed.value, violations);
            if (rc != exit_clean) return rc;
            std::cout << serialize_derived(derive(*parsed.value, DeriveOptions{!derive_no_cross}));
            return exit_clean;
        }

        if (*detect_cmd) {
            auto parsed = load_sdl(detect_file);
            if (!parsed.ok()) {
                std::cerr << "parse failed: " << parsed.error->to_string() << "\n";
                return exit_internal;
            }
            std::vector<Violation> violations;
            int rc = require_valid(*parsed.value, violations);
            if (rc != exit_clean) return rc;
            const FactBase& fb = *parsed.value;
            auto dr = derive(fb, DeriveOptions{!detect_no_cross});
            auto findings = run_detectors(fb, dr);
            AuditReport report;
            report.skill_id = fb.skill_id();
            report.status = "ok";
            report.sdl = serialize_fact_base(fb);
            report.findings = findings;
            report.cross_action = !detect_no_cross;
            std::cout << render_report(report, detect_format == "json" ? ReportFormat::json
                                                                       : ReportFormat::text);
            return findings.empty() ? exit_clean : exit_findings;
        }

        if (*lift_cmd) {
            auto provider = lift_pf.make();
            UnifiedDocument doc = inline_skill(lift_dir, lift_if.make());
            auto units = extract_semantic_units(doc);
            if (!lift_units_dump.empty()) write_units_dump(units, lift_units_dump);
            SynthesisTrace trace;
            if (!lift_pf.trace_out.empty()) {
                TraceRecorder recorder(*provider);
                trace = synthesize(doc, units, lift_cfg, recorder);
                recorder.write(lift_pf.trace_out);
            } else {
                trace = synthesize(doc, units, lift_cfg, *provider);
            }
            if (trace.outcome != SynthesisTrace::Outcome::accepted) {
                std::cerr << "unauditable: no candidate accepted within budget\n";
                return exit_unauditable;
            }
            std::cout << serialize_fact_base(*trace.accepted);
            return exit_clean;
        }

        if (*audit_cmd) {
            audit_opts.cross_action = !no_cross_action;
            audit_opts.inliner = audit_if.make();
            ReportFormat format = format_name == "json" ? ReportFormat::json : ReportFormat::text;
            std::vector<std::string> outputs(audit_dirs.size());
            std::vector<int> codes(audit_dirs.size(), exit_clean);
            std::vector<std::string> errors(audit_dirs.size());

            std::atomic<size_t> cursor{0};
            auto worker = [&] {
                while (true) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= audit_dirs.size()) break;
                    try {
                        codes[i] = run_audit_one(audit_dirs[i], audit_opts, audit_pf, format,
                                                 outputs[i]);
                    } catch (const std::exception& e) {
                        codes[i] = exit_internal;
                        errors[i] = e.what();
                    }
                }
            };
            size_t nworkers = std::min<size_t>(std::max(jobs, 1), audit_dirs.size());
            std::vector<std::thread> pool;
            for (size_t i = 1; i < nworkers; ++i) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();

            int rc = exit_clean;
            for (size_t i = 0; i < audit_dirs.size(); ++i) {
                std::cout << outputs[i];
                if (!errors[i].empty())
                    std::cerr << audit_dirs[i] << ": " << errors[i] << "\n";
            }
            // worst outcome wins: internal > unauditable > findings > clean
            auto rank = [](int c) {
                switch (c) {
                    case exit_internal: return 3;
                    case exit_unauditable: return 2;
                    case exit_findings: return 1;
                    default: return 0;
                }
            };
            for (int c : codes)
                if (rank(c) > rank(rc)) rc = c;
            return rc;
        }
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << " (after "
                  << e.partial_trace.candidates.size() << " iterations)\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
