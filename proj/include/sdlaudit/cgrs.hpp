// cgrs.hpp - the bounded propose/validate/score refinement loop and the
// provider contract it drives.
//
// Dispatcher per iteration:
//   parse failure            -> synthetic parse hint, prior = the candidate
//   validate failure         -> diagnose hints,       prior = the candidate
//   valid but d >= delta     -> empty hints,          prior = the candidate
//   valid and d < delta      -> accepted, loop ends
// The provider is called at most `budget` times; it may also signal
// exhaustion itself.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdlaudit/inliner.hpp"
#include "sdlaudit/validator.hpp"
#include "sdlaudit/verbalizer.hpp"

namespace sdlaudit {

struct CgrsConfig {
    double delta = 0.15;  // fidelity threshold, accepted when d < delta
    int budget = 5;       // max provider proposals
    double theta = 0.6;   // per-unit coverage overlap threshold
};

struct Candidate {
    std::string raw;
    int iteration = 0;  // 1-based
    std::optional<FactBase> fb;
    std::optional<ParseError> parse_error;
    std::vector<Violation> violations;
    std::optional<DistanceReport> distance;  // present only on validate pass

    bool parsed() const { return fb.has_value(); }
    bool structurally_valid() const { return parsed() && violations.empty(); }
};

struct ProposeResult {
    bool exhausted = false;
    std::string text;

    static ProposeResult of(std::string t) { return {false, std::move(t)}; }
    static ProposeResult done() { return {true, {}}; }
};

class CandidateProvider {
public:
    virtual ~CandidateProvider() = default;
    // prior is the previous candidate (null on the first call); hints
    // are the instructions extracted from its failure, empty for
    // cold-start and for unhinted re-synthesis.
    virtual ProposeResult propose(const std::string& source, const Candidate* prior,
                                  const HintSet& hints) = 0;
};

struct SynthesisTrace {
    enum class Outcome { accepted, exhausted };
    std::vector<Candidate> candidates;
    std::vector<HintSet> hints_emitted;  // per iteration, feeds the next call
    Outcome outcome = Outcome::exhausted;
    std::optional<FactBase> accepted;
};

struct ProviderError : std::runtime_error {
    ProviderError(const std::string& msg, SynthesisTrace partial)
        : std::runtime_error(msg), partial_trace(std::move(partial)) {}
    SynthesisTrace partial_trace;
};

// Transport-level failure inside a provider; synthesize wraps it into
// a ProviderError carrying the partial trace.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline HintSet parse_failure_hints(const ParseError& err) {
    HintSet h;
    h.hints.push_back("parse failed: " + err.to_string());
    return h;
}

inline SynthesisTrace synthesize(const UnifiedDocument& source,
                                 const std::vector<SemanticUnit>& units,
                                 const CgrsConfig& cfg, CandidateProvider& provider) {
    if (cfg.budget < 1) throw std::invalid_argument("budget must be at least 1");
    if (!(cfg.delta > 0.0 && cfg.delta <= 1.0))
        throw std::invalid_argument("delta must lie in (0,1]");
    SynthesisTrace trace;
    HintSet hints;
    const Candidate* prior = nullptr;

    for (int iteration = 1; iteration <= cfg.budget; ++iteration) {
        ProposeResult proposal;
        try {
            proposal = provider.propose(source.text, prior, hints);
        } catch (const TransportError& e) {
            throw ProviderError(e.what(), std::move(trace));
        }
        if (proposal.exhausted) break;

        Candidate cand;
        cand.raw = std::move(proposal.text);
        cand.iteration = iteration;

        ParseResult parsed = parse_fact_base(cand.raw);
        if (!parsed.ok()) {
            cand.parse_error = parsed.error;
            hints = parse_failure_hints(*parsed.error);
        } else {
            cand.fb = std::move(parsed.value);
            cand.violations = validate(*cand.fb);
            if (!cand.violations.empty()) {
                hints = diagnose(*cand.fb, cand.violations);
            } else {
                Verbalization v = verbalize(*cand.fb);
                cand.distance = distance(units, v, cfg.theta);
                if (cand.distance->d < cfg.delta) {
                    trace.hints_emitted.push_back({});
                    trace.candidates.push_back(std::move(cand));
                    trace.outcome = SynthesisTrace::Outcome::accepted;
                    trace.accepted = trace.candidates.back().fb;
                    return trace;
                }
                hints = HintSet{};  // discard; unhinted re-synthesis from this candidate
            }
        }
        trace.hints_emitted.push_back(hints);
        trace.candidates.push_back(std::move(cand));
        prior = &trace.candidates.back();
    }
    trace.outcome = SynthesisTrace::Outcome::exhausted;
    return trace;
}

// Replays a fixed list of candidate texts, then signals exhaustion.
// Records what it was asked, which the loop-conformance tests inspect.
class MockProvider : public CandidateProvider {
public:
    explicit MockProvider(std::vector<std::string> script) : script_(std::move(script)) {}

    struct Call {
        std::optional<std::string> prior_raw;
        std::vector<std::string> hints;
    };

    ProposeResult propose(const std::string&, const Candidate* prior,
                          const HintSet& hints) override {
        Call rec;
        if (prior) rec.prior_raw = prior->raw;
        rec.hints = hints.hints;
        calls.push_back(std::move(rec));
        if (next_ >= script_.size()) return ProposeResult::done();
        return ProposeResult::of(script_[next_++]);
    }

    std::vector<Call> calls;

private:
    std::vector<std::string> script_;
    size_t next_ = 0;
};

}  // namespace sdlaudit
