// providers.hpp - replay provider and trace recording (JSON on disk)
//
// A trace file is a JSON array of {iteration, request, response}, where
// request echoes {source, prior_sdl, hints}. Replay consumes only the
// responses, which is what makes recorded audits fully offline and
// byte-reproducible.
#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdlaudit/cgrs.hpp"

namespace sdlaudit {

struct TraceEntry {
    int iteration = 0;
    std::string source;
    std::optional<std::string> prior_sdl;
    std::vector<std::string> hints;
    std::string response;
};

inline nlohmann::ordered_json trace_to_json(const std::vector<TraceEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json req;
        req["source"] = e.source;
        req["prior_sdl"] = e.prior_sdl ? nlohmann::ordered_json(*e.prior_sdl)
                                       : nlohmann::ordered_json(nullptr);
        req["hints"] = e.hints;
        arr.push_back({{"iteration", e.iteration}, {"request", req}, {"response", e.response}});
    }
    return arr;
}

inline std::vector<TraceEntry> trace_from_json(const nlohmann::json& arr) {
    std::vector<TraceEntry> entries;
    for (const auto& item : arr) {
        TraceEntry e;
        e.iteration = item.value("iteration", 0);
        if (item.contains("request")) {
            const auto& req = item["request"];
            e.source = req.value("source", "");
            if (req.contains("prior_sdl") && !req["prior_sdl"].is_null())
                e.prior_sdl = req["prior_sdl"].get<std::string>();
            if (req.contains("hints"))
                e.hints = req["hints"].get<std::vector<std::string>>();
        }
        e.response = item.value("response", "");
        entries.push_back(std::move(e));
    }
    return entries;
}

// Wraps another provider and records every request/response pair.
class TraceRecorder : public CandidateProvider {
public:
    explicit TraceRecorder(CandidateProvider& inner) : inner_(inner) {}

    ProposeResult propose(const std::string& source, const Candidate* prior,
                          const HintSet& hints) override {
        ProposeResult r = inner_.propose(source, prior, hints);
        if (!r.exhausted) {
            TraceEntry e;
            e.iteration = static_cast<int>(entries.size()) + 1;
            e.source = source;
            if (prior) e.prior_sdl = prior->raw;
            e.hints = hints.hints;
            e.response = r.text;
            entries.push_back(std::move(e));
        }
        return r;
    }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        out << trace_to_json(entries).dump(2, ' ', false, nlohmann::json::error_handler_t::replace)
            << "\n";
    }

    std::vector<TraceEntry> entries;

private:
    CandidateProvider& inner_;
};

// Replays the responses of a recorded trace, then signals exhaustion.
class ReplayProvider : public CandidateProvider {
public:
    explicit ReplayProvider(std::vector<TraceEntry> entries) : entries_(std::move(entries)) {}

    static ReplayProvider from_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw TransportError("cannot read trace file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw TransportError("bad trace file " + path + ": " + e.what());
        }
        return ReplayProvider(trace_from_json(j));
    }

    ProposeResult propose(const std::string&, const Candidate*, const HintSet&) override {
        if (next_ >= entries_.size()) return ProposeResult::done();
        return ProposeResult::of(entries_[next_++].response);
    }

private:
    std::vector<TraceEntry> entries_;
    size_t next_ = 0;
};

// Mock scripts for the CLI: a JSON array of candidate texts.
inline MockProvider mock_provider_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TransportError("cannot read mock script " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw TransportError("bad mock script " + path + ": " + e.what());
    }
    return MockProvider(j.get<std::vector<std::string>>());
}

}  // namespace sdlaudit
