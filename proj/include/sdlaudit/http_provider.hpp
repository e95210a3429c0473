// http_provider.hpp - candidate provider backed by a chat-completion
// HTTP endpoint.
//
// Request body: {source, prior_sdl, hints[], temperature: 0, model}.
// The reply may be a chat-completion JSON (choices[0].message.content)
// or plain text; the first ``` fenced block is taken as the candidate,
// and a fence-less reply is passed through as-is so it fails parsing
// and produces a synthetic hint instead of aborting the loop.
#pragma once

#include <functional>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "sdlaudit/cgrs.hpp"

namespace sdlaudit {

struct HttpProviderConfig {
    std::string url;    // full endpoint URL, e.g. http://host:port/v1/chat
    std::string model;
    std::string token;  // bearer auth, empty = none
    int timeout_sec = 60;
    int retries = 2;    // transport errors retried this many times, then surfaced
};

struct HttpResponse {
    bool ok = false;       // transport-level success and 2xx status
    int status = 0;
    std::string body;
    std::string error;
};

// Seam for tests: the default transport posts via cpp-httplib.
using HttpTransport = std::function<HttpResponse(const HttpProviderConfig&, const std::string& body)>;

inline HttpResponse http_transport(const HttpProviderConfig& cfg, const std::string& body) {
    HttpResponse out;
    std::string url = cfg.url;
    size_t scheme = url.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    size_t path_start = url.find('/', host_start);
    std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(cfg.timeout_sec, 0);
    client.set_read_timeout(cfg.timeout_sec, 0);
    httplib::Headers headers;
    if (!cfg.token.empty()) headers.emplace("Authorization", "Bearer " + cfg.token);
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
        out.error = "transport: " + httplib::to_string(res.error());
        return out;
    }
    out.status = res->status;
    out.body = res->body;
    out.ok = res->status >= 200 && res->status < 300;
    if (!out.ok) out.error = "HTTP status " + std::to_string(res->status);
    return out;
}

// Few hints means the candidate is nearly right; ask for a local patch.
inline std::string refine_instruction(size_t hint_count) {
    if (hint_count == 0) return "propose a complete SDL fact base for the source";
    if (hint_count <= 3) return "apply a localized patch to the prior fact base fixing the listed violations";
    return "regenerate the fact base fixing the listed violations";
}

inline std::string extract_fenced_block(const std::string& reply) {
    size_t open = reply.find("```");
    if (open == std::string::npos) return reply;
    size_t body_start = reply.find('\n', open);
    if (body_start == std::string::npos) return reply;
    ++body_start;
    size_t close = reply.find("```", body_start);
    if (close == std::string::npos) return reply;
    return reply.substr(body_start, close - body_start);
}

inline std::string extract_reply_text(const std::string& body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (!j.is_discarded()) {
        if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
            const auto& first = j["choices"][0];
            if (first.contains("message") && first["message"].contains("content"))
                return first["message"]["content"].get<std::string>();
            if (first.contains("text")) return first["text"].get<std::string>();
        }
        if (j.contains("content") && j["content"].is_string())
            return j["content"].get<std::string>();
    }
    return body;
}

class HttpProvider : public CandidateProvider {
public:
    explicit HttpProvider(HttpProviderConfig cfg, HttpTransport transport = http_transport)
        : cfg_(std::move(cfg)), transport_(std::move(transport)) {}

    ProposeResult propose(const std::string& source, const Candidate* prior,
                          const HintSet& hints) override {
        nlohmann::ordered_json body;
        body["source"] = source;
        body["prior_sdl"] = prior ? nlohmann::ordered_json(prior->raw)
                                  : nlohmann::ordered_json(nullptr);
        body["hints"] = hints.hints;
        body["temperature"] = 0;
        body["model"] = cfg_.model;
        body["instruction"] = refine_instruction(hints.hints.size());

        std::string payload =
            body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
        HttpResponse resp;
        for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
            resp = transport_(cfg_, payload);
            if (resp.ok) break;
        }
        if (!resp.ok)
            throw TransportError("provider request failed: " +
                                 (resp.error.empty() ? "status " + std::to_string(resp.status)
                                                     : resp.error));
        return ProposeResult::of(extract_fenced_block(extract_reply_text(resp.body)));
    }

private:
    HttpProviderConfig cfg_;
    HttpTransport transport_;
};

}  // namespace sdlaudit
