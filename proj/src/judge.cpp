#include "figjudge/judge.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "figjudge/digest.hpp"
#include "figjudge/rng.hpp"
#include "figjudge/timefmt.hpp"

namespace figjudge {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string utc_timestamp_compact() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

std::string_view to_string(Role r) {
    switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
    }
    return "user";
}

std::string make_request_tag(std::string_view id, std::string_view strategy, std::string_view phase) {
    std::string tag;
    tag.reserve(id.size() + strategy.size() + phase.size() + 2);
    tag.append(id).push_back('|');
    tag.append(strategy).push_back('|');
    tag.append(phase);
    return tag;
}

std::string tag_id(std::string_view tag) {
    return std::string(tag.substr(0, tag.find('|')));
}

namespace {

ordered_json messages_json(const std::vector<ChatMessage>& messages) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : messages)
        arr.push_back({{"role", to_string(m.role)}, {"content", m.content}});
    return arr;
}

ordered_json params_json(const DecodingParams& p) {
    return {{"temperature", p.temperature},
            {"top_p", p.top_p},
            {"min_new_tokens", p.min_new_tokens},
            {"max_new_tokens", p.max_new_tokens},
            {"repetition_penalty", p.repetition_penalty},
            {"num_beams", p.num_beams},
            {"sample", p.sample}};
}

void validate_request(const JudgeRequest& request) {
    if (request.messages.empty())
        throw Error(ErrorCode::InvalidConfig, "request has no messages");
    if (request.messages.back().role != Role::User)
        throw Error(ErrorCode::InvalidConfig, "last message must have role user");
}

} // namespace

// ---------------------------------------------------------------------------
// Offline backends
// ---------------------------------------------------------------------------

ScriptedBackend::ScriptedBackend(std::map<std::string, std::string> responses_by_tag,
                                 std::optional<std::string> default_response)
    : responses_(std::move(responses_by_tag)), default_(std::move(default_response)) {}

std::string ScriptedBackend::complete(const JudgeRequest& request) {
    auto it = responses_.find(request.tag);
    if (it != responses_.end())
        return it->second;
    if (default_)
        return *default_;
    throw Error(ErrorCode::BackendRefused, "no scripted response for tag '" + request.tag + "'");
}

namespace {

std::map<std::string, int> reversed_rank_table(const ValidatedCorpus& corpus) {
    std::map<std::string, int> table;
    for (const auto& fig : corpus.figures()) {
        const PhdRanking* r = corpus.primary_ranking(fig.figure_id);
        if (!r)
            continue;
        for (const auto& cap : fig.captions)
            table[cap.caption_id] = 7 - r->rank_of(cap.source);
    }
    return table;
}

class RankBackend : public JudgeBackend {
  public:
    explicit RankBackend(const ValidatedCorpus& corpus) : reversed_(reversed_rank_table(corpus)) {}

    std::string complete(const JudgeRequest& request) override {
        const std::string caption_id = tag_id(request.tag);
        auto it = reversed_.find(caption_id);
        if (it == reversed_.end())
            throw Error(ErrorCode::MissingRanking, "caption '" + caption_id + "' has no PhD ranking");
        return "Rating: " + std::to_string(emit(caption_id, it->second));
    }

  protected:
    virtual int emit(const std::string& caption_id, int reversed_rank) = 0;

  private:
    std::map<std::string, int> reversed_;
};

class OracleBackend final : public RankBackend {
  public:
    using RankBackend::RankBackend;
    std::string id() const override { return "oracle"; }

  protected:
    int emit(const std::string&, int reversed_rank) override { return reversed_rank; }
};

class AntiOracleBackend final : public RankBackend {
  public:
    using RankBackend::RankBackend;
    std::string id() const override { return "anti-oracle"; }

  protected:
    int emit(const std::string&, int reversed_rank) override { return 7 - reversed_rank; }
};

class NoisyBackend final : public RankBackend {
  public:
    NoisyBackend(const ValidatedCorpus& corpus, std::uint64_t seed, double flip_prob)
        : RankBackend(corpus), seed_(seed), flip_prob_(flip_prob) {}

    std::string id() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "noisy-s%llu-p%.3f", static_cast<unsigned long long>(seed_), flip_prob_);
        return buf;
    }

  protected:
    int emit(const std::string& caption_id, int reversed_rank) override {
        SplitMix64 rng(mix_seed(seed_, caption_id));
        if (rng.unit() < flip_prob_)
            return 1 + static_cast<int>(rng.bounded(6));
        return reversed_rank;
    }

  private:
    std::uint64_t seed_;
    double flip_prob_;
};

class ContextProbeBackend final : public JudgeBackend {
  public:
    explicit ContextProbeBackend(std::uint64_t seed) : seed_(seed) {}

    std::string id() const override { return "context-probe"; }

    std::string complete(const JudgeRequest& request) override {
        validate_request(request);
        const std::string& prompt = request.messages.back().content;
        bool has_context = false;
        const std::size_t p = prompt.find("Paragraphs:");
        if (p != std::string::npos) {
            std::size_t begin = p + std::string("Paragraphs:").size();
            std::size_t end = prompt.find("Caption:", begin);
            if (end == std::string::npos)
                end = prompt.size();
            for (std::size_t i = begin; i < end; ++i) {
                const char c = prompt[i];
                if (!std::isspace(static_cast<unsigned char>(c)) && c != '.') {
                    has_context = true;
                    break;
                }
            }
        }
        const int jitter = static_cast<int>(mix_seed(seed_, tag_id(request.tag)) & 1);
        const int score = has_context ? 6 - jitter : 1 + jitter;
        return "Rating: " + std::to_string(score);
    }

  private:
    std::uint64_t seed_;
};

} // namespace

std::shared_ptr<JudgeBackend> make_oracle_backend(const ValidatedCorpus& corpus) {
    return std::make_shared<OracleBackend>(corpus);
}

std::shared_ptr<JudgeBackend> make_anti_oracle_backend(const ValidatedCorpus& corpus) {
    return std::make_shared<AntiOracleBackend>(corpus);
}

std::shared_ptr<JudgeBackend> make_noisy_backend(const ValidatedCorpus& corpus, std::uint64_t seed,
                                                 double flip_prob) {
    return std::make_shared<NoisyBackend>(corpus, seed, flip_prob);
}

std::shared_ptr<JudgeBackend> make_context_probe_backend(std::uint64_t seed) {
    return std::make_shared<ContextProbeBackend>(seed);
}

// ---------------------------------------------------------------------------
// Remote backend
// ---------------------------------------------------------------------------

namespace {

struct ParsedUrl {
    std::string origin; // scheme://host[:port]
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorCode::InvalidConfig, "endpoint URL must include a scheme: '" + url + "'");
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string extract_completion_text(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception&) {
        return body; // non-JSON body: surface as-is, parse_score decides
    }
    if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
        const json& choice = j["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string())
            return choice["message"]["content"].get<std::string>();
        if (choice.contains("text") && choice["text"].is_string())
            return choice["text"].get<std::string>();
    }
    if (j.contains("content") && j["content"].is_string())
        return j["content"].get<std::string>();
    if (j.contains("text") && j["text"].is_string())
        return j["text"].get<std::string>();
    return "";
}

class RemoteBackend final : public JudgeBackend {
  public:
    explicit RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
        const ParsedUrl url = split_url(config_.endpoint);
        origin_ = url.origin;
        path_ = url.path;
        if (const char* key = std::getenv(config_.api_key_env.c_str()))
            api_key_ = key;
    }

    std::string id() const override { return "remote/" + config_.model; }

    std::string complete(const JudgeRequest& request) override {
        httplib::Client client(origin_);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);

        httplib::Headers headers;
        if (!api_key_.empty()) {
            const std::string value =
                config_.auth_scheme.empty() ? api_key_ : config_.auth_scheme + " " + api_key_;
            headers.emplace(config_.auth_header, value);
        }

        ordered_json body;
        body["model"] = config_.model;
        body["messages"] = messages_json(request.messages);
        body["temperature"] = request.params.temperature;
        body["top_p"] = request.params.top_p;
        body["max_tokens"] = request.params.max_new_tokens;

        httplib::Result res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res)
            throw Error(ErrorCode::TransportFailure,
                        "no response from " + origin_ + " (" + httplib::to_string(res.error()) + ")");

        const int status = res->status;
        if (status >= 200 && status < 300)
            return extract_completion_text(res->body);
        if (status == 401 || status == 403)
            throw Error(ErrorCode::AuthRejected, "endpoint rejected credentials (HTTP " + std::to_string(status) + ")");
        if (status == 408 || status == 429 || status >= 500)
            throw Error(ErrorCode::TransportFailure, "transient HTTP " + std::to_string(status));
        throw Error(ErrorCode::BackendRefused, "endpoint refused request (HTTP " + std::to_string(status) + ")");
    }

  private:
    RemoteBackendConfig config_;
    std::string origin_;
    std::string path_;
    std::string api_key_;
};

} // namespace

std::shared_ptr<JudgeBackend> make_remote_backend(RemoteBackendConfig config) {
    return std::make_shared<RemoteBackend>(std::move(config));
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

ResponseCache::ResponseCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
    if (dir_)
        std::filesystem::create_directories(*dir_);
}

std::shared_ptr<ResponseCache> ResponseCache::in_memory() {
    return std::shared_ptr<ResponseCache>(new ResponseCache(std::nullopt));
}

std::shared_ptr<ResponseCache> ResponseCache::on_disk(std::filesystem::path dir) {
    return std::shared_ptr<ResponseCache>(new ResponseCache(std::move(dir)));
}

std::string ResponseCache::key_for(const std::string& backend_id, const JudgeRequest& request) {
    ordered_json j;
    j["backend_id"] = backend_id;
    j["messages"] = messages_json(request.messages);
    j["params"] = params_json(request.params);
    return sha256_hex(j.dump());
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
    {
        std::lock_guard lock(mutex_);
        auto it = memory_.find(key);
        if (it != memory_.end())
            return it->second;
    }
    if (!dir_)
        return std::nullopt;
    std::ifstream in(*dir_ / (key + ".json"), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        json j = json::parse(buf.str());
        if (j.contains("response") && j["response"].is_string()) {
            std::string text = j["response"].get<std::string>();
            std::lock_guard lock(mutex_);
            memory_[key] = text;
            return text;
        }
    } catch (const json::exception&) {
        // unreadable entry: treat as a miss
    }
    return std::nullopt;
}

void ResponseCache::store(const std::string& key, const std::string& backend_id, const JudgeRequest& request,
                          const std::string& raw_text) {
    std::lock_guard lock(mutex_);
    memory_[key] = raw_text;
    if (!dir_)
        return;

    ordered_json j;
    j["request"] = {{"backend_id", backend_id},
                    {"tag", request.tag},
                    {"messages", messages_json(request.messages)},
                    {"params", params_json(request.params)}};
    j["response"] = raw_text;
    j["timestamp"] = iso8601_utc_now();

    const std::filesystem::path final_path = *dir_ / (key + ".json");
    const std::filesystem::path tmp_path = *dir_ / (key + ".tmp");
    {
        std::ofstream out(tmp_path, std::ios::binary);
        out << j.dump(2) << '\n';
    }
    // atomic publish; a lost race against another process writing the same
    // key is harmless (content-addressed, identical payload)
    std::error_code ec;
    std::filesystem::rename(tmp_path, final_path, ec);
}

// ---------------------------------------------------------------------------
// Token bucket + client
// ---------------------------------------------------------------------------

TokenBucket::TokenBucket(double per_minute, int burst)
    : per_second_(per_minute / 60.0), capacity_(std::max(1, burst)), tokens_(capacity_) {}

bool TokenBucket::try_acquire(std::chrono::steady_clock::time_point now) {
    std::lock_guard lock(mutex_);
    if (!primed_) {
        // first observation anchors the clock; the bucket starts full
        primed_ = true;
        last_ = now;
    }
    const std::chrono::duration<double> elapsed = now - last_;
    if (elapsed.count() > 0.0) {
        tokens_ = std::min(capacity_, tokens_ + elapsed.count() * per_second_);
        last_ = now;
    }
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return true;
    }
    return false;
}

void TokenBucket::acquire() {
    while (!try_acquire(std::chrono::steady_clock::now()))
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
}

namespace {

class InflightGuard {
  public:
    InflightGuard(std::mutex& m, std::condition_variable& cv, int& count, int limit)
        : mutex_(m), cv_(cv), count_(count) {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return count_ < limit; });
        ++count_;
    }
    ~InflightGuard() {
        {
            std::lock_guard lock(mutex_);
            --count_;
        }
        cv_.notify_one();
    }

  private:
    std::mutex& mutex_;
    std::condition_variable& cv_;
    int& count_;
};

} // namespace

JudgeClient::JudgeClient(std::shared_ptr<JudgeBackend> backend, ClientOptions options)
    : backend_(std::move(backend)), backend_id_(backend_->id()), options_(std::move(options)) {
    if (options_.rate_limit.requests_per_minute > 0)
        bucket_ = std::make_unique<TokenBucket>(options_.rate_limit.requests_per_minute, options_.rate_limit.burst);
    if (options_.max_in_flight < 1)
        options_.max_in_flight = 1;
    if (options_.retry.max_attempts < 1)
        options_.retry.max_attempts = 1;
}

JudgeResponse JudgeClient::submit(const JudgeRequest& request) {
    validate_request(request);

    std::string cache_key;
    if (options_.cache) {
        cache_key = ResponseCache::key_for(backend_id_, request);
        if (auto hit = options_.cache->lookup(cache_key)) {
            cache_hits_.fetch_add(1);
            JudgeResponse r;
            r.raw_text = std::move(*hit);
            r.backend_id = backend_id_;
            r.cached = true;
            r.latency_ms = 0;
            r.attempts = 0;
            return r;
        }
    }

    InflightGuard guard(inflight_mutex_, inflight_cv_, in_flight_, options_.max_in_flight);

    SplitMix64 jitter_rng(options_.retry.jitter_seed ^ fnv1a64(request.tag));
    const auto start = std::chrono::steady_clock::now();
    for (int attempt = 1;; ++attempt) {
        if (bucket_)
            bucket_->acquire();
        try {
            backend_calls_.fetch_add(1);
            std::string text = backend_->complete(request);
            const auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

            if (options_.cache)
                options_.cache->store(cache_key, backend_id_, request, text);

            JudgeResponse r;
            r.raw_text = std::move(text);
            r.backend_id = backend_id_;
            r.cached = false;
            r.latency_ms = static_cast<int>(elapsed.count());
            r.attempts = attempt;
            return r;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TransportFailure)
                throw;
            if (attempt >= options_.retry.max_attempts)
                throw Error(ErrorCode::TransportExhausted, std::string(e.what()) + " (after " +
                                                               std::to_string(attempt) + " attempts)");
            double delay = options_.retry.base_delay_ms;
            for (int i = 1; i < attempt; ++i)
                delay *= options_.retry.multiplier;
            delay = std::min(delay, static_cast<double>(options_.retry.max_delay_ms));
            delay *= 1.0 - options_.retry.jitter * jitter_rng.unit();
            std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));
        }
    }
}

} // namespace figjudge
