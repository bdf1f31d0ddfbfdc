/// @file serve.hpp
/// @brief HTTP delivery of a question set and grading of submitted sheets.
///
///   GET  /api/questionset  question set without answer keys
///   POST /api/responses    response sheet in, grade report out
///   GET  /healthz          200 "ok"

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "qlc/question.hpp"

namespace qlc {

struct HttpReply {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Request handlers, independent of the HTTP library. The question set is
/// immutable after construction; log appends are serialized.
class ServeApp {
public:
    explicit ServeApp(QuestionSet set, std::optional<std::filesystem::path> results_log = std::nullopt);

    [[nodiscard]] HttpReply question_set() const;
    HttpReply submit(std::string_view body);
    [[nodiscard]] static HttpReply health();

private:
    QuestionSet set_;
    std::string stripped_;
    std::optional<std::filesystem::path> log_path_;
    std::mutex log_mutex_;
};

class HttpServer {
public:
    explicit HttpServer(ServeApp& app);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Bind to host:port; port 0 picks a free port. Returns the bound port.
    /// Throws std::runtime_error when binding fails.
    int bind(const std::string& host, int port);
    /// Serve until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace qlc
