#include "qlc/serve.hpp"

#include <fstream>
#include <stdexcept>

#include "httplib.h"
#include "qlc/grading.hpp"
#include "qlc/question_json.hpp"

namespace qlc {

namespace {

HttpReply error_reply(int status, const std::string& message) {
    return {status, "application/json", nlohmann::json{{"error", message}}.dump()};
}

}  // namespace

ServeApp::ServeApp(QuestionSet set, std::optional<std::filesystem::path> results_log)
    : set_(std::move(set)),
      stripped_(question_set_to_json(set_, false).dump()),
      log_path_(std::move(results_log)) {}

HttpReply ServeApp::question_set() const { return {200, "application/json", stripped_}; }

HttpReply ServeApp::health() { return {200, "text/plain", "ok"}; }

HttpReply ServeApp::submit(std::string_view body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        return error_reply(400, std::string("invalid JSON: ") + e.what());
    }
    try {
        const ResponseSheet sheet = response_sheet_from_json(j, set_);
        const nlohmann::json report = grade_report_to_json(grade(set_, sheet));
        if (log_path_) {
            const std::lock_guard lock(log_mutex_);
            std::ofstream log(*log_path_, std::ios::app);
            log << nlohmann::json{{"responses", response_sheet_to_json(sheet)}, {"report", report}}.dump() << '\n';
        }
        return {200, "application/json", report.dump()};
    } catch (const QuestionSetMismatch& e) {
        return error_reply(409, e.what());
    } catch (const InvalidResponse& e) {
        return error_reply(400, e.what());
    } catch (const GradingError& e) {
        return error_reply(422, e.what());
    }
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(ServeApp& app) : impl_(std::make_unique<Impl>()) {
    // httplib's default also sets SO_REUSEPORT, which lets a second server
    // silently share a port that is already in use.
    impl_->server.set_socket_options([](auto sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(reply.body, reply.content_type);
    };
    impl_->server.Get("/api/questionset",
                      [&app, send](const httplib::Request&, httplib::Response& res) { send(res, app.question_set()); });
    impl_->server.Post("/api/responses", [&app, send](const httplib::Request& req, httplib::Response& res) {
        send(res, app.submit(req.body));
    });
    impl_->server.Options("/api/responses", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    impl_->server.Get("/healthz",
                      [send](const httplib::Request&, httplib::Response& res) { send(res, ServeApp::health()); });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    int bound = -1;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (impl_->server.bind_to_port(host, port)) {
        bound = port;
    }
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace qlc
