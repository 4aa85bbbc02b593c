#pragma once
// JSON-over-HTTP binding of a Store.
//
//   POST /articles                      ingest, 201 + IngestReport
//   GET  /articles/{id}
//   GET  /articles/{id}/annotations
//   GET  /users/{id}/profile
//   POST /users/{id}/profile            {seeds: [conceptId]}, 201 + Profile
//   POST /users/{id}/feedback           {articleId, kind, rating?, timestamp?}
//   GET  /users/{id}/review?date=YYYY-MM-DD
//   GET  /users/{id}/alerts
//   GET  /concepts/{id}/digest
//   GET  /ontology/{layer}
//   POST /ontology/domain               swap, returns the DanglingReport
//
// Errors come back as {"code": <Errc name>, "message": ...}.

#include <optional>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "ontorec/error.hpp"
#include "ontorec/store.hpp"

namespace ontorec {

inline int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownId:
    case Errc::UnknownDoc:
    case Errc::UnknownConcept: return 404;
    case Errc::DuplicateId:
    case Errc::DuplicateDoc:
    case Errc::DuplicateArticle: return 409;
    case Errc::SchemaError:
    case Errc::UnknownSignalKind:
    case Errc::InvalidId:
    case Errc::EmptySeeds:
    case Errc::ConfigError: return 400;
    case Errc::EmptyArticleVector:
    case Errc::InvalidDomainLayer:
    case Errc::UnknownParent:
    case Errc::LayerViolation:
    case Errc::CycleDetected:
    case Errc::DomainViolation:
    case Errc::RangeViolation:
    case Errc::EmptyCorpus:
    case Errc::EmptyEvalSpec: return 422;
    case Errc::BindFailure:
    case Errc::IoError: return 500;
  }
  return 500;
}

inline json error_body(Errc code, const std::string& message) {
  return {{"code", std::string(to_string(code))}, {"message", message}};
}

class HttpService {
 public:
  explicit HttpService(Store& store) : store_(store) { routes(); }

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error(Errc::BindFailure, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
  }

  // Blocks until stop().
  void listen() { server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  using Handler = std::function<std::pair<int, json>(const httplib::Request&)>;

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static httplib::Server::Handler wrap(Handler handler) {
    return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
      try {
        auto [status, body] = handler(req);
        send(res, status, body);
      } catch (const Error& e) {
        send(res, http_status(e.code()), error_body(e.code(), e.detail()));
      } catch (const json::exception& e) {
        send(res, 400, error_body(Errc::SchemaError, e.what()));
      } catch (const std::exception& e) {
        send(res, 500, error_body(Errc::IoError, e.what()));
      }
    };
  }

  static json body_of(const httplib::Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw Error(Errc::SchemaError, std::string("request body is not JSON: ") + e.what());
    }
  }

  static const std::string& param(const httplib::Request& req, const char* name) { return req.path_params.at(name); }

  void routes() {
    server_.Post("/articles", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                   return {201, to_json(store_.ingest(document_from_json(body_of(req))))};
                 }));
    server_.Get("/articles/:id", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  return {200, to_json(store_.snapshot()->article(param(req, "id")))};
                }));
    server_.Get("/articles/:id/annotations", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  const auto s = store_.snapshot();
                  auto it = s->annotations.find(param(req, "id"));
                  if (it == s->annotations.end()) throw Error(Errc::UnknownDoc, param(req, "id"));
                  json out = json::array();
                  for (const auto& a : it->second) out.push_back(to_json(a));
                  return {200, out};
                }));
    server_.Get("/users/:id/profile", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  return {200, to_json(store_.snapshot()->profile(param(req, "id")))};
                }));
    server_.Post("/users/:id/profile", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                   const json body = body_of(req);
                   if (!body.is_object() || !body.contains("seeds") || !body.at("seeds").is_array())
                     throw Error(Errc::SchemaError, "expected {\"seeds\": [conceptId]}");
                   const auto seeds = body.at("seeds").get<std::set<std::string>>();
                   return {201, to_json(store_.create_profile(param(req, "id"), seeds))};
                 }));
    server_.Post("/users/:id/feedback", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                   const json body = body_of(req);
                   if (!body.is_object() || !body.contains("articleId") || !body.contains("kind"))
                     throw Error(Errc::SchemaError, "expected {articleId, kind, rating?}");
                   std::optional<int> rating;
                   if (body.contains("rating")) rating = body.at("rating").get<int>();
                   const auto kind = parse_feedback_kind(body.at("kind").get<std::string>(), rating);
                   return {200, to_json(store_.feedback(param(req, "id"), body.at("articleId").get<std::string>(), kind,
                                                        body.value("timestamp", std::string{})))};
                 }));
    server_.Get("/users/:id/review", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  if (!req.has_param("date")) throw Error(Errc::SchemaError, "missing ?date=YYYY-MM-DD");
                  return {200, store_.review_json(param(req, "id"), req.get_param_value("date"))};
                }));
    server_.Get("/users/:id/alerts", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  json out = json::array();
                  for (const auto& a : store_.alerts(param(req, "id"))) out.push_back(to_json(a));
                  return {200, out};
                }));
    server_.Get("/concepts/:id/digest", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  return {200, to_json(store_.digest(param(req, "id")))};
                }));
    server_.Get("/ontology/:layer", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                  const auto layer = parse_layer(param(req, "layer"));
                  if (!layer) throw Error(Errc::UnknownId, "layer " + param(req, "layer"));
                  return {200, to_json(store_.snapshot()->kb.layer_content(*layer))};
                }));
    server_.Post("/ontology/domain", wrap([this](const httplib::Request& req) -> std::pair<int, json> {
                   return {200, to_json(store_.swap_domain(layer_from_json(body_of(req))))};
                 }));
  }

  Store& store_;
  httplib::Server server_;
};

}  // namespace ontorec
