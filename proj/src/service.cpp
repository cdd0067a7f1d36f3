#include "atlas/service.hpp"

#include <charconv>

#include "atlas/json_views.hpp"
#include "httplib.h"

namespace atlas {
namespace {

using ordered_json = nlohmann::ordered_json;

struct HttpError {
  int status;
  std::string message;
};

Response json_response(const ordered_json& doc, int status = 200) {
  return {status, doc.dump(), "application/json"};
}

Response error_response(int status, std::string_view message) {
  ordered_json doc;
  doc["error"] = message;
  return json_response(doc, status);
}

std::optional<std::string> param(const QueryParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

std::string required(const QueryParams& params, const std::string& key) {
  auto value = param(params, key);
  if (!value || value->empty()) throw HttpError{400, "missing parameter '" + key + "'"};
  return *value;
}

std::size_t size_param(const QueryParams& params, const std::string& key, std::size_t fallback) {
  auto value = param(params, key);
  if (!value) return fallback;
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value->data(), value->data() + value->size(), out);
  if (ec != std::errc{} || ptr != value->data() + value->size()) {
    throw HttpError{400, "parameter '" + key + "' must be a non-negative integer"};
  }
  return out;
}

Level level_param(const QueryParams& params, Level fallback = Level::Class) {
  auto value = param(params, "level");
  if (!value) return fallback;
  if (*value == "3") return Level::Class;
  if (*value == "4") return Level::Subclass;
  throw HttpError{400, "level must be 3 or 4"};
}

}  // namespace

Response QueryService::handle(std::string_view method, std::string_view path,
                              const QueryParams& params, std::string_view body) const {
  try {
    if (method == "GET") {
      if (path == "/map") return map(params);
      if (path == "/position") return position(params);
      if (path == "/nearby") return nearby(params);
      if (path == "/ideas") return list_ideas(params);
      if (path == "/ideas/render") return render(params);
      if (path.starts_with("/field/")) return field(path.substr(7), params);
      if (path.starts_with("/patent/")) return patent(path.substr(8));
    } else if (method == "POST" && path == "/ideas") {
      return post_idea(body);
    }
    return error_response(404, "no route for " + std::string(method) + " " + std::string(path));
  } catch (const HttpError& e) {
    return error_response(e.status, e.message);
  } catch (const std::exception& e) {
    return error_response(400, e.what());
  }
}

Response QueryService::map(const QueryParams& params) const {
  return {200, artifact_.map_text(level_param(params)), "application/json"};
}

Response QueryService::position(const QueryParams& params) const {
  const auto query = required(params, "q");
  return json_response(to_json(position_domain(artifact_.index(), query, level_param(params))));
}

Response QueryService::nearby(const QueryParams& params) const {
  const auto query = required(params, "q");
  const Level level = level_param(params);
  const auto where = position_domain(artifact_.index(), query, level);
  if (!where.positioned()) {
    throw HttpError{422, "query '" + query + "' matches no patents; nothing to rank against"};
  }
  const auto entries =
      rank_nearby(where, artifact_.level(level).matrix, size_param(params, "k", 10));
  return json_response(to_json(where, entries, artifact_.field_names()));
}

Response QueryService::field(std::string_view code, const QueryParams& params) const {
  const Level level = level_param(params, code.size() == 4 ? Level::Subclass : Level::Class);
  const LevelProducts& products = artifact_.level(level);
  PanelOptions options;
  options.k_terms = size_param(params, "k_terms", 10);
  options.k_patents = size_param(params, "k_patents", 10);
  options.mode = rank_mode_from_string(param(params, "mode").value_or("frequency"));
  options.registry = &products.registry;

  std::optional<DomainPosition> where;
  if (auto query = param(params, "q"); query && !query->empty()) {
    where = position_domain(artifact_.index(), *query, level);
  }
  const DomainPosition* context = where ? &*where : nullptr;
  try {
    const auto panel =
        field_panel(artifact_.index(), artifact_.stopwords(), context, level, code, options);
    return json_response(to_json(panel, artifact_.field_names(), context));
  } catch (const ExplorerError& e) {
    throw HttpError{404, e.what()};
  }
}

Response QueryService::patent(std::string_view id) const {
  const PatentRecord* record = artifact_.index().find(id);
  if (!record) throw HttpError{404, "unknown patent id '" + std::string(id) + "'"};
  return json_response(to_json(*record));
}

Response QueryService::post_idea(std::string_view body) const {
  IdeaDraft draft;
  try {
    const auto doc = ordered_json::parse(body);
    draft.heuristic = heuristic_from_string(doc.at("heuristic").get<std::string>());
    draft.stimulus_text = doc.at("stimulus_text").get<std::string>();
    draft.stimulus_kind = stimulus_kind_from_string(doc.value("stimulus_kind", "term"));
    draft.source_field = doc.at("source_field").get<std::string>();
    draft.target_query = doc.at("target_query").get<std::string>();
    draft.idea_text = doc.at("idea_text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw HttpError{400, std::string("malformed idea draft: ") + e.what()};
  }
  // The source field's code length fixes the level omega is measured at.
  const Level level = draft.source_field.size() == 4 ? Level::Subclass : Level::Class;
  const auto where = position_domain(artifact_.index(), draft.target_query, level);
  const auto record = ledger_.record(draft, where, artifact_.level(level).matrix);
  return json_response(to_json(record), 201);
}

Response QueryService::list_ideas(const QueryParams& params) const {
  const IdeaOrder order = idea_order_from_string(param(params, "order").value_or("proximity_desc"));
  const auto ideas = ledger_.snapshot();
  const auto ranked = rank_ideas(ideas, order);
  return json_response(to_json(ranked, order));
}

Response QueryService::render(const QueryParams& params) const {
  const Heuristic heuristic = heuristic_from_string(required(params, "heuristic"));
  ordered_json doc;
  doc["sentence"] = render_idea(heuristic, required(params, "stimulus"), required(params, "target"));
  return json_response(doc);
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const QueryService& service) : impl_(std::make_unique<Impl>()) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const Response out = service.handle(req.method, req.path, params, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  impl_->server.Get(".*", forward);
  impl_->server.Post(".*", forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace atlas
