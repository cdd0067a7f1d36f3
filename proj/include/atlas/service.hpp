#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "atlas/artifact.hpp"
#include "atlas/ideation.hpp"

namespace atlas {

using QueryParams = std::multimap<std::string, std::string>;

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Endpoint logic, independent of the transport. Reads only the immutable
/// artifact; the ledger is the single mutable piece and serializes its own
/// appends.
///
///   GET  /map?level=3|4
///   GET  /position?q=&level=
///   GET  /nearby?q=&level=&k=
///   GET  /field/{code}?q=&level=&k_terms=&k_patents=&mode=
///   GET  /patent/{id}
///   POST /ideas              body: idea draft
///   GET  /ideas?order=proximity_desc|proximity_asc
///   GET  /ideas/render?heuristic=&stimulus=&target=
class QueryService {
 public:
  QueryService(const IndexArtifact& artifact, IdeaLedger& ledger)
      : artifact_(artifact), ledger_(ledger) {}

  Response handle(std::string_view method, std::string_view path, const QueryParams& params,
                  std::string_view body = {}) const;

 private:
  Response map(const QueryParams& params) const;
  Response position(const QueryParams& params) const;
  Response nearby(const QueryParams& params) const;
  Response field(std::string_view code, const QueryParams& params) const;
  Response patent(std::string_view id) const;
  Response post_idea(std::string_view body) const;
  Response list_ideas(const QueryParams& params) const;
  Response render(const QueryParams& params) const;

  const IndexArtifact& artifact_;
  IdeaLedger& ledger_;
};

/// HTTP front end over a QueryService.
class HttpServer {
 public:
  explicit HttpServer(const QueryService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port.
  int start(const std::string& host, int port);
  // Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace atlas
