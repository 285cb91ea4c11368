// Copyright 2026 The Repograph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "repograph/service/server.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

#include "httplib.h"
#include "repograph/core/error.hpp"
#include "repograph/core/query.hpp"
#include "repograph/enrich/cache.hpp"
#include "repograph/service/errors.hpp"
#include "repograph/service/operations.hpp"

namespace repograph {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

// Per-request bookkeeping. httplib runs routing, the handler and the
// post-routing hook for one request on the same worker thread.
struct RequestContext {
  bool active = false;
  Clock::time_point start;
  std::string endpoint;
  std::string graph_id;
};
thread_local RequestContext t_request;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(int status, const std::string& type, const std::string& message) {
  return {{"error", {{"status", status}, {"type", type}, {"message", message}}}};
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) throw ValidationError("request body must be a JSON object");
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("request body is not valid JSON: ") + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <typename T>
T numeric_param(const httplib::Request& req, const char* key, T fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>)
      out = static_cast<T>(std::stod(v, &used));
    else if constexpr (std::is_signed_v<T>)
      out = static_cast<T>(std::stoll(v, &used));
    else {
      if (!v.empty() && v.front() == '-') throw std::invalid_argument(v);
      out = static_cast<T>(std::stoull(v, &used));
    }
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ValidationError(std::string("query parameter '") + key + "' is not a valid number: " + v);
  }
}

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  ProviderSet providers;
  GraphStore store;
  AuditLog audit;
  EnrichCache cache;
  JobQueue jobs;
  httplib::Server server;

  Impl(ServiceConfig c, ProviderSet p)
      : config(std::move(c)),
        providers(std::move(p)),
        store(config.store_dir),
        audit(config.audit_path()),
        cache(config.cache_path()) {
    install();
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  // Registers `handler` and tags the request with its route pattern. For
  // patterns under /graphs/{id}, the first capture is the graph id.
  void route(const std::string& method, const std::string& regex, std::string endpoint, Handler handler) {
    const bool names_graph = endpoint.find("/graphs/{id}") != std::string::npos;
    auto wrapped = [endpoint = std::move(endpoint), names_graph, handler = std::move(handler)](
                       const httplib::Request& req, httplib::Response& res) {
      t_request.endpoint = endpoint;
      if (names_graph && req.matches.size() > 1) t_request.graph_id = req.matches[1];
      handler(req, res);
    };
    if (method == "GET")
      server.Get(regex, wrapped);
    else
      server.Post(regex, wrapped);
  }

  void record(const httplib::Request& req, const httplib::Response& res) {
    if (req.path == "/healthz") return;
    AuditRecord r;
    r.timestamp = Timestamp::now();
    r.endpoint = t_request.active && !t_request.endpoint.empty() ? t_request.endpoint : req.method + " " + req.path;
    r.graph_id = t_request.active ? t_request.graph_id : std::string();
    if (r.graph_id.empty() && res.has_header("X-Graph-Id")) r.graph_id = res.get_header_value("X-Graph-Id");
    r.request_digest = request_digest(req.method, req.target, req.body);
    r.duration_ms =
        t_request.active ? std::chrono::duration<double, std::milli>(Clock::now() - t_request.start).count() : 0.0;
    r.status = res.status;
    r.outcome = res.status < 400 ? "ok" : "error";
    t_request = {};
    try {
      audit.append(r);
    } catch (const std::exception& e) {
      std::cerr << "audit: " << e.what() << "\n";
    }
  }

  std::shared_ptr<const KnowledgeGraph> graph_of(const httplib::Request& req) {
    return store.get(req.matches[1])->read();
  }

  void install() {
    server.new_task_queue = [n = config.threads] { return new httplib::ThreadPool(static_cast<std::size_t>(n)); };
    server.set_pre_routing_handler([](const httplib::Request&, httplib::Response&) {
      t_request = {true, Clock::now(), {}, {}};
      return httplib::Server::HandlerResponse::Unhandled;
    });
    server.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) { record(req, res); });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        const int status = http_status(e);
        send_json(res, status, error_body(status, error_kind(e), e.what()));
      } catch (...) {
        send_json(res, 500, error_body(500, "internal", "unknown error"));
      }
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      const std::string msg = res.status == 404 ? "no route for " + req.method + " " + req.path : "request failed";
      send_json(res, res.status, error_body(res.status, res.status == 404 ? "not_found" : "http", msg));
      return httplib::Server::HandlerResponse::Handled;
    });

    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}, {"graphs_loaded", store.size()}});
    });

    route("POST", "/graphs", "POST /graphs", [this](const httplib::Request& req, httplib::Response& res) {
      const BuildRequest request = BuildRequest::from_json(parse_body(req));
      if (request.graph_id) t_request.graph_id = *request.graph_id;
      auto task = [this, request] {
        json report;
        KnowledgeGraph g = build_repository(request, config, providers, cache, &report);
        store.put(std::move(g));
        return report;
      };
      if (request.async) {
        const std::string job = jobs.submit("build", request.graph_id.value_or(""), task);
        send_json(res, 202, {{"job_id", job}, {"state", "queued"}, {"poll", "/jobs/" + job}});
      } else {
        const json report = task();
        res.set_header("X-Graph-Id", report["graph_id"].get<std::string>());
        send_json(res, 201, report);
      }
    });

    route("POST", R"(/graphs/([^/]+)/update)", "POST /graphs/{id}/update",
          [this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            store.get(id);
            const UpdateRequest request = UpdateRequest::from_json(parse_body(req));
            auto task = [this, id, request] {
              return store.modify(id, [&](KnowledgeGraph& g) {
                return update_repository(g, request, config, providers, cache);
              });
            };
            if (request.async) {
              const std::string job = jobs.submit("update", id, task);
              send_json(res, 202, {{"job_id", job}, {"state", "queued"}, {"poll", "/jobs/" + job}});
            } else {
              send_json(res, 200, task());
            }
          });

    route("POST", R"(/graphs/([^/]+)/search)", "POST /graphs/{id}/search",
          [this](const httplib::Request& req, httplib::Response& res) {
            const auto g = graph_of(req);
            const SearchRequest request = parse_search_request(parse_body(req), config.search);
            const SearchResponse response = search_relevant(*g, request.retrieval, providers.search(request.use_llm));
            send_json(res, 200, search_response_json(*g, response));
          });

    route("GET", R"(/graphs/([^/]+)/stats)", "GET /graphs/{id}/stats",
          [this](const httplib::Request& req, httplib::Response& res) { send_json(res, 200, stats_json(*graph_of(req))); });

    route("GET", R"(/graphs/([^/]+)/nodes)", "GET /graphs/{id}/nodes",
          [this](const httplib::Request& req, httplib::Response& res) {
            const auto g = graph_of(req);
            json body = {{"graph_id", g->meta().graph_id}};
            if (req.has_param("path")) {
              const ReadResult r = read_query(*g, query::NodeByPath{req.get_param_value("path")});
              body["node"] = node_detail_json(*g, r.nodes.front());
            } else if (req.has_param("id")) {
              const auto id = NodeId::parse(req.get_param_value("id"));
              if (!id) throw ValidationError("malformed node id '" + req.get_param_value("id") + "'");
              if (!g->contains(*id)) throw NotFoundError("unknown node " + id->str());
              body["node"] = node_detail_json(*g, *id);
            } else if (req.has_param("kind")) {
              NodeKind kind;
              try {
                kind = parse_node_kind(req.get_param_value("kind"));
              } catch (const ParseError& e) {
                throw ValidationError(e.what());
              }
              body.update(to_json(*g, read_query(*g, query::NodesByKind{kind})));
            } else {
              throw ValidationError("one of the query parameters path, id or kind is required");
            }
            send_json(res, 200, body);
          });

    route("GET", R"(/graphs/([^/]+)/subgraph)", "GET /graphs/{id}/subgraph",
          [this](const httplib::Request& req, httplib::Response& res) {
            const auto g = graph_of(req);
            if (!req.has_param("files")) throw ValidationError("query parameter 'files' is required");
            const auto files = split_list(req.get_param_value("files"));
            const int depth = numeric_param<int>(req, "depth", config.search.depth);
            json body = to_json(*g, file_subgraph(*g, files, depth));
            body["graph_id"] = g->meta().graph_id;
            body["files"] = files;
            body["depth"] = depth;
            send_json(res, 200, body);
          });

    route("GET", R"(/graphs/([^/]+)/clusters)", "GET /graphs/{id}/clusters",
          [this](const httplib::Request& req, httplib::Response& res) {
            const auto g = graph_of(req);
            ClusteringDefaults d = config.clustering;
            if (req.has_param("method")) d.method = parse_cluster_method(req.get_param_value("method"));
            d.seed = numeric_param<std::uint64_t>(req, "seed", d.seed);
            d.resolution = numeric_param<double>(req, "resolution", d.resolution);
            if (!(d.resolution > 0.0)) throw ValidationError("resolution must be positive");
            const ClusterResult result = cluster_repository(*g, cluster_options(d, providers.llm.get()));
            send_json(res, 200, cluster_response_json(*g, result, providers.llm != nullptr));
          });

    route("GET", R"(/jobs/([^/]+))", "GET /jobs/{id}", [this](const httplib::Request& req, httplib::Response& res) {
      const auto status = jobs.status(req.matches[1]);
      if (!status) throw NotFoundError("unknown job '" + std::string(req.matches[1]) + "'");
      t_request.graph_id = status->graph_id;
      send_json(res, 200, status->to_json());
    });
  }
};

Service::Service(ServiceConfig config, ProviderSet providers)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(providers))) {}

Service::~Service() { stop(); }

int Service::bind_any_port(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error("cannot bind " + host);
  return port;
}

void Service::bind(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
}

void Service::serve() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

const ServiceConfig& Service::config() const { return impl_->config; }
GraphStore& Service::store() { return impl_->store; }
AuditLog& Service::audit() { return impl_->audit; }
JobQueue& Service::jobs() { return impl_->jobs; }

}  // namespace repograph
