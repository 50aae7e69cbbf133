// Eigen (via expansion.hpp) must precede httplib: <resolv.h> defines _res.
#include "dangerlex/error.hpp"
#include "dangerlex/expansion.hpp"

#include <httplib.h>

namespace dangerlex {
namespace {

// "https://api.conceptnet.io/prefix" -> ("https://api.conceptnet.io", "/prefix")
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto host_begin = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = url.find('/', host_begin);
  if (slash == std::string::npos) return {url, ""};
  auto prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

}  // namespace

HttpKgSource::HttpKgSource(std::string base_url, std::string language, std::chrono::milliseconds min_interval,
                           std::size_t page_limit)
    : base_url_(std::move(base_url)), language_(std::move(language)), limiter_(min_interval), page_limit_(page_limit) {}

std::vector<KgEdge> HttpKgSource::edges_for(std::string_view term) {
  const auto [origin, prefix] = split_base_url(base_url_);
  httplib::Client client(origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_follow_location(true);

  httplib::Params params{{"node", concept_uri(language_, term)},
                         {"other", "/c/" + language_},
                         {"limit", std::to_string(page_limit_)}};
  std::string path = prefix + "/query?" + httplib::detail::params_to_query_str(params);

  std::vector<KgEdge> edges;
  for (int page = 0; page < 1000; ++page) {
    limiter_.acquire();
    auto res = client.Get(path);
    if (!res) {
      throw NetworkError("knowledge-graph request to " + origin + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw NetworkError("knowledge-graph request to " + origin + path + " returned HTTP " +
                         std::to_string(res->status));
    }
    auto [page_edges, next] = parse_kg_response(res->body);
    edges.insert(edges.end(), page_edges.begin(), page_edges.end());
    if (!next || next->empty()) break;
    path = prefix + *next;
  }
  return edges;
}

}  // namespace dangerlex
