#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mmrt::clients {

// Thin seam under the HTTP client so tests can substitute an instrumented
// fake. Implementations must be safe for concurrent calls.
class Transport {
 public:
  struct Response {
    int status = 0;
    std::string body;
  };
  using Headers = std::vector<std::pair<std::string, std::string>>;

  virtual ~Transport() = default;

  // POSTs a JSON body. Throws TransportError when no response is obtained
  // (connect failure, timeout); HTTP error statuses come back as Response.
  virtual Response post_json(const std::string& path, const Headers& headers,
                             const std::string& body) = 0;
};

// cpp-httplib backed transport for http:// and https:// base URLs.
std::shared_ptr<Transport> make_http_transport(const std::string& base_url, int timeout_ms);

}  // namespace mmrt::clients
