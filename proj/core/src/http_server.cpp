#include <httplib.h>

#include "bidding/service.hpp"

namespace bidding {

void serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get(R"(/.*)", forward);
  server.Post(R"(/.*)", forward);
  if (!server.listen(host, port)) {
    fail(ErrorCode::kInvalidArgument, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace bidding
