#include "mapperscope/server.h"

#include <httplib.h>

#include <chrono>
#include <mutex>
#include <thread>

#include "mapperscope/api.h"
#include "mapperscope/error.h"

namespace mapperscope {

struct HttpService::Impl {
  explicit Impl(std::shared_ptr<const Session> session) : api(std::move(session)) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    Api::QueryParams params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);  // first value wins
    const ApiResponse out = api.handle(req.method, req.path, params, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  }

  Api api;
  httplib::Server server;
  std::mutex mutex;
  bool stopped = false;  // stop() was called
  bool in_listen = false;
};

HttpService::HttpService(std::shared_ptr<const Session> session)
    : impl_(std::make_unique<Impl>(std::move(session))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  // SO_REUSEADDR only: httplib's default SO_REUSEPORT would let a second
  // server share a busy port instead of failing.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  return port;
}

void HttpService::listen() {
  {
    std::lock_guard lock(impl_->mutex);
    if (impl_->stopped) return;
    impl_->in_listen = true;
  }
  impl_->server.listen_after_bind();
  std::lock_guard lock(impl_->mutex);
  impl_->in_listen = false;
}

// listen() may be on its way into the accept loop; wait for it to get there
// so the shutdown is not lost.
void HttpService::stop() {
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stopped = true;
    if (!impl_->in_listen) return;
  }
  while (!impl_->server.is_running()) {
    {
      std::lock_guard lock(impl_->mutex);
      if (!impl_->in_listen) return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  impl_->server.stop();
}

}  // namespace mapperscope
