#pragma once

#include <memory>
#include <string>

#include "mapperscope/types.h"

namespace mapperscope {

// HTTP front end for Api, backed by cpp-httplib's thread pool.
class HttpService {
 public:
  explicit HttpService(std::shared_ptr<const Session> session);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds the socket; port 0 picks a free port. Returns the bound port.
  // Throws Error(kInvalidArgument) when the address is unavailable.
  int bind(const std::string& host, int port);

  // Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mapperscope
