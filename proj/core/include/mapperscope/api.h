#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "mapperscope/types.h"

namespace mapperscope {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON, keys sorted
  std::string content_type = "application/json";
};

// Read-only JSON API over one immutable session. Stateless per request, so a
// single instance can serve concurrent callers.
//
//   GET  /api/session/meta
//   GET  /api/mapper/{method}?color=ATTR&agg=mean|median|max|min|std
//   GET  /api/distance-matrix
//   GET  /api/projection?kind=pca|tsne|umap|external
//   GET  /api/attributions?methods=a,b
//   POST /api/selection    {"type": "query", "where": "..."}
//                          {"type": "nodes", "method": "...", "nodeIds": [...]}
//                          {"type": "points", "indices": [...]}
//                          {"type": "projection", "kind": "pca", "rect": [x0, y0, x1, y1]}
//                          optional "methods": [a, b] picks the importance pair
//
// Errors come back as {"code", "message", "stage"} with a 4xx/5xx status.
class Api {
 public:
  using QueryParams = std::map<std::string, std::string>;

  explicit Api(std::shared_ptr<const Session> session);

  ApiResponse handle(std::string_view http_method, std::string_view path,
                     const QueryParams& params, std::string_view body) const;

  const Session& session() const { return *session_; }

 private:
  std::shared_ptr<const Session> session_;
};

}  // namespace mapperscope
