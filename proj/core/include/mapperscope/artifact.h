#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mapperscope/types.h"

namespace mapperscope {

// Format tag written under the top-level key "version".
inline constexpr std::string_view kArtifactVersion = "1";

// Serialises the whole session as one JSON document with sorted keys. Reals
// are written in shortest round-trip form, so loading reproduces every value
// bit for bit. Throws Error(kInvalidArgument) if validate_session reports any
// violation.
std::string session_to_json(const Session& session);

// Errors: kVersionMismatch for a foreign "version", kCorruptArtifact for
// anything that is not a well-formed version-1 document.
Session session_from_json(std::string_view text);

void save_session(const Session& session, const std::filesystem::path& path);

// Also kMissingFile when the path cannot be read.
Session load_session(const std::filesystem::path& path);

}  // namespace mapperscope
