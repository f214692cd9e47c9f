#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace goalgraph {

// Reads a whole file as bytes; nullopt when it cannot be opened.
std::optional<std::string> read_text_file(const std::filesystem::path& path);

// Writes bytes verbatim (LF endings preserved). Throws Error("IoError").
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace goalgraph
