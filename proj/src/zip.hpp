// Minimal zip member extraction for sb3 containers.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace qlc::detail {

/// Contents of member `name`, or nullopt when the archive has no such entry.
/// Throws MalformedArchive when the bytes are not a readable zip.
std::optional<std::string> read_zip_member(std::span<const std::byte> archive, std::string_view name);

}  // namespace qlc::detail
