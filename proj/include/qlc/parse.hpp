/// @file parse.hpp
/// @brief Reading and writing Scratch 3 project files.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qlc/ast.hpp"

namespace qlc {

enum class InputFormat { Sb3Zip, ProjectJson };

/// Base of all parse failures. `where()` is a path into the document such as
/// "targets[1].blocks.abc" (empty when the failure is not positional).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::string where)
        : std::runtime_error(where.empty() ? message : where + ": " + message),
          where_(std::move(where)) {}

    [[nodiscard]] const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// The container is not a readable zip or has no project.json member.
class MalformedArchive : public ParseError {
public:
    using ParseError::ParseError;
};

/// project.json is not valid JSON, lacks required keys, or its block graph is
/// cyclic or references missing blocks.
class SchemaError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Guess the container from its leading bytes (zip local-header magic).
InputFormat detect_format(std::span<const std::byte> raw) noexcept;

Project parse_project(std::span<const std::byte> raw, InputFormat format,
                      std::string project_id = {});
Project parse_project_json(std::string_view json_text, std::string project_id = {});

/// Read a project from disk, detecting the container. The project id is the
/// file stem.
Project load_project(const std::string& path);

/// Write a project back to Scratch 3 project.json text. Parsing the result
/// yields a structurally equal Project.
std::string serialize_project(const Project& project);

std::span<const std::byte> as_bytes(std::string_view text) noexcept;

}  // namespace qlc
