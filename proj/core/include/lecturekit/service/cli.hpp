#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace lecturekit::service
{

/// Entry point of the `lecture` tool: preprocess, serve, inspect layout.
int cliMain(int argc, char** argv);

/// `inspect layout` report: grid, chosen region and plan for a blank response.
/// Writes <outPrefix>.json and <outPrefix>.png when `outPrefix` is non-empty.
nlohmann::json inspectLayout(const std::filesystem::path& slide, double anchorX, double anchorY,
                             const std::string& outPrefix, int cols, int rows);

} // namespace lecturekit::service
