#pragma once

#include "lecturekit/content/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace lecturekit::content
{

inline constexpr const char* kManifestFile = "manifest.json";

/// Directory of section `index` relative to the bundle root, e.g. `sections/003`.
std::string sectionDir(std::size_t index);

/// Reads and validates a bundle directory. Any input yields either a bundle
/// or a typed error (MissingManifest, SchemaViolation, DanglingReference).
LectureBundle loadBundle(const std::filesystem::path& dir);

/// Writes the bundle in canonical form (sorted keys, millisecond-rounded
/// times, two-space indent). Section slide images must already exist at
/// their refs under `dir`; they are not copied.
void saveBundle(const LectureBundle& bundle, const std::filesystem::path& dir);

/// Checks every structural invariant. When `root` is given, referenced files
/// must exist under it.
void validateBundle(const LectureBundle& bundle, const std::optional<std::filesystem::path>& root = std::nullopt);

/// Normalizes one provider quiz object. `difficulty` may be an integer 1..5
/// or a label (very easy, easy, medium, hard, very hard); when absent,
/// `defaultDifficulty` is used if given.
QuizItem validateQuizItem(const nlohmann::json& raw, std::optional<int> defaultDifficulty = std::nullopt);

std::optional<int> difficultyFromLabel(const std::string& label);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonicalDump(const nlohmann::json& value);

nlohmann::json rectToJson(const Rect& r);
Rect rectFromJson(const nlohmann::json& j, const std::string& field);

nlohmann::json toJson(const QuizItem& item);
nlohmann::json toJson(const DifficultyBank& bank);
nlohmann::json toJson(const HighlightEntry& entry);
nlohmann::json toJson(const TranscriptSegment& segment);
nlohmann::json toJson(const ExampleAsset& asset);

/// Manifest body only (section summaries and examples, no per-section files).
nlohmann::json manifestJson(const LectureBundle& bundle);
/// content.json body for one section.
nlohmann::json sectionContentJson(const Section& section);

} // namespace lecturekit::content
