#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "archetype/errors.hpp"
#include "archetype/ingest.hpp"
#include "archetype/nmf.hpp"
#include "archetype/personas.hpp"
#include "archetype/synth.hpp"

namespace archetype {

// JSON codecs for the pipeline artifacts. Serialization is deterministic:
// identical values always produce identical bytes. Decoders validate the
// schema and throw FormatError with a description of what is wrong.

// {row_labels, row_channels, col_labels, data (row-major), row_watch_seconds}
std::string matrix_to_json(const ViewershipMatrix& matrix);
ViewershipMatrix matrix_from_json(std::string_view text);

// {row_labels, col_labels, rank, W (row-major), H (row-major), final_error,
//  iterations, restart_index, dropped_rows, dropped_cols}
std::string factors_to_json(const FactorizationResult& result);
FactorizationResult factors_from_json(std::string_view text);

// Array of {component_index, channel_label, channel_scores,
//           top_referrals, top_video_types}
std::string personas_to_json(const std::vector<Persona>& personas);
std::vector<Persona> personas_from_json(std::string_view text);

// {row_labels, col_labels, row_channels, W_true (row-major),
//  H_true (row-major), noise, scale, seed}
std::string truth_to_json(const PlantedModel& model);
PlantedModel truth_from_json(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Writes to a temporary sibling and renames into place, so the destination
// is either absent or complete.
void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace archetype
