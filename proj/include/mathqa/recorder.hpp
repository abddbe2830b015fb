// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mathqa/corpus.hpp"
#include "mathqa/kg.hpp"

namespace mathqa {

/// Questions the service is expected to answer from the knowledge graph:
/// the worked examples plus concept and relationship questions per gold record.
std::vector<std::string> standard_questions(const std::vector<GoldRecord>& gold);

/// Replays the Wikidata evaluation modes and the standard questions against
/// `source`, writing one fixture per distinct query into `out_dir` (stale
/// fixtures there are removed first). Returns the number of fixture files.
std::size_t record_fixtures(Endpoint& source, const std::vector<GoldRecord>& gold, const std::filesystem::path& out_dir);

}  // namespace mathqa
