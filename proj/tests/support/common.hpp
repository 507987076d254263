#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mas/diagnostic.hpp"
#include "mas/model.hpp"

namespace mas::testing {

std::filesystem::path CorpusPath();
std::filesystem::path TestDataDir();  // tests/ in the source tree

std::string ReadText(const std::filesystem::path& path);

// The shipped corpus, resolved; aborts the test binary if it fails to load.
const MissionModel& Corpus();

// What `mas check` reports: lexer/parser diagnostics, else resolve
// diagnostics, else validation findings.
std::vector<Diagnostic> CheckSource(std::string_view source);

// Corpus text with `from` replaced by `to` (exactly one occurrence).
std::string EditCorpus(std::string_view from, std::string_view to);

}  // namespace mas::testing
