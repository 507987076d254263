#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mas/analysis.hpp"
#include "mas/dsl.hpp"

namespace mas::testing {

std::filesystem::path CorpusPath() { return MAS_CORPUS_FILE; }
std::filesystem::path TestDataDir() { return MAS_TEST_DATA_DIR; }

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << path << '\n';
    std::abort();
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const MissionModel& Corpus() {
  static const MissionModel model = [] {
    auto loaded = Load(ReadText(CorpusPath()));
    if (!loaded) {
      for (const auto& d : loaded.diagnostics) {
        std::cerr << FormatDiagnostic("corpus", d) << '\n';
      }
      std::abort();
    }
    return std::move(*loaded);
  }();
  return model;
}

std::vector<Diagnostic> CheckSource(std::string_view source) {
  auto raw = Parse(source);
  if (!raw) return raw.diagnostics;
  auto model = Resolve(*raw);
  if (!model) return model.diagnostics;
  return Validate(*model);
}

std::string EditCorpus(std::string_view from, std::string_view to) {
  std::string text = ReadText(CorpusPath());
  const auto at = text.find(from);
  if (at == std::string::npos || text.find(from, at + 1) != std::string::npos) {
    std::cerr << "corpus edit is not unique: " << from << '\n';
    std::abort();
  }
  text.replace(at, from.size(), to);
  return text;
}

}  // namespace mas::testing
