#include <benchmark/benchmark.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mas/analysis.hpp"
#include "mas/dsl.hpp"
#include "mas/report.hpp"

namespace {

using namespace mas;

const std::string& CorpusText() {
  static const std::string text = [] {
    std::ifstream in(MAS_CORPUS_FILE, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }();
  return text;
}

// A mission with `n` losses, hazards and actions, each action carrying all
// four UCAs over three hazards and one constraint.
std::string Synthetic(int n) {
  std::ostringstream s;
  s << "mission \"Scaled\" {\n  statement: \"s\"\n  system: \"s\"\n";
  s << "  level top \"Top\"\n  level bottom \"Bottom\"\n  level env \"Env\" environment\n";
  for (int i = 1; i <= n; ++i) s << "  loss L" << i << " priority " << i << " \"loss\"\n";
  for (int i = 1; i <= n; ++i)
    s << "  hazard H" << i << " \"h\" { worst_case: \"w\" leads_to: [L" << i << ", L"
      << (i % n) + 1 << "] }\n";
  const char* categories[] = {"not_provided", "provided", "wrong_timing", "wrong_duration"};
  for (int i = 1; i <= n; ++i) {
    s << "  action CA" << i << " \"a\" from top to bottom {\n";
    for (int c = 0; c < 4; ++c)
      s << "    uca " << categories[c] << " { hazards: [H" << i << ", H" << (i * 7 % n) + 1
        << ", H" << (i * 13 % n) + 1 << "] context: \"c\" }\n";
    s << "  }\n  constraint SC" << i << " for CA" << i << " \"k\"\n";
  }
  s << "}\n";
  return s.str();
}

const MissionModel& Model(int n) {
  static std::map<int, MissionModel> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto m = n == 0 ? Load(CorpusText()) : Load(Synthetic(n));
    it = cache.emplace(n, std::move(*m.value)).first;
  }
  return it->second;
}

std::string Source(int n) { return n == 0 ? CorpusText() : Synthetic(n); }

// Argument 0 is the UAV corpus; larger arguments are synthetic sizes.
void Args(benchmark::internal::Benchmark* b) {
  for (int n : {0, 16, 128, 1024}) b->Arg(n);
}

void BM_Parse(benchmark::State& state) {
  const std::string src = Source(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Parse(src));
  state.SetBytesProcessed(state.iterations() * src.size());
}
BENCHMARK(BM_Parse)->Apply(Args);

void BM_Resolve(benchmark::State& state) {
  const RawModel raw = *Parse(Source(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Resolve(raw));
}
BENCHMARK(BM_Resolve)->Apply(Args);

void BM_Validate(benchmark::State& state) {
  const auto& m = Model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Validate(m));
}
BENCHMARK(BM_Validate)->Apply(Args);

void BM_TraceDownAll(benchmark::State& state) {
  const auto& m = Model(state.range(0));
  for (auto _ : state)
    for (std::uint32_t i = 0; i < m.losses().size(); ++i)
      benchmark::DoNotOptimize(TraceDown(m, LossRef{i}));
}
BENCHMARK(BM_TraceDownAll)->Apply(Args);

void BM_CriticalityRank(benchmark::State& state) {
  const auto& m = Model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CriticalityRank(m));
}
BENCHMARK(BM_CriticalityRank)->Apply(Args);

void BM_EmitTables(benchmark::State& state) {
  const auto& m = Model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(EmitTables(m, Format::kMarkdown));
}
BENCHMARK(BM_EmitTables)->Apply(Args);

void BM_Serialize(benchmark::State& state) {
  const auto& m = Model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Serialize(m));
}
BENCHMARK(BM_Serialize)->Apply(Args);

}  // namespace

BENCHMARK_MAIN();
