#include <atomic>
#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <set>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "common.hpp"
#include "http_server.hpp"
#include "httplib.h"
#include "json.hpp"
#include "mas/dsl.hpp"
#include "service.hpp"

namespace mas::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("mas_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    model_path_ = dir_.path() / "uav.mas";
    fs::copy_file(testing::CorpusPath(), model_path_);
    auto opened = ModelService::Open(model_path_);
    ASSERT_TRUE(opened.ok());
    service_ = std::move(*opened);
  }

  HttpResponse Call(const char* method, const std::string& path,
                    const json& body = nullptr,
                    std::map<std::string, std::string> query = {}) {
    return service_->Handle(method, path, query, body.is_null() ? "" : body.dump());
  }
  json Get(const std::string& path, std::map<std::string, std::string> query = {}) {
    auto r = Call("GET", path, nullptr, std::move(query));
    EXPECT_EQ(r.status, 200) << path << ": " << r.body;
    return json::parse(r.body);
  }

  TempDir dir_;
  fs::path model_path_;
  std::unique_ptr<ModelService> service_;
};

TEST_F(ServiceTest, ModelCounts) {
  auto m = Get("/v1/model");
  EXPECT_EQ(m["losses"].size(), 3u);
  EXPECT_EQ(m["hazards"].size(), 3u);
  EXPECT_EQ(m["levels"].size(), 5u);
  EXPECT_EQ(m["control_actions"].size(), 4u);
  EXPECT_EQ(m["ucas"].size(), 16u);
  EXPECT_EQ(m["constraints"].size(), 4u);
  EXPECT_EQ(m["hazards"][2]["leads_to"], json::array({"L2", "L3"}));
  EXPECT_EQ(m["control_actions"][0]["source_level"], "mission_req");
}

TEST_F(ServiceTest, AnalysisRoutes) {
  EXPECT_EQ(Get("/v1/coverage"), json::array());
  EXPECT_EQ(Get("/v1/diagnostics"), json::array());
  auto crit = Get("/v1/criticality");
  ASSERT_EQ(crit.size(), 4u);
  EXPECT_EQ(crit[0]["action"], "CA1.4");
  EXPECT_EQ(crit[0]["score"], 6);
  EXPECT_EQ(crit[1]["action"], "CA1.1");
  EXPECT_EQ(crit[1]["score"], 3);
  auto matrix = Get("/v1/matrix");
  ASSERT_EQ(matrix["rows"].size(), 4u);
  EXPECT_EQ(matrix["rows"][3]["cells"][0]["hazards"], json::array({"H3"}));
}

TEST_F(ServiceTest, Trace) {
  auto down = Get("/v1/trace/L3");
  EXPECT_EQ(down["direction"], "down");
  EXPECT_EQ(down["hazards"], json::array({"H3"}));
  EXPECT_EQ(down["ucas"], json::array({"CA1.4/not_provided"}));
  EXPECT_EQ(down["control_actions"], json::array({"CA1.4"}));
  EXPECT_EQ(down["constraints"], json::array({"SC1.4"}));
  auto up = Get("/v1/trace/CA1.4", {{"direction", "up"}});
  EXPECT_EQ(up["losses"], json::array({"L1", "L2", "L3"}));
  EXPECT_EQ(Call("GET", "/v1/trace/L3", nullptr, {{"direction", "up"}}).status, 400);
  EXPECT_EQ(Call("GET", "/v1/trace/ZZ9").status, 404);
  EXPECT_EQ(Call("GET", "/v1/trace/H1").status, 404);
}

TEST_F(ServiceTest, Export) {
  auto md = Get("/v1/export", {{"format", "markdown"}});
  ASSERT_EQ(md["documents"].size(), 4u);
  EXPECT_EQ(md["documents"][0]["body"],
            testing::ReadText(testing::TestDataDir() / "golden" / "losses.md"));
  EXPECT_EQ(Get("/v1/export", {{"format", "csv"}})["documents"][1]["format"], "csv");
  auto dot = Get("/v1/export", {{"format", "dot"}});
  ASSERT_EQ(dot["documents"].size(), 2u);
  EXPECT_EQ(dot["documents"][1]["name"], "control_loop");
  EXPECT_EQ(Call("GET", "/v1/export", nullptr, {{"format", "pdf"}}).status, 400);
}

TEST_F(ServiceTest, Elements) {
  EXPECT_EQ(Get("/v1/elements/H1")["name"], "Absence of information");
  EXPECT_EQ(Get("/v1/elements/CA1.1/provided")["hazards"], json::array({"H1", "H2"}));
  EXPECT_EQ(Call("GET", "/v1/elements/Q7").status, 404);
  EXPECT_EQ(Call("GET", "/v1/nothing").status, 404);
}

TEST_F(ServiceTest, AddLossWritesThrough) {
  auto r = Call("POST", "/v1/elements",
                {{"kind", "loss"}, {"id", "L4"}, {"priority", 4},
                 {"description", "Loss of public trust"}, {"source", "commander"}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Get("/v1/model")["losses"].size(), 4u);
  auto on_disk = Load(testing::ReadText(model_path_));
  ASSERT_TRUE(on_disk.ok());
  EXPECT_TRUE(StructurallyEqual(*on_disk, service_->snapshot()->model));
  EXPECT_EQ(testing::ReadText(model_path_), Serialize(*on_disk));
  // The new loss is unlinked: a warning, not a rejection.
  EXPECT_EQ(Get("/v1/diagnostics")[0]["code"], "W202");
  EXPECT_EQ(Get("/v1/coverage"), json::array());
}

TEST_F(ServiceTest, RejectionsLeaveTheModelAlone) {
  const std::string before = testing::ReadText(model_path_);
  struct Case {
    const char* method;
    std::string path;
    json body;
    int status;
  };
  const std::vector<Case> cases = {
      {"POST", "/v1/elements", {{"kind", "loss"}, {"id", "L1"}, {"priority", 9}, {"description", "x"}}, 409},
      {"POST", "/v1/elements", {{"kind", "loss"}, {"id", "L9"}, {"priority", 1}, {"description", "x"}}, 409},
      {"POST", "/v1/elements",
       {{"kind", "hazard"}, {"id", "H4"}, {"name", "x"}, {"worst_case_environment", "y"},
        {"leads_to", json::array()}}, 422},
      {"POST", "/v1/elements",
       {{"kind", "hazard"}, {"id", "H4"}, {"name", "x"}, {"worst_case_environment", "y"},
        {"leads_to", {"L9"}}}, 422},
      {"POST", "/v1/elements",
       {{"kind", "uca"}, {"action", "CA1.1"}, {"category", "provided"}, {"hazards", {"H1"}},
        {"context", "again"}}, 409},
      {"POST", "/v1/elements",
       {{"kind", "uca"}, {"action", "CA1.1"}, {"category", "sometimes"}, {"hazards", {"H1"}},
        {"context", "x"}}, 400},
      {"POST", "/v1/elements",
       {{"kind", "control_action"}, {"id", "CA2.1"}, {"title", "skip"},
        {"source_level", "mission_req"}, {"target_level", "autopilot"}}, 422},
      {"POST", "/v1/elements", {{"kind", "gizmo"}, {"id", "G1"}}, 400},
      {"POST", "/v1/elements", {{"kind", "loss"}, {"id", "L5"}}, 400},
      {"POST", "/v1/elements", {{"kind", "loss"}, {"id", "not an id"}, {"priority", 5}, {"description", "x"}}, 400},
      {"DELETE", "/v1/elements/L1", nullptr, 409},
      {"DELETE", "/v1/elements/H3", nullptr, 409},
      {"DELETE", "/v1/elements/CA1.1", nullptr, 409},
      {"DELETE", "/v1/elements/operator", nullptr, 409},
      {"DELETE", "/v1/elements/L9", nullptr, 404},
      {"PUT", "/v1/elements/L9", {{"priority", 1}, {"description", "x"}}, 404},
      {"PUT", "/v1/elements/L1", {{"id", "L2"}, {"priority", 1}, {"description", "x"}}, 400},
      {"PUT", "/v1/elements/L1", {{"kind", "hazard"}}, 400},
  };
  for (const auto& c : cases) {
    auto r = Call(c.method, c.path, c.body);
    EXPECT_EQ(r.status, c.status) << c.method << " " << c.path << " " << c.body.dump()
                                  << " -> " << r.body;
    EXPECT_TRUE(json::parse(r.body).contains("error"));
  }
  EXPECT_EQ(service_->Handle("POST", "/v1/elements", {}, "{not json").status, 400);
  EXPECT_EQ(service_->Handle("POST", "/v1/elements", {}, "[1, 2]").status, 400);
  EXPECT_EQ(testing::ReadText(model_path_), before);
  EXPECT_EQ(Get("/v1/model")["losses"].size(), 3u);
}

TEST_F(ServiceTest, EmptyLeadsToCarriesE103) {
  auto r = Call("POST", "/v1/elements",
                {{"kind", "hazard"}, {"id", "H4"}, {"name", "x"},
                 {"worst_case_environment", "y"}, {"leads_to", json::array()}});
  ASSERT_EQ(r.status, 422);
  auto body = json::parse(r.body);
  ASSERT_EQ(body["diagnostics"].size(), 1u);
  EXPECT_EQ(body["diagnostics"][0]["code"], "E103");
}

TEST_F(ServiceTest, DeleteUcaOpensOneGap) {
  auto r = Call("DELETE", "/v1/elements/CA1.2/wrong_duration");
  ASSERT_EQ(r.status, 200) << r.body;
  auto gaps = Get("/v1/coverage");
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(gaps[0]["action"], "CA1.2");
  EXPECT_EQ(gaps[0]["action_title"], "Specify surveillance target");
  EXPECT_EQ(gaps[0]["category"], "wrong_duration");
  EXPECT_EQ(Get("/v1/model")["ucas"].size(), 15u);
}

TEST_F(ServiceTest, ReplaceAndRemove) {
  auto r = Call("PUT", "/v1/elements/H1",
                {{"name", "No information"}, {"worst_case_environment", "Threat missed"},
                 {"leads_to", {"L1"}}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Get("/v1/elements/H1")["name"], "No information");

  r = Call("PUT", "/v1/elements/CA1.4/not_provided",
           {{"justified_absent", true}, {"context", "Rules always exist"}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Get("/v1/trace/L3")["control_actions"], json::array());

  r = Call("PUT", "/v1/elements/CA1.1",
           {{"title", "Designate the area"}, {"source_level", "mission_req"},
            {"target_level", "operator"}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Get("/v1/model")["ucas"].size(), 16u);

  ASSERT_EQ(Call("DELETE", "/v1/elements/S1").status, 200);
  ASSERT_EQ(Call("DELETE", "/v1/elements/SC1.3").status, 200);
  bool w203 = false;
  for (const auto& d : Get("/v1/diagnostics")) w203 |= d["code"] == "W203";
  EXPECT_TRUE(w203);

  r = Call("PUT", "/v1/mission", {{"mission_statement", "Watch the valley."}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(Get("/v1/model")["mission_statement"], "Watch the valley.");
  EXPECT_EQ(Get("/v1/model")["mission_name"], "UAV tactical reconnaissance");

  auto on_disk = Load(testing::ReadText(model_path_));
  ASSERT_TRUE(on_disk.ok());
  EXPECT_TRUE(StructurallyEqual(*on_disk, service_->snapshot()->model));
}

TEST(Service, WriteFailureRollsBack) {
  TempDir dir;
  const auto path = dir.path() / "uav.mas";
  fs::copy_file(testing::CorpusPath(), path);
  bool fail = true;
  auto opened = ModelService::Open(path, [&](const fs::path& p, const std::string& t) {
    return fail ? false : WriteFileAtomically(p, t);
  });
  ASSERT_TRUE(opened.ok());
  auto& service = **opened;
  const json loss = {{"kind", "loss"}, {"id", "L4"}, {"priority", 4}, {"description", "x"}};
  EXPECT_EQ(service.Handle("POST", "/v1/elements", {}, loss.dump()).status, 500);
  EXPECT_EQ(service.snapshot()->model.losses().size(), 3u);
  EXPECT_EQ(testing::ReadText(path), testing::ReadText(testing::CorpusPath()));
  fail = false;
  EXPECT_EQ(service.Handle("POST", "/v1/elements", {}, loss.dump()).status, 200);
  EXPECT_EQ(service.snapshot()->model.losses().size(), 4u);
}

TEST(Service, AbsentFileStartsFromSkeleton) {
  TempDir dir;
  const auto path = dir.path() / "new.mas";
  auto opened = ModelService::Open(path);
  ASSERT_TRUE(opened.ok());
  auto& service = **opened;
  auto model = json::parse(service.Handle("GET", "/v1/model", {}, "").body);
  EXPECT_EQ(model["losses"].size(), 0u);
  EXPECT_FALSE(fs::exists(path));
  auto r = service.Handle("POST", "/v1/elements", {},
                          json{{"kind", "loss"}, {"id", "L1"}, {"priority", 1},
                               {"description", "x"}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  auto on_disk = Load(testing::ReadText(path));
  ASSERT_TRUE(on_disk.ok());
  EXPECT_EQ(on_disk->losses().size(), 1u);
}

TEST(Service, UnusableFileFailsToOpen) {
  TempDir dir;
  const auto path = dir.path() / "bad.mas";
  std::ofstream(path) << "mission \"m\" {";
  auto opened = ModelService::Open(path);
  ASSERT_FALSE(opened.ok());
  EXPECT_EQ(opened.diagnostics[0].code, Code::kP003);
}

TEST(Service, ReadersAlwaysSeeResolvedModels) {
  TempDir dir;
  const auto path = dir.path() / "uav.mas";
  fs::copy_file(testing::CorpusPath(), path);
  auto opened = ModelService::Open(path, [](const fs::path&, const std::string&) { return true; });
  ASSERT_TRUE(opened.ok());
  auto& service = **opened;
  std::atomic<bool> done{false};
  std::atomic<int> reads{0}, bad{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      std::size_t last = 0;
      while (!done) {
        auto m = json::parse(service.Handle("GET", "/v1/model", {}, "").body);
        std::set<std::string> losses;
        for (const auto& l : m["losses"]) losses.insert(l["id"].get<std::string>());
        for (const auto& h : m["hazards"]) {
          for (const auto& l : h["leads_to"]) bad += !losses.count(l.get<std::string>());
        }
        bad += m["losses"].size() < last;  // snapshots never go backwards
        last = m["losses"].size();
        ++reads;
      }
    });
  }
  for (int i = 4; i < 40; ++i) {
    auto r = service.Handle("POST", "/v1/elements", {},
                            json{{"kind", "loss"}, {"id", "L" + std::to_string(i)},
                                 {"priority", i}, {"description", "x"}}.dump());
    EXPECT_EQ(r.status, 200);
    r = service.Handle("POST", "/v1/elements", {},
                       json{{"kind", "hazard"}, {"id", "H" + std::to_string(i)},
                            {"name", "h"}, {"worst_case_environment", "w"},
                            {"leads_to", {"L" + std::to_string(i)}}}.dump());
    EXPECT_EQ(r.status, 200);
  }
  done = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(bad, 0);
  EXPECT_GT(reads, 0);
  EXPECT_EQ(service.snapshot()->model.losses().size(), 39u);
}

TEST(HttpServer, ServesOverASocket) {
  TempDir dir;
  const auto path = dir.path() / "uav.mas";
  fs::copy_file(testing::CorpusPath(), path);
  auto opened = ModelService::Open(path);
  ASSERT_TRUE(opened.ok());
  HttpServer server(**opened);
  ASSERT_TRUE(server.Bind("127.0.0.1", 0));
  ASSERT_GT(server.port(), 0);
  std::thread loop([&] { server.Listen(); });

  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Get("/v1/model");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["losses"].size(), 3u);
  res = client.Get("/v1/trace/CA1.4?direction=up");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["losses"].size(), 3u);
  res = client.Post("/v1/elements",
                    R"({"kind":"loss","id":"L4","priority":4,"description":"x"})",
                    "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  res = client.Delete("/v1/elements/L1");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 409);

  // A second server cannot take the same port, and `serve` reports it.
  HttpServer second(**opened);
  EXPECT_FALSE(second.Bind("127.0.0.1", server.port()));
  std::ostringstream out, err;
  EXPECT_EQ(cli::Run({"serve", path.string(), "--port", std::to_string(server.port())}, out, err),
            kExitPortInUse);

  server.Stop();
  loop.join();
}

}  // namespace
}  // namespace mas::cli
