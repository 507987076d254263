#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "http_server.hpp"
#include "mas/analysis.hpp"
#include "mas/dsl.hpp"
#include "mas/report.hpp"
#include "service.hpp"

namespace mas::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string input;
  bool strict = false;
  std::string from;
  std::string direction;
  std::string format = "markdown";
  std::string out_dir;
  bool loop = false;
  bool write = false;
  bool check = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

void Report(std::ostream& err, const std::string& file,
            const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) err << FormatDiagnostic(file, d) << '\n';
}

std::optional<std::string> ReadFile(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "mas: error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses and resolves the input, reporting failures.  On failure `code`
// holds the exit code.
std::optional<MissionModel> LoadModel(const Options& opt, std::ostream& err,
                                      int& code) {
  auto text = ReadFile(opt.input, err);
  if (!text) {
    code = kExitUsage;
    return std::nullopt;
  }
  auto raw = Parse(*text);
  if (!raw) {
    Report(err, opt.input, raw.diagnostics);
    code = kExitParse;
    return std::nullopt;
  }
  auto model = Resolve(*raw);
  if (!model) {
    Report(err, opt.input, model.diagnostics);
    code = kExitSemantic;
    return std::nullopt;
  }
  return std::move(*model);
}

int Emit(const std::vector<Document>& docs, const Options& opt,
         std::ostream& out, std::ostream& err) {
  if (opt.out_dir.empty()) {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (i > 0) out << '\n';
      out << docs[i].body;
    }
    return kExitOk;
  }
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  for (const auto& d : docs) {
    const fs::path file =
        fs::path(opt.out_dir) / (d.name + "." + std::string(FileExtension(d.format)));
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    f << d.body;
    if (!f) {
      err << "mas: error: cannot write '" << file.string() << "'\n";
      return kExitUsage;
    }
  }
  return kExitOk;
}

std::optional<Format> TableFormat(const Options& opt, std::ostream& err) {
  auto f = FormatFromName(opt.format);
  if (!f || *f == Format::kDot) {
    err << "mas: error: --format must be markdown or csv\n";
    return std::nullopt;
  }
  return f;
}

int Check(const Options& opt, std::ostream& err) {
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;
  auto diags = Validate(*model);
  Report(err, opt.input, diags);
  if (HasErrors(diags)) return kExitSemantic;
  if (opt.strict && !diags.empty()) return kExitSemantic;
  return kExitOk;
}

int Trace(const Options& opt, std::ostream& out, std::ostream& err) {
  auto format = TableFormat(opt, err);
  if (!format) return kExitUsage;
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;

  auto id = Identifier::Parse(opt.from);
  auto action = id ? model->find_action(*id) : std::nullopt;
  std::string direction = opt.direction;
  if (direction.empty()) direction = action ? "up" : "down";

  Checked<TraceChain> chain;
  if (direction == "down") {
    chain = id ? TraceDown(*model, *id)
               : Checked<TraceChain>::Failure(
                     Diagnostic{Code::kE101, "unknown loss '" + opt.from + "'", {}});
  } else {
    chain = id ? TraceUp(*model, *id)
               : Checked<TraceChain>::Failure(Diagnostic{
                     Code::kE101, "unknown control action '" + opt.from + "'", {}});
  }
  if (!chain) {
    for (const auto& d : chain.diagnostics) {
      err << opt.input << ": " << SeverityName(d.severity()) << '['
          << CodeName(d.code) << "]: " << d.message << '\n';
    }
    return kExitSemantic;
  }
  return Emit({EmitTraceReport(*model, *chain, *format)}, opt, out, err);
}

int Matrix(const Options& opt, std::ostream& out, std::ostream& err) {
  auto format = TableFormat(opt, err);
  if (!format) return kExitUsage;
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;
  return Emit({EmitMatrix(*model, *format)}, opt, out, err);
}

int Tables(const Options& opt, std::ostream& out, std::ostream& err) {
  auto format = TableFormat(opt, err);
  if (!format) return kExitUsage;
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;
  auto docs = EmitTables(*model, *format);
  return Emit({docs.begin(), docs.end()}, opt, out, err);
}

int Graph(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.loop) return Emit({EmitLoopDot()}, opt, out, err);
  if (opt.input.empty()) {
    err << "mas: error: graph needs an input file unless --loop is given\n";
    return kExitUsage;
  }
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;
  return Emit({EmitHierarchyDot(*model)}, opt, out, err);
}

int Fmt(const Options& opt, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = LoadModel(opt, err, code);
  if (!model) return code;
  const std::string canonical = Serialize(*model);
  if (opt.check) {
    auto text = ReadFile(opt.input, err);
    if (text && *text == canonical) return kExitOk;
    err << opt.input << ": not in canonical form\n";
    return kExitSemantic;
  }
  if (opt.write) {
    if (!WriteFileAtomically(opt.input, canonical)) {
      err << "mas: error: cannot write '" << opt.input << "'\n";
      return kExitUsage;
    }
    return kExitOk;
  }
  out << canonical;
  return kExitOk;
}

int Serve(const Options& opt, std::ostream& err) {
  auto service = ModelService::Open(opt.input);
  if (!service) {
    Report(err, opt.input, service.diagnostics);
    const bool parse = std::any_of(
        service.diagnostics.begin(), service.diagnostics.end(),
        [](const Diagnostic& d) { return CodeName(d.code).front() == 'P'; });
    return parse ? kExitParse : kExitSemantic;
  }
  std::optional<fs::path> assets;
  if (!opt.static_dir.empty()) assets = opt.static_dir;
  HttpServer server(**service, assets);
  if (!server.Bind(opt.host, opt.port)) {
    err << "mas: error: cannot listen on " << opt.host << ':' << opt.port << '\n';
    return kExitPortInUse;
  }
  err << "serving " << opt.input << " on http://" << opt.host << ':'
      << server.port() << "/v1/\n";
  err.flush();
  server.Listen();
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Mission-aware hazard modeling toolkit", "mas"};
  app.require_subcommand(1);
  Options opt;

  auto* check = app.add_subcommand("check", "Validate a model");
  check->add_option("file", opt.input, "Model file (.mas)")->required();
  check->add_flag("--strict", opt.strict, "Treat warnings as failures");

  auto* trace = app.add_subcommand("trace", "Trace a loss down or an action up");
  trace->add_option("file", opt.input, "Model file (.mas)")->required();
  trace->add_option("--from", opt.from, "Loss or control action id")->required();
  trace->add_option("--direction", opt.direction, "down or up")
      ->check(CLI::IsMember({"down", "up"}));
  trace->add_option("--format", opt.format, "markdown or csv");
  trace->add_option("--out", opt.out_dir, "Write documents into this directory");

  auto* matrix = app.add_subcommand("matrix", "Print the UCA matrix");
  matrix->add_option("file", opt.input, "Model file (.mas)")->required();
  matrix->add_option("--format", opt.format, "markdown or csv");
  matrix->add_option("--out", opt.out_dir, "Write documents into this directory");

  auto* report = app.add_subcommand("report", "Emit the four analysis tables");
  report->add_option("file", opt.input, "Model file (.mas)")->required();
  report->add_option("--format", opt.format, "markdown or csv");
  report->add_option("--out", opt.out_dir, "Write documents into this directory");

  auto* graph = app.add_subcommand("graph", "Emit DOT graphs");
  graph->add_option("file", opt.input, "Model file (.mas)");
  graph->add_flag("--loop", opt.loop, "Emit the generic control loop instead");
  graph->add_option("--out", opt.out_dir, "Write documents into this directory");

  auto* fmt = app.add_subcommand("fmt", "Print a model in canonical form");
  fmt->add_option("file", opt.input, "Model file (.mas)")->required();
  fmt->add_flag("--write", opt.write, "Rewrite the file in place");
  fmt->add_flag("--check", opt.check, "Fail if the file is not canonical");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API for a model");
  serve->add_option("file", opt.input, "Model file (.mas); created on first edit")
      ->required();
  serve->add_option("--port", opt.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", opt.host, "Address to bind");
  serve->add_option("--static", opt.static_dir, "Directory of console assets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (check->parsed()) return Check(opt, err);
  if (trace->parsed()) return Trace(opt, out, err);
  if (matrix->parsed()) return Matrix(opt, out, err);
  if (report->parsed()) return Tables(opt, out, err);
  if (graph->parsed()) return Graph(opt, out, err);
  if (fmt->parsed()) return Fmt(opt, out, err);
  if (serve->parsed()) return Serve(opt, err);
  return kExitUsage;
}

}  // namespace mas::cli
