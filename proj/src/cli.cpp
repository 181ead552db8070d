/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "semdiff/cli.hpp"

#include "semdiff/java.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace semdiff {

namespace {

using ojson = nlohmann::ordered_json;

std::string readText(const fs::path &P) {
  std::ifstream In(P, std::ios::binary);
  if (!In)
    throw InputError("cannot read " + P.string());
  std::stringstream S;
  S << In.rdbuf();
  return S.str();
}

void writeText(const fs::path &P, const std::string &Text) {
  if (P.has_parent_path())
    fs::create_directories(P.parent_path());
  std::ofstream Out(P, std::ios::binary);
  if (!Out)
    throw InputError("cannot write " + P.string());
  Out << Text;
}

// (path recorded in the snapshot, path on disk)
using Source = std::pair<std::string, fs::path>;

std::vector<Source> sourcesOf(const std::string &Input) {
  fs::path P(Input);
  if (fs::is_directory(P)) {
    std::vector<Source> Out;
    for (const std::string &Rel : javaFiles(Input))
      Out.emplace_back(Rel, P / Rel);
    return Out;
  }
  if (!fs::is_regular_file(P))
    throw InputError("no such file or directory: " + Input);
  return {{P.filename().string(), P}};
}

std::string fileKey(const std::string &Path) {
  std::string K;
  for (char C : Path)
    K += std::isalnum(static_cast<unsigned char>(C)) || C == '-' || C == '_' ? C : '_';
  return K;
}

std::string escapeHtml(std::string_view S) {
  std::string O;
  O.reserve(S.size());
  for (char C : S) {
    switch (C) {
    case '&': O += "&amp;"; break;
    case '<': O += "&lt;"; break;
    case '>': O += "&gt;"; break;
    case '"': O += "&quot;"; break;
    default: O += C;
    }
  }
  return O;
}

bool highlighted(const Node *N) {
  return statementLevel(N) && N->type != "CompilationUnit";
}

std::string anchor(char Side, const Node *N) {
  return fmt::format("{}-{}-{}-{}-{}", Side, fileKey(N->file->path), N->start, N->end,
                     N->type);
}

struct Span {
  const Node *node;
  std::string id;
  std::set<std::string> partners;
  bool multi = false, moved = false;
};

// Source text with nested spans around the given nodes.
std::string paneHtml(const SourceFile &F, const std::map<const Node *, Span> &Spans) {
  std::vector<const Span *> S;
  for (auto &[N, Sp] : Spans)
    if (N->file == &F)
      S.push_back(&Sp);
  std::sort(S.begin(), S.end(), [](const Span *A, const Span *B) {
    if (A->node->start != B->node->start)
      return A->node->start < B->node->start;
    if (A->node->end != B->node->end)
      return A->node->end > B->node->end;
    return A->node->id < B->node->id;
  });
  std::string Out;
  std::vector<std::uint32_t> Open;
  std::uint32_t Pos = 0;
  auto Emit = [&](std::uint32_t To) {
    To = std::min<std::uint32_t>(To, static_cast<std::uint32_t>(F.content.size()));
    if (To > Pos)
      Out += escapeHtml(std::string_view(F.content).substr(Pos, To - Pos));
    Pos = std::max(Pos, To);
  };
  auto CloseUpTo = [&](std::uint32_t At) {
    while (!Open.empty() && Open.back() <= At) {
      Emit(Open.back());
      Out += "</span>";
      Open.pop_back();
    }
  };
  for (const Span *Sp : S) {
    CloseUpTo(Sp->node->start);
    Emit(Sp->node->start);
    std::string Cls = "map";
    if (Sp->multi)
      Cls += " multi";
    if (Sp->moved)
      Cls += " moved";
    std::string Partners;
    for (const std::string &P : Sp->partners)
      Partners += (Partners.empty() ? "" : " ") + P;
    Out += fmt::format("<span id=\"{}\" class=\"{}\" data-partners=\"{}\" title=\"{}\">",
                       Sp->id, Cls, Partners, escapeHtml(Sp->node->type));
    Open.push_back(Sp->node->end);
  }
  CloseUpTo(UINT32_MAX);
  Emit(static_cast<std::uint32_t>(F.content.size()));
  return Out;
}

const char *PageHead = R"(<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>semdiff report</title>
<style>
body{font-family:sans-serif;margin:1em}
table{border-collapse:collapse;width:100%}
td{vertical-align:top;width:50%;border:1px solid #ccc}
pre{margin:0;padding:.5em;font-size:12px;white-space:pre}
.map{background:#eef6ff}
.map:target{outline:2px solid #06c}
.multi{background:#fff2cc}
.moved{background:#e6ffe6;border-bottom:1px dashed #090}
</style></head><body>
<p>Highlighted regions are mapped statements and declarations.
<span class="multi">multi-mapped</span>
<span class="moved">moved across files</span></p>
)";

MetricsReport evaluateOne(const CommitPair &C, const std::vector<GroundTruthFile> &G,
                          const MappingStore &Tool, Granularity Gr) {
  try {
    return evaluate(C, G, Tool, Gr);
  } catch (const BenchError &E) {
    throw InputError(E.what());
  }
}

std::vector<GroundTruthFile> loadTruthDir(const fs::path &Dir,
                                          std::vector<std::string> &Failures) {
  std::vector<fs::path> Files;
  for (const auto &E : fs::directory_iterator(Dir))
    if (E.is_regular_file() && E.path().extension() == ".json")
      Files.push_back(E.path());
  std::sort(Files.begin(), Files.end());
  std::vector<GroundTruthFile> Out;
  for (const fs::path &P : Files) {
    try {
      Out.push_back(loadGroundTruth(readText(P)));
    } catch (const std::exception &E) {
      Failures.push_back(P.string() + ": " + E.what());
    }
  }
  return Out;
}

MappingStore storeOf(const std::vector<NodePair> &Ps) {
  MappingStore M;
  for (auto &[L, R] : Ps)
    M.add(L, R);
  return M;
}

bool belowGate(const CliConfig &Cfg, const MetricsReport &R) {
  return Cfg.failUnder &&
         (R.precision < Cfg.failUnder->first || R.recall < Cfg.failUnder->second);
}

ojson reportJson(const MetricsReport &R) { return ojson::parse(metricsToJson(R)); }

int runParse(const CliConfig &Cfg, std::ostream &Out) {
  for (const std::string &In : Cfg.inputs) {
    fs::path P(In);
    try {
      Out << serializeTree(parseJava(P.filename().string(), readText(P))->root);
    } catch (const ParseError &E) {
      throw InputError(In + ": " + E.what());
    }
  }
  return 0;
}

int runDiff(const CliConfig &Cfg, std::ostream &Out, std::ostream &Err) {
  if (Cfg.inputs.size() != 2)
    throw InputError("diff needs a left and a right path");
  std::vector<std::string> Skipped;
  CommitPair C = loadCommit(Cfg.inputs[0], Cfg.inputs[1], Cfg.partial, &Skipped);
  for (const std::string &S : Skipped)
    Err << "warning: skipped " << S << "\n";
  EngineRun E = runEngine(C, Cfg.engine, Cfg.matcher);

  auto Write = [&](const std::string &Name, const std::string &Text) {
    if (Cfg.outDir.empty())
      Out << Text;
    else
      writeText(fs::path(Cfg.outDir) / Name, Text);
  };

  if (Cfg.format == "json") {
    for (auto &[Name, Text] : renderJson(E))
      Write(Name, Text);
  } else if (Cfg.format == "script") {
    Write("edit-script.txt", renderScript(C, E));
  } else if (Cfg.format == "html") {
    Write("report.html", renderHtml(C, E));
  } else if (Cfg.format == "metrics") {
    if (Cfg.truthDir.empty())
      throw InputError("--format metrics needs --truth DIR");
    std::vector<std::string> Failures;
    auto G = loadTruthDir(Cfg.truthDir, Failures);
    for (const std::string &F : Failures)
      Err << "error: " << F << "\n";
    if (!Failures.empty())
      return static_cast<int>(ExitCode::InputError);
    MetricsReport St = evaluateOne(C, G, E.store, Granularity::Statement);
    MetricsReport Sx = evaluateOne(C, G, E.store, Granularity::SubExpression);
    Write("metrics.txt", metricsTable({{"statement", St}, {"subexpression", Sx}}));
    if (belowGate(Cfg, Cfg.granularity == Granularity::Statement ? St : Sx))
      return static_cast<int>(ExitCode::BelowThreshold);
  }
  return 0;
}

// Corpus layout: one directory per commit holding before/, after/ and
// truth/*.json. Tool output, when given, mirrors it as TOOL/<commit>/*.json.
int runEval(const CliConfig &Cfg, std::ostream &Out, std::ostream &Err) {
  if (Cfg.inputs.size() != 1)
    throw InputError("eval needs a corpus directory");
  fs::path Corpus(Cfg.inputs[0]);
  if (!fs::is_directory(Corpus))
    throw InputError("no such corpus directory: " + Corpus.string());
  std::vector<fs::path> Commits;
  for (const auto &E : fs::directory_iterator(Corpus))
    if (E.is_directory())
      Commits.push_back(E.path());
  std::sort(Commits.begin(), Commits.end());

  std::vector<std::pair<std::string, MetricsReport>> RowsSt, RowsSx;
  std::vector<MetricsReport> AllSt, AllSx;
  std::vector<std::string> Failures;
  for (const fs::path &Dir : Commits) {
    std::string Name = Dir.filename().string();
    fs::path Truth = Cfg.truthDir.empty() ? Dir / "truth" : fs::path(Cfg.truthDir) / Name;
    if (!fs::is_directory(Truth)) {
      Err << "warning: no ground truth for " << Name << ", skipped\n";
      continue;
    }
    try {
      std::vector<std::string> FileFailures;
      auto G = loadTruthDir(Truth, FileFailures);
      CommitPair C = loadCommit((Dir / "before").string(), (Dir / "after").string(),
                                false);
      MappingStore Tool;
      if (!Cfg.toolDir.empty()) {
        auto T = loadTruthDir(fs::path(Cfg.toolDir) / Name, FileFailures);
        try {
          Tool = storeOf(resolveMappings(C, T));
        } catch (const BenchError &E) {
          FileFailures.push_back(Name + " tool output: " + E.what());
        }
      } else {
        Tool = std::move(runEngine(C, Cfg.engine, Cfg.matcher).store);
      }
      if (!FileFailures.empty()) {
        Failures.insert(Failures.end(), FileFailures.begin(), FileFailures.end());
        continue;
      }
      MetricsReport St = evaluateOne(C, G, Tool, Granularity::Statement);
      MetricsReport Sx = evaluateOne(C, G, Tool, Granularity::SubExpression);
      RowsSt.emplace_back(Name, St);
      RowsSx.emplace_back(Name, Sx);
      AllSt.push_back(St);
      AllSx.push_back(Sx);
    } catch (const std::exception &E) {
      Failures.push_back(Name + ": " + E.what());
    }
  }
  Aggregate ASt = aggregate(AllSt), ASx = aggregate(AllSx);

  std::string Text;
  if (Cfg.format == "json") {
    ojson J;
    ojson Cs = ojson::array();
    for (std::size_t I = 0; I < RowsSt.size(); ++I)
      Cs.push_back({{"commit", RowsSt[I].first},
                    {"statement", reportJson(RowsSt[I].second)},
                    {"subexpression", reportJson(RowsSx[I].second)}});
    J["engine"] = Cfg.toolDir.empty() ? Cfg.engine : "tool-output";
    J["commits"] = Cs;
    J["aggregate"] = {{"statement", reportJson(ASt.total)},
                      {"subexpression", reportJson(ASx.total)},
                      {"perfectDiffRate", ASx.perfectRate()}};
    ojson F = ojson::array();
    for (const std::string &S : Failures)
      F.push_back(S);
    J["failures"] = F;
    Text = J.dump(2) + "\n";
  } else {
    RowsSt.emplace_back("aggregate", ASt.total);
    RowsSx.emplace_back("aggregate", ASx.total);
    Text = "statement granularity\n" + metricsTable(RowsSt) +
           "\nsub-expression granularity\n" + metricsTable(RowsSx) +
           fmt::format("\nperfect diffs: {}/{} ({:.1f}%)\n", ASx.perfect, ASx.commits,
                       100.0 * ASx.perfectRate());
  }
  if (Cfg.outDir.empty())
    Out << Text;
  else
    writeText(fs::path(Cfg.outDir) / (Cfg.format == "json" ? "metrics.json" : "metrics.txt"),
              Text);
  for (const std::string &F : Failures)
    Err << "error: " << F << "\n";
  if (!Failures.empty())
    return static_cast<int>(ExitCode::InputError);
  if (belowGate(Cfg, Cfg.granularity == Granularity::Statement ? ASt.total : ASx.total))
    return static_cast<int>(ExitCode::BelowThreshold);
  return 0;
}

} // namespace

std::vector<std::string> javaFiles(const std::string &Dir) {
  std::vector<std::string> Out;
  for (const auto &E : fs::recursive_directory_iterator(Dir))
    if (E.is_regular_file() && E.path().extension() == ".java")
      Out.push_back(fs::relative(E.path(), Dir).generic_string());
  std::sort(Out.begin(), Out.end());
  return Out;
}

CommitPair loadCommit(const std::string &Left, const std::string &Right, bool Partial,
                      std::vector<std::string> *Skipped) {
  if (fs::is_directory(Left) != fs::is_directory(Right))
    throw InputError("inputs must be two files or two directories");
  std::vector<Source> LS = sourcesOf(Left), RS = sourcesOf(Right);
  auto Parse = [](const Source &S) {
    return std::async(std::launch::async, [S] { return parseJava(S.first, readText(S.second)); });
  };
  std::vector<std::future<FilePtr>> LF, RF;
  for (const Source &S : LS)
    LF.push_back(Parse(S));
  for (const Source &S : RS)
    RF.push_back(Parse(S));

  CommitPair C;
  auto Collect = [&](std::vector<Source> &Srcs, std::vector<std::future<FilePtr>> &Fs,
                     Snapshot &Into) {
    for (std::size_t I = 0; I < Fs.size(); ++I) {
      try {
        Into.add(Fs[I].get());
      } catch (const ParseError &E) {
        std::string Msg = Srcs[I].second.string() + ": " + E.what();
        if (!Partial)
          throw InputError(Msg);
        if (Skipped)
          Skipped->push_back(Msg);
      }
    }
  };
  // drain every future before a failure propagates
  std::exception_ptr First;
  for (auto *Side : {&LF, &RF}) {
    try {
      Collect(Side == &LF ? LS : RS, *Side, Side == &LF ? C.left : C.right);
    } catch (...) {
      if (!First)
        First = std::current_exception();
      for (auto &F : *Side)
        if (F.valid())
          F.wait();
    }
  }
  if (First)
    std::rethrow_exception(First);
  return C;
}

bool knownEngine(const std::string &Engine) {
  static const std::set<std::string> Known = {"semdiff",  "greedy",    "simple",
                                              "greedy-fg", "simple-fg", "simple-stm"};
  return Known.count(Engine);
}

EngineRun runEngine(CommitPair &C, const std::string &Engine, const MatcherConfig &Cfg) {
  if (!knownEngine(Engine))
    throw InputError("unknown engine " + Engine);
  EngineRun E;
  if (Engine == "semdiff") {
    ComposedDiff D = diffCommit(C);
    E.store = std::move(D.store);
    E.files = std::move(D.files);
    return E;
  }
  MatcherConfig M = Cfg;
  M.bottomUpMode = Engine.rfind("greedy", 0) == 0 ? BottomUpMode::Greedy : BottomUpMode::Simple;
  if (Engine.ends_with("-fg"))
    M.fineGrainedLabels = true;
  E.store = matchCommitPerFile(C, M);
  if (Engine.ends_with("-stm"))
    E.store.merge(stagedTreeMatch(C, E.store, M));

  std::vector<std::pair<SourceFile *, SourceFile *>> Pairs;
  for (const FilePtr &L : C.left.files)
    if (SourceFile *R = C.right.find(L->path))
      Pairs.emplace_back(L.get(), R);
  std::sort(Pairs.begin(), Pairs.end(),
            [](auto &A, auto &B) { return A.first->path < B.first->path; });
  E.files = partitionByFile(Pairs, {}, E.store);
  return E;
}

std::vector<std::pair<std::string, std::string>> renderJson(const EngineRun &E) {
  std::vector<std::pair<std::string, std::string>> Out;
  for (const FileDiff &F : E.files) {
    std::string Name = fileKey(F.leftFile.empty() ? F.rightFile : F.leftFile) + ".json";
    Out.emplace_back(Name, saveGroundTruth(toGroundTruth(F)));
  }
  std::sort(Out.begin(), Out.end());
  return Out;
}

std::string renderScript(const CommitPair &C, const EngineRun &E) {
  std::string Out;
  for (const FileDiff &F : E.files) {
    SourceFile *L = C.left.find(F.leftFile);
    SourceFile *R = C.right.find(F.rightFile);
    if (!L || !R)
      continue;
    Out += "--- " + F.leftFile + "\n+++ " + F.rightFile + "\n";
    EditScript S = deriveEditScript(L->root, R->root, E.store);
    for (const EditAction &A : S.actions)
      Out += A.str() + "\n";
    for (const std::string &W : S.warnings)
      Out += "# " + W + "\n";
    for (const ElementGroup &G : F.interFile)
      for (auto &[A, B] : G.mappings)
        if (highlighted(A) && F.leftFile == G.leftFile)
          Out += "# moved out " + describe(A) + " -> " + G.rightFile + ":" + describe(B) + "\n";
  }
  return Out;
}

std::string renderHtml(const CommitPair &C, const EngineRun &E) {
  std::map<const Node *, Span> LeftSpans, RightSpans;
  auto Touch = [](std::map<const Node *, Span> &M, const Node *N, char Side) -> Span & {
    auto [It, New] = M.try_emplace(N);
    if (New) {
      It->second.node = N;
      It->second.id = anchor(Side, N);
    }
    return It->second;
  };
  auto Add = [&](const NodePair &P, bool Moved) {
    if (!highlighted(P.first) || !highlighted(P.second))
      return;
    Span &A = Touch(LeftSpans, P.first, 'L');
    Span &B = Touch(RightSpans, P.second, 'R');
    A.partners.insert(B.id);
    B.partners.insert(A.id);
    A.moved |= Moved;
    B.moved |= Moved;
  };
  for (const FileDiff &F : E.files) {
    for (const NodePair &P : F.intraFile.mappings)
      Add(P, false);
    for (const ElementGroup &G : F.interFile)
      for (const NodePair &P : G.mappings)
        Add(P, true);
  }
  for (auto &[N, S] : LeftSpans)
    S.multi = E.store.partnersOfLeft(N).size() > 1;
  for (auto &[N, S] : RightSpans)
    S.multi = E.store.partnersOfRight(N).size() > 1;

  std::string Out = PageHead;
  std::set<const SourceFile *> Shown;
  auto Pane = [&](const SourceFile *F, const std::map<const Node *, Span> &Spans) {
    if (!F)
      return std::string("<td></td>");
    Shown.insert(F);
    return "<td><pre>" + paneHtml(*F, Spans) + "</pre></td>";
  };
  for (const FileDiff &F : E.files) {
    const SourceFile *L = F.leftFile.empty() ? nullptr : C.left.find(F.leftFile);
    const SourceFile *R = F.rightFile.empty() ? nullptr : C.right.find(F.rightFile);
    if ((L && Shown.count(L)) || (R && Shown.count(R)))
      continue;
    Out += fmt::format("<h2 id=\"file-{}\">{} &rarr; {}</h2>\n<table><tr>",
                       fileKey(F.leftFile + "__" + F.rightFile),
                       escapeHtml(F.leftFile.empty() ? "(added)" : F.leftFile),
                       escapeHtml(F.rightFile.empty() ? "(removed)" : F.rightFile));
    Out += Pane(L, LeftSpans) + Pane(R, RightSpans) + "</tr></table>\n";
  }
  for (const FilePtr &F : C.left.files)
    if (!Shown.count(F.get()))
      Out += "<h2>" + escapeHtml(F->path) + " (removed)</h2>\n<table><tr>" +
             Pane(F.get(), LeftSpans) + "<td></td></tr></table>\n";
  for (const FilePtr &F : C.right.files)
    if (!Shown.count(F.get()))
      Out += "<h2>" + escapeHtml(F->path) + " (added)</h2>\n<table><tr><td></td>" +
             Pane(F.get(), RightSpans) + "</tr></table>\n";
  Out += "</body></html>\n";
  return Out;
}

int runCli(int Argc, const char *const *Argv, std::ostream &Out, std::ostream &Err) {
  CLI::App App{"AST differencing with refactoring-aware multi-mappings"};
  App.require_subcommand(1);
  CliConfig Cfg;
  std::string GranName = "subexpression";
  std::string FailUnder;
  bool Fg = false, Stm = false;

  auto Common = [&](CLI::App *S) {
    S->add_option("--engine", Cfg.engine, "semdiff|greedy|simple|greedy-fg|simple-fg|simple-stm")
        ->check(CLI::IsMember({"semdiff", "greedy", "simple", "greedy-fg", "simple-fg",
                               "simple-stm"}));
    S->add_option("--min-height", Cfg.matcher.minHeight, "baseline top-down minimum height")
        ->check(CLI::PositiveNumber);
    S->add_flag("--fg", Fg, "baseline fine-grained leaf labels");
    S->add_flag("--stm", Stm, "baseline staged matching across files");
    S->add_option("--granularity", GranName, "gate level: statement|subexpression")
        ->check(CLI::IsMember({"statement", "subexpression"}));
    S->add_option("--out", Cfg.outDir, "output directory (default: stdout)");
    S->add_option("--fail-under", FailUnder, "exit 1 when precision or recall is below P,R");
  };
  CLI::App *Diff = App.add_subcommand("diff", "diff two files or two directories");
  Common(Diff);
  Diff->add_option("--format", Cfg.format, "json|html|script|metrics")
      ->check(CLI::IsMember({"json", "html", "script", "metrics"}));
  Diff->add_option("--truth", Cfg.truthDir, "ground-truth directory for --format metrics");
  Diff->add_flag("--partial", Cfg.partial, "skip files that do not parse");
  Diff->add_option("left", Cfg.inputs, "left and right path")->required()->expected(2);

  CLI::App *Report = App.add_subcommand("report", "static HTML side-by-side report");
  Common(Report);
  Report->add_flag("--partial", Cfg.partial, "skip files that do not parse");
  Report->add_option("left", Cfg.inputs, "left and right path")->required()->expected(2);

  CLI::App *Eval = App.add_subcommand("eval", "evaluate against a benchmark corpus");
  Common(Eval);
  Eval->add_option("--format", Cfg.format, "metrics|json")
      ->check(CLI::IsMember({"metrics", "json"}));
  Eval->add_option("--truth", Cfg.truthDir, "ground truth as TRUTH/<commit>/*.json");
  Eval->add_option("--tool", Cfg.toolDir, "tool output as TOOL/<commit>/*.json");
  Eval->add_option("corpus", Cfg.inputs, "corpus directory")->required()->expected(1);

  CLI::App *Parse = App.add_subcommand("parse", "print the tree of Java files");
  Parse->add_option("files", Cfg.inputs, "Java files")->required();

  try {
    App.parse(Argc, Argv);
  } catch (const CLI::ParseError &E) {
    std::ostringstream O, Er;
    int Rc = App.exit(E, O, Er);
    Out << O.str();
    Err << Er.str();
    return Rc == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }

  Cfg.command = App.get_subcommands().front()->get_name();
  if (Cfg.command == "eval" && !Eval->count("--format"))
    Cfg.format = "metrics";
  if (Cfg.command == "report")
    Cfg.format = "html";
  Cfg.granularity = GranName == "statement" ? Granularity::Statement
                                               : Granularity::SubExpression;
  if (Fg || Stm) {
    if (Cfg.engine == "semdiff") {
      Err << "error: --fg and --stm apply to baseline engines only\n";
      return static_cast<int>(ExitCode::InputError);
    }
    std::string Base = Cfg.engine.substr(0, Cfg.engine.find('-'));
    if (Fg && Stm) {
      Err << "error: --fg and --stm cannot be combined\n";
      return static_cast<int>(ExitCode::InputError);
    }
    if (Stm && Base != "simple") {
      Err << "error: --stm needs the simple engine\n";
      return static_cast<int>(ExitCode::InputError);
    }
    Cfg.engine = Base + (Fg ? "-fg" : "-stm");
  }
  if (!FailUnder.empty()) {
    double P = 0, R = 0;
    char Comma = 0;
    std::istringstream In(FailUnder);
    if (!(In >> P >> Comma >> R) || Comma != ',' || !In.eof()) {
      Err << "error: --fail-under expects P,R\n";
      return static_cast<int>(ExitCode::InputError);
    }
    Cfg.failUnder = {P, R};
  }

  try {
    if (Cfg.command == "parse")
      return runParse(Cfg, Out);
    if (Cfg.command == "eval")
      return runEval(Cfg, Out, Err);
    return runDiff(Cfg, Out, Err);
  } catch (const std::exception &E) {
    Err << "error: " << E.what() << "\n";
  }
  return static_cast<int>(ExitCode::InputError);
}

} // namespace semdiff
