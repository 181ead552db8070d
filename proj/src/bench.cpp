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
#include "semdiff/bench.hpp"
#include "semdiff/java.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <regex>

namespace semdiff {

using ojson = nlohmann::ordered_json;

std::string formatInfo(const NodeRef &L, const NodeRef &R) {
  return fmt::format("{}[{}-{}]:{}[{}-{}]", L.typeLabel, L.start, L.end,
                     R.typeLabel, R.start, R.end);
}

std::optional<RefPair> parseInfo(const std::string &Info, const std::string &LeftFile,
                                 const std::string &RightFile) {
  static const std::regex Re(
      R"(^([A-Za-z_][A-Za-z0-9_.\-]*)\[(\d+)-(\d+)\]:([A-Za-z_][A-Za-z0-9_.\-]*)\[(\d+)-(\d+)\]$)");
  std::smatch M;
  if (!std::regex_match(Info, M, Re))
    return std::nullopt;
  auto Num = [&](int I) -> std::optional<std::uint32_t> {
    unsigned long long V = std::stoull(M[I].str());
    if (V > UINT32_MAX)
      return std::nullopt;
    return static_cast<std::uint32_t>(V);
  };
  auto LS = Num(2), LE = Num(3), RS = Num(5), RE = Num(6);
  if (!LS || !LE || !RS || !RE || *LS > *LE || *RS > *RE)
    return std::nullopt;
  return RefPair{{LeftFile, M[1].str(), *LS, *LE}, {RightFile, M[4].str(), *RS, *RE}};
}

namespace {

ojson entriesJson(const std::vector<GtEntry> &Es) {
  ojson A = ojson::array();
  for (const GtEntry &E : Es)
    A.push_back({{"left", E.left},
                 {"right", E.right},
                 {"info", formatInfo(E.leftRef, E.rightRef)}});
  return A;
}

std::vector<GtEntry> entriesFrom(const ojson &A, const std::string &LF,
                                 const std::string &RF, const std::string &Where) {
  if (!A.is_array())
    throw BenchError(Where + " is not an array");
  std::vector<GtEntry> Out;
  for (std::size_t I = 0; I < A.size(); ++I) {
    const ojson &E = A[I];
    if (!E.is_object() || !E.contains("info") || !E["info"].is_string())
      throw BenchError(fmt::format("{}[{}]: missing info", Where, I), static_cast<long>(I));
    auto P = parseInfo(E["info"].get<std::string>(), LF, RF);
    if (!P)
      throw BenchError(fmt::format("{}[{}]: malformed info \"{}\"", Where, I,
                                   E["info"].get<std::string>()),
                       static_cast<long>(I));
    GtEntry G;
    G.left = E.value("left", "");
    G.right = E.value("right", "");
    G.leftRef = P->first;
    G.rightRef = P->second;
    Out.push_back(std::move(G));
  }
  return Out;
}

GtGroup groupFrom(const ojson &J, const std::string &LF, const std::string &RF,
                  const std::string &Where) {
  if (!J.is_object())
    throw BenchError(Where + " is not an object");
  GtGroup G;
  G.leftFile = LF;
  G.rightFile = RF;
  G.matchedElements = entriesFrom(J.value("matchedElements", ojson::array()), LF, RF,
                                  Where + ".matchedElements");
  G.mappings = entriesFrom(J.value("mappings", ojson::array()), LF, RF, Where + ".mappings");
  return G;
}

} // namespace

GroundTruthFile loadGroundTruth(const std::string &Json) {
  ojson J;
  try {
    J = ojson::parse(Json);
  } catch (const nlohmann::json::exception &E) {
    throw BenchError(std::string("invalid JSON: ") + E.what());
  }
  if (!J.is_object() || !J.contains("leftFile") || !J.contains("rightFile") ||
      !J.contains("intraFile"))
    throw BenchError("ground truth needs leftFile, rightFile and intraFile");
  GroundTruthFile G;
  G.leftFile = J["leftFile"].get<std::string>();
  G.rightFile = J["rightFile"].get<std::string>();
  G.intraFile = groupFrom(J["intraFile"], G.leftFile, G.rightFile, "intraFile");
  if (J.contains("interFile")) {
    const ojson &A = J["interFile"];
    if (!A.is_array())
      throw BenchError("interFile is not an array");
    for (std::size_t I = 0; I < A.size(); ++I) {
      const ojson &X = A[I];
      if (!X.is_object() || !X.contains("leftFile") || !X.contains("rightFile"))
        throw BenchError(fmt::format("interFile[{}]: missing file names", I),
                         static_cast<long>(I));
      G.interFile.push_back(groupFrom(X, X["leftFile"].get<std::string>(),
                                      X["rightFile"].get<std::string>(),
                                      fmt::format("interFile[{}]", I)));
    }
  }
  if (J.contains("metadata")) {
    const ojson &M = J["metadata"];
    BenchmarkMetadata D;
    D.multiMappings = M.value("multiMappings", false);
    D.leftChurn = M.value("leftChurn", 0.0);
    D.rightChurn = M.value("rightChurn", 0.0);
    D.challengeLevel = M.value("challengeLevel", "low");
    D.comments = M.value("comments", "");
    if (D.leftChurn < 0 || D.leftChurn > 1 || D.rightChurn < 0 || D.rightChurn > 1)
      throw BenchError("metadata churn outside [0,1]");
    if (D.challengeLevel != "low" && D.challengeLevel != "medium" &&
        D.challengeLevel != "high")
      throw BenchError("metadata challengeLevel must be low, medium or high");
    G.metadata = D;
  }
  return G;
}

std::string saveGroundTruth(const GroundTruthFile &G) {
  ojson J;
  J["leftFile"] = G.leftFile;
  J["rightFile"] = G.rightFile;
  J["intraFile"] = {{"matchedElements", entriesJson(G.intraFile.matchedElements)},
                    {"mappings", entriesJson(G.intraFile.mappings)}};
  if (!G.interFile.empty()) {
    ojson A = ojson::array();
    for (const GtGroup &X : G.interFile)
      A.push_back({{"leftFile", X.leftFile},
                   {"rightFile", X.rightFile},
                   {"matchedElements", entriesJson(X.matchedElements)},
                   {"mappings", entriesJson(X.mappings)}});
    J["interFile"] = A;
  }
  if (G.metadata) {
    const BenchmarkMetadata &M = *G.metadata;
    J["metadata"] = {{"multiMappings", M.multiMappings},
                     {"leftChurn", M.leftChurn},
                     {"rightChurn", M.rightChurn},
                     {"challengeLevel", M.challengeLevel},
                     {"comments", M.comments}};
  }
  return J.dump(2) + "\n";
}

std::string entryLabel(const Node *N) {
  if (isBodyDeclaration(N) || N->type == "ImportDeclaration" ||
      N->type == "PackageDeclaration" || N->type == "CompilationUnit") {
    Signature S = signatureOf(N);
    std::string Kind = declKindName(S.kind);
    return Kind + " " + S.shortForm();
  }
  if (isStatement(N))
    return headerText(N);
  return printFull(N);
}

GtEntry makeEntry(const Node *L, const Node *R) {
  return {entryLabel(L), entryLabel(R), refOf(L), refOf(R)};
}

GroundTruthFile toGroundTruth(const FileDiff &F) {
  auto Group = [](const ElementGroup &E) {
    GtGroup G;
    G.leftFile = E.leftFile;
    G.rightFile = E.rightFile;
    for (auto &[L, R] : E.matchedElements)
      G.matchedElements.push_back(makeEntry(L, R));
    for (auto &[L, R] : E.mappings)
      G.mappings.push_back(makeEntry(L, R));
    return G;
  };
  GroundTruthFile G;
  G.leftFile = F.leftFile;
  G.rightFile = F.rightFile;
  G.intraFile = Group(F.intraFile);
  for (const ElementGroup &E : F.interFile)
    G.interFile.push_back(Group(E));
  return G;
}

const char *granularityName(Granularity G) {
  return G == Granularity::Statement ? "statement" : "subexpression";
}

bool statementLevel(const Node *N) {
  return isStatement(N) || isBodyDeclaration(N) || N->type == "ImportDeclaration" ||
         N->type == "PackageDeclaration" || N->type == "CompilationUnit";
}

int IncompatibleCounts::total() const {
  int T = 0;
  for (auto &[K, V] : byKind)
    T += V;
  return T;
}

namespace {

double ratio(std::size_t Num, std::size_t Den, std::size_t Other) {
  if (Den == 0)
    return Other == 0 ? 1.0 : 0.0;
  return static_cast<double>(Num) / static_cast<double>(Den);
}

} // namespace

MetricsReport computeMetrics(const std::set<RefPair> &Tool,
                             const std::set<RefPair> &Bench) {
  MetricsReport R;
  for (const RefPair &P : Tool)
    (Bench.count(P) ? R.tp : R.fp)++;
  for (const RefPair &P : Bench)
    R.fn += !Tool.count(P);
  R.precision = ratio(R.tp, R.tp + R.fp, R.fn);
  R.recall = ratio(R.tp, R.tp + R.fn, R.fp);
  R.fscore = ratio(2 * R.tp, 2 * R.tp + R.fp + R.fn, 0);
  R.perfectDiff = R.fp == 0 && R.fn == 0;
  return R;
}

std::optional<std::string> incompatibleKind(const Node *L, const Node *R) {
  std::string Kind;
  if (L->type == "Modifier" && R->type == "Modifier") {
    if (modifierGroup(L->value) != modifierGroup(R->value))
      return std::string("Modifier");
    return std::nullopt;
  }
  for (const char *K : {"Block", "SingleVariableDeclaration", "MethodDeclaration",
                        "SimpleName"})
    if (L->type == K && R->type == K)
      Kind = K;
  if (Kind.empty() && isTypeLabel(L->type) && isTypeLabel(R->type))
    Kind = "Type";
  if (Kind.empty())
    return std::nullopt;
  const Node *PL = L->parent, *PR = R->parent;
  if (!PL || !PR || PL->type == PR->type)
    return std::nullopt;
  return Kind;
}

IncompatibleCounts auditIncompatibility(const std::vector<NodePair> &Tool,
                                        const std::set<RefPair> &Bench) {
  IncompatibleCounts C;
  for (const char *K : {"Block", "SingleVariableDeclaration", "MethodDeclaration",
                        "Modifier", "Type", "SimpleName"})
    C.byKind[K] = 0;
  for (auto &[L, R] : Tool) {
    if (Bench.count({refOf(L), refOf(R)}))
      continue;
    if (auto K = incompatibleKind(L, R))
      ++C.byKind[*K];
  }
  return C;
}

std::set<RefPair> refPairs(const std::vector<NodePair> &Ps) {
  std::set<RefPair> S;
  for (auto &[L, R] : Ps)
    S.insert({refOf(L), refOf(R)});
  return S;
}

namespace {

template <typename Pick>
std::vector<NodePair> resolveEntries(const CommitPair &C,
                                     const std::vector<GroundTruthFile> &G, Pick Field) {
  std::vector<NodePair> Out;
  auto Group = [&](const GtGroup &X) {
    const std::vector<GtEntry> &Es = Field(X);
    for (std::size_t I = 0; I < Es.size(); ++I) {
      Node *L = nullptr, *R = nullptr;
      try {
        L = locate(C.left, Es[I].leftRef);
        R = locate(C.right, Es[I].rightRef);
      } catch (const std::exception &) {
        L = R = nullptr;
      }
      if (!L || !R)
        throw BenchError(fmt::format("unresolvable entry {} ({}) in {} -> {}", I,
                                     formatInfo(Es[I].leftRef, Es[I].rightRef),
                                     X.leftFile, X.rightFile),
                         static_cast<long>(I));
      Out.emplace_back(L, R);
    }
  };
  for (const GroundTruthFile &F : G) {
    Group(F.intraFile);
    for (const GtGroup &X : F.interFile)
      Group(X);
  }
  std::sort(Out.begin(), Out.end());
  Out.erase(std::unique(Out.begin(), Out.end()), Out.end());
  return Out;
}

bool strictlyInside(const Node *X, const Node *E) {
  return X != E && isAncestor(E, X);
}

} // namespace

std::vector<NodePair> resolveMappings(const CommitPair &C,
                                      const std::vector<GroundTruthFile> &G) {
  return resolveEntries(C, G, [](const GtGroup &X) -> const std::vector<GtEntry> & {
    return X.mappings;
  });
}

std::vector<NodePair> unchangedElements(const CommitPair &C,
                                        const std::vector<GroundTruthFile> &G) {
  auto All = resolveEntries(C, G, [](const GtGroup &X) -> const std::vector<GtEntry> & {
    return X.matchedElements;
  });
  std::vector<NodePair> Out;
  for (auto &[L, R] : All)
    if (isomorphic(L, R))
      Out.emplace_back(L, R);
  return Out;
}

std::vector<NodePair> excludeUnchanged(const std::vector<NodePair> &Ps,
                                       const std::vector<NodePair> &Unchanged) {
  std::vector<NodePair> Out;
  for (const NodePair &P : Ps) {
    bool Drop = false;
    for (auto &[EL, ER] : Unchanged)
      if (strictlyInside(P.first, EL) && strictlyInside(P.second, ER)) {
        Drop = true;
        break;
      }
    if (!Drop)
      Out.push_back(P);
  }
  return Out;
}

std::vector<NodePair> filterGranularity(const std::vector<NodePair> &Ps,
                                        Granularity G) {
  if (G == Granularity::SubExpression)
    return Ps;
  std::vector<NodePair> Out;
  for (const NodePair &P : Ps)
    if (statementLevel(P.first) && statementLevel(P.second))
      Out.push_back(P);
  return Out;
}

std::vector<NodePair> inScope(const MappingStore &Tool,
                              const std::vector<GroundTruthFile> &G) {
  std::set<std::string> LF, RF;
  for (const GroundTruthFile &F : G) {
    if (!F.leftFile.empty())
      LF.insert(F.leftFile);
    if (!F.rightFile.empty())
      RF.insert(F.rightFile);
  }
  std::vector<NodePair> Out;
  for (auto &[L, R] : Tool.pairs())
    if ((L->file && LF.count(L->file->path)) || (R->file && RF.count(R->file->path)))
      Out.emplace_back(L, R);
  return Out;
}

MetricsReport evaluate(const CommitPair &C, const std::vector<GroundTruthFile> &G,
                       const MappingStore &Tool, Granularity Gr) {
  auto Unchanged = unchangedElements(C, G);
  auto B = filterGranularity(excludeUnchanged(resolveMappings(C, G), Unchanged), Gr);
  auto T = filterGranularity(excludeUnchanged(inScope(Tool, G), Unchanged), Gr);
  std::set<RefPair> BR = refPairs(B);
  MetricsReport R = computeMetrics(refPairs(T), BR);
  R.incompatible = auditIncompatibility(T, BR);
  R.granularity = Gr;
  return R;
}

double Aggregate::perfectRate() const {
  return commits ? static_cast<double>(perfect) / static_cast<double>(commits) : 1.0;
}

Aggregate aggregate(const std::vector<MetricsReport> &Rs) {
  Aggregate A;
  for (const MetricsReport &R : Rs) {
    ++A.commits;
    A.perfect += R.perfectDiff;
    A.total.tp += R.tp;
    A.total.fp += R.fp;
    A.total.fn += R.fn;
    A.total.granularity = R.granularity;
    for (auto &[K, V] : R.incompatible.byKind)
      A.total.incompatible.byKind[K] += V;
  }
  MetricsReport &T = A.total;
  T.precision = ratio(T.tp, T.tp + T.fp, T.fn);
  T.recall = ratio(T.tp, T.tp + T.fn, T.fp);
  T.fscore = ratio(2 * T.tp, 2 * T.tp + T.fp + T.fn, 0);
  T.perfectDiff = A.perfect == A.commits;
  return A;
}

std::string metricsToJson(const MetricsReport &R) {
  ojson J;
  J["granularity"] = granularityName(R.granularity);
  J["tp"] = R.tp;
  J["fp"] = R.fp;
  J["fn"] = R.fn;
  J["precision"] = R.precision;
  J["recall"] = R.recall;
  J["fscore"] = R.fscore;
  J["perfectDiff"] = R.perfectDiff;
  ojson I = ojson::object();
  for (auto &[K, V] : R.incompatible.byKind)
    I[K] = V;
  J["incompatible"] = I;
  return J.dump(2);
}

std::string metricsTable(const std::vector<std::pair<std::string, MetricsReport>> &Rows) {
  std::size_t W = 4;
  for (auto &[Name, R] : Rows)
    W = std::max(W, Name.size());
  std::string Out = fmt::format("{:<{}}  {:>6} {:>6} {:>6}  {:>9} {:>9} {:>9}  {:>7} {:>12}\n",
                                "name", W, "TP", "FP", "FN", "precision", "recall",
                                "f-score", "perfect", "incompatible");
  for (auto &[Name, R] : Rows)
    Out += fmt::format("{:<{}}  {:>6} {:>6} {:>6}  {:>9.4f} {:>9.4f} {:>9.4f}  {:>7} {:>12}\n",
                       Name, W, R.tp, R.fp, R.fn, R.precision, R.recall, R.fscore,
                       R.perfectDiff ? "yes" : "no", R.incompatible.total());
  return Out;
}

namespace {

std::vector<std::string> splitLines(const std::string &S) {
  std::vector<std::string> Out;
  std::size_t Start = 0;
  while (Start < S.size()) {
    std::size_t End = S.find('\n', Start);
    if (End == std::string::npos)
      End = S.size();
    Out.push_back(S.substr(Start, End - Start));
    Start = End + 1;
  }
  return Out;
}

} // namespace

std::pair<double, double> computeChurn(const std::string &Left, const std::string &Right) {
  auto A = splitLines(Left), B = splitLines(Right);
  std::vector<std::vector<int>> T(A.size() + 1, std::vector<int>(B.size() + 1, 0));
  for (std::size_t I = A.size(); I-- > 0;)
    for (std::size_t J = B.size(); J-- > 0;)
      T[I][J] = A[I] == B[J] ? T[I + 1][J + 1] + 1 : std::max(T[I + 1][J], T[I][J + 1]);
  double Common = T[0][0];
  double LC = A.empty() ? 0 : (A.size() - Common) / A.size();
  double RC = B.empty() ? 0 : (B.size() - Common) / B.size();
  return {LC, RC};
}

TimingStats timeDiff(const std::function<void()> &Run, int Runs, int Warmup) {
  for (int I = 0; I < Warmup; ++I)
    Run();
  TimingStats S;
  for (int I = 0; I < std::max(1, Runs); ++I) {
    auto T0 = std::chrono::steady_clock::now();
    Run();
    auto T1 = std::chrono::steady_clock::now();
    S.samples.push_back(
        std::max<long long>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(T1 - T0)
                                   .count()));
  }
  std::vector<long long> Sorted = S.samples;
  std::sort(Sorted.begin(), Sorted.end());
  S.min = Sorted.front();
  S.median = Sorted[Sorted.size() / 2];
  S.mean = std::accumulate(Sorted.begin(), Sorted.end(), 0.0) / Sorted.size();
  double Var = 0;
  for (long long X : Sorted)
    Var += (X - S.mean) * (X - S.mean);
  S.stddev = std::sqrt(Var / Sorted.size());
  return S;
}

} // namespace semdiff
