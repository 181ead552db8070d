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
#pragma once

#include "semdiff/compose.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semdiff {

using RefPair = std::pair<NodeRef, NodeRef>;

class BenchError : public std::runtime_error {
public:
  BenchError(const std::string &Msg, long Entry = -1)
      : std::runtime_error(Msg), entry(Entry) {}
  long entry; // index of the offending entry within its array, or -1
};

// "Type[start-end]:Type[start-end]"
std::string formatInfo(const NodeRef &L, const NodeRef &R);
// Files are taken from the enclosing group; nullopt when malformed.
std::optional<RefPair> parseInfo(const std::string &Info, const std::string &LeftFile,
                                 const std::string &RightFile);

struct GtEntry {
  std::string left, right; // informative renderings
  NodeRef leftRef, rightRef;
};

struct GtGroup {
  std::string leftFile, rightFile;
  std::vector<GtEntry> matchedElements, mappings;
};

struct BenchmarkMetadata {
  bool multiMappings = false;
  double leftChurn = 0, rightChurn = 0;
  std::string challengeLevel = "low"; // low | medium | high
  std::string comments;
};

struct GroundTruthFile {
  std::string leftFile, rightFile;
  GtGroup intraFile;
  std::vector<GtGroup> interFile;
  std::optional<BenchmarkMetadata> metadata;
};

GroundTruthFile loadGroundTruth(const std::string &Json);
std::string saveGroundTruth(const GroundTruthFile &G);

// Rendering used in the "left"/"right" fields: short signatures for
// declarations, header text for statements, source text otherwise.
std::string entryLabel(const Node *N);
GtEntry makeEntry(const Node *L, const Node *R);
GroundTruthFile toGroundTruth(const FileDiff &F);

enum class Granularity { Statement, SubExpression };
const char *granularityName(Granularity G);
// Statements, declarations, imports, packages and compilation units.
bool statementLevel(const Node *N);

// Six audited AST kinds: Block, SingleVariableDeclaration,
// MethodDeclaration, Modifier, Type, SimpleName.
struct IncompatibleCounts {
  std::map<std::string, int> byKind;
  int total() const;
};

struct MetricsReport {
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0, recall = 0, fscore = 0;
  bool perfectDiff = false;
  IncompatibleCounts incompatible;
  Granularity granularity = Granularity::SubExpression;
};

// Set arithmetic only: no filtering.
MetricsReport computeMetrics(const std::set<RefPair> &Tool,
                             const std::set<RefPair> &Bench);

// A pair of nodes whose types are among the audited kinds and whose parents
// (or, for modifiers, semantic groups) differ, and which the benchmark lacks.
std::optional<std::string> incompatibleKind(const Node *L, const Node *R);
IncompatibleCounts auditIncompatibility(const std::vector<NodePair> &Tool,
                                        const std::set<RefPair> &Bench);

std::set<RefPair> refPairs(const std::vector<NodePair> &Ps);
// Every mapping entry of every group; throws BenchError when a reference
// does not resolve against the snapshots.
std::vector<NodePair> resolveMappings(const CommitPair &C,
                                      const std::vector<GroundTruthFile> &G);
// Matched program elements whose two subtrees are isomorphic.
std::vector<NodePair> unchangedElements(const CommitPair &C,
                                        const std::vector<GroundTruthFile> &G);
// Drops pairs lying strictly inside both sides of one unchanged element
// pair. The element pair itself stays.
std::vector<NodePair> excludeUnchanged(const std::vector<NodePair> &Ps,
                                       const std::vector<NodePair> &Unchanged);
std::vector<NodePair> filterGranularity(const std::vector<NodePair> &Ps,
                                        Granularity G);
// Tool pairs touching a file the benchmark covers.
std::vector<NodePair> inScope(const MappingStore &Tool,
                              const std::vector<GroundTruthFile> &G);

// Filtering, granularity, metrics and audit for one commit.
MetricsReport evaluate(const CommitPair &C, const std::vector<GroundTruthFile> &G,
                       const MappingStore &Tool, Granularity Gr);

struct Aggregate {
  std::size_t commits = 0, perfect = 0;
  MetricsReport total; // micro-averaged over all commits
  double perfectRate() const;
};
Aggregate aggregate(const std::vector<MetricsReport> &Rs);

std::string metricsToJson(const MetricsReport &R);
// Aligned text table, one row per named report.
std::string metricsTable(const std::vector<std::pair<std::string, MetricsReport>> &Rows);

// Share of lines removed or modified on the left, added or modified on the
// right, from a longest common subsequence over lines.
std::pair<double, double> computeChurn(const std::string &Left,
                                       const std::string &Right);

struct TimingStats {
  std::vector<long long> samples; // nanoseconds
  double mean = 0, stddev = 0;
  long long min = 0, median = 0;
};
TimingStats timeDiff(const std::function<void()> &Run, int Runs = 5, int Warmup = 1);

} // namespace semdiff
