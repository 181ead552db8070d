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

#include "semdiff/bench.hpp"
#include "semdiff/gumtree.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semdiff {

enum class ExitCode { Ok = 0, BelowThreshold = 1, InputError = 2 };

// Unreadable paths, parse failures, malformed benchmark files.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string command; // diff | eval | parse | report
  std::vector<std::string> inputs;
  std::string engine = "semdiff"; // semdiff | greedy | simple | greedy-fg | simple-fg | simple-stm
  std::string format = "json";    // json | html | script | metrics
  std::string outDir;
  std::string truthDir, toolDir;
  Granularity granularity = Granularity::SubExpression;
  MatcherConfig matcher;
  bool partial = false; // skip unparsable files instead of failing
  std::optional<std::pair<double, double>> failUnder;
};

// Relative paths of .java files under a directory, sorted.
std::vector<std::string> javaFiles(const std::string &Dir);

// Left/right files or left/right directories. Files are parsed in parallel.
// Parse failures throw InputError naming file and offset, unless Partial,
// in which case they are appended to Skipped.
CommitPair loadCommit(const std::string &Left, const std::string &Right,
                      bool Partial, std::vector<std::string> *Skipped = nullptr);

struct EngineRun {
  MappingStore store;
  std::vector<FileDiff> files;
};

bool knownEngine(const std::string &Engine);
// Baselines honour Cfg; semdiff ignores it. FG engines relabel leaves
// temporarily, so C is modified during the call but restored on return.
EngineRun runEngine(CommitPair &C, const std::string &Engine, const MatcherConfig &Cfg);

// Per-file mapping documents in the benchmark schema: (file name, content).
std::vector<std::pair<std::string, std::string>> renderJson(const EngineRun &E);
std::string renderScript(const CommitPair &C, const EngineRun &E);
// Static side-by-side report. Highlighted regions are exactly the
// statement-level nodes of the mapping documents.
std::string renderHtml(const CommitPair &C, const EngineRun &E);

// Parses arguments and runs; returns the process exit status.
int runCli(int Argc, const char *const *Argv, std::ostream &Out, std::ostream &Err);

} // namespace semdiff
