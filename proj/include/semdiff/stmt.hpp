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

#include "semdiff/ast.hpp"

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace semdiff {

enum class ReplacementKind {
  VariableRename,
  VariableLiteral,
  VariableInvocation,
  VariableCreation,
  TypeChange,
  ArgumentChange,
  InvokerChange
};

std::string kindName(ReplacementKind K);

struct Replacement {
  std::string before, after;
  ReplacementKind kind;
  // nodes the texts were taken from; not part of the identity
  Node *leftNode = nullptr, *rightNode = nullptr;
};

bool operator==(const Replacement &A, const Replacement &B);

// Replaces every token-bounded occurrence of each "before" text in one
// left-to-right pass; longer texts win at a position.
std::string applyReplacements(const std::string &Text,
                              const std::vector<Replacement> &Rs);

int levenshtein(const std::string &A, const std::string &B);

// Leaf statements print in full; composites print their header only.
std::string statementText(const Node *S);

// The substitutions turning S1 into S2, or nullopt when no chain of allowed
// substitutions reaches textual equality. Identical statements give {}.
std::optional<std::vector<Replacement>> replaceAndCompare(const Node *S1,
                                                          const Node *S2);

struct StatementMapping {
  Node *left = nullptr, *right = nullptr;
  std::vector<Replacement> replacements;
  int editDistance = 0;
  bool isLeaf = true;
  int multiGroup = -1;
};

StatementMapping makeMapping(Node *L, Node *R, std::vector<Replacement> Rs);

// Statements of one code fragment (a method body, an initializer).
class Fragment {
public:
  Fragment() = default;
  explicit Fragment(Node *Root);

  Node *root() const { return Root; }
  const std::vector<Node *> &statements() const { return Stmts; }
  const std::vector<Node *> &leaves() const { return Leaves; }
  const std::vector<Node *> &composites() const { return Composites; }
  bool contains(const Node *S) const { return Info.count(S); }

  // composite statements between S and the root, nearest first
  std::vector<Node *> parents(const Node *S) const;
  int depth(const Node *S) const;
  int index(const Node *S) const;
  // statement list S belongs to (the parent's statement children)
  const std::vector<Node *> &siblings(const Node *S) const;
  std::string firstNonBlockParentType(const Node *S) const;
  // every statement nested under composite C, at any depth
  std::vector<Node *> nested(const Node *C) const;
  // variables declared with an initializer in this fragment
  const std::vector<std::pair<std::string, Node *>> &declaredVariables() const {
    return Declared;
  }

private:
  struct StmtInfo {
    Node *container = nullptr; // composite parent or root
    int index = 0;
  };
  Node *Root = nullptr;
  std::vector<Node *> Stmts, Leaves, Composites;
  std::unordered_map<const Node *, StmtInfo> Info;
  std::unordered_map<const Node *, std::vector<Node *>> Lists;
  std::vector<std::pair<std::string, Node *>> Declared;
};

// Features of a candidate mapping used by the sorting ladders.
struct RankFeatures {
  int multiSize = 0; // statements in the multi-mapping it belongs to, or 0
  bool undoVariable = false;
  bool neighboursIdentical = false;
  int editDistance = 0;
  int depthLeft = 0, depthRight = 0;
  int indexLeft = 0, indexRight = 0;
  std::string parentTypeLeft, parentTypeRight; // first non-block parent
  std::vector<int> parentEditDistance;         // size min(depths)
  double childMatchRatio = 0;
  int identicalCompositeChildren = 0;

  int depth() const { return std::min(depthLeft, depthRight); }
  int depthDiff() const { return std::abs(depthLeft - depthRight); }
  int indexDiff() const { return std::abs(indexLeft - indexRight); }
  int parentEditDistanceSum() const;
  int directParentEditDistance() const;
};

// -1: A ranks first, 1: B ranks first, 0: no rule separates them.
int compareLeaf(const RankFeatures &A, const RankFeatures &B);
int compareComposite(const RankFeatures &A, const RankFeatures &B);

// Candidates share the statement `Shared`; `Others` sit on the other side.
// True when every one of Others lies in its own branch of a single
// if-else-if chain or switch, and Shared is nested less deeply than all.
bool detectConditionalMulti(const Fragment &SharedSide, const Node *Shared,
                            const Fragment &OtherSide,
                            const std::vector<Node *> &Others);

struct MapperOptions {
  // statements eligible on each side; empty means the whole fragment
  std::vector<Node *> leftScope, rightScope;
  // statements that may not be matched at all
  std::set<const Node *> excludedLeft, excludedRight;
  int firstMultiGroup = 0;
};

struct MapperResult {
  std::vector<StatementMapping> mappings;
  std::vector<Node *> unmatchedLeft, unmatchedRight;
  int multiGroups = 0;
  int round1 = 0, round2 = 0, round3 = 0;
  int matchedLeaves() const;
};

// Leaf rounds (iso-structural positional, identical, replacements) followed by
// composite rounds (identical header, header after replacements).
MapperResult mapStatements(const Fragment &L, const Fragment &R,
                           const MapperOptions &Opt = {});

bool isoStructural(const Fragment &L, const Fragment &R);

// One mapping execution per call site of an extracted (or inlined) method.
// Origin is the side the code came from; OriginPeer is the same method on the
// other side, where the call sites live. Executions whose call site is nested
// in a composite are restricted to the origin statements under that
// composite's partner; executions at method-body scope instead exclude the
// regions claimed by earlier executions.
std::vector<MapperResult>
mapByCallSites(const Fragment &Origin, const std::vector<Node *> &Candidates,
               const Fragment &OriginPeer,
               const std::vector<StatementMapping> &OriginMappings,
               const std::vector<Node *> &CallSites, const Fragment &Moved,
               bool OriginIsLeft, int FirstMultiGroup = 0);

struct DuplicateCandidate {
  StatementMapping mapping;
  bool callsMovedMethod = false; // contains a call to the extracted/inlined method
  bool parentMapped = true;
  bool nested = false; // from a method extracted out of another extracted one
};

// Indices of the candidates that survive the duplicate-mapping rules.
std::vector<std::size_t>
optimizeDuplicates(const std::vector<DuplicateCandidate> &Group);

} // namespace semdiff
