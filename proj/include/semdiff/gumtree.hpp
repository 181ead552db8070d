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

#include <string>
#include <unordered_map>
#include <vector>

namespace semdiff {

enum class BottomUpMode { Greedy, Simple };

struct MatcherConfig {
  int minHeight = 2;
  double diceThreshold = 0.5;
  BottomUpMode bottomUpMode = BottomUpMode::Greedy;
  bool simpleNameParentGuard = false;
  bool fineGrainedLabels = false;
};

// A rooted traversal over either a real tree or a pseudo root gluing several
// subtrees together. Parent links never leave the view.
class TreeView {
public:
  explicit TreeView(Node *Root);
  // Pseudo root over Subtrees; Holder owns the synthetic root node.
  TreeView(SourceFile &Holder, const std::vector<Node *> &Subtrees);

  Node *root() const { return Root; }
  const std::vector<Node *> &preorder() const { return Pre; }
  std::vector<Node *> postorder() const;
  Node *parent(const Node *N) const;
  bool contains(const Node *N) const { return Index.count(N); }
  // strict descendant test inside the view
  bool isDescendant(const Node *D, const Node *A) const;
  std::vector<Node *> descendantsOf(const Node *N) const;
  int sizeOf(const Node *N) const;

private:
  Node *Root;
  std::vector<Node *> Pre;
  std::unordered_map<const Node *, int> Index;
  std::unordered_map<const Node *, Node *> RootChildren;
};

// Maps Root1/Root2 subtrees top-down; mappings go into M.
void topDown(const TreeView &T1, const TreeView &T2, MappingStore &M,
             const MatcherConfig &Cfg);
double dice(const TreeView &T1, const TreeView &T2, const Node *A,
            const Node *B, const MappingStore &M);
void bottomUp(const TreeView &T1, const TreeView &T2, MappingStore &M,
              const MatcherConfig &Cfg);

// top_down followed by bottom_up on two whole trees.
MappingStore matchTrees(Node *Left, Node *Right, const MatcherConfig &Cfg);

// Leaf labels become "Parent-Leaf"; hashes are recomputed.
void fgRelabel(SourceFile &F);
void fgRestore(SourceFile &F);

// Per-file matching for files with the same path on both sides.
MappingStore matchCommitPerFile(CommitPair &P, const MatcherConfig &Cfg);
// Second phase over a pseudo project root built from subtrees that are still
// unmatched; returns only pairs whose nodes live in different files.
MappingStore stagedTreeMatch(const CommitPair &P, const MappingStore &PerFile,
                             const MatcherConfig &Cfg);

struct EditAction {
  enum Kind { Insert, Delete, Update, Move } kind;
  // Nodes are numbered by left preorder id; inserted nodes continue the
  // numbering. Parent 0-based position is the index at application time.
  int node = -1;
  int parent = -1;
  int position = -1;
  std::string type;
  std::string value;
  std::string str() const;
};

struct EditScript {
  std::vector<EditAction> actions;
  std::vector<std::string> warnings;
};

EditScript deriveEditScript(Node *Left, Node *Right, const MappingStore &M);

// Replays a script over a copy of Left and reports whether the result is
// isomorphic to Right.
bool replayMatches(const Node *Left, const EditScript &S, const Node *Right);

} // namespace semdiff
