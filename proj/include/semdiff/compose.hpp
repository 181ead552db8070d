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

#include "semdiff/refactor.hpp"

#include <map>
#include <set>

namespace semdiff {

using NodePair = std::pair<Node *, Node *>;

// Simple-mode matching of two subtrees (or two groups of subtrees) with
// minHeight 1 and the SimpleName parent guard, followed by re-aligning
// invocation and infix parents to their mapped names and operators.
MappingStore treeMatcher(Node *A, Node *B);
MappingStore treeMatcher(const std::vector<Node *> &A,
                         const std::vector<Node *> &B);

// Fine-grained mappings for one matched pair. Declarations and composite
// statements are matched on their header only, plus their body blocks slot
// by slot; everything else is matched as a whole subtree. The pair itself is
// always included.
MappingStore pairMappings(Node *A, Node *B);

struct ElementGroup {
  std::string leftFile, rightFile;
  std::vector<NodePair> matchedElements; // program element pairs
  std::vector<NodePair> mappings;
};

// Mappings seen from one file pair: those within the pair and those crossing
// into other files.
struct FileDiff {
  std::string leftFile, rightFile; // empty when the file is added/removed
  ElementGroup intraFile;
  std::vector<ElementGroup> interFile;
};

struct ComposedDiff {
  MappingStore store;
  std::set<NodePair> fromRefactorings;
  std::vector<NodePair> matchedElements;
  std::vector<DeclarationPair> declarationPairs;
  std::vector<Refactoring> refactorings;
  std::vector<FileDiff> files;
};

// Declaration-pair mappings first, then refactoring mappings, which evict
// any declaration-sourced pair sharing a node. Refactoring-sourced pairs
// never evict each other, so multi-mappings survive. Extra holds further
// declaration-sourced element pairs (compilation units, packages, imports).
ComposedDiff compose(const std::vector<DeclarationPair> &P,
                     const std::vector<Refactoring> &R,
                     const std::vector<NodePair> &Extra = {});

// Base type names (generics and arrays stripped) that change consistently
// inside one file: each left name maps to exactly one right name and back.
std::map<std::string, std::string> localTypeChanges(const DeclMatchResult &D,
                                                    const std::string &LeftFile);

// Import pairs of one file pair, in pass order: identical text, moved or
// renamed classes, consistent local type changes, on-demand grouping.
std::vector<NodePair>
importDiff(const SourceFile &L, const SourceFile &R,
           const std::map<std::string, std::string> &MovedTypes,
           const std::map<std::string, std::string> &TypeChanges);

// Files paired by path, or by a matched top-level type when neither file
// has a same-path counterpart.
std::vector<std::pair<SourceFile *, SourceFile *>> filePairs(const CommitPair &C,
                                                             const DeclMatchResult &D);

// Groups element pairs and store pairs by file pair. Pairs crossing files
// are listed under both the left and the right file's entry.
std::vector<FileDiff>
partitionByFile(const std::vector<std::pair<SourceFile *, SourceFile *>> &Pairs,
                const std::vector<NodePair> &Elements, const MappingStore &Store);

// Whole pipeline: declarations, refactorings, imports, composition and the
// per-file partition.
ComposedDiff diffCommit(const CommitPair &C);

} // namespace semdiff
