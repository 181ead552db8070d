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

#include "semdiff/model.hpp"

#include <map>
#include <set>

namespace semdiff {

struct DeclMatchResult {
  std::vector<DeclarationPair> pairs;
  std::vector<ClassDiff> classDiffs;
  std::vector<Refactoring> refactorings;
  std::vector<Node *> removedTypes, addedTypes;
  // members of matched types still unpaired after every phase
  std::vector<Node *> removedMethods, addedMethods;
  std::vector<Node *> removedFields, addedFields;

  // index of the pair holding a declaration, or -1
  int pairOfLeft(const Node *N) const;
  int pairOfRight(const Node *N) const;
};

// Outcome of mapping two method bodies for a changed-signature candidate.
struct MethodCandidate {
  Node *left = nullptr, *right = nullptr;
  MapperResult result;
  int matched = 0;   // mapped statements on both sides
  int unmatched = 0; // unmapped statements on both sides
  double similarity = 0; // signature token similarity
  int distance = 0;      // member position distance
  bool admissible = false;
};

MethodCandidate evaluateMethodPair(Node *Left, Node *Right);
// Strict ordering used to pick the best candidate first.
bool candidateBefore(const MethodCandidate &A, const MethodCandidate &B);
double signatureSimilarity(const Node *A, const Node *B);

// Declared supertypes by simple name, within the parsed files only.
bool declaresSupertype(const Node *Type, const std::string &SimpleName);

class DeclMatcher {
public:
  explicit DeclMatcher(const CommitPair &P);

  // identical type names, then identical member signatures inside them
  void phase1();
  // changed signatures inside one matched type pair
  void phase2(std::size_t ClassDiffIndex);
  // renamed or moved types by member-signature intersection
  void phase3();
  // members moved across types
  void phase4();

  // all four phases; ClassDiffs and residue are final afterwards
  DeclMatchResult run();
  const DeclMatchResult &result() const { return Res; }

private:
  std::size_t matchTypes(Node *L, Node *R);
  void matchMembers(std::size_t ClassDiffIndex);
  std::size_t addPair(DeclKind K, Node *L, Node *R, bool SignatureChanged);
  void renameFields(ClassDiff &D);
  void collectResidue();

  const CommitPair &P;
  DeclMatchResult Res;
  std::vector<Node *> LeftTypes, RightTypes;
  std::set<const Node *> MatchedLeft, MatchedRight;
};

} // namespace semdiff
