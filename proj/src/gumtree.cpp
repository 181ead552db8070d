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
#include "semdiff/gumtree.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace semdiff {

TreeView::TreeView(Node *R) : Root(R) {
  semdiff::preorder(Root, [&](Node *N) {
    Index[N] = static_cast<int>(Pre.size());
    Pre.push_back(N);
  });
}

TreeView::TreeView(SourceFile &Holder, const std::vector<Node *> &Subtrees) {
  Root = Holder.make("ProjectRoot", "", 0, 0);
  Root->children = Subtrees;
  int H = 0, S = 1;
  for (Node *C : Subtrees) {
    H = std::max(H, C->height);
    S += C->size;
    RootChildren[C] = Root;
  }
  Root->height = H + 1;
  Root->size = S;
  Index[Root] = 0;
  Pre.push_back(Root);
  for (Node *C : Subtrees)
    semdiff::preorder(C, [&](Node *N) {
      Index[N] = static_cast<int>(Pre.size());
      Pre.push_back(N);
    });
}

std::vector<Node *> TreeView::postorder() const {
  std::vector<Node *> R;
  R.reserve(Pre.size());
  std::function<void(Node *)> Go = [&](Node *N) {
    for (Node *C : N->children)
      Go(C);
    R.push_back(N);
  };
  Go(Root);
  return R;
}

Node *TreeView::parent(const Node *N) const {
  if (N == Root)
    return nullptr;
  auto It = RootChildren.find(N);
  if (It != RootChildren.end())
    return It->second;
  return N->parent;
}

int TreeView::sizeOf(const Node *N) const {
  return N == Root ? static_cast<int>(Pre.size()) : N->size;
}

bool TreeView::isDescendant(const Node *D, const Node *A) const {
  auto ID = Index.find(D), IA = Index.find(A);
  if (ID == Index.end() || IA == Index.end())
    return false;
  return ID->second > IA->second && ID->second < IA->second + sizeOf(A);
}

std::vector<Node *> TreeView::descendantsOf(const Node *N) const {
  auto It = Index.find(N);
  if (It == Index.end())
    return {};
  return std::vector<Node *>(Pre.begin() + It->second + 1,
                             Pre.begin() + It->second + sizeOf(N));
}

namespace {

bool guardAllows(const TreeView &T1, const TreeView &T2, const Node *A,
                 const Node *B, const MatcherConfig &Cfg) {
  if (!Cfg.simpleNameParentGuard || A->type != "SimpleName")
    return true;
  const Node *PA = T1.parent(A), *PB = T2.parent(B);
  if (!PA || !PB)
    return PA == PB;
  return PA->type == PB->type;
}

void mapSubtree(const TreeView &T1, const TreeView &T2, Node *A, Node *B,
                MappingStore &M) {
  M.add(A, B);
  auto DA = T1.descendantsOf(A), DB = T2.descendantsOf(B);
  for (std::size_t I = 0; I < DA.size() && I < DB.size(); ++I)
    M.add(DA[I], DB[I]);
}

} // namespace

double dice(const TreeView &T1, const TreeView &T2, const Node *A,
            const Node *B, const MappingStore &M) {
  int D1 = T1.sizeOf(A) - 1, D2 = T2.sizeOf(B) - 1;
  if (D1 + D2 == 0)
    return 0.0;
  int Common = 0;
  for (Node *D : T1.descendantsOf(A))
    for (Node *P : M.partnersOfLeft(D))
      if (T2.isDescendant(P, B)) {
        ++Common;
        break;
      }
  return 2.0 * Common / (D1 + D2);
}

void topDown(const TreeView &T1, const TreeView &T2, MappingStore &M,
             const MatcherConfig &Cfg) {
  std::vector<Node *> Open1{T1.root()}, Open2{T2.root()};
  std::vector<std::pair<Node *, Node *>> Ambiguous;
  int H = std::max(T1.root()->height, T2.root()->height);
  auto Take = [](std::vector<Node *> &Open, int Height) {
    std::vector<Node *> Now, Rest;
    for (Node *N : Open)
      (N->height == Height ? Now : Rest).push_back(N);
    Open.swap(Rest);
    std::sort(Now.begin(), Now.end(), positionLess);
    return Now;
  };
  auto OpenChildren = [&](std::vector<Node *> &Open, Node *N) {
    for (Node *C : N->children)
      if (C->height >= Cfg.minHeight)
        Open.push_back(C);
  };
  for (; H >= Cfg.minHeight; --H) {
    auto L = Take(Open1, H), R = Take(Open2, H);
    std::map<Node *, std::vector<Node *>> PR, PL;
    std::multimap<std::uint64_t, Node *> ByHash;
    for (Node *B : R)
      ByHash.emplace(B->valueHash, B);
    for (Node *A : L) {
      auto [Lo, Hi] = ByHash.equal_range(A->valueHash);
      for (auto It = Lo; It != Hi; ++It) {
        Node *B = It->second;
        if (isomorphic(A, B) && guardAllows(T1, T2, A, B, Cfg)) {
          PR[A].push_back(B);
          PL[B].push_back(A);
        }
      }
    }
    for (Node *A : L) {
      auto It = PR.find(A);
      if (It == PR.end()) {
        OpenChildren(Open1, A);
        continue;
      }
      std::sort(It->second.begin(), It->second.end(), positionLess);
      for (Node *B : It->second) {
        if (It->second.size() == 1 && PL[B].size() == 1)
          mapSubtree(T1, T2, A, B, M);
        else
          Ambiguous.emplace_back(A, B);
      }
    }
    for (Node *B : R)
      if (!PL.count(B))
        OpenChildren(Open2, B);
  }
  struct Cand {
    Node *A, *B;
    double Dice;
  };
  std::vector<Cand> Cs;
  for (auto [A, B] : Ambiguous) {
    Node *PA = T1.parent(A), *PB = T2.parent(B);
    Cs.push_back({A, B, PA && PB ? dice(T1, T2, PA, PB, M) : 0.0});
  }
  std::stable_sort(Cs.begin(), Cs.end(), [](const Cand &X, const Cand &Y) {
    if (X.Dice != Y.Dice)
      return X.Dice > Y.Dice;
    if (X.A != Y.A)
      return positionLess(X.A, Y.A);
    return positionLess(X.B, Y.B);
  });
  for (const Cand &C : Cs)
    if (!M.hasLeft(C.A) && !M.hasRight(C.B))
      mapSubtree(T1, T2, C.A, C.B, M);
}

namespace {

// Greedy recovery: remaining leaves of equal label inside a matched
// container pair are paired in source order.
void recoverLeaves(const TreeView &T1, const TreeView &T2, Node *A, Node *B,
                   MappingStore &M, const MatcherConfig &Cfg) {
  auto Key = [&](const TreeView &T, const Node *N) {
    std::string K = N->type;
    if (Cfg.simpleNameParentGuard && N->type == "SimpleName" && T.parent(N))
      K += "|" + T.parent(N)->type;
    return K;
  };
  std::map<std::string, std::vector<Node *>> Ls, Rs;
  for (Node *D : T1.descendantsOf(A))
    if (D->isLeaf() && !M.hasLeft(D))
      Ls[Key(T1, D)].push_back(D);
  for (Node *D : T2.descendantsOf(B))
    if (D->isLeaf() && !M.hasRight(D))
      Rs[Key(T2, D)].push_back(D);
  for (auto &[K, V] : Ls) {
    auto It = Rs.find(K);
    if (It == Rs.end())
      continue;
    for (std::size_t I = 0; I < V.size() && I < It->second.size(); ++I)
      M.add(V[I], It->second[I]);
  }
}

// Conservative recovery: children whose label occurs exactly once among the
// unmatched children on both sides are paired, recursively.
void recoverUnique(const TreeView &T1, const TreeView &T2, Node *A, Node *B,
                   MappingStore &M, const MatcherConfig &Cfg) {
  std::map<std::string, std::vector<Node *>> Ls, Rs;
  for (Node *C : A->children)
    if (T1.contains(C) && !M.hasLeft(C))
      Ls[C->type].push_back(C);
  for (Node *C : B->children)
    if (T2.contains(C) && !M.hasRight(C))
      Rs[C->type].push_back(C);
  for (auto &[K, V] : Ls) {
    auto It = Rs.find(K);
    if (V.size() != 1 || It == Rs.end() || It->second.size() != 1)
      continue;
    Node *X = V[0], *Y = It->second[0];
    if (!guardAllows(T1, T2, X, Y, Cfg))
      continue;
    M.add(X, Y);
    recoverUnique(T1, T2, X, Y, M, Cfg);
  }
}

bool bottomUpPass(const TreeView &T1, const TreeView &T2, MappingStore &M,
                  const MatcherConfig &Cfg) {
  bool Greedy = Cfg.bottomUpMode == BottomUpMode::Greedy;
  std::size_t Before = M.size();
  for (Node *A : T1.postorder()) {
    if (A == T1.root() || A->isLeaf() || M.hasLeft(A))
      continue;
    std::set<Node *, decltype(&positionLess)> Cands(positionLess);
    for (Node *D : T1.descendantsOf(A))
      for (Node *P : M.partnersOfLeft(D))
        for (Node *C = T2.parent(P); C && C != T2.root(); C = T2.parent(C))
          if (C->type == A->type && !M.hasRight(C))
            Cands.insert(C);
    Node *Best = nullptr;
    double BestDice = -1;
    for (Node *C : Cands) {
      double D = dice(T1, T2, A, C, M);
      if (D > BestDice) {
        BestDice = D;
        Best = C;
      }
    }
    if (Best && BestDice >= Cfg.diceThreshold) {
      M.add(A, Best);
      if (Greedy)
        recoverLeaves(T1, T2, A, Best, M, Cfg);
      else
        recoverUnique(T1, T2, A, Best, M, Cfg);
    }
  }
  Node *R1 = T1.root(), *R2 = T2.root();
  if (!M.hasLeft(R1) && !M.hasRight(R2) && R1->type == R2->type)
    M.add(R1, R2);
  if (Greedy && M.has(R1, R2))
    recoverLeaves(T1, T2, R1, R2, M, Cfg);
  else if (M.has(R1, R2))
    recoverUnique(T1, T2, R1, R2, M, Cfg);
  return M.size() != Before;
}

} // namespace

void bottomUp(const TreeView &T1, const TreeView &T2, MappingStore &M,
              const MatcherConfig &Cfg) {
  bool Changed = bottomUpPass(T1, T2, M, Cfg);
  // leaves recovered at the root can justify further container matches
  for (int I = 0; Changed && I < 4 && Cfg.bottomUpMode == BottomUpMode::Greedy;
       ++I)
    Changed = bottomUpPass(T1, T2, M, Cfg);
}

MappingStore matchTrees(Node *Left, Node *Right, const MatcherConfig &Cfg) {
  TreeView T1(Left), T2(Right);
  MappingStore M;
  topDown(T1, T2, M, Cfg);
  bottomUp(T1, T2, M, Cfg);
  return M;
}

void fgRelabel(SourceFile &F) {
  for (Node *N : F.nodes())
    if (N->isLeaf() && N->parent)
      N->type = N->parent->type + "-" + N->type;
  annotate(F);
}

void fgRestore(SourceFile &F) {
  for (Node *N : F.nodes()) {
    auto Dash = N->type.rfind('-');
    if (N->isLeaf() && Dash != std::string::npos)
      N->type = N->type.substr(Dash + 1);
  }
  annotate(F);
}

MappingStore matchCommitPerFile(CommitPair &P, const MatcherConfig &Cfg) {
  MappingStore M;
  for (auto &L : P.left.files) {
    SourceFile *R = P.right.find(L->path);
    if (!R)
      continue;
    if (Cfg.fineGrainedLabels) {
      fgRelabel(*L);
      fgRelabel(*R);
    }
    M.merge(matchTrees(L->root, R->root, Cfg));
    if (Cfg.fineGrainedLabels) {
      fgRestore(*L);
      fgRestore(*R);
    }
  }
  return M;
}

namespace {
std::vector<Node *> unmatchedSubtrees(const Snapshot &S, const MappingStore &M,
                                      bool Left) {
  std::vector<Node *> R;
  for (auto &F : S.files)
    for (Node *N : F->nodes()) {
      bool Mapped = Left ? M.hasLeft(N) : M.hasRight(N);
      if (Mapped)
        continue;
      bool ParentMapped = !N->parent || (Left ? M.hasLeft(N->parent)
                                              : M.hasRight(N->parent));
      if (ParentMapped)
        R.push_back(N);
    }
  return R;
}
} // namespace

MappingStore stagedTreeMatch(const CommitPair &P, const MappingStore &PerFile,
                             const MatcherConfig &Cfg) {
  MappingStore Out;
  auto L = unmatchedSubtrees(P.left, PerFile, true);
  auto R = unmatchedSubtrees(P.right, PerFile, false);
  if (L.empty() || R.empty())
    return Out;
  SourceFile HL, HR;
  HL.path = HR.path = "";
  TreeView T1(HL, L), T2(HR, R);
  MatcherConfig C = Cfg;
  C.bottomUpMode = BottomUpMode::Simple;
  MappingStore M;
  topDown(T1, T2, M, C);
  bottomUp(T1, T2, M, C);
  for (auto &[A, B] : M.pairs()) {
    if (A == T1.root() || B == T2.root() || !A->file || !B->file)
      continue;
    if (A->file->path == B->file->path)
      continue;
    if (PerFile.hasLeft(A) || PerFile.hasRight(B))
      continue;
    Out.add(A, B);
  }
  return Out;
}

} // namespace semdiff
