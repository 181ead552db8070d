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
#include "semdiff/java.hpp"
#include "semdiff/stmt.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>

namespace semdiff {

Fragment::Fragment(Node *R) : Root(R) {
  semdiff::preorder(Root, [&](Node *N) {
    if (N != Root && isStatement(N)) {
      Stmts.push_back(N);
      (isCompositeStatement(N) ? Composites : Leaves).push_back(N);
    }
    if (N->type == "VariableDeclarationFragment")
      if (Node *Init = N->child(Slot::Initializer))
        if (Node *Name = N->child(Slot::Name))
          Declared.emplace_back(Name->value, Init);
  });
  Lists[Root] = statementChildren(Root);
  for (Node *C : Composites)
    Lists[C] = statementChildren(C);
  for (auto &[Owner, List] : Lists)
    for (std::size_t I = 0; I < List.size(); ++I)
      Info[List[I]] = {const_cast<Node *>(Owner), static_cast<int>(I)};
}

std::vector<Node *> Fragment::parents(const Node *S) const {
  std::vector<Node *> R;
  for (Node *P = S->parent; P && P != Root; P = P->parent)
    if (isCompositeStatement(P))
      R.push_back(P);
  return R;
}

int Fragment::depth(const Node *S) const {
  return static_cast<int>(parents(S).size());
}

int Fragment::index(const Node *S) const {
  auto It = Info.find(S);
  return It == Info.end() ? 0 : It->second.index;
}

const std::vector<Node *> &Fragment::siblings(const Node *S) const {
  static const std::vector<Node *> None;
  auto It = Info.find(S);
  if (It == Info.end())
    return None;
  return Lists.at(It->second.container);
}

std::string Fragment::firstNonBlockParentType(const Node *S) const {
  Node *P = S->parent;
  while (P && P->type == "Block")
    P = P->parent;
  return P ? P->type : "";
}

std::vector<Node *> Fragment::nested(const Node *C) const {
  std::vector<Node *> R;
  for (Node *S : Stmts)
    if (S->id > C->id && S->id < C->id + C->size)
      R.push_back(S);
  return R;
}

int RankFeatures::parentEditDistanceSum() const {
  int S = 0;
  for (int D : parentEditDistance)
    S += D;
  return S;
}

int RankFeatures::directParentEditDistance() const {
  return parentEditDistance.empty() ? 0 : parentEditDistance.front();
}

namespace {

// applicable when the condition holds for one side only
int rule(bool A, bool B) {
  if (A && !B)
    return -1;
  if (B && !A)
    return 1;
  return 0;
}

bool sameSpot(const RankFeatures &F) {
  return F.depthDiff() == 0 && F.indexLeft == F.indexRight &&
         F.parentTypeLeft == F.parentTypeRight;
}

} // namespace

int compareLeaf(const RankFeatures &A, const RankFeatures &B) {
  int R;
  if (A.multiSize > 0 && B.multiSize > 0) {
    if ((R = rule(A.multiSize > B.multiSize, B.multiSize > A.multiSize)))
      return R;
  } else if ((R = rule(A.multiSize > 0, B.multiSize > 0))) {
    return R;
  }
  int PA = A.parentEditDistanceSum(), PB = B.parentEditDistanceSum();
  if (A.editDistance != B.editDistance) {
    if ((R = rule(A.undoVariable, B.undoVariable)))
      return R;
    if ((R = rule(A.neighboursIdentical, B.neighboursIdentical)))
      return R;
    if ((R = rule(sameSpot(A), sameSpot(B))))
      return R;
    if (A.depth() > 2 && B.depth() > 2 && (R = rule(PA < PB, PB < PA)))
      return R;
    return rule(A.editDistance < B.editDistance,
                B.editDistance < A.editDistance);
  }
  if (A.depth() == B.depth() && (R = rule(PA == 0 && PB > 0, PB == 0 && PA > 0)))
    return R;
  if (A.depth() != B.depth() && (R = rule(PA < PB, PB < PA)))
    return R;
  if ((R = rule(A.depthDiff() < B.depthDiff(), B.depthDiff() < A.depthDiff())))
    return R;
  if ((R = rule(A.indexDiff() < B.indexDiff(), B.indexDiff() < A.indexDiff())))
    return R;
  int DA = A.directParentEditDistance(), DB = B.directParentEditDistance();
  return rule(DA < DB, DB < DA);
}

int compareComposite(const RankFeatures &A, const RankFeatures &B) {
  int R;
  if ((R = rule(A.childMatchRatio >= 2 * B.childMatchRatio,
                B.childMatchRatio >= 2 * A.childMatchRatio)))
    return R;
  if (A.editDistance != B.editDistance) {
    if ((R = rule(A.undoVariable, B.undoVariable)))
      return R;
    return rule(A.editDistance < B.editDistance,
                B.editDistance < A.editDistance);
  }
  if ((R = rule(A.identicalCompositeChildren > B.identicalCompositeChildren,
                B.identicalCompositeChildren > A.identicalCompositeChildren)))
    return R;
  if ((R = rule(A.childMatchRatio > B.childMatchRatio,
                B.childMatchRatio > A.childMatchRatio)))
    return R;
  if ((R = rule(A.depthDiff() < B.depthDiff(), B.depthDiff() < A.depthDiff())))
    return R;
  return rule(A.indexDiff() < B.indexDiff(), B.indexDiff() < A.indexDiff());
}

namespace {

bool under(const Node *D, const Node *A) {
  return D->file == A->file && D->id > A->id && D->id < A->id + A->size;
}

// Branch of S inside the conditional rooted at C, or -1.
int branchOf(const Node *C, const Node *S) {
  if (C->type == "SwitchStatement") {
    if (!under(S, C))
      return -1;
    int Branch = -1;
    for (const Node *K : C->children) {
      if (K->type == "SwitchCase")
        ++Branch;
      else if (K == S || under(S, K))
        return Branch;
    }
    return -1;
  }
  int Branch = 0;
  for (const Node *I = C; I;) {
    const Node *Then = I->child(Slot::Then), *Else = I->child(Slot::Else);
    if (Then && (Then == S || under(S, Then)))
      return Branch;
    if (!Else)
      return -1;
    ++Branch;
    if (Else->type == "IfStatement") {
      I = Else;
      continue;
    }
    return Else == S || under(S, Else) ? Branch : -1;
  }
  return -1;
}

bool chainRoot(const Node *N) {
  if (N->type == "SwitchStatement")
    return true;
  return N->type == "IfStatement" &&
         !(N->parent && N->parent->type == "IfStatement" &&
           N->slot == Slot::Else);
}

} // namespace

bool detectConditionalMulti(const Fragment &SharedSide, const Node *Shared,
                            const Fragment &OtherSide,
                            const std::vector<Node *> &Others) {
  if (Others.size() < 2)
    return false;
  int SharedDepth = SharedSide.depth(Shared);
  for (const Node *O : Others)
    if (SharedDepth >= OtherSide.depth(O))
      return false;
  for (const Node *C : OtherSide.parents(Others.front())) {
    if (!chainRoot(C))
      continue;
    std::set<int> Seen;
    bool Ok = true;
    for (const Node *O : Others) {
      int B = branchOf(C, O);
      if (B < 0 || !Seen.insert(B).second) {
        Ok = false;
        break;
      }
    }
    if (Ok)
      return true;
  }
  return false;
}

bool isoStructural(const Fragment &L, const Fragment &R) {
  std::function<std::string(const Fragment &, const Node *)> Skel =
      [&](const Fragment &F, const Node *C) {
        std::string S;
        for (const Node *K : statementChildren(C))
          S += isCompositeStatement(K) ? K->type + "(" + Skel(F, K) + ")" : "L";
        return S;
      };
  return Skel(L, L.root()) == Skel(R, R.root());
}

int MapperResult::matchedLeaves() const {
  int N = 0;
  for (const StatementMapping &M : mappings)
    N += M.isLeaf;
  return N;
}

namespace {

class Mapper {
public:
  Mapper(const Fragment &L, const Fragment &R, const MapperOptions &O)
      : L(L), R(R), Opt(O), Group(O.firstMultiGroup) {
    auto Collect = [](const Fragment &F, const std::vector<Node *> &Scope,
                      const std::set<const Node *> &Excl) {
      std::vector<Node *> Out;
      std::set<const Node *> In(Scope.begin(), Scope.end());
      for (Node *S : F.statements())
        if ((Scope.empty() || In.count(S)) && !Excl.count(S))
          Out.push_back(S);
      return Out;
    };
    LS = Collect(L, Opt.leftScope, Opt.excludedLeft);
    RS = Collect(R, Opt.rightScope, Opt.excludedRight);
  }

  MapperResult run() {
    MapperResult Res;
    std::vector<Node *> LL, RL, LC, RC;
    for (Node *S : LS)
      (isCompositeStatement(S) ? LC : LL).push_back(S);
    for (Node *S : RS)
      (isCompositeStatement(S) ? RC : RL).push_back(S);

    bool Whole = Opt.leftScope.empty() && Opt.rightScope.empty() &&
                 Opt.excludedLeft.empty() && Opt.excludedRight.empty();
    if (Whole && isoStructural(L, R)) {
      for (std::size_t I = 0; I < LL.size() && I < RL.size(); ++I)
        if (statementText(LL[I]) == statementText(RL[I])) {
          commit(LL[I], RL[I], {}, -1);
          ++Res.round1;
        }
    }
    std::size_t Before = Maps.size();
    round(LL, RL, [&](Node *A, Node *B, std::vector<Replacement> &) {
      return A->type == B->type && text(A) == text(B);
    }, true);
    Res.round2 = static_cast<int>(Maps.size() - Before);
    Before = Maps.size();
    round(LL, RL, [&](Node *A, Node *B, std::vector<Replacement> &Rs) {
      if (A->type != B->type || text(A) == text(B))
        return false;
      return replaced(A, B, Rs);
    }, true);
    Res.round3 = static_cast<int>(Maps.size() - Before);

    // composites deepest first so nested pairs are available to parents
    auto Post = [](std::vector<Node *> V) {
      std::stable_sort(V.begin(), V.end(), [](Node *A, Node *B) {
        return A->postId < B->postId;
      });
      return V;
    };
    LC = Post(LC);
    RC = Post(RC);
    round(LC, RC, [&](Node *A, Node *B, std::vector<Replacement> &) {
      return A->type == B->type && text(A) == text(B) && nestedPairs(A, B) > 0;
    }, false);
    round(LC, RC, [&](Node *A, Node *B, std::vector<Replacement> &Rs) {
      if (A->type != B->type)
        return false;
      if (nestedPairs(A, B) == 0 &&
          !(L.nested(A).empty() && R.nested(B).empty()))
        return false;
      return replaced(A, B, Rs);
    }, false);
    // identical headers whose children all moved elsewhere: only when the
    // pairing is unambiguous on both sides
    auto Same = [&](Node *A, Node *B) {
      return A->type == B->type && text(A) == text(B);
    };
    for (Node *A : LC) {
      if (ML.count(A))
        continue;
      std::vector<Node *> Bs;
      for (Node *B : RC)
        if (Same(A, B))
          Bs.push_back(B);
      if (Bs.size() != 1 || MR.count(Bs.front()))
        continue;
      int Lefts = 0;
      for (Node *X : LC)
        Lefts += Same(X, Bs.front());
      if (Lefts == 1)
        commit(A, Bs.front(), {}, -1);
    }

    std::sort(Maps.begin(), Maps.end(),
              [](const StatementMapping &A, const StatementMapping &B) {
                if (A.left != B.left)
                  return A.left->id < B.left->id;
                return A.right->id < B.right->id;
              });
    Res.mappings = Maps;
    for (Node *S : LS)
      if (!ML.count(S))
        Res.unmatchedLeft.push_back(S);
    for (Node *S : RS)
      if (!MR.count(S))
        Res.unmatchedRight.push_back(S);
    Res.multiGroups = Group - Opt.firstMultiGroup;
    return Res;
  }

private:
  using Pred =
      std::function<bool(Node *, Node *, std::vector<Replacement> &)>;

  const std::string &text(const Node *S) {
    auto It = Texts.find(S);
    if (It == Texts.end())
      It = Texts.emplace(S, statementText(S)).first;
    return It->second;
  }

  bool replaced(Node *A, Node *B, std::vector<Replacement> &Rs) {
    auto Key = std::make_pair(A, B);
    auto It = Cache.find(Key);
    if (It == Cache.end())
      It = Cache.emplace(Key, replaceAndCompare(A, B)).first;
    if (!It->second)
      return false;
    Rs = *It->second;
    return true;
  }

  int nestedPairs(const Node *A, const Node *B) const {
    int N = 0;
    for (const StatementMapping &M : Maps)
      if (under(M.left, A) && under(M.right, B))
        ++N;
    return N;
  }

  void commit(Node *A, Node *B, std::vector<Replacement> Rs, int G) {
    StatementMapping M = makeMapping(A, B, std::move(Rs));
    M.multiGroup = G;
    ML.insert(A);
    MR.insert(B);
    Maps.push_back(std::move(M));
  }

  bool undoesVariable(const Node *A, const Node *B) {
    auto Try = [&](const Fragment &F, const Node *Using, const std::string &Target) {
      for (auto &[Name, Init] : F.declaredVariables()) {
        if (under(Init, Using))
          continue;
        Replacement Rp{Name, printFull(Init), ReplacementKind::VariableRename};
        std::string T = applyReplacements(text(Using), {Rp});
        if (T != text(Using) && T == Target)
          return true;
      }
      return false;
    };
    return Try(R, B, text(A)) || Try(L, A, text(B));
  }

  bool neighbours(const Node *A, const Node *B) {
    const auto &SA = L.siblings(A), &SB = R.siblings(B);
    int IA = L.index(A), IB = R.index(B);
    auto At = [](const std::vector<Node *> &V, int I) -> const Node * {
      return I >= 0 && I < static_cast<int>(V.size()) ? V[I] : nullptr;
    };
    int Present = 0;
    for (int D : {-1, 1}) {
      const Node *X = At(SA, IA + D), *Y = At(SB, IB + D);
      if (!X && !Y)
        continue;
      if (!X || !Y || text(X) != text(Y))
        return false;
      ++Present;
    }
    return Present > 0;
  }

  RankFeatures features(Node *A, Node *B, bool Leaf) {
    RankFeatures F;
    F.editDistance = levenshtein(text(A), text(B));
    F.undoVariable = F.editDistance > 0 && undoesVariable(A, B);
    F.depthLeft = L.depth(A);
    F.depthRight = R.depth(B);
    F.indexLeft = L.index(A);
    F.indexRight = R.index(B);
    F.parentTypeLeft = L.firstNonBlockParentType(A);
    F.parentTypeRight = R.firstNonBlockParentType(B);
    auto PA = L.parents(A), PB = R.parents(B);
    for (std::size_t I = 0; I < std::min(PA.size(), PB.size()); ++I)
      F.parentEditDistance.push_back(levenshtein(text(PA[I]), text(PB[I])));
    if (Leaf) {
      F.neighboursIdentical = neighbours(A, B);
      return F;
    }
    auto NA = L.nested(A), NB = R.nested(B);
    std::size_t Den = std::max(NA.size(), NB.size());
    int Pairs = 0;
    for (const StatementMapping &M : Maps)
      if (under(M.left, A) && under(M.right, B)) {
        ++Pairs;
        if (!M.isLeaf && M.editDistance == 0)
          ++F.identicalCompositeChildren;
      }
    F.childMatchRatio = Den ? static_cast<double>(Pairs) / Den : 0.0;
    return F;
  }

  // Index of the preferred pair: most pairwise wins, then source order.
  std::size_t best(const std::vector<std::pair<Node *, Node *>> &Cs, bool Leaf,
                   bool VaryRight) {
    if (Cs.size() == 1)
      return 0;
    std::vector<RankFeatures> Fs;
    for (auto &[A, B] : Cs)
      Fs.push_back(features(A, B, Leaf));
    std::size_t Best = 0;
    int BestWins = -1;
    for (std::size_t I = 0; I < Cs.size(); ++I) {
      int Wins = 0;
      for (std::size_t J = 0; J < Cs.size(); ++J)
        if (I != J)
          Wins += (Leaf ? compareLeaf(Fs[I], Fs[J])
                        : compareComposite(Fs[I], Fs[J])) < 0;
      const Node *X = VaryRight ? Cs[I].second : Cs[I].first;
      const Node *Y = VaryRight ? Cs[Best].second : Cs[Best].first;
      if (Wins > BestWins || (Wins == BestWins && X->id < Y->id)) {
        Best = I;
        BestWins = Wins;
      }
    }
    return Best;
  }

  void round(const std::vector<Node *> &Ls, const std::vector<Node *> &Rs,
             const Pred &P, bool Leaf) {
    std::vector<Replacement> Scratch;
    auto RightsOf = [&](Node *A) {
      std::vector<Node *> V;
      for (Node *B : Rs)
        if (!MR.count(B) && P(A, B, Scratch))
          V.push_back(B);
      return V;
    };
    auto LeftsOf = [&](Node *B) {
      std::vector<Node *> V;
      for (Node *A : Ls)
        if (!ML.count(A) && P(A, B, Scratch))
          V.push_back(A);
      return V;
    };
    auto Commit = [&](Node *A, Node *B, int G) {
      std::vector<Replacement> Reps;
      P(A, B, Reps);
      commit(A, B, std::move(Reps), G);
    };
    // keep-all candidates for statements merged out of or into conditionals
    for (Node *B : Rs) {
      if (MR.count(B))
        continue;
      auto As = LeftsOf(B);
      if (As.size() >= 2 && detectConditionalMulti(R, B, L, As)) {
        int G = Group++;
        for (Node *A : As)
          Commit(A, B, G);
      }
    }
    for (Node *A : Ls) {
      if (ML.count(A))
        continue;
      auto Bs = RightsOf(A);
      if (Bs.size() >= 2 && detectConditionalMulti(L, A, R, Bs)) {
        int G = Group++;
        for (Node *B : Bs)
          Commit(A, B, G);
      }
    }
    for (Node *A : Ls) {
      while (!ML.count(A)) {
        auto Bs = RightsOf(A);
        if (Bs.empty())
          break;
        std::vector<std::pair<Node *, Node *>> Cs;
        for (Node *B : Bs)
          Cs.emplace_back(A, B);
        Node *B = Cs[best(Cs, Leaf, true)].second;
        auto As = LeftsOf(B);
        Cs.clear();
        for (Node *X : As)
          Cs.emplace_back(X, B);
        Node *Winner = Cs[best(Cs, Leaf, false)].first;
        Commit(Winner, B, -1);
      }
    }
  }

  const Fragment &L, &R;
  const MapperOptions &Opt;
  int Group;
  std::vector<Node *> LS, RS;
  std::vector<StatementMapping> Maps;
  std::set<const Node *> ML, MR;
  std::unordered_map<const Node *, std::string> Texts;
  std::map<std::pair<Node *, Node *>,
           std::optional<std::vector<Replacement>>>
      Cache;
};

} // namespace

MapperResult mapStatements(const Fragment &L, const Fragment &R,
                           const MapperOptions &Opt) {
  return Mapper(L, R, Opt).run();
}

} // namespace semdiff

namespace semdiff {

std::vector<MapperResult>
mapByCallSites(const Fragment &Origin, const std::vector<Node *> &Candidates,
               const Fragment &OriginPeer,
               const std::vector<StatementMapping> &OriginMappings,
               const std::vector<Node *> &CallSites, const Fragment &Moved,
               bool OriginIsLeft, int FirstMultiGroup) {
  std::vector<MapperResult> Out;
  std::set<const Node *> Claimed;
  int Group = FirstMultiGroup;
  auto Run = [&](const std::vector<Node *> &Scope) {
    MapperOptions O;
    O.firstMultiGroup = Group;
    std::vector<Node *> Full = Moved.statements();
    if (Full.empty())
      Full.push_back(Moved.root()); // keeps the scope restriction active
    (OriginIsLeft ? O.leftScope : O.rightScope) = Scope;
    (OriginIsLeft ? O.rightScope : O.leftScope) = Full;
    if (Scope.empty())
      (OriginIsLeft ? O.excludedLeft : O.excludedRight) =
          std::set<const Node *>(Origin.statements().begin(),
                                 Origin.statements().end());
    MapperResult R = OriginIsLeft ? mapStatements(Origin, Moved, O)
                                  : mapStatements(Moved, Origin, O);
    Group += R.multiGroups;
    return R;
  };
  for (Node *Site : CallSites) {
    std::vector<Node *> Parents = OriginPeer.parents(Site);
    std::vector<Node *> Scope;
    if (!Parents.empty() && CallSites.size() > 1) {
      const Node *Partner = nullptr;
      for (const StatementMapping &M : OriginMappings) {
        const Node *Peer = OriginIsLeft ? M.right : M.left;
        if (Peer == Parents.front())
          Partner = OriginIsLeft ? M.left : M.right;
      }
      for (Node *S : Candidates)
        if (!Partner || under(S, Partner))
          Scope.push_back(S);
      Out.push_back(Run(Scope));
      continue;
    }
    for (Node *S : Candidates)
      if (!Claimed.count(S))
        Scope.push_back(S);
    MapperResult R = Run(Scope);
    if (CallSites.size() > 1) {
      // claim the region between the first and last identical mapping, or
      // between the first and last mapping when none is identical
      int First = -1, Last = -1;
      bool AnyIdentical = false;
      for (const StatementMapping &M : R.mappings)
        AnyIdentical |= M.editDistance == 0;
      for (const StatementMapping &M : R.mappings) {
        if (AnyIdentical && M.editDistance != 0)
          continue;
        const Node *S = OriginIsLeft ? M.left : M.right;
        First = First < 0 ? S->id : std::min(First, S->id);
        Last = std::max(Last, S->id + S->size - 1);
      }
      for (Node *S : Scope)
        if (First >= 0 && S->id >= First && S->id <= Last)
          Claimed.insert(S);
    }
    Out.push_back(std::move(R));
  }
  return Out;
}

std::vector<std::size_t>
optimizeDuplicates(const std::vector<DuplicateCandidate> &Group) {
  std::vector<std::size_t> Keep;
  for (std::size_t I = 0; I < Group.size(); ++I)
    Keep.push_back(I);
  // drops the candidates failing Ok, unless that would drop all of them
  auto Apply = [&](const std::function<bool(const DuplicateCandidate &)> &Ok) {
    std::vector<std::size_t> Next;
    for (std::size_t I : Keep)
      if (Ok(Group[I]))
        Next.push_back(I);
    if (!Next.empty())
      Keep = Next;
  };
  Apply([](const DuplicateCandidate &C) { return !C.callsMovedMethod; });
  Apply([](const DuplicateCandidate &C) { return C.parentMapped; });
  Apply([](const DuplicateCandidate &C) { return !C.nested; });
  Apply([](const DuplicateCandidate &C) {
    return C.mapping.replacements.empty() && C.mapping.editDistance == 0;
  });
  int Min = INT_MAX;
  for (std::size_t I : Keep)
    Min = std::min(Min, Group[I].mapping.editDistance);
  Apply([&](const DuplicateCandidate &C) {
    return C.mapping.editDistance == Min;
  });
  return Keep;
}

} // namespace semdiff
