#pragma once

// Independent reference implementations used to check the library. None of
// them share code with src/: no hashes, no indexes, plain recursion.

#include "semdiff/ast.hpp"
#include "semdiff/stmt.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using semdiff::Node;

inline int height(const Node *N) {
  int H = 0;
  for (const Node *C : N->children)
    H = std::max(H, height(C));
  return H + 1;
}

inline bool same(const Node *A, const Node *B) {
  if (A->type != B->type || A->value != B->value ||
      A->children.size() != B->children.size())
    return false;
  for (std::size_t I = 0; I < A->children.size(); ++I)
    if (!same(A->children[I], B->children[I]))
      return false;
  return true;
}

inline void pre(const Node *N, std::vector<const Node *> &Out) {
  Out.push_back(N);
  for (const Node *C : N->children)
    pre(C, Out);
}

inline bool under(const Node *D, const Node *A) {
  for (const Node *P = D->parent; P; P = P->parent)
    if (P == A)
      return true;
  return false;
}

using PairSet = std::set<std::pair<const Node *, const Node *>>;

// Top-down matching written from its declarative definition:
//  - a node is open if it is a root, or its parent is open, has height at
//    least minHeight and has no isomorphic open partner of equal height;
//  - open pairs that are mutually unique partners are mapped with their
//    subtrees; the rest are resolved by parent dice, then position.
inline PairSet bruteTopDown(const Node *R1, const Node *R2, int MinHeight,
                            bool Guard) {
  std::vector<const Node *> N1, N2;
  pre(R1, N1);
  pre(R2, N2);
  auto Pos1 = [&](const Node *N) {
    return std::find(N1.begin(), N1.end(), N) - N1.begin();
  };
  auto Pos2 = [&](const Node *N) {
    return std::find(N2.begin(), N2.end(), N) - N2.begin();
  };
  auto GuardOk = [&](const Node *A, const Node *B) {
    if (!Guard || A->type != "SimpleName")
      return true;
    if (!A->parent || !B->parent)
      return A->parent == B->parent;
    return A->parent->type == B->parent->type;
  };
  std::map<const Node *, int> Open1, Open2; // -1 unknown, 0/1
  std::function<bool(const Node *, bool)> IsOpen;
  std::function<std::vector<const Node *>(const Node *, bool)> Partners =
      [&](const Node *X, bool Left) {
        std::vector<const Node *> R;
        if (height(X) < MinHeight || !IsOpen(X, Left))
          return R;
        for (const Node *Y : Left ? N2 : N1) {
          if (height(Y) != height(X) || !IsOpen(Y, !Left))
            continue;
          bool Iso = same(X, Y) && (Left ? GuardOk(X, Y) : GuardOk(Y, X));
          if (Iso)
            R.push_back(Y);
        }
        return R;
      };
  IsOpen = [&](const Node *X, bool Left) -> bool {
    auto &Memo = Left ? Open1 : Open2;
    auto It = Memo.find(X);
    if (It != Memo.end())
      return It->second;
    bool R;
    if (X == (Left ? R1 : R2))
      R = true;
    else {
      const Node *P = X->parent;
      R = height(P) >= MinHeight && IsOpen(P, Left) && Partners(P, Left).empty();
    }
    Memo[X] = R;
    return R;
  };

  PairSet M;
  std::set<const Node *> Used1, Used2;
  auto MapSub = [&](const Node *A, const Node *B) {
    std::vector<const Node *> DA, DB;
    pre(A, DA);
    pre(B, DB);
    for (std::size_t I = 0; I < DA.size(); ++I) {
      M.insert({DA[I], DB[I]});
      Used1.insert(DA[I]);
      Used2.insert(DB[I]);
    }
  };
  std::vector<std::pair<const Node *, const Node *>> Amb;
  for (const Node *A : N1) {
    auto PA = Partners(A, true);
    for (const Node *B : PA) {
      auto PB = Partners(B, false);
      if (PA.size() == 1 && PB.size() == 1)
        MapSub(A, B);
      else
        Amb.emplace_back(A, B);
    }
  }
  auto Dice = [&](const Node *A, const Node *B) {
    if (!A || !B)
      return 0.0;
    std::vector<const Node *> DA, DB;
    pre(A, DA);
    pre(B, DB);
    int Common = 0;
    for (std::size_t I = 1; I < DA.size(); ++I)
      for (auto &[L, R] : M)
        if (L == DA[I] && under(R, B)) {
          ++Common;
          break;
        }
    int Den = static_cast<int>(DA.size() + DB.size()) - 2;
    return Den ? 2.0 * Common / Den : 0.0;
  };
  struct C {
    const Node *A, *B;
    double D;
  };
  std::vector<C> Cs;
  for (auto [A, B] : Amb)
    Cs.push_back({A, B, Dice(A->parent, B->parent)});
  std::stable_sort(Cs.begin(), Cs.end(), [&](const C &X, const C &Y) {
    if (X.D != Y.D)
      return X.D > Y.D;
    if (X.A != Y.A)
      return Pos1(X.A) < Pos1(Y.A);
    return Pos2(X.B) < Pos2(Y.B);
  });
  for (const C &X : Cs)
    if (!Used1.count(X.A) && !Used2.count(X.B))
      MapSub(X.A, X.B);
  return M;
}

// Textbook dynamic-programming Levenshtein distance.
inline int levenshtein(const std::string &A, const std::string &B) {
  std::vector<std::vector<int>> D(A.size() + 1,
                                  std::vector<int>(B.size() + 1));
  for (std::size_t I = 0; I <= A.size(); ++I)
    D[I][0] = static_cast<int>(I);
  for (std::size_t J = 0; J <= B.size(); ++J)
    D[0][J] = static_cast<int>(J);
  for (std::size_t I = 1; I <= A.size(); ++I)
    for (std::size_t J = 1; J <= B.size(); ++J)
      D[I][J] = std::min({D[I - 1][J] + 1, D[I][J - 1] + 1,
                          D[I - 1][J - 1] + (A[I - 1] != B[J - 1])});
  return D[A.size()][B.size()];
}

// The sorting ladders transcribed rule by rule. A rule decides when its
// condition holds for exactly one of the two mappings.
struct Ladder {
  using F = semdiff::RankFeatures;
  struct Rule {
    std::function<bool(const F &, const F &)> guard; // both orders must agree
    std::function<bool(const F &, const F &)> holds; // for the first argument
  };
  std::vector<Rule> rules;

  int operator()(const F &A, const F &B) const {
    for (const Rule &R : rules) {
      if (R.guard && !R.guard(A, B))
        continue;
      bool HA = R.holds(A, B), HB = R.holds(B, A);
      if (HA != HB)
        return HA ? -1 : 1;
    }
    return 0;
  }
};

inline int depthOf(const semdiff::RankFeatures &M) {
  return M.depthLeft < M.depthRight ? M.depthLeft : M.depthRight;
}
inline int absDiff(int A, int B) { return A > B ? A - B : B - A; }
inline int pedSum(const semdiff::RankFeatures &M) {
  int S = 0;
  for (int I = 0; I < depthOf(M) && I < (int)M.parentEditDistance.size(); ++I)
    S += M.parentEditDistance[I];
  return S;
}
inline int directPed(const semdiff::RankFeatures &M) {
  return depthOf(M) >= 1 && !M.parentEditDistance.empty()
             ? M.parentEditDistance[0]
             : 0;
}

inline Ladder leafLadder() {
  using F = semdiff::RankFeatures;
  auto EdDiffer = [](const F &A, const F &B) { return A.editDistance != B.editDistance; };
  auto EdEqual = [](const F &A, const F &B) { return A.editDistance == B.editDistance; };
  Ladder L;
  L.rules.push_back({nullptr, [](const F &A, const F &B) {
                       return A.multiSize > 0 &&
                              (B.multiSize == 0 || A.multiSize > B.multiSize);
                     }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &) { return A.undoVariable; }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &) { return A.neighboursIdentical; }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &) {
                       return A.depthLeft == A.depthRight &&
                              A.indexLeft == A.indexRight &&
                              A.parentTypeLeft == A.parentTypeRight;
                     }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &B) {
                       return depthOf(A) > 2 && depthOf(B) > 2 && pedSum(A) < pedSum(B);
                     }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &B) {
                       return A.editDistance < B.editDistance;
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return depthOf(A) == depthOf(B) && pedSum(A) == 0 && pedSum(B) > 0;
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return depthOf(A) != depthOf(B) && pedSum(A) < pedSum(B);
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return absDiff(A.depthLeft, A.depthRight) <
                              absDiff(B.depthLeft, B.depthRight);
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return absDiff(A.indexLeft, A.indexRight) <
                              absDiff(B.indexLeft, B.indexRight);
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return directPed(A) < directPed(B);
                     }});
  return L;
}

inline Ladder compositeLadder() {
  using F = semdiff::RankFeatures;
  auto EdDiffer = [](const F &A, const F &B) { return A.editDistance != B.editDistance; };
  auto EdEqual = [](const F &A, const F &B) { return A.editDistance == B.editDistance; };
  Ladder L;
  L.rules.push_back({nullptr, [](const F &A, const F &B) {
                       return A.childMatchRatio >= 2 * B.childMatchRatio;
                     }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &) { return A.undoVariable; }});
  L.rules.push_back({EdDiffer, [](const F &A, const F &B) {
                       return A.editDistance < B.editDistance;
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return A.identicalCompositeChildren > B.identicalCompositeChildren;
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return A.childMatchRatio > B.childMatchRatio;
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return absDiff(A.depthLeft, A.depthRight) <
                              absDiff(B.depthLeft, B.depthRight);
                     }});
  L.rules.push_back({EdEqual, [](const F &A, const F &B) {
                       return absDiff(A.indexLeft, A.indexRight) <
                              absDiff(B.indexLeft, B.indexRight);
                     }});
  return L;
}

// Classic longest-common-subsequence line diff: lines outside the LCS count
// as removed (left) or added (right); a removed and an added line at the same
// gap are paired as one modification.
struct LineDiff {
  int removed = 0, added = 0, modified = 0;
};

inline std::vector<std::string> lines(const std::string &Text) {
  std::vector<std::string> R;
  std::string Cur;
  for (char C : Text) {
    if (C == '\n') {
      R.push_back(Cur);
      Cur.clear();
    } else {
      Cur += C;
    }
  }
  if (!Cur.empty())
    R.push_back(Cur);
  return R;
}

inline LineDiff lineDiff(const std::string &A, const std::string &B) {
  auto X = lines(A), Y = lines(B);
  std::size_t N = X.size(), M = Y.size();
  std::vector<std::vector<int>> D(N + 1, std::vector<int>(M + 1, 0));
  for (std::size_t I = 1; I <= N; ++I)
    for (std::size_t J = 1; J <= M; ++J)
      D[I][J] = X[I - 1] == Y[J - 1] ? D[I - 1][J - 1] + 1
                                     : std::max(D[I - 1][J], D[I][J - 1]);
  // walk back collecting gap sizes between matched lines
  std::vector<std::pair<int, int>> Gaps;
  int GL = 0, GR = 0;
  for (std::size_t I = N, J = M; I > 0 || J > 0;) {
    if (I > 0 && J > 0 && X[I - 1] == Y[J - 1] && D[I][J] == D[I - 1][J - 1] + 1) {
      Gaps.emplace_back(GL, GR);
      GL = GR = 0;
      --I;
      --J;
    } else if (J > 0 && (I == 0 || D[I][J - 1] >= D[I - 1][J])) {
      ++GR;
      --J;
    } else {
      ++GL;
      --I;
    }
  }
  Gaps.emplace_back(GL, GR);
  LineDiff R;
  for (auto [L, Rr] : Gaps) {
    int Mod = std::min(L, Rr);
    R.modified += Mod;
    R.removed += L - Mod;
    R.added += Rr - Mod;
  }
  return R;
}

} // namespace oracle
