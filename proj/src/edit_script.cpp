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
#include <deque>
#include <set>
#include <stdexcept>

namespace semdiff {

std::string EditAction::str() const {
  switch (kind) {
  case Insert:
    return "insert #" + std::to_string(node) + " " + type + " '" + value +
           "' under #" + std::to_string(parent) + " at " +
           std::to_string(position);
  case Delete:
    return "delete #" + std::to_string(node);
  case Update:
    return "update #" + std::to_string(node) + " to '" + value + "'";
  case Move:
    return "move #" + std::to_string(node) + " under #" +
           std::to_string(parent) + " at " + std::to_string(position);
  }
  return "";
}

namespace {

// Mutable copy of the left tree. Index = action node id; the last left slot
// is a synthetic super root so the real roots can be replaced too.
struct Work {
  struct W {
    std::string type, value;
    std::vector<int> kids;
    int parent = -1;
    bool alive = true;
  };
  std::vector<W> Ns;
  int Super = -1;

  explicit Work(const Node *Left) {
    std::function<int(const Node *, int)> Copy = [&](const Node *N, int P) {
      int Id = static_cast<int>(Ns.size());
      Ns.push_back({N->type, N->value, {}, P, true});
      for (const Node *C : N->children) {
        int K = Copy(C, Id);
        Ns[Id].kids.push_back(K);
      }
      return Id;
    };
    Copy(Left, -1);
    Super = static_cast<int>(Ns.size());
    Ns.push_back({"", "", {0}, -1, true});
    Ns[0].parent = Super;
  }

  void detach(int N) {
    auto &K = Ns[Ns[N].parent].kids;
    K.erase(std::find(K.begin(), K.end(), N));
  }

  void apply(const EditAction &A) {
    switch (A.kind) {
    case EditAction::Insert: {
      if (A.node != static_cast<int>(Ns.size()))
        throw std::logic_error("insert id out of sequence");
      Ns.push_back({A.type, A.value, {}, A.parent, true});
      auto &K = Ns[A.parent].kids;
      K.insert(K.begin() + A.position, A.node);
      break;
    }
    case EditAction::Delete:
      if (!Ns[A.node].kids.empty())
        throw std::logic_error("delete of non-leaf");
      detach(A.node);
      Ns[A.node].alive = false;
      break;
    case EditAction::Update:
      Ns[A.node].value = A.value;
      break;
    case EditAction::Move: {
      detach(A.node);
      Ns[A.node].parent = A.parent;
      auto &K = Ns[A.parent].kids;
      K.insert(K.begin() + A.position, A.node);
      break;
    }
    }
  }

  bool same(int W, const Node *R) const {
    const auto &N = Ns[W];
    if (N.type != R->type || N.value != R->value ||
        N.kids.size() != R->children.size())
      return false;
    for (std::size_t I = 0; I < N.kids.size(); ++I)
      if (!same(N.kids[I], R->children[I]))
        return false;
    return true;
  }

  int indexIn(int Parent, int N) const {
    auto &K = Ns[Parent].kids;
    return static_cast<int>(std::find(K.begin(), K.end(), N) - K.begin());
  }
};

std::vector<int> lcsKeep(const std::vector<int> &A, const std::vector<int> &B) {
  std::size_t N = A.size(), M = B.size();
  std::vector<std::vector<int>> D(N + 1, std::vector<int>(M + 1, 0));
  for (std::size_t I = N; I-- > 0;)
    for (std::size_t J = M; J-- > 0;)
      D[I][J] = A[I] == B[J] ? D[I + 1][J + 1] + 1
                             : std::max(D[I + 1][J], D[I][J + 1]);
  std::vector<int> Keep;
  for (std::size_t I = 0, J = 0; I < N && J < M;) {
    if (A[I] == B[J]) {
      Keep.push_back(A[I]);
      ++I;
      ++J;
    } else if (D[I + 1][J] >= D[I][J + 1]) {
      ++I;
    } else {
      ++J;
    }
  }
  return Keep;
}

} // namespace

EditScript deriveEditScript(Node *Left, Node *Right, const MappingStore &M) {
  EditScript S;
  Work Wk(Left);
  std::unordered_map<const Node *, int> LeftId;
  {
    int I = 0;
    preorder(Left, [&](Node *N) { LeftId[N] = I++; });
  }
  std::set<const Node *> RightIn;
  preorder(Right, [&](Node *N) { RightIn.insert(N); });

  // one-to-one projection
  std::unordered_map<const Node *, int> Partner; // right node -> work id
  preorder(Left, [&](Node *L) {
    auto Ps = M.partnersOfLeft(L);
    if (Ps.size() > 1)
      S.warnings.push_back("multi-mapping of " + describe(L) +
                           " projected to its first pair");
    for (Node *R : Ps) {
      if (!RightIn.count(R) || Partner.count(R) || R->type != L->type)
        continue;
      Partner[R] = LeftId[L];
      break;
    }
  });

  auto Do = [&](EditAction A) {
    Wk.apply(A);
    S.actions.push_back(std::move(A));
  };

  // insert, update and move in breadth-first order of the right tree
  std::deque<const Node *> Q{Right};
  while (!Q.empty()) {
    const Node *X = Q.front();
    Q.pop_front();
    for (const Node *C : X->children)
      Q.push_back(C);
    int Z = X == Right ? Wk.Super : Partner.at(X->parent);
    int Pos = 0;
    if (X != Right) {
      int Idx = X->indexInParent();
      if (Idx > 0) {
        auto Prev = Partner.find(X->parent->children[Idx - 1]);
        if (Prev != Partner.end() && Wk.Ns[Prev->second].parent == Z)
          Pos = Wk.indexIn(Z, Prev->second) + 1;
      }
    }
    auto It = Partner.find(X);
    if (It == Partner.end()) {
      int Id = static_cast<int>(Wk.Ns.size());
      Do({EditAction::Insert, Id, Z, Pos, X->type, X->value});
      Partner[X] = Id;
      continue;
    }
    int W = It->second;
    if (Wk.Ns[W].value != X->value)
      Do({EditAction::Update, W, -1, -1, X->type, X->value});
    if (Wk.Ns[W].parent != Z) {
      Do({EditAction::Move, W, Z, Pos, X->type, X->value});
    }
  }

  std::vector<bool> Keep(Wk.Ns.size(), false);
  Keep[Wk.Super] = true;
  for (auto &[R, W] : Partner)
    Keep[W] = true;
  std::function<void(int)> Purge = [&](int N) {
    auto Kids = Wk.Ns[N].kids;
    for (int C : Kids)
      Purge(C);
    if (!Keep[N])
      Do({EditAction::Delete, N, -1, -1, Wk.Ns[N].type, Wk.Ns[N].value});
  };
  Purge(Wk.Super);

  // align sibling order
  Q.assign({Right});
  while (!Q.empty()) {
    const Node *X = Q.front();
    Q.pop_front();
    std::vector<int> Target;
    for (const Node *C : X->children) {
      Q.push_back(C);
      Target.push_back(Partner.at(C));
    }
    int W = Partner.at(X);
    if (Wk.Ns[W].kids == Target)
      continue;
    auto Kept = lcsKeep(Wk.Ns[W].kids, Target);
    std::set<int> KeptSet(Kept.begin(), Kept.end());
    for (std::size_t I = 0; I < Target.size(); ++I) {
      if (KeptSet.count(Target[I]))
        continue;
      auto K = Wk.Ns[W].kids;
      K.erase(std::find(K.begin(), K.end(), Target[I]));
      int Pos = 0;
      if (I > 0)
        Pos = static_cast<int>(std::find(K.begin(), K.end(), Target[I - 1]) -
                               K.begin()) + 1;
      Do({EditAction::Move, Target[I], W, Pos, "", ""});
    }
  }
  if (!Wk.same(Wk.Ns[Wk.Super].kids.front(), Right))
    throw std::logic_error("edit script derivation did not converge");
  return S;
}

bool replayMatches(const Node *Left, const EditScript &S, const Node *Right) {
  Work Wk(Left);
  try {
    for (const EditAction &A : S.actions)
      Wk.apply(A);
  } catch (const std::exception &) {
    return false;
  }
  auto &Top = Wk.Ns[Wk.Super].kids;
  return Top.size() == 1 && Wk.same(Top.front(), Right);
}

} // namespace semdiff
