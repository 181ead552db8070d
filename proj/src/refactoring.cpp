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
#include "semdiff/refactor.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace semdiff {

namespace {

Node *bodyOf(const Node *D) { return D ? D->child(Slot::Body) : nullptr; }

std::string simpleName(const Node *D) {
  const Node *Id = D->child(Slot::Name);
  return Id ? Id->value : "";
}

std::size_t arityOf(const Node *Call) {
  return Call->childrenIn(Slot::Argument).size();
}

bool headerChild(const Node *C) {
  return C->type != "Block" && !isStatement(C);
}

std::vector<Node *> invocations(const Node *S) {
  std::vector<Node *> Out;
  auto Scan = [&](Node *Root) {
    preorder(Root, [&](Node *N) {
      if (N->type == "MethodInvocation")
        Out.push_back(N);
    });
  };
  if (isCompositeStatement(S)) {
    for (Node *C : S->children)
      if (headerChild(C))
        Scan(C);
  } else {
    Scan(const_cast<Node *>(S));
  }
  return Out;
}

bool selfCall(const Node *Call) {
  const Node *Recv = Call->child(Slot::Receiver);
  return !Recv || Recv->type == "ThisExpression";
}

MappingTag moveTag(const Node *A, const Node *B) {
  return A->file && B->file && A->file->path != B->file->path
             ? MappingTag::InterFileMove
             : MappingTag::IntraFileMove;
}

// Added (or removed) method a call resolves to, by name and arity. Calls
// without a receiver prefer the caller's own type.
Node *resolve(const Node *Call, const std::vector<Node *> &Methods,
              const Node *CallerType, const Node *Exclude) {
  const Node *Name = Call->child(Slot::Name);
  if (!Name)
    return nullptr;
  Node *Other = nullptr;
  for (Node *M : Methods) {
    if (M == Exclude || M->constructor || !bodyOf(M) ||
        simpleName(M) != Name->value ||
        M->childrenIn(Slot::Parameter).size() != arityOf(Call))
      continue;
    if (enclosingType(M) == CallerType)
      return selfCall(Call) ? M : nullptr;
    if (!Other)
      Other = M;
  }
  return selfCall(Call) && Other && !enclosingType(Other) ? Other
         : selfCall(Call)                                 ? nullptr
                                                          : Other;
}

bool containsCall(const Node *S, const Node *Method) {
  for (const Node *C : invocations(S)) {
    const Node *Name = C->child(Slot::Name);
    if (Name && Name->value == simpleName(Method) &&
        arityOf(C) == Method->childrenIn(Slot::Parameter).size())
      return true;
  }
  return false;
}

Node *callTo(const Node *Site, const Node *Method) {
  for (Node *C : invocations(Site)) {
    const Node *Name = C->child(Slot::Name);
    if (Name && Name->value == simpleName(Method) &&
        arityOf(C) == Method->childrenIn(Slot::Parameter).size())
      return C;
  }
  return nullptr;
}

bool hasMapping(const std::vector<StatementMapping> &Ms, const Node *A,
                const Node *B) {
  for (const StatementMapping &M : Ms)
    if (M.left == A && M.right == B)
      return true;
  return false;
}

// Parent composites of a mapping's statements are mapped to each other, or
// the moved-side statement sits at the top of its method body.
bool parentMapped(const Fragment &L, const Fragment &R, const StatementMapping &M,
                  const std::vector<StatementMapping> &Context, bool MovedIsRight) {
  auto PL = L.parents(M.left), PR = R.parents(M.right);
  const Node *A = PL.empty() ? nullptr : PL.front();
  const Node *B = PR.empty() ? nullptr : PR.front();
  if (MovedIsRight ? !B : !A)
    return true;
  if (!A || !B)
    return false;
  return hasMapping(Context, A, B);
}

struct MoveSpec {
  bool extract = true;  // false: inline
  Node *method = nullptr; // extracted (right) or inlined (left) method
  std::vector<Node *> sites;
  const Fragment *peer = nullptr; // where the call sites live
  const std::vector<StatementMapping> *peerMappings = nullptr;
  bool nested = false;
};

struct Execution {
  MapperResult result;
  Node *site = nullptr;
};

// Runs the scoped mapping executions for one moved method and prunes
// duplicate mappings. Returns the surviving executions.
std::vector<Execution> runMove(DeclarationPair &P, const Fragment &Origin,
                               const MoveSpec &S, std::set<const Node *> &Claimed,
                               int &Group) {
  Fragment Moved(bodyOf(S.method));
  const bool OriginIsLeft = S.extract;
  std::set<const Node *> SiteSet(S.sites.begin(), S.sites.end());
  std::vector<Node *> Cands;
  for (Node *St : Origin.statements()) {
    if (Claimed.count(St))
      continue;
    const Node *Partner = nullptr;
    for (const StatementMapping &M : P.statementMappings)
      if ((OriginIsLeft ? M.left : M.right) == St)
        Partner = OriginIsLeft ? M.right : M.left;
    if (!Partner || (!S.nested && SiteSet.count(Partner)))
      Cands.push_back(St);
  }
  if (Cands.empty())
    return {};
  std::vector<MapperResult> Rs =
      mapByCallSites(Origin, Cands, *S.peer, *S.peerMappings, S.sites, Moved,
                     OriginIsLeft, Group);
  std::vector<Execution> Ex;
  for (std::size_t I = 0; I < Rs.size(); ++I) {
    Group += Rs[I].multiGroups;
    Ex.push_back({std::move(Rs[I]), S.sites[I]});
  }

  // duplicate groups: one origin statement, several mappings
  struct Ref {
    int exec; // -1: the declaration pair's own mapping
    std::size_t index;
  };
  std::map<const Node *, std::vector<Ref>> Groups;
  auto OriginSide = [&](const StatementMapping &M) {
    return OriginIsLeft ? M.left : M.right;
  };
  for (std::size_t E = 0; E < Ex.size(); ++E)
    for (std::size_t I = 0; I < Ex[E].result.mappings.size(); ++I)
      Groups[OriginSide(Ex[E].result.mappings[I])].push_back(
          {static_cast<int>(E), I});
  for (std::size_t I = 0; I < P.statementMappings.size(); ++I) {
    auto It = Groups.find(OriginSide(P.statementMappings[I]));
    if (It != Groups.end())
      It->second.push_back({-1, I});
  }
  const Fragment &PL = OriginIsLeft ? Origin : *S.peer;
  const Fragment &PR = OriginIsLeft ? *S.peer : Origin;
  std::set<std::pair<int, std::size_t>> Drop;
  for (auto &[Stmt, Refs] : Groups) {
    if (Refs.size() < 2)
      continue;
    std::vector<DuplicateCandidate> Cs;
    for (const Ref &R : Refs) {
      DuplicateCandidate C;
      if (R.exec < 0) {
        C.mapping = P.statementMappings[R.index];
        const Node *Peer = OriginIsLeft ? C.mapping.right : C.mapping.left;
        C.callsMovedMethod = containsCall(Peer, S.method);
        C.parentMapped = S.nested ? true
                                  : parentMapped(PL, PR, C.mapping,
                                                 P.statementMappings, false) ||
                                        (PL.parents(C.mapping.left).empty() &&
                                         PR.parents(C.mapping.right).empty());
      } else {
        C.mapping = Ex[R.exec].result.mappings[R.index];
        const Fragment &ML = OriginIsLeft ? Origin : Moved;
        const Fragment &MR = OriginIsLeft ? Moved : Origin;
        C.parentMapped = parentMapped(ML, MR, C.mapping,
                                      Ex[R.exec].result.mappings, OriginIsLeft);
        C.nested = S.nested;
      }
      Cs.push_back(std::move(C));
    }
    auto Keep = optimizeDuplicates(Cs);
    for (std::size_t I = 0; I < Refs.size(); ++I)
      if (std::find(Keep.begin(), Keep.end(), I) == Keep.end())
        Drop.insert({Refs[I].exec, Refs[I].index});
  }
  std::vector<StatementMapping> KeptOrigin;
  for (std::size_t I = 0; I < P.statementMappings.size(); ++I)
    if (!Drop.count({-1, I}))
      KeptOrigin.push_back(P.statementMappings[I]);
  for (std::size_t E = 0; E < Ex.size(); ++E) {
    std::vector<StatementMapping> Kept;
    for (std::size_t I = 0; I < Ex[E].result.mappings.size(); ++I)
      if (!Drop.count({static_cast<int>(E), I}))
        Kept.push_back(Ex[E].result.mappings[I]);
    Ex[E].result.mappings = std::move(Kept);
  }

  // an execution counts when it maps code of the moved method convincingly
  std::vector<Execution> Out;
  std::size_t MovedTotal = Moved.statements().size();
  for (Execution &E : Ex) {
    if (E.result.mappings.empty())
      continue;
    std::set<const Node *> MovedMapped;
    bool Identical = false;
    for (const StatementMapping &M : E.result.mappings) {
      MovedMapped.insert(OriginIsLeft ? M.right : M.left);
      Identical |= M.editDistance == 0 && M.replacements.empty();
    }
    if (!Identical && MovedMapped.size() * 2 <= MovedTotal)
      continue;
    for (const StatementMapping &M : E.result.mappings)
      Claimed.insert(OriginSide(M));
    Out.push_back(std::move(E));
  }
  if (!Out.empty())
    P.statementMappings = std::move(KeptOrigin);
  return Out;
}

Refactoring makeMoveRefactoring(const DeclarationPair &P, const MoveSpec &S,
                                const Execution &E) {
  Refactoring F;
  const Node *Caller = S.extract ? P.right : P.left;
  bool OtherType = enclosingType(S.method) != enclosingType(Caller);
  if (S.extract)
    F.type = OtherType ? "Extract and Move Method" : "Extract Method";
  else
    F.type = OtherType ? "Move and Inline Method" : "Inline Method";
  std::string MS = signatureOf(S.method).shortForm();
  std::string CS = signatureOf(Caller).shortForm();
  F.description = F.type + " " + MS + (S.extract ? " extracted from " : " inlined to ") +
                  CS + " in class " + qualifiedTypeName(enclosingType(Caller));
  F.leftDecl = S.extract ? P.left : S.method;
  F.rightDecl = S.extract ? S.method : P.right;
  F.statementMappings = E.result.mappings;
  for (const StatementMapping &M : E.result.mappings)
    F.mappings.push_back({M.left, M.right, moveTag(M.left, M.right)});
  // call-site arguments against the sub-expressions the parameters replaced
  Node *Call = callTo(E.site, S.method);
  if (!Call)
    return F;
  auto Params = S.method->childrenIn(Slot::Parameter);
  auto Args = Call->childrenIn(Slot::Argument);
  for (const StatementMapping &M : E.result.mappings)
    for (const Replacement &R : M.replacements) {
      const std::string &ParamText = S.extract ? R.after : R.before;
      for (std::size_t I = 0; I < Params.size() && I < Args.size(); ++I) {
        if (simpleName(Params[I]) != ParamText)
          continue;
        Node *Sub = S.extract ? R.leftNode : R.rightNode;
        if (!Sub)
          continue;
        TaggedMapping T{S.extract ? Sub : Args[I], S.extract ? Args[I] : Sub,
                        MappingTag::SubExpression};
        bool Dup = false;
        for (const TaggedMapping &X : F.mappings)
          Dup |= X.left == T.left && X.right == T.right && X.tag == T.tag;
        if (!Dup)
          F.mappings.push_back(T);
        if (R.leftNode && R.rightNode)
          F.superseded.emplace_back(R.leftNode, R.rightNode);
      }
    }
  return F;
}

std::vector<Refactoring> detectMoves(DeclMatchResult &D, std::size_t PI,
                                     std::set<const Node *> &Claimed,
                                     bool Extract) {
  std::vector<Refactoring> Out;
  if (D.pairs[PI].kind != DeclKind::Method)
    return Out;
  Node *BL = bodyOf(D.pairs[PI].left), *BR = bodyOf(D.pairs[PI].right);
  if (!BL || !BR)
    return Out;
  Fragment FL(BL), FR(BR);
  const Fragment &Origin = Extract ? FL : FR;
  const Fragment &Peer = Extract ? FR : FL;
  const std::vector<Node *> &Pool = Extract ? D.addedMethods : D.removedMethods;
  Node *Caller = Extract ? D.pairs[PI].right : D.pairs[PI].left;
  int Group = 1000000 * static_cast<int>(PI + 1);

  auto Targets = [&](const Fragment &F, const Node *CallerDecl,
                     const std::set<const Node *> &Skip) {
    std::vector<std::pair<Node *, std::vector<Node *>>> T;
    for (Node *S : F.statements())
      for (Node *Call : invocations(S)) {
        Node *M = resolve(Call, Pool, enclosingType(CallerDecl), CallerDecl);
        if (!M || Skip.count(M))
          continue;
        auto It = std::find_if(T.begin(), T.end(),
                               [&](auto &E) { return E.first == M; });
        if (It == T.end()) {
          T.push_back({M, {}});
          It = std::prev(T.end());
        }
        if (std::find(It->second.begin(), It->second.end(), S) == It->second.end())
          It->second.push_back(S);
      }
    return T;
  };

  std::set<const Node *> Done;
  struct Found {
    Node *method;
    std::vector<StatementMapping> mappings;
  };
  std::vector<Found> Level;
  for (auto &[M, Sites] : Targets(Peer, Caller, Done)) {
    MoveSpec S;
    S.extract = Extract;
    S.method = M;
    S.sites = Sites;
    S.peer = &Peer;
    S.peerMappings = &D.pairs[PI].statementMappings;
    std::vector<StatementMapping> PeerCopy = D.pairs[PI].statementMappings;
    S.peerMappings = &PeerCopy;
    auto Ex = runMove(D.pairs[PI], Origin, S, Claimed, Group);
    if (Ex.empty())
      continue;
    Done.insert(M);
    Found Fd{M, {}};
    for (const Execution &E : Ex) {
      Out.push_back(makeMoveRefactoring(D.pairs[PI], S, E));
      Fd.mappings.insert(Fd.mappings.end(), E.result.mappings.begin(),
                         E.result.mappings.end());
    }
    Level.push_back(std::move(Fd));
  }
  // methods extracted out of (or inlined into) the methods found above
  while (!Level.empty()) {
    std::vector<Found> Next;
    for (Found &F : Level) {
      Fragment Inner(bodyOf(F.method));
      for (auto &[M, Sites] : Targets(Inner, F.method, Done)) {
        MoveSpec S;
        S.extract = Extract;
        S.method = M;
        S.sites = Sites;
        S.peer = &Inner;
        S.peerMappings = &F.mappings;
        S.nested = true;
        auto Ex = runMove(D.pairs[PI], Origin, S, Claimed, Group);
        if (Ex.empty())
          continue;
        Done.insert(M);
        Found Fd{M, {}};
        for (const Execution &E : Ex) {
          Refactoring R = makeMoveRefactoring(D.pairs[PI], S, E);
          R.description += " (nested)";
          Out.push_back(std::move(R));
          Fd.mappings.insert(Fd.mappings.end(), E.result.mappings.begin(),
                             E.result.mappings.end());
        }
        Next.push_back(std::move(Fd));
      }
    }
    Level = std::move(Next);
  }
  return Out;
}

// Names declared by parameters, local variables, loop and catch variables.
struct Declared {
  std::map<std::string, Node *> byName; // VDF or SVD
  std::set<std::string> parameters;
};

Declared declaredIn(const Node *Method) {
  Declared D;
  for (Node *P : Method->childrenIn(Slot::Parameter)) {
    D.byName[simpleName(P)] = P;
    D.parameters.insert(simpleName(P));
  }
  if (Node *B = bodyOf(Method))
    preorder(B, [&](Node *N) {
      if (N->type == "VariableDeclarationFragment" ||
          N->type == "SingleVariableDeclaration")
        D.byName.emplace(simpleName(N), N);
    });
  return D;
}

bool unmapped(const std::vector<StatementMapping> &Ms, const Node *S, bool Left) {
  for (const StatementMapping &M : Ms)
    if ((Left ? M.left : M.right) == S)
      return false;
  return true;
}

Refactoring record(const std::string &Type, const std::string &What,
                   Node *L, Node *R) {
  Refactoring F;
  F.type = Type;
  F.description = Type + " " + What;
  F.leftDecl = L;
  F.rightDecl = R;
  return F;
}

void variableRenames(const DeclarationPair &P, std::vector<Refactoring> &Out) {
  Declared DL = declaredIn(P.left), DR = declaredIn(P.right);
  std::vector<const Replacement *> Renames;
  for (const StatementMapping &M : P.statementMappings)
    for (const Replacement &R : M.replacements)
      if (R.kind == ReplacementKind::VariableRename && R.leftNode &&
          R.rightNode && R.leftNode->type == "SimpleName" &&
          R.rightNode->type == "SimpleName")
        Renames.push_back(&R);
  std::map<std::pair<std::string, std::string>, std::vector<const Replacement *>>
      Cands;
  for (const Replacement *R : Renames)
    Cands[{R->before, R->after}].push_back(R);
  // parameters renamed without any statement mentioning them
  auto PL = P.left->childrenIn(Slot::Parameter),
       PR = P.right->childrenIn(Slot::Parameter);
  if (PL.size() == PR.size())
    for (std::size_t I = 0; I < PL.size(); ++I) {
      const Node *TL = PL[I]->child(Slot::Type), *TR = PR[I]->child(Slot::Type);
      if (TL && TR && TL->value == TR->value &&
          simpleName(PL[I]) != simpleName(PR[I]))
        Cands[{simpleName(PL[I]), simpleName(PR[I])}];
    }
  for (auto &[Key, Uses] : Cands) {
    auto &[A, B] = Key;
    if (!DL.byName.count(A) || !DR.byName.count(B) || DL.byName.count(B) ||
        DR.byName.count(A))
      continue;
    bool Consistent = true;
    for (const Replacement *R : Renames)
      if ((R->before == A) != (R->after == B))
        Consistent = false;
    if (!Consistent)
      continue;
    bool Param = DL.parameters.count(A) && DR.parameters.count(B);
    Refactoring F = record(Param ? "Rename Parameter" : "Rename Variable",
                           A + " to " + B + " in method " +
                               signatureOf(P.right).shortForm(),
                           P.left, P.right);
    F.mappings.push_back({DL.byName[A], DR.byName[B], MappingTag::Declaration});
    for (const Replacement *R : Uses)
      F.mappings.push_back({R->leftNode, R->rightNode, MappingTag::SubExpression});
    Out.push_back(std::move(F));
  }
}

// Declarations `T v = init;` not mapped on one side, whose initializer text
// replaces v (or is replaced by v) in mapped statements.
void extractedVariables(const DeclarationPair &P, bool Extract,
                        std::vector<Refactoring> &Out) {
  Node *Body = bodyOf(Extract ? P.right : P.left);
  if (!Body)
    return;
  std::vector<Replacement> Renames;
  for (const StatementMapping &M : P.statementMappings)
    for (const Replacement &Rp : M.replacements)
      if (Rp.kind == ReplacementKind::VariableRename &&
          std::find(Renames.begin(), Renames.end(), Rp) == Renames.end())
        Renames.push_back(Rp);
  Fragment F(Body);
  for (Node *S : F.leaves()) {
    if (S->type != "VariableDeclarationStatement" ||
        !unmapped(P.statementMappings, S, !Extract))
      continue;
    for (Node *Frag : S->children) {
      if (Frag->type != "VariableDeclarationFragment")
        continue;
      Node *Init = Frag->child(Slot::Initializer);
      if (!Init)
        continue;
      std::string Name = simpleName(Frag), Text = printFull(Init);
      // the initializer may mention variables renamed in this pair
      std::string Renamed = Extract ? Text : applyReplacements(Text, Renames);
      Refactoring R = record(Extract ? "Extract Variable" : "Inline Variable",
                             Name + " : " + Text + " in method " +
                                 signatureOf(P.right).shortForm(),
                             P.left, P.right);
      for (const StatementMapping &M : P.statementMappings)
        for (const Replacement &Rp : M.replacements) {
          bool Hit = Extract ? (Rp.after == Name && Rp.leftNode &&
                                (Rp.before == Text ||
                                 applyReplacements(Rp.before, Renames) == Text))
                             : (Rp.before == Name && Rp.rightNode &&
                                (Rp.after == Text || Rp.after == Renamed));
          if (!Hit)
            continue;
          Node *A = Extract ? Rp.leftNode : Init, *B = Extract ? Init : Rp.rightNode;
          R.mappings.push_back({A, B, MappingTag::SubExpression});
          // renamed references inside the moved expression
          if (sameShape(A, B)) {
            std::vector<Node *> XA, XB;
            preorder(A, [&](Node *N) { XA.push_back(N); });
            preorder(B, [&](Node *N) { XB.push_back(N); });
            for (std::size_t I = 1; I < XA.size(); ++I)
              if (XA[I]->type == "SimpleName" && XB[I]->type == "SimpleName" &&
                  XA[I]->value != XB[I]->value &&
                  std::any_of(Renames.begin(), Renames.end(), [&](const Replacement &Rn) {
                    return Rn.before == XA[I]->value && Rn.after == XB[I]->value;
                  }))
                R.mappings.push_back({XA[I], XB[I], MappingTag::SubExpression});
          }
        }
      if (!R.mappings.empty())
        Out.push_back(std::move(R));
    }
  }
}

// The changed type nodes correspond; for parameterized types so do their
// base types, which subtree matching alone cannot pair once they differ.
void typeMappings(Node *TL, Node *TR, Refactoring &F) {
  F.mappings.push_back({TL, TR, MappingTag::SubExpression});
  if (TL->type == "ParameterizedType" && TR->type == "ParameterizedType") {
    Node *BL = TL->child(Slot::Type), *BR = TR->child(Slot::Type);
    if (BL && BR)
      F.mappings.push_back({BL, BR, MappingTag::SubExpression});
  }
}

void typeChanges(const DeclarationPair &P, std::vector<Refactoring> &Out) {
  for (const StatementMapping &M : P.statementMappings) {
    for (const Replacement &R : M.replacements) {
      if (R.kind != ReplacementKind::TypeChange || !R.leftNode)
        continue;
      // catch types merged into a union are reported as Merge Catch
      if (R.rightNode && R.rightNode->type == "UnionType")
        continue;
      const Node *Decl = R.leftNode->parent;
      if (!Decl || R.leftNode->slot != Slot::Type)
        continue;
      std::string Name;
      if (Decl->type == "SingleVariableDeclaration")
        Name = simpleName(Decl);
      else if (Decl->type == "VariableDeclarationStatement")
        for (const Node *C : Decl->children)
          if (C->type == "VariableDeclarationFragment")
            Name += (Name.empty() ? "" : ", ") + simpleName(C);
      if (Name.empty())
        continue;
      Out.push_back(record("Change Variable Type",
                           Name + " : " + R.before + " to " + R.after +
                               " in method " + signatureOf(P.right).shortForm(),
                           P.left, P.right));
      if (R.rightNode)
        typeMappings(R.leftNode, R.rightNode, Out.back());
    }
  }
}

} // namespace

std::vector<Node *> callsIn(const Node *S, const std::string &Name,
                            std::size_t Arity) {
  std::vector<Node *> Out;
  for (Node *C : invocations(S)) {
    const Node *N = C->child(Slot::Name);
    if (N && N->value == Name && arityOf(C) == Arity)
      Out.push_back(C);
  }
  return Out;
}

std::vector<Refactoring> detectExtractMethod(DeclMatchResult &D, std::size_t PI,
                                            std::set<const Node *> &Claimed) {
  return detectMoves(D, PI, Claimed, true);
}

std::vector<Refactoring> detectInlineMethod(DeclMatchResult &D, std::size_t PI,
                                           std::set<const Node *> &Claimed) {
  return detectMoves(D, PI, Claimed, false);
}

std::vector<Refactoring>
detectVariableRefactorings(const DeclMatchResult &D,
                           const std::vector<Refactoring> &Extractions) {
  std::vector<Refactoring> Out;
  for (const DeclarationPair &P : D.pairs) {
    if (P.kind == DeclKind::Field) {
      Node *TL = P.left->child(Slot::Type), *TR = P.right->child(Slot::Type);
      if (TL && TR && TL->value != TR->value) {
        Out.push_back(record("Change Variable Type",
                             signatureOf(P.right).shortForm() + " : " +
                                 TL->value + " to " + TR->value + " in class " +
                                 qualifiedTypeName(enclosingType(P.right)),
                             P.left, P.right));
        typeMappings(TL, TR, Out.back());
      }
      continue;
    }
    if (P.kind != DeclKind::Method)
      continue;
    variableRenames(P, Out);
    extractedVariables(P, true, Out);
    extractedVariables(P, false, Out);
    typeChanges(P, Out);
  }
  // fields introduced for (or inlined from) a replaced expression
  for (const ClassDiff &C : D.classDiffs) {
    for (bool Extract : {true, false}) {
      const auto &Fields = Extract ? C.addedFields : C.removedFields;
      for (Node *F : Fields)
        for (Node *Frag : F->children) {
          if (Frag->type != "VariableDeclarationFragment")
            continue;
          Node *Init = Frag->child(Slot::Initializer);
          if (!Init)
            continue;
          std::string Name = simpleName(Frag), Text = printFull(Init);
          Refactoring R = record(Extract ? "Extract Field" : "Inline Field",
                                 Name + " : " + Text + " in class " +
                                     qualifiedTypeName(C.right),
                                 Extract ? nullptr : F, Extract ? F : nullptr);
          for (std::size_t PI : C.pairs)
            for (const StatementMapping &M : D.pairs[PI].statementMappings)
              for (const Replacement &Rp : M.replacements) {
                auto Strip = [](const std::string &S) {
                  return S.rfind("this.", 0) == 0 ? S.substr(5) : S;
                };
                bool Hit = Extract ? Strip(Rp.after) == Name && Rp.before == Text &&
                                         Rp.leftNode
                                   : Strip(Rp.before) == Name && Rp.after == Text &&
                                         Rp.rightNode;
                if (Hit)
                  R.mappings.push_back({Extract ? Rp.leftNode : Init,
                                        Extract ? Init : Rp.rightNode,
                                        MappingTag::SubExpression});
              }
          if (!R.mappings.empty())
            Out.push_back(std::move(R));
        }
    }
  }
  // a local variable of the origin that became a parameter of the extracted
  // method
  for (const Refactoring &E : Extractions) {
    if (E.type != "Extract Method" && E.type != "Extract and Move Method")
      continue;
    Declared DL = declaredIn(E.leftDecl);
    for (Node *P : E.rightDecl->childrenIn(Slot::Parameter)) {
      auto It = DL.byName.find(simpleName(P));
      if (It == DL.byName.end() || DL.parameters.count(simpleName(P)))
        continue;
      Node *Stmt = It->second->parent;
      bool Extracted = false;
      for (const StatementMapping &M : E.statementMappings)
        Extracted |= M.left == Stmt;
      if (!Extracted)
        continue;
      Out.push_back(record("Parameterize Variable",
                           simpleName(P) + " to " + simpleName(P) +
                               " in method " + signatureOf(E.rightDecl).shortForm(),
                           E.leftDecl, E.rightDecl));
    }
  }
  return Out;
}

std::vector<Refactoring> detectMergeCatch(const DeclarationPair &P) {
  std::vector<Refactoring> Out;
  for (const StatementMapping &M : P.statementMappings) {
    if (M.left->type != "TryStatement" || M.right->type != "TryStatement")
      continue;
    std::vector<Node *> LC, RC;
    for (Node *C : M.left->children)
      if (C->type == "CatchClause")
        LC.push_back(C);
    for (Node *C : M.right->children)
      if (C->type == "CatchClause")
        RC.push_back(C);
    if (LC.size() < 2)
      continue;
    for (Node *R : RC) {
      Node *Ex = R->child(Slot::Exception);
      Node *Union = Ex ? Ex->child(Slot::Type) : nullptr;
      if (!Union || Union->type != "UnionType")
        continue;
      std::vector<std::pair<Node *, Node *>> Merged; // catch, union member
      for (Node *L : LC) {
        Node *LE = L->child(Slot::Exception);
        Node *LT = LE ? LE->child(Slot::Type) : nullptr;
        if (!LT)
          continue;
        for (Node *Member : Union->children)
          if (Member->value == LT->value)
            Merged.emplace_back(L, Member);
      }
      if (Merged.size() < 2)
        continue;
      Refactoring F = record("Merge Catch", "", P.left, P.right);
      std::string Types;
      for (auto &[L, Member] : Merged) {
        Types += (Types.empty() ? "" : ", ") + Member->value;
        F.mappings.push_back({L, R, MappingTag::Multi});
        Node *LB = L->child(Slot::Body), *RB = R->child(Slot::Body);
        if (LB && RB) {
          Fragment FL(LB), FR(RB);
          for (const StatementMapping &SM : mapStatements(FL, FR).mappings) {
            F.mappings.push_back({SM.left, SM.right, MappingTag::Multi});
            F.statementMappings.push_back(SM);
          }
        }
        F.mappings.push_back({L->child(Slot::Exception)->child(Slot::Type), Member,
                              MappingTag::SubExpression});
      }
      F.description = "Merge Catch " + Types + " to " + printFull(Union) +
                      " in method " + signatureOf(P.right).shortForm();
      Out.push_back(std::move(F));
    }
  }
  return Out;
}

std::vector<Refactoring> detectConsolidatedConditionals(const DeclarationPair &P) {
  std::map<int, std::vector<const StatementMapping *>> Groups;
  for (const StatementMapping &M : P.statementMappings)
    if (M.multiGroup >= 0)
      Groups[M.multiGroup].push_back(&M);
  std::vector<Refactoring> Out;
  for (auto &[G, Ms] : Groups) {
    bool SharedRight = true;
    for (const StatementMapping *M : Ms)
      SharedRight &= M->right == Ms.front()->right;
    if (!SharedRight || Ms.size() < 2)
      continue;
    Refactoring F = record("Consolidate Duplicate Conditional Fragments",
                           printFull(Ms.front()->right) + " in method " +
                               signatureOf(P.right).shortForm(),
                           P.left, P.right);
    for (const StatementMapping *M : Ms) {
      F.mappings.push_back({M->left, M->right, MappingTag::Multi});
      F.statementMappings.push_back(*M);
    }
    Out.push_back(std::move(F));
  }
  return Out;
}

std::vector<Refactoring> detectRefactorings(DeclMatchResult &D) {
  std::vector<Refactoring> Out = D.refactorings;
  std::vector<Refactoring> Moves;
  std::set<const Node *> ClaimedLeft, ClaimedRight;
  for (std::size_t I = 0; I < D.pairs.size(); ++I) {
    auto E = detectExtractMethod(D, I, ClaimedLeft);
    Moves.insert(Moves.end(), E.begin(), E.end());
  }
  for (std::size_t I = 0; I < D.pairs.size(); ++I) {
    auto E = detectInlineMethod(D, I, ClaimedRight);
    Moves.insert(Moves.end(), E.begin(), E.end());
  }
  // statements of one extracted (inlined) method mapped several times
  std::map<const Node *, int> Uses;
  for (const Refactoring &R : Moves)
    for (const StatementMapping &M : R.statementMappings)
      ++Uses[R.type.find("Extract") != std::string::npos ? M.right : M.left];
  for (Refactoring &R : Moves) {
    bool Extract = R.type.find("Extract") != std::string::npos;
    for (TaggedMapping &T : R.mappings)
      if (T.tag != MappingTag::SubExpression && Uses[Extract ? T.right : T.left] > 1)
        T.tag = MappingTag::Multi;
  }
  Out.insert(Out.end(), Moves.begin(), Moves.end());
  auto Vars = detectVariableRefactorings(D, Moves);
  Out.insert(Out.end(), Vars.begin(), Vars.end());
  for (const DeclarationPair &P : D.pairs) {
    if (P.kind != DeclKind::Method)
      continue;
    auto C = detectMergeCatch(P);
    Out.insert(Out.end(), C.begin(), C.end());
    auto K = detectConsolidatedConditionals(P);
    Out.insert(Out.end(), K.begin(), K.end());
  }
  std::stable_sort(Out.begin(), Out.end(),
                   [](const Refactoring &A, const Refactoring &B) {
                     if (A.type != B.type)
                       return A.type < B.type;
                     const Node *X = A.leftDecl ? A.leftDecl : A.rightDecl;
                     const Node *Y = B.leftDecl ? B.leftDecl : B.rightDecl;
                     if (X && Y && X != Y)
                       return positionLess(X, Y);
                     return false;
                   });
  return Out;
}

std::vector<TaggedMapping> subExpressionMappings(const Refactoring &R) {
  std::vector<TaggedMapping> Out;
  for (const TaggedMapping &T : R.mappings)
    if (T.tag == MappingTag::SubExpression)
      Out.push_back(T);
  return Out;
}

std::vector<MappingTag> allowedTags(const std::string &Type) {
  using T = MappingTag;
  auto Has = [&](const char *S) { return Type.find(S) != std::string::npos; };
  if (Type == "Extract and Move Method" || Type == "Move and Inline Method")
    return {T::Multi, T::InterFileMove, T::SubExpression};
  if (Type == "Extract Method" || Type == "Inline Method")
    return {T::Multi, T::IntraFileMove, T::SubExpression};
  if (Type == "Merge Catch")
    return {T::Multi, T::SubExpression};
  if (Type == "Consolidate Duplicate Conditional Fragments")
    return {T::Multi};
  if (Has("Change") && Has("Type"))
    return {T::SubExpression};
  if (Has("Variable") && (Has("Extract") || Has("Inline")))
    return {T::SubExpression};
  if (Has("Field") && (Has("Extract") || Has("Inline")))
    return {T::SubExpression};
  if (Type == "Rename Variable" || Type == "Rename Parameter")
    return {T::Declaration, T::SubExpression};
  if (Has("Move and Rename"))
    return {T::Declaration, T::InterFileMove, T::IntraFileMove};
  if (Has("Rename"))
    return {T::Declaration};
  if (Has("Move") || Has("Pull Up") || Has("Push Down"))
    return {T::InterFileMove, T::IntraFileMove};
  return {};
}

std::string refactoringsToJson(const std::vector<Refactoring> &Rs) {
  nlohmann::ordered_json A = nlohmann::ordered_json::array();
  for (const Refactoring &R : Rs) {
    nlohmann::ordered_json J;
    J["type"] = R.type;
    J["description"] = R.description;
    nlohmann::ordered_json Ms = nlohmann::ordered_json::array();
    for (const TaggedMapping &T : R.mappings)
      Ms.push_back({{"kind", mappingTagName(T.tag)},
                    {"left", refOf(T.left).str()},
                    {"right", refOf(T.right).str()}});
    J["mappings"] = Ms;
    A.push_back(J);
  }
  return A.dump(2);
}

} // namespace semdiff
