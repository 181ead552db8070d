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
#include "semdiff/compose.hpp"
#include "semdiff/gumtree.hpp"
#include "semdiff/java.hpp"

#include <algorithm>

namespace semdiff {

namespace {

MatcherConfig subtreeConfig() {
  MatcherConfig C;
  C.minHeight = 1;
  C.bottomUpMode = BottomUpMode::Simple;
  C.simpleNameParentGuard = true;
  return C;
}

bool invocation(const Node *N) {
  return N && (N->type == "MethodInvocation" || N->type == "SuperMethodInvocation");
}

// Names of invocations and operators of infix expressions pull their parents
// into alignment.
void realignParents(MappingStore &M, const TreeView &T1, const TreeView &T2) {
  for (auto &[X, Y] : M.pairs()) {
    Node *PA = T1.parent(X), *PB = T2.parent(Y);
    if (!PA || !PB || PA == T1.root() || PB == T2.root())
      continue;
    bool C1 = X->type == "SimpleName" && Y->type == "SimpleName" &&
              X->slot == Slot::Name && Y->slot == Slot::Name && invocation(PA) &&
              invocation(PB);
    bool C2 = X->type == "InfixOperator" && Y->type == "InfixOperator" &&
              PA->type == "InfixExpression" && PB->type == "InfixExpression";
    if (!(C1 || C2) || M.has(PA, PB))
      continue;
    M.removeLeft(PA);
    M.removeRight(PB);
    M.add(PA, PB);
  }
}

bool headerMatched(const Node *N) {
  return N->type == "MethodDeclaration" || N->type == "Initializer" ||
         isTypeDeclaration(N) || isCompositeStatement(N);
}

std::vector<Node *> headerParts(const Node *N) {
  std::vector<Node *> Out;
  for (Node *C : N->children)
    if (C->type != "Block" && !isStatement(C) && !isBodyDeclaration(C) &&
        C->type != "EnumConstantDeclaration")
      Out.push_back(C);
  return Out;
}

std::string baseType(std::string T) {
  for (char Stop : {'<', '['})
    if (auto P = T.find(Stop); P != std::string::npos)
      T = T.substr(0, P);
  if (T.size() > 3 && T.ends_with("..."))
    T.resize(T.size() - 3);
  if (auto P = T.rfind('.'); P != std::string::npos)
    T = T.substr(P + 1);
  while (!T.empty() && T.back() == ' ')
    T.pop_back();
  return T;
}

std::string pathOf(const Node *N) { return N && N->file ? N->file->path : ""; }

std::vector<Node *> importsOf(const SourceFile &F) {
  std::vector<Node *> Out;
  if (F.root)
    for (Node *C : F.root->children)
      if (C->type == "ImportDeclaration")
        Out.push_back(C);
  return Out;
}

std::string packagePart(const std::string &Q) {
  auto P = Q.rfind('.');
  return P == std::string::npos ? "" : Q.substr(0, P);
}

std::string lastPart(const std::string &Q) {
  auto P = Q.rfind('.');
  return P == std::string::npos ? Q : Q.substr(P + 1);
}

} // namespace

MappingStore treeMatcher(const std::vector<Node *> &A,
                         const std::vector<Node *> &B) {
  MappingStore Out;
  if (A.empty() || B.empty())
    return Out;
  MatcherConfig Cfg = subtreeConfig();
  SourceFile HL, HR;
  bool Single = A.size() == 1 && B.size() == 1;
  TreeView T1 = Single ? TreeView(A[0]) : TreeView(HL, A);
  TreeView T2 = Single ? TreeView(B[0]) : TreeView(HR, B);
  MappingStore M;
  topDown(T1, T2, M, Cfg);
  bottomUp(T1, T2, M, Cfg);
  realignParents(M, T1, T2);
  for (auto &[X, Y] : M.pairs())
    if (Single || (X != T1.root() && Y != T2.root()))
      Out.add(X, Y);
  return Out;
}

MappingStore treeMatcher(Node *A, Node *B) {
  return treeMatcher(std::vector<Node *>{A}, std::vector<Node *>{B});
}

// Dotted names of paired imports correspond segment by segment from the
// right, so a renamed class or package still maps its name parts.
void alignSegments(Node *A, Node *B, MappingStore &M) {
  while (A && B) {
    bool Qa = A->type == "QualifiedName", Qb = B->type == "QualifiedName";
    if (!M.hasLeft(A) && !M.hasRight(B) && A->type == B->type)
      M.add(A, B);
    Node *Na = Qa ? A->child(Slot::Name) : A, *Nb = Qb ? B->child(Slot::Name) : B;
    if (Qa && Qb && Na && Nb && !M.hasLeft(Na) && !M.hasRight(Nb))
      M.add(Na, Nb);
    if (!Qa || !Qb)
      return;
    A = A->child(Slot::Qualifier);
    B = B->child(Slot::Qualifier);
  }
}

MappingStore pairMappings(Node *A, Node *B) {
  MappingStore M;
  if (A->type == "CompilationUnit" || B->type == "CompilationUnit") {
    M.add(A, B);
    return M;
  }
  if (!headerMatched(A) || !headerMatched(B)) {
    M = treeMatcher(A, B);
    M.removeLeft(A);
    M.removeRight(B);
    M.add(A, B);
    if (A->type == "ImportDeclaration" && B->type == "ImportDeclaration" &&
        signatureOf(A).qualifiedName.ends_with(".*") ==
            signatureOf(B).qualifiedName.ends_with(".*"))
      alignSegments(A->child(Slot::Name), B->child(Slot::Name), M);
    return M;
  }
  M = treeMatcher(headerParts(A), headerParts(B));
  M.add(A, B);
  for (Node *BA : A->children) {
    if (BA->type != "Block")
      continue;
    for (Node *BB : B->children)
      if (BB->type == "Block" && BB->slot == BA->slot) {
        M.add(BA, BB);
        break;
      }
  }
  return M;
}

ComposedDiff compose(const std::vector<DeclarationPair> &P,
                     const std::vector<Refactoring> &R,
                     const std::vector<NodePair> &Extra) {
  ComposedDiff Out;
  Out.declarationPairs = P;
  Out.refactorings = R;
  MappingStore &M = Out.store;
  for (const NodePair &E : Extra) {
    M.merge(pairMappings(E.first, E.second));
    Out.matchedElements.push_back(E);
  }
  for (const DeclarationPair &D : P) {
    M.merge(pairMappings(D.left, D.right));
    Out.matchedElements.emplace_back(D.left, D.right);
    for (const StatementMapping &S : D.statementMappings)
      M.merge(pairMappings(S.left, S.right));
  }
  MappingStore A;
  for (const Refactoring &F : R)
    for (const TaggedMapping &T : F.mappings)
      if (T.left && T.right)
        A.merge(pairMappings(T.left, T.right));
  for (const Refactoring &F : R)
    for (auto &[X, Y] : F.superseded)
      if (!std::any_of(F.mappings.begin(), F.mappings.end(), [&](const TaggedMapping &T) {
            return T.left == X && T.right == Y;
          }))
        A.remove(X, Y);
  for (auto &[X, Y] : A.pairs()) {
    for (Node *Other : M.partnersOfLeft(X))
      if (!Out.fromRefactorings.count({X, Other}))
        M.remove(X, Other);
    for (Node *Other : M.partnersOfRight(Y))
      if (!Out.fromRefactorings.count({Other, Y}))
        M.remove(Other, Y);
    M.add(X, Y);
    Out.fromRefactorings.insert({X, Y});
  }
  return Out;
}

std::map<std::string, std::string> localTypeChanges(const DeclMatchResult &D,
                                                    const std::string &LeftFile) {
  std::map<std::string, std::set<std::string>> Fwd, Back;
  auto Note = [&](const std::string &A, const std::string &B) {
    std::string X = baseType(A), Y = baseType(B);
    if (X.empty() || Y.empty() || X == Y)
      return;
    Fwd[X].insert(Y);
    Back[Y].insert(X);
  };
  auto TypeOf = [](const Node *N, Slot S) {
    const Node *T = N->child(S);
    return T ? T->value : std::string();
  };
  // instantiated types of corresponding creations, paired in source order
  auto NoteCreations = [&](const Node *L, const Node *R) {
    std::vector<const Node *> CL, CR;
    preorder(const_cast<Node *>(L), [&](Node *N) {
      if (N->type == "ClassInstanceCreation")
        CL.push_back(N);
    });
    preorder(const_cast<Node *>(R), [&](Node *N) {
      if (N->type == "ClassInstanceCreation")
        CR.push_back(N);
    });
    if (CL.size() == CR.size())
      for (std::size_t I = 0; I < CL.size(); ++I)
        Note(TypeOf(CL[I], Slot::Type), TypeOf(CR[I], Slot::Type));
  };
  for (const DeclarationPair &P : D.pairs) {
    if (pathOf(P.left) != LeftFile)
      continue;
    if (P.kind == DeclKind::Field)
      Note(TypeOf(P.left, Slot::Type), TypeOf(P.right, Slot::Type));
    if (P.kind == DeclKind::Method) {
      Note(TypeOf(P.left, Slot::ReturnType), TypeOf(P.right, Slot::ReturnType));
      auto PL = P.left->childrenIn(Slot::Parameter),
           PR = P.right->childrenIn(Slot::Parameter);
      if (PL.size() == PR.size())
        for (std::size_t I = 0; I < PL.size(); ++I)
          Note(TypeOf(PL[I], Slot::Type), TypeOf(PR[I], Slot::Type));
    }
    for (const StatementMapping &S : P.statementMappings) {
      for (const Replacement &Rp : S.replacements)
        if (Rp.kind == ReplacementKind::TypeChange)
          Note(Rp.before, Rp.after);
      if (S.isLeaf)
        NoteCreations(S.left, S.right);
    }
    if (P.kind == DeclKind::Field)
      NoteCreations(P.left, P.right);
  }
  std::map<std::string, std::string> Out;
  for (auto &[X, Ys] : Fwd)
    if (Ys.size() == 1 && Back[*Ys.begin()].size() == 1)
      Out[X] = *Ys.begin();
  return Out;
}

std::vector<NodePair>
importDiff(const SourceFile &L, const SourceFile &R,
           const std::map<std::string, std::string> &MovedTypes,
           const std::map<std::string, std::string> &TypeChanges) {
  std::vector<Node *> IL = importsOf(L), IR = importsOf(R);
  std::vector<std::string> KL, KR;
  for (Node *I : IL)
    KL.push_back(signatureOf(I).qualifiedName);
  for (Node *I : IR)
    KR.push_back(signatureOf(I).qualifiedName);
  std::vector<bool> UL(IL.size()), UR(IR.size());
  std::vector<NodePair> Out;
  auto Single = [](const std::string &K) {
    return K.rfind("static ", 0) != 0 && !K.ends_with(".*");
  };
  auto Pair = [&](std::size_t I, std::size_t J) {
    UL[I] = UR[J] = true;
    Out.emplace_back(IL[I], IR[J]);
  };
  // identical text
  for (std::size_t I = 0; I < IL.size(); ++I)
    for (std::size_t J = 0; J < IR.size(); ++J)
      if (!UL[I] && !UR[J] && KL[I] == KR[J])
        Pair(I, J);
  // moved or renamed classes
  for (std::size_t I = 0; I < IL.size(); ++I) {
    auto It = MovedTypes.find(KL[I]);
    if (UL[I] || It == MovedTypes.end())
      continue;
    for (std::size_t J = 0; J < IR.size(); ++J)
      if (!UR[J] && KR[J] == It->second) {
        Pair(I, J);
        break;
      }
  }
  // consistent type changes in this file; same package preferred
  for (std::size_t I = 0; I < IL.size(); ++I) {
    if (UL[I] || !Single(KL[I]))
      continue;
    auto It = TypeChanges.find(lastPart(KL[I]));
    if (It == TypeChanges.end())
      continue;
    std::size_t Best = IR.size();
    for (std::size_t J = 0; J < IR.size(); ++J)
      if (!UR[J] && Single(KR[J]) && lastPart(KR[J]) == It->second &&
          (Best == IR.size() || packagePart(KR[J]) == packagePart(KL[I])))
        Best = J;
    if (Best < IR.size())
      Pair(I, Best);
  }
  // single-type imports grouped into (or split from) an on-demand import
  for (std::size_t J = 0; J < IR.size(); ++J) {
    if (UR[J] || !KR[J].ends_with(".*") || KR[J].rfind("static ", 0) == 0)
      continue;
    std::string Pkg = KR[J].substr(0, KR[J].size() - 2);
    std::vector<std::size_t> Group;
    for (std::size_t I = 0; I < IL.size(); ++I)
      if (!UL[I] && Single(KL[I]) && packagePart(KL[I]) == Pkg)
        Group.push_back(I);
    for (std::size_t I : Group)
      Pair(I, J);
  }
  for (std::size_t I = 0; I < IL.size(); ++I) {
    if (UL[I] || !KL[I].ends_with(".*") || KL[I].rfind("static ", 0) == 0)
      continue;
    std::string Pkg = KL[I].substr(0, KL[I].size() - 2);
    std::vector<std::size_t> Group;
    for (std::size_t J = 0; J < IR.size(); ++J)
      if (!UR[J] && Single(KR[J]) && packagePart(KR[J]) == Pkg)
        Group.push_back(J);
    for (std::size_t J : Group)
      Pair(I, J);
  }
  std::sort(Out.begin(), Out.end(), [](const NodePair &A, const NodePair &B) {
    if (A.first != B.first)
      return positionLess(A.first, B.first);
    return positionLess(A.second, B.second);
  });
  return Out;
}

std::vector<std::pair<SourceFile *, SourceFile *>> filePairs(const CommitPair &C,
                                                             const DeclMatchResult &D) {
  std::vector<std::pair<SourceFile *, SourceFile *>> Out;
  std::set<const SourceFile *> UsedL, UsedR;
  for (const FilePtr &L : C.left.files)
    if (SourceFile *R = C.right.find(L->path)) {
      Out.emplace_back(L.get(), R);
      UsedL.insert(L.get());
      UsedR.insert(R);
    }
  for (const DeclarationPair &P : D.pairs) {
    if (P.kind != DeclKind::Type || enclosingType(P.left) || enclosingType(P.right))
      continue;
    SourceFile *L = P.left->file, *R = P.right->file;
    if (!L || !R || UsedL.count(L) || UsedR.count(R))
      continue;
    Out.emplace_back(L, R);
    UsedL.insert(L);
    UsedR.insert(R);
  }
  return Out;
}

std::vector<FileDiff>
partitionByFile(const std::vector<std::pair<SourceFile *, SourceFile *>> &Pairs,
                const std::vector<NodePair> &Elements, const MappingStore &Store) {
  std::vector<FileDiff> Files;
  std::map<std::string, std::size_t> ByLeft, ByRight;
  for (auto &[L, R] : Pairs) {
    FileDiff F;
    F.leftFile = F.intraFile.leftFile = L->path;
    F.rightFile = F.intraFile.rightFile = R->path;
    ByLeft[L->path] = ByRight[R->path] = Files.size();
    Files.push_back(std::move(F));
  }
  auto Home = [&](const std::string &LP, const std::string &RP) {
    std::vector<std::size_t> H;
    if (auto It = ByLeft.find(LP); It != ByLeft.end())
      H.push_back(It->second);
    if (auto It = ByRight.find(RP); It != ByRight.end())
      if (H.empty() || H[0] != It->second)
        H.push_back(It->second);
    if (H.empty()) {
      FileDiff F;
      F.leftFile = F.intraFile.leftFile = LP;
      ByLeft[LP] = Files.size();
      H.push_back(Files.size());
      Files.push_back(std::move(F));
    }
    return H;
  };
  auto Place = [&](const NodePair &P, bool Element) {
    std::string LP = pathOf(P.first), RP = pathOf(P.second);
    for (std::size_t Idx : Home(LP, RP)) {
      FileDiff &F = Files[Idx];
      ElementGroup *G = nullptr;
      if (F.leftFile == LP && F.rightFile == RP) {
        G = &F.intraFile;
      } else {
        for (ElementGroup &E : F.interFile)
          if (E.leftFile == LP && E.rightFile == RP)
            G = &E;
        if (!G) {
          F.interFile.push_back({LP, RP, {}, {}});
          G = &F.interFile.back();
        }
      }
      (Element ? G->matchedElements : G->mappings).push_back(P);
    }
  };
  for (const NodePair &P : Elements)
    Place(P, true);
  for (const NodePair &P : Store.pairs())
    Place(P, false);
  auto Less = [](const NodePair &A, const NodePair &B) {
    if (A.first != B.first)
      return positionLess(A.first, B.first);
    return positionLess(A.second, B.second);
  };
  for (FileDiff &F : Files) {
    std::sort(F.intraFile.matchedElements.begin(), F.intraFile.matchedElements.end(),
              Less);
    for (ElementGroup &G : F.interFile)
      std::sort(G.matchedElements.begin(), G.matchedElements.end(), Less);
    std::sort(F.interFile.begin(), F.interFile.end(),
              [](const ElementGroup &A, const ElementGroup &B) {
                return std::tie(A.leftFile, A.rightFile) <
                       std::tie(B.leftFile, B.rightFile);
              });
  }
  return Files;
}

ComposedDiff diffCommit(const CommitPair &C) {
  DeclMatcher Matcher(C);
  DeclMatchResult D = Matcher.run();
  std::vector<Refactoring> Rs = detectRefactorings(D);

  std::map<std::string, std::string> Moved;
  for (const DeclarationPair &P : D.pairs)
    if (P.kind == DeclKind::Type &&
        qualifiedTypeName(P.left) != qualifiedTypeName(P.right))
      Moved[qualifiedTypeName(P.left)] = qualifiedTypeName(P.right);

  auto Files = filePairs(C, D);
  std::vector<NodePair> Extra;
  for (auto &[L, R] : Files) {
    Extra.emplace_back(L->root, R->root);
    Node *PL = nullptr, *PR = nullptr;
    for (Node *N : L->root->children)
      if (N->type == "PackageDeclaration")
        PL = N;
    for (Node *N : R->root->children)
      if (N->type == "PackageDeclaration")
        PR = N;
    if (PL && PR)
      Extra.emplace_back(PL, PR);
    for (const NodePair &I : importDiff(*L, *R, Moved, localTypeChanges(D, L->path)))
      Extra.push_back(I);
  }
  ComposedDiff Out = compose(D.pairs, Rs, Extra);
  Out.files = partitionByFile(Files, Out.matchedElements, Out.store);
  return Out;
}

} // namespace semdiff
