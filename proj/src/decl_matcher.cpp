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
#include "semdiff/decl.hpp"
#include "semdiff/java.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace semdiff {

int DeclMatchResult::pairOfLeft(const Node *N) const {
  for (std::size_t I = 0; I < pairs.size(); ++I)
    if (pairs[I].left == N)
      return static_cast<int>(I);
  return -1;
}

int DeclMatchResult::pairOfRight(const Node *N) const {
  for (std::size_t I = 0; I < pairs.size(); ++I)
    if (pairs[I].right == N)
      return static_cast<int>(I);
  return -1;
}

namespace {

std::vector<std::string> splitCamel(const std::string &S) {
  std::vector<std::string> Out;
  std::string Cur;
  for (std::size_t I = 0; I < S.size(); ++I) {
    char C = S[I];
    if (!std::isalnum(static_cast<unsigned char>(C))) {
      if (!Cur.empty())
        Out.push_back(Cur);
      Cur.clear();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(C)) && !Cur.empty() &&
        !std::isupper(static_cast<unsigned char>(Cur.back()))) {
      Out.push_back(Cur);
      Cur.clear();
    }
    Cur += static_cast<char>(std::tolower(static_cast<unsigned char>(C)));
  }
  if (!Cur.empty())
    Out.push_back(Cur);
  return Out;
}

std::vector<std::string> signatureTokens(const Node *M) {
  Signature S = signatureOf(M);
  std::vector<std::string> T =
      splitCamel(S.qualifiedName.substr(S.qualifiedName.rfind('.') + 1));
  for (const std::string &P : S.parameterTypeLabels)
    T.push_back(P);
  return T;
}

Node *bodyOf(const Node *D) { return D->child(Slot::Body); }

int statementCount(const Node *D) {
  Node *B = bodyOf(D);
  return B ? static_cast<int>(Fragment(B).statements().size()) : 0;
}

std::vector<Node *> membersOf(const Node *T) {
  std::vector<Node *> R;
  for (Node *C : T->children)
    if (isBodyDeclaration(C) && !isTypeDeclaration(C))
      R.push_back(C);
  return R;
}

std::string simpleName(const Node *D) {
  const Node *Id = D->child(Slot::Name);
  return Id ? Id->value : "";
}

std::string fieldName(const Node *F) {
  for (const Node *C : F->children)
    if (C->type == "VariableDeclarationFragment")
      return simpleName(C);
  return "";
}

int fieldFragments(const Node *F) {
  int N = 0;
  for (const Node *C : F->children)
    N += C->type == "VariableDeclarationFragment";
  return N;
}

double nameSimilarity(const std::string &A, const std::string &B) {
  std::size_t Max = std::max(A.size(), B.size());
  return Max ? 1.0 - static_cast<double>(levenshtein(A, B)) / Max : 1.0;
}

int packageDistance(const std::string &A, const std::string &B) {
  auto Split = [](const std::string &S) {
    std::vector<std::string> V;
    std::size_t P = 0;
    while (!S.empty()) {
      std::size_t D = S.find('.', P);
      V.push_back(S.substr(P, D - P));
      if (D == std::string::npos)
        break;
      P = D + 1;
    }
    return V;
  };
  auto VA = Split(A), VB = Split(B);
  std::size_t Common = 0;
  while (Common < VA.size() && Common < VB.size() && VA[Common] == VB[Common])
    ++Common;
  return static_cast<int>(VA.size() + VB.size() - 2 * Common);
}

MappingTag moveTag(const Node *A, const Node *B) {
  return A->file && B->file && A->file->path != B->file->path
             ? MappingTag::InterFileMove
             : MappingTag::IntraFileMove;
}

std::string baseTypeName(std::string T) {
  std::size_t P = T.find('<');
  if (P != std::string::npos)
    T = T.substr(0, P);
  P = T.rfind('.');
  return P == std::string::npos ? T : T.substr(P + 1);
}

} // namespace

double signatureSimilarity(const Node *A, const Node *B) {
  auto TA = signatureTokens(A), TB = signatureTokens(B);
  if (TA.empty() && TB.empty())
    return 1.0;
  std::vector<std::string> Rest = TB;
  int Common = 0;
  for (const std::string &T : TA) {
    auto It = std::find(Rest.begin(), Rest.end(), T);
    if (It != Rest.end()) {
      ++Common;
      Rest.erase(It);
    }
  }
  return 2.0 * Common / static_cast<double>(TA.size() + TB.size());
}

MethodCandidate evaluateMethodPair(Node *L, Node *R) {
  MethodCandidate C;
  C.left = L;
  C.right = R;
  C.similarity = signatureSimilarity(L, R);
  C.distance = std::abs(L->indexInParent() - R->indexInParent());
  if (L->constructor != R->constructor)
    return C;
  int NL = statementCount(L), NR = statementCount(R);
  if (NL == 0 && NR == 0) {
    C.admissible = C.similarity >= 0.5;
    return C;
  }
  if (NL == 0 || NR == 0) {
    C.unmatched = NL + NR;
    return C;
  }
  Fragment FL(bodyOf(L)), FR(bodyOf(R));
  C.result = mapStatements(FL, FR);
  std::set<const Node *> ML, MR;
  for (const StatementMapping &M : C.result.mappings) {
    ML.insert(M.left);
    MR.insert(M.right);
  }
  C.matched = static_cast<int>(ML.size() + MR.size());
  C.unmatched = static_cast<int>(C.result.unmatchedLeft.size() +
                                 C.result.unmatchedRight.size());
  C.admissible = C.matched > C.unmatched;
  return C;
}

bool candidateBefore(const MethodCandidate &A, const MethodCandidate &B) {
  if (A.matched != B.matched)
    return A.matched > B.matched;
  if (A.unmatched != B.unmatched)
    return A.unmatched < B.unmatched;
  if (A.similarity != B.similarity)
    return A.similarity > B.similarity;
  if (A.distance != B.distance)
    return A.distance < B.distance;
  if (!positionLess(A.left, B.left) && !positionLess(B.left, A.left))
    return positionLess(A.right, B.right);
  return positionLess(A.left, B.left);
}

bool declaresSupertype(const Node *T, const std::string &Name) {
  for (const Node *C : T->children)
    if (C->slot == Slot::Superclass || C->slot == Slot::Interface)
      if (baseTypeName(C->value) == Name)
        return true;
  return false;
}

DeclMatcher::DeclMatcher(const CommitPair &P) : P(P) {
  auto Collect = [](const Snapshot &S, std::vector<Node *> &Out) {
    for (const FilePtr &F : S.files)
      if (F->root)
        preorder(F->root, [&](Node *N) {
          if (isTypeDeclaration(N))
            Out.push_back(N);
        });
    std::sort(Out.begin(), Out.end(), positionLess);
  };
  Collect(P.left, LeftTypes);
  Collect(P.right, RightTypes);
}

std::size_t DeclMatcher::addPair(DeclKind K, Node *L, Node *R, bool Changed) {
  DeclarationPair D;
  D.kind = K;
  D.left = L;
  D.right = R;
  D.signatureChanged = Changed;
  MatchedLeft.insert(L);
  MatchedRight.insert(R);
  Res.pairs.push_back(std::move(D));
  return Res.pairs.size() - 1;
}

std::size_t DeclMatcher::matchTypes(Node *L, Node *R) {
  addPair(DeclKind::Type, L, R,
          qualifiedTypeName(L) != qualifiedTypeName(R));
  ClassDiff D;
  D.left = L;
  D.right = R;
  Res.classDiffs.push_back(std::move(D));
  std::size_t Index = Res.classDiffs.size() - 1;
  matchMembers(Index);
  return Index;
}

void DeclMatcher::matchMembers(std::size_t CI) {
  Node *TL = Res.classDiffs[CI].left, *TR = Res.classDiffs[CI].right;
  std::vector<Node *> ML = membersOf(TL), MR = membersOf(TR);
  std::map<std::string, std::vector<Node *>> ByKey;
  for (Node *M : MR)
    ByKey[signatureOf(M).key()].push_back(M);
  std::vector<std::pair<Node *, Node *>> Found;
  std::set<const Node *> UsedRight;
  for (Node *M : ML) {
    auto &Cands = ByKey[signatureOf(M).key()];
    if (Cands.empty())
      continue;
    Node *R = Cands.front();
    Cands.erase(Cands.begin());
    Found.emplace_back(M, R);
    UsedRight.insert(R);
  }
  std::set<const Node *> UsedLeft;
  for (auto &[L, R] : Found) {
    UsedLeft.insert(L);
    DeclKind K = signatureOf(L).kind;
    std::size_t PI = addPair(K, L, R, false);
    Node *BL = bodyOf(L), *BR = bodyOf(R);
    if (BL && BR && (K == DeclKind::Method || K == DeclKind::Initializer)) {
      Fragment FL(BL), FR(BR);
      Res.pairs[PI].statementMappings = mapStatements(FL, FR).mappings;
    }
    ClassDiff &D = Res.classDiffs[CI];
    D.pairs.push_back(PI);
    for (const StatementMapping &SM : Res.pairs[PI].statementMappings)
      D.replacements.insert(D.replacements.end(), SM.replacements.begin(),
                            SM.replacements.end());
  }
  ClassDiff &D = Res.classDiffs[CI];
  auto Sort = [&](const std::vector<Node *> &Members, const std::set<const Node *> &Used,
                  std::vector<Node *> &Methods, std::vector<Node *> &Fields,
                  std::vector<Node *> &Other) {
    for (Node *M : Members) {
      if (Used.count(M))
        continue;
      if (M->type == "MethodDeclaration")
        Methods.push_back(M);
      else if (M->type == "FieldDeclaration")
        Fields.push_back(M);
      else
        Other.push_back(M);
    }
  };
  Sort(ML, UsedLeft, D.removedMethods, D.removedFields, D.removedOther);
  Sort(MR, UsedRight, D.addedMethods, D.addedFields, D.addedOther);
}

void DeclMatcher::phase1() {
  std::map<std::string, std::vector<Node *>> Right;
  for (Node *T : RightTypes)
    Right[qualifiedTypeName(T)].push_back(T);
  for (Node *T : LeftTypes) {
    auto It = Right.find(qualifiedTypeName(T));
    if (It == Right.end() || It->second.size() != 1 ||
        MatchedRight.count(It->second.front()))
      continue;
    matchTypes(T, It->second.front());
  }
}

namespace {

void signatureRefactorings(Node *L, Node *R, std::vector<Refactoring> &Out) {
  Signature SL = signatureOf(L), SR = signatureOf(R);
  std::string Where = " in class " + qualifiedTypeName(enclosingType(R));
  auto Emit = [&](const std::string &Type, const std::string &What,
                  bool Declaration) {
    Refactoring F;
    F.type = Type;
    F.description = Type + " " + What + Where;
    F.leftDecl = L;
    F.rightDecl = R;
    if (Declaration)
      F.mappings.push_back({L, R, MappingTag::Declaration});
    Out.push_back(std::move(F));
  };
  if (simpleName(L) != simpleName(R) && !L->constructor)
    Emit("Rename Method", SL.shortForm() + " renamed to " + SR.shortForm(),
         true);
  auto PL = L->childrenIn(Slot::Parameter), PR = R->childrenIn(Slot::Parameter);
  auto TypeOf = [](const Node *P) {
    const Node *T = P->child(Slot::Type);
    return (T ? T->value : "") + P->value;
  };
  if (PL.size() == PR.size()) {
    for (std::size_t I = 0; I < PL.size(); ++I)
      if (TypeOf(PL[I]) != TypeOf(PR[I]))
        Emit("Change Parameter Type",
             simpleName(PL[I]) + " : " + TypeOf(PL[I]) + " to " +
                 simpleName(PR[I]) + " : " + TypeOf(PR[I]) + " in method " +
                 SR.shortForm(),
             false);
  } else {
    auto Names = [](const std::vector<Node *> &Ps) {
      std::set<std::string> S;
      for (const Node *P : Ps)
        S.insert(simpleName(P));
      return S;
    };
    auto NL = Names(PL), NR = Names(PR);
    for (const Node *P : PL)
      if (!NR.count(simpleName(P)))
        Emit("Remove Parameter",
             simpleName(P) + " : " + TypeOf(P) + " in method " + SL.shortForm(),
             false);
    for (const Node *P : PR)
      if (!NL.count(simpleName(P)))
        Emit("Add Parameter",
             simpleName(P) + " : " + TypeOf(P) + " in method " + SR.shortForm(),
             false);
  }
  if (SL.returnType && SR.returnType && *SL.returnType != *SR.returnType)
    Emit("Change Return Type",
         *SL.returnType + " to " + *SR.returnType + " in method " +
             SR.shortForm(),
         false);
}

} // namespace

void DeclMatcher::phase2(std::size_t CI) {
  std::vector<MethodCandidate> Cands;
  {
    ClassDiff &D = Res.classDiffs[CI];
    for (Node *L : D.removedMethods)
      for (Node *R : D.addedMethods) {
        MethodCandidate C = evaluateMethodPair(L, R);
        if (C.admissible)
          Cands.push_back(std::move(C));
      }
  }
  std::sort(Cands.begin(), Cands.end(), candidateBefore);
  std::set<const Node *> Used;
  for (MethodCandidate &C : Cands) {
    if (Used.count(C.left) || Used.count(C.right))
      continue;
    Used.insert(C.left);
    Used.insert(C.right);
    std::size_t PI = addPair(DeclKind::Method, C.left, C.right, true);
    Res.pairs[PI].statementMappings = C.result.mappings;
    ClassDiff &D = Res.classDiffs[CI];
    D.pairs.push_back(PI);
    std::erase(D.removedMethods, C.left);
    std::erase(D.addedMethods, C.right);
    for (const StatementMapping &SM : C.result.mappings)
      D.replacements.insert(D.replacements.end(), SM.replacements.begin(),
                            SM.replacements.end());
    signatureRefactorings(C.left, C.right, Res.refactorings);
  }
  renameFields(Res.classDiffs[CI]);
}

void DeclMatcher::renameFields(ClassDiff &D) {
  auto Strip = [](std::string S) {
    if (S.rfind("this.", 0) == 0)
      S = S.substr(5);
    return S;
  };
  struct Cand {
    Node *left, *right;
    int support;
  };
  std::vector<Cand> Cands;
  for (Node *FL : D.removedFields) {
    if (fieldFragments(FL) != 1)
      continue;
    for (Node *FR : D.addedFields) {
      if (fieldFragments(FR) != 1)
        continue;
      std::string A = fieldName(FL), B = fieldName(FR);
      int Support = 0;
      bool Conflict = false;
      for (const Replacement &R : D.replacements) {
        if (R.kind != ReplacementKind::VariableRename)
          continue;
        std::string X = Strip(R.before), Y = Strip(R.after);
        if (X == A && Y == B)
          ++Support;
        else if (X == A || Y == B)
          Conflict = true;
      }
      if (Support > 0 && !Conflict)
        Cands.push_back({FL, FR, Support});
    }
  }
  std::stable_sort(Cands.begin(), Cands.end(), [](const Cand &A, const Cand &B) {
    return A.support > B.support;
  });
  std::set<const Node *> Used;
  for (const Cand &C : Cands) {
    if (Used.count(C.left) || Used.count(C.right))
      continue;
    Used.insert(C.left);
    Used.insert(C.right);
    D.pairs.push_back(addPair(DeclKind::Field, C.left, C.right, true));
    std::erase(D.removedFields, C.left);
    std::erase(D.addedFields, C.right);
    Refactoring F;
    F.type = "Rename Field";
    F.description = "Rename Field " + fieldName(C.left) + " to " +
                    fieldName(C.right) + " in class " +
                    qualifiedTypeName(D.right);
    F.leftDecl = C.left;
    F.rightDecl = C.right;
    F.mappings.push_back({C.left, C.right, MappingTag::Declaration});
    Res.refactorings.push_back(std::move(F));
  }
}

void DeclMatcher::phase3() {
  std::vector<Node *> L, R;
  for (Node *T : LeftTypes)
    if (!MatchedLeft.count(T))
      L.push_back(T);
  for (Node *T : RightTypes)
    if (!MatchedRight.count(T))
      R.push_back(T);
  auto Keys = [](const Node *T) {
    std::set<std::string> K;
    for (const Node *M : membersOf(T))
      K.insert(signatureOf(M).key());
    return K;
  };
  struct Cand {
    Node *left, *right;
    int common;
    double similarity;
    int distance;
  };
  std::vector<Cand> Cands;
  for (Node *A : L) {
    auto KA = Keys(A);
    for (Node *B : R) {
      auto KB = Keys(B);
      int Common = 0;
      for (const std::string &K : KA)
        Common += KB.count(K);
      std::size_t Smaller = std::min(KA.size(), KB.size());
      if (Common == 0 || 2 * static_cast<std::size_t>(Common) < Smaller)
        continue;
      Cands.push_back({A, B, Common, nameSimilarity(simpleName(A), simpleName(B)),
                       packageDistance(packageOf(A), packageOf(B))});
    }
  }
  std::stable_sort(Cands.begin(), Cands.end(), [](const Cand &A, const Cand &B) {
    if (A.common != B.common)
      return A.common > B.common;
    if (A.similarity != B.similarity)
      return A.similarity > B.similarity;
    return A.distance < B.distance;
  });
  for (const Cand &C : Cands) {
    if (MatchedLeft.count(C.left) || MatchedRight.count(C.right))
      continue;
    std::size_t CI = matchTypes(C.left, C.right);
    bool Renamed = simpleName(C.left) != simpleName(C.right);
    std::string QL = qualifiedTypeName(C.left), QR = qualifiedTypeName(C.right);
    bool Moved = QL.substr(0, QL.rfind('.') + 1) != QR.substr(0, QR.rfind('.') + 1);
    Refactoring F;
    F.type = Renamed && Moved ? "Move and Rename Class"
             : Renamed        ? "Rename Class"
                              : "Move Class";
    F.description = F.type + " " + QL + " to " + QR;
    F.leftDecl = C.left;
    F.rightDecl = C.right;
    if (Renamed)
      F.mappings.push_back({C.left, C.right, MappingTag::Declaration});
    if (Moved)
      F.mappings.push_back({C.left, C.right, moveTag(C.left, C.right)});
    Res.refactorings.push_back(std::move(F));
    phase2(CI);
  }
}

void DeclMatcher::phase4() {
  // owner of every residue method, with the class diff it came from (or -1)
  struct Residue {
    Node *member;
    int diff;
  };
  std::vector<Residue> L, R;
  for (std::size_t I = 0; I < Res.classDiffs.size(); ++I) {
    for (Node *M : Res.classDiffs[I].removedMethods)
      L.push_back({M, static_cast<int>(I)});
    for (Node *M : Res.classDiffs[I].addedMethods)
      R.push_back({M, static_cast<int>(I)});
  }
  for (Node *T : LeftTypes)
    if (!MatchedLeft.count(T))
      for (Node *M : membersOf(T))
        if (M->type == "MethodDeclaration")
          L.push_back({M, -1});
  for (Node *T : RightTypes)
    if (!MatchedRight.count(T))
      for (Node *M : membersOf(T))
        if (M->type == "MethodDeclaration")
          R.push_back({M, -1});

  std::vector<MethodCandidate> Cands;
  for (const Residue &A : L)
    for (const Residue &B : R) {
      if (A.member->constructor || B.member->constructor)
        continue;
      if (A.diff >= 0 && A.diff == B.diff)
        continue; // same type pair: phase 2 already decided
      MethodCandidate C = evaluateMethodPair(A.member, B.member);
      if (C.admissible && !C.result.mappings.empty())
        Cands.push_back(std::move(C));
    }
  std::sort(Cands.begin(), Cands.end(), candidateBefore);

  // counterpart of a type on the other side, when matched
  auto Counterpart = [&](const Node *T, bool FromLeft) -> const Node * {
    for (const DeclarationPair &D : Res.pairs)
      if (D.kind == DeclKind::Type && (FromLeft ? D.left : D.right) == T)
        return FromLeft ? D.right : D.left;
    return nullptr;
  };
  auto MoveKind = [&](const Node *A, const Node *B, const std::string &What) {
    const Node *OL = enclosingType(A), *OR = enclosingType(B);
    const Node *OLRight = Counterpart(OL, true);
    const Node *ORLeft = Counterpart(OR, false);
    if (declaresSupertype(OLRight ? OLRight : OL, simpleName(OR)))
      return "Pull Up " + What;
    if (declaresSupertype(ORLeft ? ORLeft : OR, simpleName(OL)))
      return "Push Down " + What;
    return std::string();
  };

  std::set<const Node *> Used;
  std::vector<std::pair<Node *, Node *>> Moved;
  for (MethodCandidate &C : Cands) {
    if (Used.count(C.left) || Used.count(C.right))
      continue;
    Used.insert(C.left);
    Used.insert(C.right);
    bool Changed = signatureOf(C.left).key() != signatureOf(C.right).key();
    std::size_t PI = addPair(DeclKind::Method, C.left, C.right, Changed);
    Res.pairs[PI].statementMappings = C.result.mappings;
    for (ClassDiff &D : Res.classDiffs) {
      std::erase(D.removedMethods, C.left);
      std::erase(D.addedMethods, C.right);
    }
    Refactoring F;
    std::string Kind = MoveKind(C.left, C.right, "Method");
    bool Renamed = simpleName(C.left) != simpleName(C.right);
    F.type = !Kind.empty() ? Kind
             : Renamed     ? "Move and Rename Method"
                           : "Move Method";
    F.description = F.type + " " + signatureOf(C.left).shortForm() + " from " +
                    qualifiedTypeName(enclosingType(C.left)) + " to " +
                    signatureOf(C.right).shortForm() + " in " +
                    qualifiedTypeName(enclosingType(C.right));
    F.leftDecl = C.left;
    F.rightDecl = C.right;
    if (Renamed && Kind.empty())
      F.mappings.push_back({C.left, C.right, MappingTag::Declaration});
    MappingTag Tag = moveTag(C.left, C.right);
    F.mappings.push_back({C.left, C.right, Tag});
    for (const StatementMapping &SM : C.result.mappings)
      F.mappings.push_back({SM.left, SM.right, Tag});
    F.statementMappings = C.result.mappings;
    Res.refactorings.push_back(std::move(F));
    Moved.emplace_back(C.left, C.right);
  }

  // fields referenced from moved methods follow them
  auto FieldsOf = [&](const Node *Type, bool Left) {
    std::vector<Node *> Out;
    if (!(Left ? MatchedLeft : MatchedRight).count(Type)) {
      for (Node *M : membersOf(Type))
        if (M->type == "FieldDeclaration")
          Out.push_back(M);
      return Out;
    }
    for (const ClassDiff &D : Res.classDiffs)
      if ((Left ? D.left : D.right) == Type)
        return Left ? D.removedFields : D.addedFields;
    return Out;
  };
  for (auto &[A, B] : Moved) {
    std::set<std::string> Names;
    preorder(bodyOf(A) ? bodyOf(A) : A, [&](Node *N) {
      if (N->type == "SimpleName")
        Names.insert(N->value);
    });
    for (Node *FL : FieldsOf(enclosingType(A), true)) {
      if (MatchedLeft.count(FL) || !Names.count(fieldName(FL)))
        continue;
      for (Node *FR : FieldsOf(enclosingType(B), false)) {
        if (MatchedRight.count(FR) || fieldName(FR) != fieldName(FL))
          continue;
        addPair(DeclKind::Field, FL, FR, false);
        for (ClassDiff &D : Res.classDiffs) {
          std::erase(D.removedFields, FL);
          std::erase(D.addedFields, FR);
        }
        std::string Kind = MoveKind(FL, FR, "Field");
        Refactoring F;
        F.type = Kind.empty() ? "Move Field" : Kind;
        F.description = F.type + " " + fieldName(FL) + " from " +
                        qualifiedTypeName(enclosingType(FL)) + " to " +
                        qualifiedTypeName(enclosingType(FR));
        F.leftDecl = FL;
        F.rightDecl = FR;
        F.mappings.push_back({FL, FR, moveTag(FL, FR)});
        Res.refactorings.push_back(std::move(F));
        break;
      }
    }
  }
}

void DeclMatcher::collectResidue() {
  Res.removedTypes.clear();
  Res.addedTypes.clear();
  for (Node *T : LeftTypes)
    if (!MatchedLeft.count(T))
      Res.removedTypes.push_back(T);
  for (Node *T : RightTypes)
    if (!MatchedRight.count(T))
      Res.addedTypes.push_back(T);
  Res.removedMethods.clear();
  Res.addedMethods.clear();
  Res.removedFields.clear();
  Res.addedFields.clear();
  for (const ClassDiff &D : Res.classDiffs) {
    Res.removedMethods.insert(Res.removedMethods.end(), D.removedMethods.begin(),
                              D.removedMethods.end());
    Res.addedMethods.insert(Res.addedMethods.end(), D.addedMethods.begin(),
                            D.addedMethods.end());
    Res.removedFields.insert(Res.removedFields.end(), D.removedFields.begin(),
                             D.removedFields.end());
    Res.addedFields.insert(Res.addedFields.end(), D.addedFields.begin(),
                           D.addedFields.end());
  }
  auto Members = [&](const std::vector<Node *> &Types, bool Left) {
    for (Node *T : Types)
      for (Node *M : membersOf(T)) {
        if ((Left ? MatchedLeft : MatchedRight).count(M))
          continue;
        if (M->type == "MethodDeclaration")
          (Left ? Res.removedMethods : Res.addedMethods).push_back(M);
        else if (M->type == "FieldDeclaration")
          (Left ? Res.removedFields : Res.addedFields).push_back(M);
      }
  };
  Members(Res.removedTypes, true);
  Members(Res.addedTypes, false);
}

DeclMatchResult DeclMatcher::run() {
  phase1();
  std::size_t N = Res.classDiffs.size();
  for (std::size_t I = 0; I < N; ++I)
    phase2(I);
  phase3();
  phase4();
  collectResidue();
  return Res;
}

} // namespace semdiff
