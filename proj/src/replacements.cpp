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
#include <cctype>
#include <functional>

namespace semdiff {

std::string kindName(ReplacementKind K) {
  switch (K) {
  case ReplacementKind::VariableRename:
    return "variable-rename";
  case ReplacementKind::VariableLiteral:
    return "variable-literal";
  case ReplacementKind::VariableInvocation:
    return "variable-invocation";
  case ReplacementKind::VariableCreation:
    return "variable-creation";
  case ReplacementKind::TypeChange:
    return "type-change";
  case ReplacementKind::ArgumentChange:
    return "argument-change";
  case ReplacementKind::InvokerChange:
    return "invoker-change";
  }
  return "";
}

bool operator==(const Replacement &A, const Replacement &B) {
  return A.before == B.before && A.after == B.after && A.kind == B.kind;
}

namespace {

bool identChar(char C) {
  return std::isalnum(static_cast<unsigned char>(C)) || C == '_' || C == '$';
}

bool boundedAt(const std::string &Text, std::size_t Pos, const std::string &Pat) {
  if (Text.compare(Pos, Pat.size(), Pat) != 0)
    return false;
  if (identChar(Pat.front()) && Pos > 0 && identChar(Text[Pos - 1]))
    return false;
  std::size_t End = Pos + Pat.size();
  if (identChar(Pat.back()) && End < Text.size() && identChar(Text[End]))
    return false;
  return true;
}

} // namespace

std::string applyReplacements(const std::string &Text,
                              const std::vector<Replacement> &Rs) {
  std::vector<const Replacement *> Order;
  for (const Replacement &R : Rs)
    if (!R.before.empty())
      Order.push_back(&R);
  std::stable_sort(Order.begin(), Order.end(),
                   [](const Replacement *A, const Replacement *B) {
                     return A->before.size() > B->before.size();
                   });
  std::string Out;
  for (std::size_t I = 0; I < Text.size();) {
    const Replacement *Hit = nullptr;
    for (const Replacement *R : Order)
      if (boundedAt(Text, I, R->before)) {
        Hit = R;
        break;
      }
    if (Hit) {
      Out += Hit->after;
      I += Hit->before.size();
    } else {
      Out += Text[I++];
    }
  }
  return Out;
}

int levenshtein(const std::string &A, const std::string &B) {
  std::vector<int> Prev(B.size() + 1), Cur(B.size() + 1);
  for (std::size_t J = 0; J <= B.size(); ++J)
    Prev[J] = static_cast<int>(J);
  for (std::size_t I = 1; I <= A.size(); ++I) {
    Cur[0] = static_cast<int>(I);
    for (std::size_t J = 1; J <= B.size(); ++J)
      Cur[J] = std::min({Prev[J] + 1, Cur[J - 1] + 1,
                         Prev[J - 1] + (A[I - 1] != B[J - 1] ? 1 : 0)});
    std::swap(Prev, Cur);
  }
  return Prev[B.size()];
}

std::string statementText(const Node *S) {
  return isCompositeStatement(S) ? headerText(S) : printFull(S);
}

namespace {

bool isLiteral(const Node *N) {
  const std::string &T = N->type;
  return T == "NumberLiteral" || T == "StringLiteral" ||
         T == "CharacterLiteral" || T == "BooleanLiteral" ||
         T == "NullLiteral";
}

bool isMethodName(const Node *N) {
  return N->parent && N->slot == Slot::Name &&
         (N->parent->type == "MethodInvocation" ||
          N->parent->type == "SuperMethodInvocation");
}

bool isVariable(const Node *N) {
  if (N->type == "SimpleName") {
    if (isMethodName(N) || (N->parent && isTypeLabel(N->parent->type)))
      return false;
    if (N->slot == Slot::Name)
      return N->parent && (N->parent->type == "VariableDeclarationFragment" ||
                           N->parent->type == "SingleVariableDeclaration");
    return true;
  }
  return N->type == "QualifiedName" || N->type == "FieldAccess";
}

bool inCondition(const Node *N) {
  for (; N && N->parent; N = N->parent)
    if (N->slot == Slot::Condition && isCompositeStatement(N->parent))
      return true;
  return false;
}

bool headerChild(const Node *C) {
  return C->type != "Block" && !isStatement(C);
}

// `!x` against `x`, or equal shapes that differ only in operators
bool conditionInversion(const Node *A, const Node *B) {
  auto Negates = [](const Node *P, const Node *Q) {
    if (P->type != "PrefixExpression" || P->value != "!")
      return false;
    const Node *Op = P->child(Slot::Operand);
    while (Op && Op->type == "ParenthesizedExpression" && !Op->children.empty())
      Op = Op->children.front();
    return Op && isomorphic(Op, Q);
  };
  if (Negates(A, B) || Negates(B, A))
    return true;
  std::function<bool(const Node *, const Node *)> OpsOnly =
      [&](const Node *P, const Node *Q) {
        if (P->type != Q->type || P->children.size() != Q->children.size())
          return false;
        if (P->value != Q->value && P->type != "InfixOperator")
          return false;
        for (std::size_t I = 0; I < P->children.size(); ++I)
          if (!OpsOnly(P->children[I], Q->children[I]))
            return false;
        return true;
      };
  return OpsOnly(A, B);
}

// `f(x)` against `T.f(x)`: same method and arguments, receiver added,
// removed or replaced
bool sameCallOtherInvoker(const Node *A, const Node *B) {
  if (A->type != "MethodInvocation" || B->type != "MethodInvocation")
    return false;
  const Node *NA = A->child(Slot::Name), *NB = B->child(Slot::Name);
  if (!NA || !NB || NA->value != NB->value)
    return false;
  std::vector<const Node *> XA, XB;
  for (const Node *C : A->children)
    if (C->slot == Slot::Argument)
      XA.push_back(C);
  for (const Node *C : B->children)
    if (C->slot == Slot::Argument)
      XB.push_back(C);
  if (XA.size() != XB.size())
    return false;
  for (std::size_t I = 0; I < XA.size(); ++I)
    if (!isomorphic(XA[I], XB[I]))
      return false;
  return true;
}

std::optional<ReplacementKind> classify(const Node *A, const Node *B) {
  if (isTypeLabel(A->type) && isTypeLabel(B->type))
    return ReplacementKind::TypeChange;
  bool VA = isVariable(A), VB = isVariable(B);
  if (VA && VB)
    return ReplacementKind::VariableRename;
  if (VA || VB) {
    const Node *O = VA ? B : A;
    if (isLiteral(O))
      return ReplacementKind::VariableLiteral;
    if (O->type == "MethodInvocation")
      return ReplacementKind::VariableInvocation;
    if (O->type == "ClassInstanceCreation")
      return ReplacementKind::VariableCreation;
  }
  if (A->slot == Slot::Receiver && B->slot == Slot::Receiver)
    return ReplacementKind::InvokerChange;
  if (sameCallOtherInvoker(A, B))
    return ReplacementKind::InvokerChange;
  if (A->slot == Slot::Argument && B->slot == Slot::Argument &&
      isExpressionNode(A) && isExpressionNode(B))
    return ReplacementKind::ArgumentChange;
  if (inCondition(A) && inCondition(B) && conditionInversion(A, B))
    return ReplacementKind::ArgumentChange;
  return std::nullopt;
}

bool sameHead(const Node *A, const Node *B) {
  if (A->type != B->type || A->value != B->value ||
      A->children.size() != B->children.size())
    return false;
  for (std::size_t I = 0; I < A->children.size(); ++I)
    if (A->children[I]->slot != B->children[I]->slot)
      return false;
  return true;
}

bool diffNodes(const Node *A, const Node *B, std::vector<Replacement> &Out) {
  if (isomorphic(A, B))
    return true;
  if (sameHead(A, B)) {
    std::vector<Replacement> Inner;
    bool Ok = true;
    for (std::size_t I = 0; I < A->children.size() && Ok; ++I)
      Ok = diffNodes(A->children[I], B->children[I], Inner);
    if (Ok) {
      Out.insert(Out.end(), Inner.begin(), Inner.end());
      return true;
    }
  }
  auto K = classify(A, B);
  if (!K)
    return false;
  Out.push_back({printFull(A), printFull(B), *K, const_cast<Node *>(A),
                 const_cast<Node *>(B)});
  return true;
}

} // namespace

std::optional<std::vector<Replacement>> replaceAndCompare(const Node *S1,
                                                          const Node *S2) {
  std::string T1 = statementText(S1), T2 = statementText(S2);
  if (T1 == T2)
    return std::vector<Replacement>{};
  if (S1->type != S2->type)
    return std::nullopt;
  std::vector<Replacement> Rs;
  if (isCompositeStatement(S1)) {
    std::vector<const Node *> H1, H2;
    for (const Node *C : S1->children)
      if (headerChild(C))
        H1.push_back(C);
    for (const Node *C : S2->children)
      if (headerChild(C))
        H2.push_back(C);
    if (H1.size() != H2.size() || S1->value != S2->value)
      return std::nullopt;
    for (std::size_t I = 0; I < H1.size(); ++I)
      if (H1[I]->slot != H2[I]->slot || !diffNodes(H1[I], H2[I], Rs))
        return std::nullopt;
  } else if (!diffNodes(S1, S2, Rs)) {
    return std::nullopt;
  }
  std::vector<Replacement> Unique;
  for (Replacement &R : Rs)
    if (std::find(Unique.begin(), Unique.end(), R) == Unique.end())
      Unique.push_back(std::move(R));
  // the same text may not be rewritten two different ways
  for (std::size_t I = 0; I < Unique.size(); ++I)
    for (std::size_t J = I + 1; J < Unique.size(); ++J)
      if (Unique[I].before == Unique[J].before)
        return std::nullopt;
  if (applyReplacements(T1, Unique) != T2)
    return std::nullopt;
  return Unique;
}

StatementMapping makeMapping(Node *L, Node *R, std::vector<Replacement> Rs) {
  StatementMapping M;
  M.left = L;
  M.right = R;
  M.replacements = std::move(Rs);
  M.editDistance = levenshtein(statementText(L), statementText(R));
  M.isLeaf = !isCompositeStatement(L);
  return M;
}

} // namespace semdiff
