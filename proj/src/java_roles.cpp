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

#include <set>

namespace semdiff {

namespace {
const std::set<std::string> TypeLabels = {"SimpleType",  "QualifiedType",
                                          "ParameterizedType", "ArrayType",
                                          "UnionType",   "PrimitiveType"};

const std::set<std::string> CompositeLabels = {
    "IfStatement",    "ForStatement",     "EnhancedForStatement",
    "WhileStatement", "DoStatement",      "SwitchStatement",
    "TryStatement",   "CatchClause",      "SynchronizedStatement",
    "LabeledStatement"};

const std::set<std::string> LeafLabels = {
    "ReturnStatement",   "ThrowStatement",     "BreakStatement",
    "ContinueStatement", "ExpressionStatement", "VariableDeclarationStatement",
    "SwitchCase"};

const std::set<std::string> ExpressionLabels = {
    "MethodInvocation",   "SuperMethodInvocation", "ClassInstanceCreation",
    "FieldAccess",        "QualifiedName",         "SimpleName",
    "InfixExpression",    "PrefixExpression",      "PostfixExpression",
    "Assignment",         "ConditionalExpression", "CastExpression",
    "InstanceofExpression", "LambdaExpression",    "TypeLiteral",
    "NumberLiteral",      "StringLiteral",         "BooleanLiteral",
    "NullLiteral",        "CharacterLiteral",      "ArrayAccess",
    "ArrayCreation",      "ArrayInitializer",      "ThisExpression",
    "ParenthesizedExpression"};

bool insideExpression(const Node *N) {
  for (const Node *P = N->parent; P; P = P->parent) {
    if (P->type == "LambdaExpression")
      return true;
    if (isBodyDeclaration(P))
      return false;
  }
  return false;
}
} // namespace

bool isTypeLabel(const std::string &Label) { return TypeLabels.count(Label); }

bool isExpressionNode(const Node *N) { return ExpressionLabels.count(N->type); }

bool isCompositeStatement(const Node *N) {
  return CompositeLabels.count(N->type) && !insideExpression(N);
}

bool isLeafStatement(const Node *N) {
  if (!LeafLabels.count(N->type))
    return false;
  if (N->parent && N->parent->type == "ForStatement")
    return false; // for-loop initializer
  return !insideExpression(N);
}

bool isStatement(const Node *N) {
  return isCompositeStatement(N) || isLeafStatement(N);
}

bool isTypeDeclaration(const Node *N) {
  return N->type == "TypeDeclaration" || N->type == "EnumDeclaration";
}

bool isBodyDeclaration(const Node *N) {
  return N->type == "MethodDeclaration" || N->type == "FieldDeclaration" ||
         N->type == "Initializer" || N->type == "EnumConstantDeclaration" ||
         isTypeDeclaration(N);
}

std::vector<Node *> statementChildren(const Node *N) {
  std::vector<Node *> R;
  for (Node *C : N->children) {
    if (C->type == "Block") {
      auto Sub = statementChildren(C);
      R.insert(R.end(), Sub.begin(), Sub.end());
    } else if (isStatement(C)) {
      R.push_back(C);
    }
  }
  return R;
}

std::string modifierGroup(const std::string &M) {
  if (M == "public" || M == "private" || M == "protected")
    return "access";
  if (M == "final" || M == "sealed" || M == "non-sealed")
    return "seal";
  return M;
}

std::string semanticRole(const Node *N) {
  const Node *Top = N;
  while (Top->parent)
    Top = Top->parent;
  if (Top->type != "CompilationUnit")
    throw StructureError("detached node " + describe(N));
  const Node *P = N->parent;
  const std::string &T = N->type;
  if (T == "CompilationUnit")
    return "compilation-unit";
  const std::string &PT = P->type;

  if (T == "Block") {
    if (PT == "MethodDeclaration")
      return "method-body";
    if (PT == "Initializer")
      return "initializer-body";
    if (PT == "CatchClause")
      return "catch-body";
    if (PT == "TryStatement")
      return N->slot == Slot::Finally ? "finally-body" : "try-body";
    if (PT == "SynchronizedStatement")
      return "synchronized-body";
    if (PT == "LambdaExpression")
      return "lambda-body";
    if (CompositeLabels.count(PT))
      return "control-body";
    return "nested-block";
  }
  if (T == "SingleVariableDeclaration") {
    if (PT == "CatchClause")
      return "catch-exception";
    if (PT == "EnhancedForStatement")
      return "enhanced-for-parameter";
    if (PT == "MethodDeclaration")
      return "method-parameter";
    if (PT == "LambdaExpression")
      return "lambda-parameter";
    if (PT == "InstanceofExpression")
      return "instanceof-pattern";
    return "variable-declaration";
  }
  if (T == "MethodDeclaration")
    return N->constructor ? "constructor" : "method";
  if (T == "Modifier")
    return "modifier-" + modifierGroup(N->value);
  if (TypeLabels.count(T)) {
    if (PT == "MethodDeclaration")
      return N->slot == Slot::Thrown ? "thrown-type" : "return-type";
    if (PT == "InstanceofExpression")
      return "instanceof-type";
    if (PT == "TypeDeclaration" || PT == "EnumDeclaration")
      return N->slot == Slot::Superclass ? "superclass-type" : "interface-type";
    if (PT == "CastExpression")
      return "cast-type";
    if (PT == "ClassInstanceCreation")
      return "creation-type";
    if (PT == "ArrayCreation")
      return "array-creation-type";
    if (PT == "FieldDeclaration")
      return "field-type";
    if (PT == "VariableDeclarationStatement" ||
        PT == "SingleVariableDeclaration")
      return "variable-type";
    if (PT == "TypeLiteral")
      return "type-literal-type";
    if (PT == "ArrayType")
      return "array-element-type";
    if (PT == "ParameterizedType")
      return N->slot == Slot::TypeArgument ? "type-argument" : "parameterized-base";
    if (PT == "UnionType")
      return "union-member-type";
    if (PT == "QualifiedType")
      return "qualified-type-qualifier";
    return "type";
  }
  if (T == "SimpleName") {
    if (PT == "MethodDeclaration")
      return "method-name";
    if (PT == "TypeDeclaration" || PT == "EnumDeclaration")
      return "type-name";
    if (PT == "VariableDeclarationFragment" ||
        PT == "SingleVariableDeclaration")
      return "variable-name";
    if (PT == "EnumConstantDeclaration")
      return "enum-constant-name";
    if (PT == "LabeledStatement")
      return "statement-label";
    if (PT == "BreakStatement")
      return "break-label";
    if (PT == "ContinueStatement")
      return "continue-label";
    if (PT == "SimpleType" || PT == "QualifiedType")
      return "type-name-reference";
    if (N->slot == Slot::Name) {
      if (PT == "MethodInvocation")
        return "method-invocation-name";
      if (PT == "SuperMethodInvocation")
        return "super-invocation-name";
      if (PT == "FieldAccess")
        return "field-access-name";
      if (PT == "QualifiedName")
        return "qualified-name-name";
      if (PT == "PackageDeclaration" || PT == "ImportDeclaration")
        return "package-name";
    }
    if (PT == "QualifiedName")
      return "qualified-name-qualifier";
    return "expression-name";
  }
  return T + "@" + PT;
}

} // namespace semdiff
