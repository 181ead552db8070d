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
#include "semdiff/ast.hpp"
#include "semdiff/java.hpp"

namespace semdiff {

namespace {

std::string join(const std::vector<Node *> &Ns, const char *Sep,
                 std::string (*F)(const Node *)) {
  std::string R;
  for (std::size_t I = 0; I < Ns.size(); ++I) {
    if (I)
      R += Sep;
    R += F(Ns[I]);
  }
  return R;
}

std::string full(const Node *N);

std::string modifiersOf(const Node *N) {
  std::string R;
  for (const Node *C : N->children)
    if (C->type == "Modifier")
      R += C->value + " ";
  return R;
}

std::string args(const Node *N) {
  return "(" + join(N->childrenIn(Slot::Argument), ", ", full) + ")";
}

std::string orEmpty(const Node *N) { return N ? full(N) : std::string(); }

std::string variableDecl(const Node *N, bool Semi) {
  std::string R = modifiersOf(N) + full(N->child(Slot::Type)) + " ";
  std::vector<Node *> Frags;
  for (Node *C : N->children)
    if (C->type == "VariableDeclarationFragment")
      Frags.push_back(C);
  R += join(Frags, ", ", full);
  return Semi ? R + ";" : R;
}

std::string methodHeader(const Node *N) {
  std::string R = modifiersOf(N);
  if (const Node *T = N->child(Slot::ReturnType))
    R += full(T) + " ";
  R += orEmpty(N->child(Slot::Name));
  R += "(" + join(N->childrenIn(Slot::Parameter), ", ", full) + ")";
  auto Thrown = N->childrenIn(Slot::Thrown);
  if (!Thrown.empty())
    R += " throws " + join(Thrown, ", ", full);
  return R;
}

std::string typeHeader(const Node *N) {
  std::string R = modifiersOf(N);
  if (N->type == "EnumDeclaration")
    R += "enum ";
  else
    R += N->value == "interface" ? "interface " : "class ";
  R += orEmpty(N->child(Slot::Name));
  if (const Node *S = N->child(Slot::Superclass))
    R += " extends " + full(S);
  auto Ifs = N->childrenIn(Slot::Interface);
  if (!Ifs.empty())
    R += (N->value == "interface" ? " extends " : " implements ") +
         join(Ifs, ", ", full);
  return R;
}

std::string forHeader(const Node *N) {
  std::string R = "for (";
  auto Init = N->childrenIn(Slot::Init);
  if (Init.size() == 1 && Init[0]->type == "VariableDeclarationStatement")
    R += variableDecl(Init[0], false);
  else
    R += join(Init, ", ", full);
  R += "; " + orEmpty(N->child(Slot::Condition)) + "; ";
  R += join(N->childrenIn(Slot::Update), ", ", full) + ")";
  return R;
}

std::string header(const Node *N) {
  const std::string &T = N->type;
  if (T == "IfStatement")
    return "if (" + full(N->child(Slot::Condition)) + ")";
  if (T == "ForStatement")
    return forHeader(N);
  if (T == "EnhancedForStatement")
    return "for (" + full(N->child(Slot::Parameter)) + " : " +
           full(N->child(Slot::Expression)) + ")";
  if (T == "WhileStatement")
    return "while (" + full(N->child(Slot::Condition)) + ")";
  if (T == "DoStatement")
    return "do while (" + full(N->child(Slot::Condition)) + ")";
  if (T == "SwitchStatement")
    return "switch (" + full(N->child(Slot::Expression)) + ")";
  if (T == "TryStatement")
    return "try";
  if (T == "CatchClause")
    return "catch (" + full(N->child(Slot::Exception)) + ")";
  if (T == "SynchronizedStatement")
    return "synchronized (" + full(N->child(Slot::Expression)) + ")";
  if (T == "LabeledStatement")
    return full(N->child(Slot::Label)) + ":";
  if (T == "MethodDeclaration")
    return methodHeader(N);
  if (T == "TypeDeclaration" || T == "EnumDeclaration")
    return typeHeader(N);
  if (T == "Initializer")
    return modifiersOf(N) + "initializer";
  if (T == "Block")
    return "{";
  return full(N);
}

std::string body(const Node *N) { return N ? full(N) : std::string(";"); }

std::string full(const Node *N) {
  const std::string &T = N->type;
  if (T == "SimpleName" || T == "QualifiedName" || T == "NumberLiteral" ||
      T == "StringLiteral" || T == "CharacterLiteral" ||
      T == "BooleanLiteral" || T == "NullLiteral" || T == "ThisExpression" ||
      T == "Modifier" || T == "InfixOperator" || isTypeLabel(T))
    return N->value;
  if (T == "MethodInvocation") {
    std::string R;
    if (const Node *Rc = N->child(Slot::Receiver))
      R = full(Rc) + ".";
    return R + full(N->child(Slot::Name)) + args(N);
  }
  if (T == "SuperMethodInvocation")
    return "super." + full(N->child(Slot::Name)) + args(N);
  if (T == "ClassInstanceCreation")
    return "new " + full(N->child(Slot::Type)) + args(N);
  if (T == "FieldAccess")
    return full(N->child(Slot::Receiver)) + "." + full(N->child(Slot::Name));
  if (T == "InfixExpression")
    return full(N->children[0]) + " " + full(N->children[1]) + " " +
           full(N->children[2]);
  if (T == "PrefixExpression")
    return N->value + full(N->children[0]);
  if (T == "PostfixExpression")
    return full(N->children[0]) + N->value;
  if (T == "Assignment")
    return full(N->children[0]) + " " + N->value + " " + full(N->children[1]);
  if (T == "ConditionalExpression")
    return full(N->children[0]) + " ? " + full(N->children[1]) + " : " +
           full(N->children[2]);
  if (T == "CastExpression")
    return "(" + full(N->children[0]) + ") " + full(N->children[1]);
  if (T == "InstanceofExpression")
    return full(N->children[0]) + " instanceof " + full(N->children[1]);
  if (T == "LambdaExpression") {
    auto Ps = N->childrenIn(Slot::Parameter);
    std::string R = N->value.empty() && Ps.size() == 1
                        ? full(Ps[0])
                        : "(" + join(Ps, ", ", full) + ")";
    return R + " -> " + full(N->child(Slot::Body));
  }
  if (T == "TypeLiteral")
    return full(N->children[0]) + ".class";
  if (T == "ArrayAccess")
    return full(N->children[0]) + "[" + full(N->children[1]) + "]";
  if (T == "ArrayCreation") {
    const Node *Ty = N->child(Slot::Type);
    int Dims = 0;
    while (Ty->type == "ArrayType") {
      ++Dims;
      Ty = Ty->children[0];
    }
    std::string R = "new " + full(Ty);
    auto Exprs = N->childrenIn(Slot::Dimension);
    for (const Node *D : Exprs)
      R += "[" + full(D) + "]";
    for (int I = static_cast<int>(Exprs.size()); I < Dims; ++I)
      R += "[]";
    if (const Node *In = N->child(Slot::Initializer))
      R += " " + full(In);
    return R;
  }
  if (T == "ArrayInitializer")
    return "{" + join(N->children, ", ", full) + "}";
  if (T == "ParenthesizedExpression")
    return "(" + full(N->children[0]) + ")";
  if (T == "SingleVariableDeclaration")
    return modifiersOf(N) + full(N->child(Slot::Type)) + N->value + " " +
           full(N->child(Slot::Name));
  if (T == "VariableDeclarationFragment") {
    std::string R = full(N->child(Slot::Name));
    if (const Node *I = N->child(Slot::Initializer))
      R += " = " + full(I);
    return R;
  }
  // statements
  if (T == "Block") {
    if (N->children.empty())
      return "{}";
    return "{ " + join(N->children, " ", full) + " }";
  }
  if (T == "VariableDeclarationStatement")
    return variableDecl(N, !(N->parent && N->parent->type == "ForStatement"));
  if (T == "ExpressionStatement")
    return full(N->children[0]) + ";";
  if (T == "ReturnStatement")
    return N->children.empty() ? "return;"
                               : "return " + full(N->children[0]) + ";";
  if (T == "ThrowStatement")
    return "throw " + full(N->children[0]) + ";";
  if (T == "BreakStatement" || T == "ContinueStatement") {
    std::string R = T == "BreakStatement" ? "break" : "continue";
    if (!N->children.empty())
      R += " " + full(N->children[0]);
    return R + ";";
  }
  if (T == "SwitchCase") {
    if (N->value == "default")
      return "default:";
    return "case " + full(N->children[0]) + ":";
  }
  if (T == "IfStatement") {
    std::string R = header(N) + " " + full(N->child(Slot::Then));
    if (const Node *E = N->child(Slot::Else))
      R += " else " + full(E);
    return R;
  }
  if (T == "ForStatement" || T == "EnhancedForStatement" ||
      T == "WhileStatement" || T == "SynchronizedStatement" ||
      T == "CatchClause")
    return header(N) + " " + full(N->child(Slot::Body));
  if (T == "LabeledStatement")
    return header(N) + " " + full(N->child(Slot::Body));
  if (T == "DoStatement")
    return "do " + full(N->child(Slot::Body)) + " while (" +
           full(N->child(Slot::Condition)) + ");";
  if (T == "SwitchStatement") {
    std::vector<Node *> Rest(N->children.begin() + 1, N->children.end());
    return header(N) + " {" + (Rest.empty() ? "" : " " + join(Rest, " ", full) + " ") + "}";
  }
  if (T == "TryStatement") {
    std::string R = "try " + full(N->child(Slot::Body));
    for (const Node *C : N->children)
      if (C->type == "CatchClause")
        R += " " + full(C);
    if (const Node *Fi = N->child(Slot::Finally))
      R += " finally " + full(Fi);
    return R;
  }
  // declarations
  if (T == "MethodDeclaration")
    return methodHeader(N) + " " + body(N->child(Slot::Body));
  if (T == "FieldDeclaration")
    return variableDecl(N, true);
  if (T == "Initializer")
    return modifiersOf(N) + full(N->child(Slot::Body));
  if (T == "EnumConstantDeclaration") {
    std::string R = full(N->child(Slot::Name));
    if (!N->childrenIn(Slot::Argument).empty())
      R += args(N);
    return R;
  }
  if (T == "TypeDeclaration" || T == "EnumDeclaration") {
    std::vector<Node *> Consts, Members;
    for (Node *C : N->children) {
      if (C->type == "EnumConstantDeclaration")
        Consts.push_back(C);
      else if (isBodyDeclaration(C))
        Members.push_back(C);
    }
    std::string R = typeHeader(N) + " {";
    if (!Consts.empty())
      R += " " + join(Consts, ", ", full) + ";";
    if (!Members.empty())
      R += " " + join(Members, " ", full);
    return R + " }";
  }
  if (T == "PackageDeclaration")
    return "package " + full(N->children[0]) + ";";
  if (T == "ImportDeclaration") {
    std::string R = "import ";
    if (N->value.rfind("static", 0) == 0)
      R += "static ";
    R += full(N->children[0]);
    if (!N->value.empty() && N->value.back() == '*')
      R += ".*";
    return R + ";";
  }
  if (T == "CompilationUnit")
    return join(N->children, " ", full);
  std::string R;
  for (const Node *C : N->children)
    R += (R.empty() ? "" : " ") + full(C);
  return R.empty() ? N->value : R;
}

} // namespace

std::string printFull(const Node *N) { return full(N); }

std::string headerText(const Node *N) { return header(N); }

std::string prettyPrint(const Node *N) {
  const std::string &T = N->type;
  if (T == "Block")
    return "{...}";
  if (isCompositeStatement(N) || T == "MethodDeclaration" ||
      T == "TypeDeclaration" || T == "EnumDeclaration" || T == "Initializer")
    return header(N) + " {...}";
  return full(N);
}

} // namespace semdiff
