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
#include "java_lexer.hpp"

#include <optional>

namespace semdiff {

using java::Tok;
using java::Token;

namespace {

const char *const ModifierWords[] = {
    "public",   "private",  "protected",    "static",    "abstract",
    "final",    "native",   "synchronized", "transient", "volatile",
    "strictfp", "default"};

class Parser {
public:
  Parser(SourceFile &F) : F(F), Toks(java::lex(F.content, F.comments)) {}

  Node *compilationUnit();

private:
  SourceFile &F;
  std::vector<Token> Toks;
  std::size_t P = 0;

  // token helpers
  const Token &cur() const { return Toks[P]; }
  const Token &peek(std::size_t K = 1) const {
    return Toks[std::min(P + K, Toks.size() - 1)];
  }
  bool at(std::string_view S) const {
    return cur().kind != Tok::String && cur().kind != Tok::Char &&
           cur().text == S;
  }
  bool atAt(std::size_t I, std::string_view S) const {
    const Token &T = Toks[std::min(I, Toks.size() - 1)];
    return T.kind != Tok::String && T.kind != Tok::Char && T.text == S;
  }
  bool accept(std::string_view S) {
    if (!at(S))
      return false;
    ++P;
    return true;
  }
  const Token &expect(std::string_view S) {
    if (!at(S))
      error("expected '" + std::string(S) + "'");
    return Toks[P++];
  }
  bool atIdent() const { return cur().kind == Tok::Ident; }
  const Token &expectIdent() {
    if (!atIdent())
      error("expected identifier");
    return Toks[P++];
  }
  std::uint32_t prevEnd() const { return P ? Toks[P - 1].end : 0; }

  [[noreturn]] void error(const std::string &Msg) const {
    std::string Got = cur().kind == Tok::End ? std::string("end of input")
                                             : "'" + std::string(cur().text) + "'";
    throw ParseError(Msg + ", found " + Got, cur().start, false);
  }
  [[noreturn]] void unsupported(const std::string &What) const {
    throw ParseError(What, cur().start, true);
  }

  Node *make(const char *Type, std::string Value, std::uint32_t Start,
             std::uint32_t End) {
    return F.make(Type, std::move(Value), Start, End);
  }
  static Node *add(Node *Parent, Node *Child, Slot S = Slot::None) {
    if (!Child)
      return nullptr;
    Child->slot = S;
    Child->parent = Parent;
    Parent->children.push_back(Child);
    return Child;
  }
  Node *simpleName(const Token &T) {
    return make("SimpleName", std::string(T.text), T.start, T.end);
  }
  std::string text(std::uint32_t S, std::uint32_t E) const {
    return F.content.substr(S, E - S);
  }

  // declarations
  Node *packageDecl();
  Node *importDecl();
  void modifiers(std::vector<Node *> &Out);
  void skipMarkerAnnotations();
  Node *typeDecl(std::vector<Node *> Mods, std::uint32_t Start);
  void classBody(Node *T, bool Enum);
  Node *member(Node *Owner);
  Node *methodRest(Node *M);
  Node *param();
  Node *enumConstant();

  // types
  Node *type();
  Node *classType();
  std::optional<std::size_t> scanType(std::size_t I) const;
  bool atLocalVarDecl(std::size_t I, bool ForEach) const;
  Node *name();

  // statements
  Node *block();
  Node *statement();
  Node *localVarDecl(const char *Label, bool NeedSemi);
  Node *fragment();
  Node *varInit();
  Node *forStatement();
  Node *switchStatement();
  Node *tryStatement();

  // expressions
  Node *expression();
  Node *assignment();
  Node *conditional();
  Node *binary(int Prec);
  Node *unary();
  Node *postfix(Node *E);
  Node *primary();
  Node *selectors(Node *E);
  Node *creation();
  Node *lambda();
  Node *arrayInit();
  void arguments(Node *Call);
  bool atCast() const;
  bool atLambda() const;
  std::string binaryOp(int &Prec, std::size_t &Len) const;
};

// ---------------------------------------------------------------- declarations

Node *Parser::compilationUnit() {
  Node *CU = make("CompilationUnit", "", 0,
                  static_cast<std::uint32_t>(F.content.size()));
  skipMarkerAnnotations();
  if (at("package"))
    add(CU, packageDecl());
  while (at("import"))
    add(CU, importDecl());
  while (cur().kind != Tok::End) {
    if (accept(";"))
      continue;
    std::uint32_t Start = cur().start;
    std::vector<Node *> Mods;
    modifiers(Mods);
    add(CU, typeDecl(std::move(Mods), Start));
  }
  return CU;
}

Node *Parser::packageDecl() {
  std::uint32_t S = cur().start;
  expect("package");
  Node *N = make("PackageDeclaration", "", S, 0);
  add(N, name(), Slot::Name);
  expect(";");
  N->end = prevEnd();
  return N;
}

Node *Parser::importDecl() {
  std::uint32_t S = cur().start;
  expect("import");
  std::string Value;
  if (accept("static"))
    Value = "static";
  Node *N = make("ImportDeclaration", "", S, 0);
  add(N, name(), Slot::Name);
  if (accept(".")) {
    expect("*");
    Value += Value.empty() ? "*" : " *";
  }
  expect(";");
  N->value = Value;
  N->end = prevEnd();
  return N;
}

void Parser::skipMarkerAnnotations() {
  while (at("@")) {
    if (atAt(P + 1, "interface"))
      unsupported("annotation type declaration");
    ++P;
    expectIdent();
    while (at(".") && peek().kind == Tok::Ident)
      P += 2;
    if (at("("))
      unsupported("annotation with members");
  }
}

void Parser::modifiers(std::vector<Node *> &Out) {
  for (;;) {
    skipMarkerAnnotations();
    if (cur().text == "sealed" || cur().text == "non-sealed")
      unsupported("sealed class hierarchy");
    bool Found = false;
    for (const char *W : ModifierWords) {
      if (cur().kind == Tok::Keyword && cur().text == W) {
        // 'default' as a modifier only precedes a declaration
        if (cur().text == "default" && (atAt(P + 1, ":") || atAt(P + 1, "->")))
          break;
        Out.push_back(make("Modifier", W, cur().start, cur().end));
        ++P;
        Found = true;
        break;
      }
    }
    if (!Found)
      return;
  }
}

Node *Parser::typeDecl(std::vector<Node *> Mods, std::uint32_t Start) {
  bool Enum = false;
  std::string Value;
  if (accept("class")) {
  } else if (accept("interface")) {
    Value = "interface";
  } else if (accept("enum")) {
    Enum = true;
  } else if (cur().text == "record") {
    unsupported("record declaration");
  } else {
    error("expected type declaration");
  }
  Node *T = make(Enum ? "EnumDeclaration" : "TypeDeclaration", Value, Start, 0);
  for (Node *M : Mods)
    add(T, M);
  add(T, simpleName(expectIdent()), Slot::Name);
  if (at("<"))
    unsupported("generic type declaration");
  if (!Enum && Value.empty() && accept("extends"))
    add(T, type(), Slot::Superclass);
  if ((Value.empty() && accept("implements")) ||
      (!Value.empty() && accept("extends"))) {
    do
      add(T, type(), Slot::Interface);
    while (accept(","));
  }
  if (cur().text == "permits")
    unsupported("permits clause");
  classBody(T, Enum);
  T->end = prevEnd();
  return T;
}

void Parser::classBody(Node *T, bool Enum) {
  expect("{");
  if (Enum) {
    while (atIdent() || at("@")) {
      skipMarkerAnnotations();
      add(T, enumConstant());
      if (!accept(","))
        break;
    }
    if (!accept(";") && !at("}"))
      error("expected ';' or '}' after enum constants");
  }
  while (!at("}")) {
    if (cur().kind == Tok::End)
      error("unterminated type body");
    if (accept(";"))
      continue;
    add(T, member(T));
  }
  expect("}");
}

Node *Parser::enumConstant() {
  const Token &Id = expectIdent();
  Node *C = make("EnumConstantDeclaration", "", Id.start, 0);
  add(C, simpleName(Id), Slot::Name);
  if (at("("))
    arguments(C);
  if (at("{"))
    unsupported("enum constant with class body");
  C->end = prevEnd();
  return C;
}

Node *Parser::member(Node *Owner) {
  std::uint32_t Start = cur().start;
  std::vector<Node *> Mods;
  modifiers(Mods);
  if (at("{")) {
    Node *I = make("Initializer", "", Start, 0);
    for (Node *M : Mods)
      add(I, M);
    add(I, block(), Slot::Body);
    I->end = prevEnd();
    return I;
  }
  if (at("class") || at("interface") || at("enum") || cur().text == "record")
    return typeDecl(std::move(Mods), Start);
  if (at("<"))
    unsupported("generic method declaration");
  Node *M;
  if (atIdent() && atAt(P + 1, "(")) {
    // constructor: no return type
    M = make("MethodDeclaration", "", Start, 0);
    for (Node *Mo : Mods)
      add(M, Mo);
    Node *OwnerName = Owner ? Owner->child(Slot::Name) : nullptr;
    if (OwnerName && OwnerName->value != cur().text)
      error("method declaration without return type");
    const Token &Id = expectIdent();
    add(M, simpleName(Id), Slot::Name);
    return methodRest(M);
  }
  Node *Ty = type();
  if (atIdent() && atAt(P + 1, "(")) {
    M = make("MethodDeclaration", "", Start, 0);
    for (Node *Mo : Mods)
      add(M, Mo);
    add(M, Ty, Slot::ReturnType);
    add(M, simpleName(expectIdent()), Slot::Name);
    return methodRest(M);
  }
  Node *Fd = make("FieldDeclaration", "", Start, 0);
  for (Node *Mo : Mods)
    add(Fd, Mo);
  add(Fd, Ty, Slot::Type);
  do
    add(Fd, fragment());
  while (accept(","));
  expect(";");
  Fd->end = prevEnd();
  return Fd;
}

Node *Parser::methodRest(Node *M) {
  expect("(");
  if (!at(")")) {
    do
      add(M, param(), Slot::Parameter);
    while (accept(","));
  }
  expect(")");
  if (at("["))
    unsupported("array dimensions after parameter list");
  if (accept("throws")) {
    do
      add(M, type(), Slot::Thrown);
    while (accept(","));
  }
  if (at("{"))
    add(M, block(), Slot::Body);
  else if (at("default"))
    unsupported("annotation member default");
  else
    expect(";");
  M->end = prevEnd();
  return M;
}

Node *Parser::param() {
  std::uint32_t S = cur().start;
  std::vector<Node *> Mods;
  modifiers(Mods);
  Node *D = make("SingleVariableDeclaration", "", S, 0);
  for (Node *M : Mods)
    add(D, M);
  add(D, type(), Slot::Type);
  if (accept("..."))
    D->value = "...";
  add(D, simpleName(expectIdent()), Slot::Name);
  if (at("["))
    unsupported("array dimensions after variable name");
  D->end = prevEnd();
  return D;
}

// ----------------------------------------------------------------------- types

Node *Parser::name() {
  const Token &First = expectIdent();
  Node *N = simpleName(First);
  while (at(".") && peek().kind == Tok::Ident) {
    ++P;
    const Token &Id = Toks[P++];
    Node *Q = make("QualifiedName", N->value + "." + std::string(Id.text),
                   N->start, Id.end);
    add(Q, N, Slot::Qualifier);
    add(Q, simpleName(Id), Slot::Name);
    N = Q;
  }
  return N;
}

Node *Parser::classType() {
  if (!atIdent())
    error("expected type");
  std::uint32_t S = cur().start;
  Node *Nm = name();
  Node *T = make("SimpleType", Nm->value, S, Nm->end);
  add(T, Nm, Slot::Name);
  if (at("<")) {
    Node *PT = make("ParameterizedType", "", S, 0);
    add(PT, T, Slot::Type);
    ++P;
    if (!at(">")) {
      do {
        if (at("?"))
          unsupported("wildcard type argument");
        add(PT, type(), Slot::TypeArgument);
      } while (accept(","));
    }
    expect(">");
    PT->end = prevEnd();
    if (at(".") && peek().kind == Tok::Ident)
      unsupported("member type of a parameterized type");
    PT->value = text(PT->start, PT->end);
    T = PT;
  }
  return T;
}

Node *Parser::type() {
  std::uint32_t S = cur().start;
  Node *T;
  if (cur().kind == Tok::Keyword && java::isPrimitive(cur().text)) {
    T = make("PrimitiveType", std::string(cur().text), cur().start, cur().end);
    ++P;
  } else {
    T = classType();
  }
  while (at("[") && atAt(P + 1, "]")) {
    P += 2;
    Node *A = make("ArrayType", "", S, prevEnd());
    add(A, T, Slot::Element);
    T = A;
  }
  return T;
}

// Canonical value strings for types ignore source whitespace.
void canonicalTypeValues(Node *N) {
  for (Node *C : N->children)
    canonicalTypeValues(C);
  if (N->type == "ParameterizedType") {
    std::string V = N->children[0]->value + "<";
    for (std::size_t I = 1; I < N->children.size(); ++I)
      V += (I > 1 ? ", " : "") + N->children[I]->value;
    N->value = V + ">";
  } else if (N->type == "ArrayType") {
    N->value = N->children[0]->value + "[]";
  } else if (N->type == "UnionType") {
    std::string V;
    for (std::size_t I = 0; I < N->children.size(); ++I)
      V += (I ? " | " : "") + N->children[I]->value;
    N->value = V;
  }
}

// Returns the token index just past a syntactically plausible type.
std::optional<std::size_t> Parser::scanType(std::size_t I) const {
  auto K = [&](std::size_t J) -> const Token & {
    return Toks[std::min(J, Toks.size() - 1)];
  };
  if (K(I).kind == Tok::Keyword && java::isPrimitive(K(I).text)) {
    ++I;
  } else if (K(I).kind == Tok::Ident) {
    ++I;
    while (atAt(I, ".") && K(I + 1).kind == Tok::Ident)
      I += 2;
    if (atAt(I, "<")) {
      int Depth = 0;
      do {
        const Token &T = K(I);
        if (atAt(I, "<"))
          ++Depth;
        else if (atAt(I, ">"))
          --Depth;
        else if (!(T.kind == Tok::Ident || atAt(I, ",") || atAt(I, ".") ||
                   atAt(I, "?") || atAt(I, "[") || atAt(I, "]") ||
                   atAt(I, "&") || atAt(I, "extends") || atAt(I, "super") ||
                   (T.kind == Tok::Keyword && java::isPrimitive(T.text))))
          return std::nullopt;
        ++I;
      } while (Depth > 0);
      while (atAt(I, ".") && K(I + 1).kind == Tok::Ident)
        I += 2;
    }
  } else {
    return std::nullopt;
  }
  while (atAt(I, "[") && atAt(I + 1, "]"))
    I += 2;
  return I;
}

bool Parser::atLocalVarDecl(std::size_t I, bool ForEach) const {
  while (atAt(I, "final") || atAt(I, "@")) {
    if (atAt(I, "@"))
      I += 2;
    else
      ++I;
  }
  auto E = scanType(I);
  if (!E || Toks[*E].kind != Tok::Ident)
    return false;
  std::size_t J = *E + 1;
  if (ForEach)
    return atAt(J, ":");
  return atAt(J, "=") || atAt(J, ";") || atAt(J, ",") || atAt(J, "[");
}

// ------------------------------------------------------------------ statements

Node *Parser::block() {
  std::uint32_t S = cur().start;
  expect("{");
  Node *B = make("Block", "", S, 0);
  while (!at("}")) {
    if (cur().kind == Tok::End)
      error("unterminated block");
    add(B, statement());
  }
  expect("}");
  B->end = prevEnd();
  return B;
}

Node *Parser::fragment() {
  const Token &Id = expectIdent();
  if (at("["))
    unsupported("array dimensions after variable name");
  Node *Fr = make("VariableDeclarationFragment", "", Id.start, 0);
  add(Fr, simpleName(Id), Slot::Name);
  if (accept("="))
    add(Fr, varInit(), Slot::Initializer);
  Fr->end = prevEnd();
  return Fr;
}

Node *Parser::varInit() { return at("{") ? arrayInit() : expression(); }

Node *Parser::localVarDecl(const char *Label, bool NeedSemi) {
  std::uint32_t S = cur().start;
  std::vector<Node *> Mods;
  modifiers(Mods);
  Node *D = make(Label, "", S, 0);
  for (Node *M : Mods)
    add(D, M);
  add(D, type(), Slot::Type);
  do
    add(D, fragment());
  while (accept(","));
  if (NeedSemi)
    expect(";");
  D->end = prevEnd();
  return D;
}

Node *Parser::statement() {
  std::uint32_t S = cur().start;
  const Token &T = cur();
  if (at("{"))
    return block();
  if (at(";"))
    unsupported("empty statement");
  if (T.kind == Tok::Keyword) {
    if (accept("if")) {
      Node *N = make("IfStatement", "", S, 0);
      expect("(");
      add(N, expression(), Slot::Condition);
      expect(")");
      add(N, statement(), Slot::Then);
      if (accept("else"))
        add(N, statement(), Slot::Else);
      N->end = prevEnd();
      return N;
    }
    if (at("for"))
      return forStatement();
    if (accept("while")) {
      Node *N = make("WhileStatement", "", S, 0);
      expect("(");
      add(N, expression(), Slot::Condition);
      expect(")");
      add(N, statement(), Slot::Body);
      N->end = prevEnd();
      return N;
    }
    if (accept("do")) {
      Node *N = make("DoStatement", "", S, 0);
      add(N, statement(), Slot::Body);
      expect("while");
      expect("(");
      add(N, expression(), Slot::Condition);
      expect(")");
      expect(";");
      N->end = prevEnd();
      return N;
    }
    if (at("switch"))
      return switchStatement();
    if (at("try"))
      return tryStatement();
    if (at("synchronized") && atAt(P + 1, "(")) {
      ++P;
      Node *N = make("SynchronizedStatement", "", S, 0);
      expect("(");
      add(N, expression(), Slot::Expression);
      expect(")");
      add(N, block(), Slot::Body);
      N->end = prevEnd();
      return N;
    }
    if (accept("return")) {
      Node *N = make("ReturnStatement", "", S, 0);
      if (!at(";"))
        add(N, expression(), Slot::Expression);
      expect(";");
      N->end = prevEnd();
      return N;
    }
    if (accept("throw")) {
      Node *N = make("ThrowStatement", "", S, 0);
      add(N, expression(), Slot::Expression);
      expect(";");
      N->end = prevEnd();
      return N;
    }
    if (at("break") || at("continue")) {
      Node *N = make(at("break") ? "BreakStatement" : "ContinueStatement", "",
                     S, 0);
      ++P;
      if (atIdent())
        add(N, simpleName(Toks[P++]), Slot::Label);
      expect(";");
      N->end = prevEnd();
      return N;
    }
    if (at("class") || at("interface") || at("enum") || at("abstract") ||
        at("static"))
      unsupported("local type declaration");
    if (at("assert"))
      unsupported("assert statement");
    if ((at("this") || at("super")) && atAt(P + 1, "("))
      unsupported("explicit constructor invocation");
  }
  if (T.kind == Tok::Ident) {
    if (T.text == "record" && peek().kind == Tok::Ident)
      unsupported("local record declaration");
    if (T.text == "yield" && peek().kind != Tok::Punct)
      unsupported("yield statement");
    if (atAt(P + 1, ":") && !atAt(P + 2, ":")) {
      Node *N = make("LabeledStatement", "", S, 0);
      add(N, simpleName(Toks[P++]), Slot::Label);
      expect(":");
      add(N, statement(), Slot::Body);
      N->end = prevEnd();
      return N;
    }
  }
  if (atLocalVarDecl(P, false) || at("final") || at("@"))
    return localVarDecl("VariableDeclarationStatement", true);
  Node *N = make("ExpressionStatement", "", S, 0);
  add(N, expression(), Slot::Expression);
  expect(";");
  N->end = prevEnd();
  return N;
}

Node *Parser::forStatement() {
  std::uint32_t S = cur().start;
  expect("for");
  expect("(");
  if (atLocalVarDecl(P, true)) {
    Node *N = make("EnhancedForStatement", "", S, 0);
    add(N, param(), Slot::Parameter);
    expect(":");
    add(N, expression(), Slot::Expression);
    expect(")");
    add(N, statement(), Slot::Body);
    N->end = prevEnd();
    return N;
  }
  Node *N = make("ForStatement", "", S, 0);
  if (!at(";")) {
    if (atLocalVarDecl(P, false) || at("final")) {
      add(N, localVarDecl("VariableDeclarationStatement", false), Slot::Init);
    } else {
      do
        add(N, expression(), Slot::Init);
      while (accept(","));
    }
  }
  expect(";");
  if (!at(";"))
    add(N, expression(), Slot::Condition);
  expect(";");
  if (!at(")")) {
    do
      add(N, expression(), Slot::Update);
    while (accept(","));
  }
  expect(")");
  add(N, statement(), Slot::Body);
  N->end = prevEnd();
  return N;
}

Node *Parser::switchStatement() {
  std::uint32_t S = cur().start;
  expect("switch");
  Node *N = make("SwitchStatement", "", S, 0);
  expect("(");
  add(N, expression(), Slot::Expression);
  expect(")");
  expect("{");
  while (!at("}")) {
    if (cur().kind == Tok::End)
      error("unterminated switch");
    if (at("case") || at("default")) {
      std::uint32_t CS = cur().start;
      Node *C = make("SwitchCase", "", CS, 0);
      if (accept("default")) {
        C->value = "default";
      } else {
        ++P;
        add(C, expression(), Slot::Expression);
        if (at(","))
          unsupported("multiple case labels");
      }
      if (at("->"))
        unsupported("arrow switch case");
      expect(":");
      C->end = prevEnd();
      add(N, C);
      continue;
    }
    add(N, statement());
  }
  expect("}");
  N->end = prevEnd();
  return N;
}

Node *Parser::tryStatement() {
  std::uint32_t S = cur().start;
  expect("try");
  if (at("("))
    unsupported("try-with-resources");
  Node *N = make("TryStatement", "", S, 0);
  add(N, block(), Slot::Body);
  while (at("catch")) {
    std::uint32_t CS = cur().start;
    ++P;
    Node *C = make("CatchClause", "", CS, 0);
    expect("(");
    std::uint32_t DS = cur().start;
    std::vector<Node *> Mods;
    modifiers(Mods);
    Node *D = make("SingleVariableDeclaration", "", DS, 0);
    for (Node *M : Mods)
      add(D, M);
    Node *Ty = type();
    if (at("|")) {
      Node *U = make("UnionType", "", Ty->start, 0);
      add(U, Ty, Slot::Element);
      while (accept("|"))
        add(U, type(), Slot::Element);
      U->end = prevEnd();
      Ty = U;
    }
    add(D, Ty, Slot::Type);
    add(D, simpleName(expectIdent()), Slot::Name);
    D->end = prevEnd();
    add(C, D, Slot::Exception);
    expect(")");
    add(C, block(), Slot::Body);
    C->end = prevEnd();
    add(N, C);
  }
  if (accept("finally"))
    add(N, block(), Slot::Finally);
  if (N->children.size() == 1)
    error("try without catch or finally");
  N->end = prevEnd();
  return N;
}

// ----------------------------------------------------------------- expressions

Node *Parser::expression() { return assignment(); }

bool Parser::atLambda() const {
  if (atIdent() && atAt(P + 1, "->"))
    return true;
  if (!at("("))
    return false;
  int Depth = 0;
  for (std::size_t I = P; I < Toks.size(); ++I) {
    if (atAt(I, "("))
      ++Depth;
    else if (atAt(I, ")") && --Depth == 0)
      return atAt(I + 1, "->");
    else if (Toks[I].kind == Tok::End || atAt(I, ";") || atAt(I, "{"))
      return false;
  }
  return false;
}

Node *Parser::lambda() {
  std::uint32_t S = cur().start;
  Node *L = make("LambdaExpression", "", S, 0);
  if (atIdent()) {
    const Token &Id = Toks[P++];
    Node *Fr = make("VariableDeclarationFragment", "", Id.start, Id.end);
    add(Fr, simpleName(Id), Slot::Name);
    add(L, Fr, Slot::Parameter);
  } else {
    L->value = "()";
    expect("(");
    if (!at(")")) {
      do {
        if (atIdent() && (atAt(P + 1, ",") || atAt(P + 1, ")"))) {
          const Token &Id = Toks[P++];
          Node *Fr = make("VariableDeclarationFragment", "", Id.start, Id.end);
          add(Fr, simpleName(Id), Slot::Name);
          add(L, Fr, Slot::Parameter);
        } else {
          add(L, param(), Slot::Parameter);
        }
      } while (accept(","));
    }
    expect(")");
  }
  expect("->");
  add(L, at("{") ? block() : expression(), Slot::Body);
  L->end = prevEnd();
  return L;
}

Node *Parser::assignment() {
  if (atLambda())
    return lambda();
  std::uint32_t S = cur().start;
  Node *Lhs = conditional();
  static const char *const Ops[] = {"=",  "+=", "-=", "*=", "/=", "%=",
                                    "&=", "|=", "^=", "<<="};
  std::string Op;
  for (const char *O : Ops)
    if (at(O)) {
      Op = O;
      ++P;
      break;
    }
  if (Op.empty() && at(">") && atAt(P + 1, ">")) {
    // >>= and >>>= arrive as separate tokens
    std::size_t I = P;
    std::string Acc;
    while (atAt(I, ">") && Toks[I].start == (I == P ? Toks[I].start : Toks[I - 1].end)) {
      Acc += ">";
      ++I;
    }
    if (atAt(I, "=") && Toks[I].start == Toks[I - 1].end &&
        (Acc == ">>" || Acc == ">>>")) {
      Op = Acc + "=";
      P = I + 1;
    }
  }
  if (Op.empty())
    return Lhs;
  Node *A = make("Assignment", Op, S, 0);
  add(A, Lhs, Slot::Left);
  add(A, at("{") ? arrayInit() : assignment(), Slot::Right);
  A->end = prevEnd();
  return A;
}

Node *Parser::conditional() {
  std::uint32_t S = cur().start;
  Node *C = binary(0);
  if (!at("?"))
    return C;
  ++P;
  Node *N = make("ConditionalExpression", "", S, 0);
  add(N, C, Slot::Condition);
  add(N, expression(), Slot::Then);
  expect(":");
  add(N, atLambda() ? lambda() : conditional(), Slot::Else);
  N->end = prevEnd();
  return N;
}

// Precedence levels, loosest first.
std::string Parser::binaryOp(int &Prec, std::size_t &Len) const {
  Len = 1;
  const Token &T = cur();
  if (T.kind != Tok::Punct && T.text != "instanceof")
    return "";
  std::string_view S = T.text;
  if (S == ">") {
    // glue adjacent '>' and '=' tokens
    std::size_t I = P;
    std::string Acc = ">";
    while (atAt(I + 1, ">") && Toks[I + 1].start == Toks[I].end && Acc.size() < 3) {
      Acc += ">";
      ++I;
    }
    bool Eq = atAt(I + 1, "=") && Toks[I + 1].start == Toks[I].end;
    if (Eq && Acc.size() > 1)
      return ""; // compound assignment
    if (Eq) {
      Len = 2;
      Prec = 7;
      return ">=";
    }
    Len = Acc.size();
    Prec = Acc.size() == 1 ? 7 : 8;
    return Acc;
  }
  if (S == "||") { Prec = 0; return "||"; }
  if (S == "&&") { Prec = 1; return "&&"; }
  if (S == "|") { Prec = 2; return "|"; }
  if (S == "^") { Prec = 3; return "^"; }
  if (S == "&") { Prec = 4; return "&"; }
  if (S == "==" || S == "!=") { Prec = 5; return std::string(S); }
  if (S == "<" || S == "<=") { Prec = 7; return std::string(S); }
  if (S == "instanceof") { Prec = 7; return "instanceof"; }
  if (S == "<<") { Prec = 8; return "<<"; }
  if (S == "+" || S == "-") { Prec = 9; return std::string(S); }
  if (S == "*" || S == "/" || S == "%") { Prec = 10; return std::string(S); }
  return "";
}

Node *Parser::binary(int MinPrec) {
  std::uint32_t S = cur().start;
  Node *L = unary();
  for (;;) {
    int Prec = 0;
    std::size_t Len = 0;
    std::string Op = binaryOp(Prec, Len);
    if (Op.empty() || Prec < MinPrec)
      return L;
    if (Op == "instanceof") {
      ++P;
      Node *I = make("InstanceofExpression", "", S, 0);
      add(I, L, Slot::Left);
      if (at("final"))
        unsupported("final pattern variable");
      Node *Ty = type();
      if (atIdent()) {
        Node *D = make("SingleVariableDeclaration", "", Ty->start, 0);
        add(D, Ty, Slot::Type);
        add(D, simpleName(Toks[P++]), Slot::Name);
        D->end = prevEnd();
        add(I, D, Slot::Parameter);
      } else {
        add(I, Ty, Slot::Type);
      }
      I->end = prevEnd();
      L = I;
      continue;
    }
    const Token &OpTok = cur();
    std::uint32_t OpEnd = Toks[P + Len - 1].end;
    P += Len;
    Node *R = binary(Prec + 1);
    Node *I = make("InfixExpression", "", S, 0);
    add(I, L, Slot::Left);
    add(I, make("InfixOperator", Op, OpTok.start, OpEnd), Slot::Operator);
    add(I, R, Slot::Right);
    I->end = prevEnd();
    L = I;
  }
}

bool Parser::atCast() const {
  if (!at("("))
    return false;
  auto E = scanType(P + 1);
  if (!E || !atAt(*E, ")"))
    return false;
  const Token &In = Toks[P + 1];
  if (In.kind == Tok::Keyword && java::isPrimitive(In.text))
    return true;
  const Token &Nx = Toks[*E + 1];
  switch (Nx.kind) {
  case Tok::Ident:
  case Tok::Number:
  case Tok::String:
  case Tok::Char:
    return true;
  case Tok::Keyword:
    return Nx.text == "this" || Nx.text == "new" || Nx.text == "super" ||
           Nx.text == "true" || Nx.text == "false" || Nx.text == "null";
  case Tok::Punct:
    return Nx.text == "(" || Nx.text == "!" || Nx.text == "~";
  default:
    return false;
  }
}

Node *Parser::unary() {
  std::uint32_t S = cur().start;
  static const char *const Prefix[] = {"++", "--", "+", "-", "!", "~"};
  for (const char *Op : Prefix) {
    if (at(Op) && cur().kind == Tok::Punct) {
      ++P;
      Node *N = make("PrefixExpression", Op, S, 0);
      add(N, unary(), Slot::Operand);
      N->end = prevEnd();
      return N;
    }
  }
  if (atCast()) {
    ++P;
    Node *C = make("CastExpression", "", S, 0);
    add(C, type(), Slot::Type);
    expect(")");
    add(C, atLambda() ? lambda() : unary(), Slot::Expression);
    C->end = prevEnd();
    return C;
  }
  return postfix(selectors(primary()));
}

Node *Parser::postfix(Node *E) {
  while (at("++") || at("--")) {
    Node *N = make("PostfixExpression", std::string(cur().text), E->start,
                   cur().end);
    ++P;
    add(N, E, Slot::Operand);
    E = N;
  }
  return E;
}

void Parser::arguments(Node *Call) {
  expect("(");
  if (!at(")")) {
    do
      add(Call, expression(), Slot::Argument);
    while (accept(","));
  }
  expect(")");
}

Node *Parser::arrayInit() {
  std::uint32_t S = cur().start;
  expect("{");
  Node *A = make("ArrayInitializer", "", S, 0);
  while (!at("}")) {
    add(A, varInit(), Slot::Element);
    if (!accept(","))
      break;
  }
  expect("}");
  A->end = prevEnd();
  return A;
}

Node *Parser::creation() {
  std::uint32_t S = cur().start;
  expect("new");
  if (at("<"))
    unsupported("explicit constructor type arguments");
  std::uint32_t TS = cur().start;
  Node *Base;
  if (cur().kind == Tok::Keyword && java::isPrimitive(cur().text)) {
    Base = make("PrimitiveType", std::string(cur().text), cur().start,
                cur().end);
    ++P;
  } else {
    Base = classType();
  }
  if (at("[")) {
    Node *AC = make("ArrayCreation", "", S, 0);
    std::vector<Node *> Dims;
    int Count = 0;
    std::uint32_t TypeEnd = Base->end;
    while (at("[")) {
      ++P;
      if (!at("]")) {
        if (Count != static_cast<int>(Dims.size()))
          error("dimension expression after empty dimension");
        Dims.push_back(expression());
      }
      expect("]");
      ++Count;
      if (Dims.empty())
        TypeEnd = prevEnd();
    }
    Node *T = Base;
    for (int I = 0; I < Count; ++I) {
      Node *A = make("ArrayType", "", TS, TypeEnd);
      add(A, T, Slot::Element);
      T = A;
    }
    add(AC, T, Slot::Type);
    for (Node *D : Dims)
      add(AC, D, Slot::Dimension);
    if (at("{"))
      add(AC, arrayInit(), Slot::Initializer);
    AC->end = prevEnd();
    return AC;
  }
  if (Base->type == "PrimitiveType")
    error("expected '[' after primitive type in creation");
  Node *C = make("ClassInstanceCreation", "", S, 0);
  add(C, Base, Slot::Type);
  arguments(C);
  if (at("{"))
    unsupported("anonymous class declaration");
  C->end = prevEnd();
  return C;
}

Node *Parser::primary() {
  const Token &T = cur();
  std::uint32_t S = T.start;
  switch (T.kind) {
  case Tok::Number:
    ++P;
    return make("NumberLiteral", std::string(T.text), T.start, T.end);
  case Tok::String:
    ++P;
    return make("StringLiteral", std::string(T.text), T.start, T.end);
  case Tok::Char:
    ++P;
    return make("CharacterLiteral", std::string(T.text), T.start, T.end);
  case Tok::Ident: {
    if (atAt(P + 1, "(")) {
      Node *MI = make("MethodInvocation", "", S, 0);
      add(MI, simpleName(Toks[P++]), Slot::Name);
      arguments(MI);
      MI->end = prevEnd();
      return MI;
    }
    // ambiguous dotted names stay a QualifiedName up to the last segment
    // that is not itself invoked
    Node *N = simpleName(Toks[P++]);
    while (at(".") && peek().kind == Tok::Ident && !atAt(P + 2, "(")) {
      ++P;
      const Token &Id = Toks[P++];
      Node *Q = make("QualifiedName", N->value + "." + std::string(Id.text),
                     N->start, Id.end);
      add(Q, N, Slot::Qualifier);
      add(Q, simpleName(Id), Slot::Name);
      N = Q;
    }
    if (at("[") && atAt(P + 1, "]")) {
      Node *Ty = make("SimpleType", N->value, N->start, N->end);
      add(Ty, N, Slot::Name);
      while (at("[") && atAt(P + 1, "]")) {
        P += 2;
        Node *A = make("ArrayType", "", S, prevEnd());
        add(A, Ty, Slot::Element);
        Ty = A;
      }
      expect(".");
      expect("class");
      Node *TL = make("TypeLiteral", "", S, prevEnd());
      add(TL, Ty, Slot::Type);
      return TL;
    }
    return N;
  }
  case Tok::Keyword: {
    if (T.text == "true" || T.text == "false") {
      ++P;
      return make("BooleanLiteral", std::string(T.text), T.start, T.end);
    }
    if (T.text == "null") {
      ++P;
      return make("NullLiteral", "null", T.start, T.end);
    }
    if (T.text == "this") {
      ++P;
      return make("ThisExpression", "this", T.start, T.end);
    }
    if (T.text == "new")
      return creation();
    if (T.text == "super") {
      ++P;
      if (!at("."))
        error("expected '.' after super");
      ++P;
      if (at("<"))
        unsupported("explicit method type arguments");
      const Token &Id = expectIdent();
      if (!at("("))
        unsupported("super field access");
      Node *SM = make("SuperMethodInvocation", "", S, 0);
      add(SM, simpleName(Id), Slot::Name);
      arguments(SM);
      SM->end = prevEnd();
      return SM;
    }
    if (java::isPrimitive(T.text)) {
      Node *Ty = type();
      expect(".");
      expect("class");
      Node *TL = make("TypeLiteral", "", S, prevEnd());
      add(TL, Ty, Slot::Type);
      return TL;
    }
    if (T.text == "switch")
      unsupported("switch expression");
    error("unexpected keyword");
  }
  case Tok::Punct: {
    if (T.text == "(") {
      ++P;
      Node *E = make("ParenthesizedExpression", "", S, 0);
      add(E, expression(), Slot::Expression);
      expect(")");
      E->end = prevEnd();
      return E;
    }
    if (T.text == "@")
      unsupported("annotation in expression");
    error("expected expression");
  }
  default:
    error("expected expression");
  }
}

Node *Parser::selectors(Node *E) {
  for (;;) {
    if (at(".")) {
      ++P;
      if (at("<"))
        unsupported("explicit method type arguments");
      if (at("new"))
        unsupported("qualified instance creation");
      if (at("this") || at("super"))
        unsupported("qualified this/super");
      if (at("class")) {
        if (E->type != "SimpleName" && E->type != "QualifiedName")
          error("unexpected '.class'");
        ++P;
        Node *Ty = make("SimpleType", E->value, E->start, E->end);
        add(Ty, E, Slot::Name);
        Node *TL = make("TypeLiteral", "", E->start, prevEnd());
        add(TL, Ty, Slot::Type);
        E = TL;
        continue;
      }
      const Token &Id = expectIdent();
      if (at("(")) {
        Node *MI = make("MethodInvocation", "", E->start, 0);
        add(MI, E, Slot::Receiver);
        add(MI, simpleName(Id), Slot::Name);
        arguments(MI);
        MI->end = prevEnd();
        E = MI;
      } else {
        Node *FA = make("FieldAccess", "", E->start, Id.end);
        add(FA, E, Slot::Receiver);
        add(FA, simpleName(Id), Slot::Name);
        E = FA;
      }
      continue;
    }
    if (at("[")) {
      ++P;
      Node *AA = make("ArrayAccess", "", E->start, 0);
      add(AA, E, Slot::Expression);
      add(AA, expression(), Slot::Index);
      expect("]");
      AA->end = prevEnd();
      E = AA;
      continue;
    }
    if (at("::"))
      unsupported("method reference");
    return E;
  }
}

void finalizeTree(SourceFile &F) {
  canonicalTypeValues(F.root);
  annotate(F);
}

} // namespace

FilePtr parseJava(std::string Path, std::string Content) {
  auto F = std::make_unique<SourceFile>();
  F->path = std::move(Path);
  F->content = std::move(Content);
  Parser Ps(*F);
  F->root = Ps.compilationUnit();
  finalizeTree(*F);
  return F;
}

FilePtr parseStatement(const std::string &Text) {
  static const std::string Prefix = "class S { void m() { ";
  auto F = std::make_unique<SourceFile>();
  F->content = Prefix + Text + " } }";
  Parser Ps(*F);
  try {
    F->root = Ps.compilationUnit();
  } catch (const ParseError &E) {
    std::size_t Off = E.offset >= Prefix.size() ? E.offset - Prefix.size() : 0;
    std::string Msg = E.what();
    Msg = Msg.substr(Msg.find(": ") + 2);
    throw ParseError(Msg, Off, E.unsupported);
  }
  finalizeTree(*F);
  Node *S = firstStatement(*F);
  if (!S)
    throw ParseError("no statement", 0, false);
  Node *Body = S->parent;
  if (Body->children.size() != 1)
    throw ParseError("more than one statement", 0, false);
  return F;
}

Node *firstStatement(const SourceFile &F) {
  for (Node *N : F.nodes())
    if (N->type == "Block" && N->parent && N->parent->type == "MethodDeclaration")
      return N->children.empty() ? nullptr : N->children.front();
  return nullptr;
}

} // namespace semdiff
