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
#pragma once

#include "semdiff/stmt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semdiff {

enum class DeclKind {
  Type,
  Method,
  Field,
  EnumConstant,
  Initializer,
  Import,
  Package,
  CompilationUnit
};

const char *declKindName(DeclKind K);

struct Signature {
  DeclKind kind = DeclKind::Type;
  std::string qualifiedName;
  std::vector<std::string> parameterTypeLabels; // methods only
  std::optional<std::string> returnType;
  bool constructor = false;

  // Identity used for matching: name plus parameter types for methods.
  std::string key() const;
  // Short human-readable form ("foo(int, String)").
  std::string shortForm() const;
};

// Package of the compilation unit holding N, "" for the default package.
std::string packageOf(const Node *N);
// Dotted name of a type declaration including its enclosing types.
std::string qualifiedTypeName(const Node *TypeDecl);
Node *enclosingType(const Node *N);
Signature signatureOf(const Node *Decl);

struct DeclarationPair {
  DeclKind kind = DeclKind::Type;
  Node *left = nullptr, *right = nullptr;
  std::vector<StatementMapping> statementMappings;
  bool signatureChanged = false;
};

enum class MappingTag {
  Declaration,
  Multi,
  IntraFileMove,
  InterFileMove,
  SubExpression
};

const char *mappingTagName(MappingTag T);

struct TaggedMapping {
  Node *left = nullptr, *right = nullptr;
  MappingTag tag = MappingTag::Declaration;
};

struct Refactoring {
  std::string type;
  std::string description;
  std::vector<TaggedMapping> mappings;
  // declarations the refactoring is reported on; used for ordering
  Node *leftDecl = nullptr, *rightDecl = nullptr;
  // statement mappings the refactoring established (moved or merged code)
  std::vector<StatementMapping> statementMappings;
  // pairs subtree matching would form that the mechanics rule out, such as
  // a replaced sub-expression against the parameter standing in for it
  std::vector<std::pair<Node *, Node *>> superseded;
};

// Matched type pair with the members left over on each side.
struct ClassDiff {
  Node *left = nullptr, *right = nullptr;
  std::vector<Node *> removedMethods, addedMethods;
  std::vector<Node *> removedFields, addedFields;
  std::vector<Node *> removedOther, addedOther; // enum constants, initializers
  std::vector<std::size_t> pairs; // indices of member declaration pairs
  std::vector<Replacement> replacements;
};

} // namespace semdiff
