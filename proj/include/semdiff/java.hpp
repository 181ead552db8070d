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

#include "semdiff/ast.hpp"

#include <cstddef>
#include <string>

namespace semdiff {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &Msg, std::size_t Offset, bool Unsupported)
      : std::runtime_error((Unsupported ? "unsupported construct at offset "
                                        : "syntax error at offset ") +
                           std::to_string(Offset) + ": " + Msg),
        offset(Offset), unsupported(Unsupported) {}
  std::size_t offset;
  bool unsupported;
};

// Parses a compilation unit; the result is annotated.
FilePtr parseJava(std::string Path, std::string Content);

// Parses a single statement inside a synthetic method body. Returns the file
// holding it; the statement is the first statement of that body.
FilePtr parseStatement(const std::string &Text);
Node *firstStatement(const SourceFile &F);

bool isTypeLabel(const std::string &Label);
bool isStatement(const Node *N);
bool isCompositeStatement(const Node *N); // statements owning other statements
bool isLeafStatement(const Node *N);
bool isBodyDeclaration(const Node *N);   // method, field, initializer, type
bool isTypeDeclaration(const Node *N);
bool isExpressionNode(const Node *N);

// Statement children of a composite, flattening nested blocks.
std::vector<Node *> statementChildren(const Node *N);

std::string modifierGroup(const std::string &Modifier);

// Role tag derived from the parent chain; throws StructureError for a node
// that is not attached to a CompilationUnit.
std::string semanticRole(const Node *N);

} // namespace semdiff
