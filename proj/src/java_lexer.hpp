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

#include "semdiff/java.hpp"

#include <string_view>
#include <vector>

namespace semdiff::java {

enum class Tok { Ident, Keyword, Number, String, Char, Punct, End };

struct Token {
  Tok kind;
  std::uint32_t start;
  std::uint32_t end;
  std::string_view text;
};

// '>' is always emitted as a single character so that nested type argument
// lists close correctly; the expression parser glues shift operators back.
std::vector<Token> lex(std::string_view Src, std::vector<Comment> &Comments);

bool isKeyword(std::string_view S);
bool isPrimitive(std::string_view S);

} // namespace semdiff::java
