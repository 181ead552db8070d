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

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

namespace semdiff::java {

namespace {
constexpr std::array<std::string_view, 50> Keywords = {
    "abstract", "assert",    "boolean",  "break",      "byte",
    "case",     "catch",     "char",     "class",      "const",
    "continue", "default",   "do",       "double",     "else",
    "enum",     "extends",   "final",    "finally",    "float",
    "for",      "goto",      "if",       "implements", "import",
    "instanceof", "int",     "interface", "long",      "native",
    "new",      "package",   "private",  "protected",  "public",
    "return",   "short",     "static",   "strictfp",   "super",
    "switch",   "synchronized", "this",  "throw",      "throws",
    "transient", "try",      "void",     "volatile",   "while"};

constexpr std::array<std::string_view, 9> Primitives = {
    "boolean", "byte", "char", "double", "float",
    "int",     "long", "short", "void"};

// Longest first; '>' forms are deliberately absent.
constexpr std::array<std::string_view, 24> Operators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=",  "-=",  "*=", "/=", "&=", "|=", "^=", "%=", "<<", "@",  "?",
    ":",   "."};

bool identStart(unsigned char C) {
  return std::isalpha(C) || C == '_' || C == '$' || C >= 0x80;
}
bool identPart(unsigned char C) { return identStart(C) || std::isdigit(C); }
} // namespace

bool isKeyword(std::string_view S) {
  return std::find(Keywords.begin(), Keywords.end(), S) != Keywords.end() ||
         S == "true" || S == "false" || S == "null";
}

bool isPrimitive(std::string_view S) {
  return std::find(Primitives.begin(), Primitives.end(), S) != Primitives.end();
}

std::vector<Token> lex(std::string_view Src, std::vector<Comment> &Comments) {
  std::vector<Token> Out;
  std::size_t I = 0, N = Src.size();
  auto Emit = [&](Tok K, std::size_t S, std::size_t E) {
    Out.push_back(Token{K, static_cast<std::uint32_t>(S),
                        static_cast<std::uint32_t>(E), Src.substr(S, E - S)});
  };
  while (I < N) {
    unsigned char C = Src[I];
    if (std::isspace(C)) {
      ++I;
      continue;
    }
    if (C == '/' && I + 1 < N && Src[I + 1] == '/') {
      std::size_t S = I;
      while (I < N && Src[I] != '\n')
        ++I;
      Comments.push_back({static_cast<std::uint32_t>(S),
                          static_cast<std::uint32_t>(I), false});
      continue;
    }
    if (C == '/' && I + 1 < N && Src[I + 1] == '*') {
      std::size_t S = I;
      std::size_t E = Src.find("*/", I + 2);
      if (E == std::string_view::npos)
        throw ParseError("unterminated comment", S, false);
      I = E + 2;
      bool Doc = I - S > 4 && Src[S + 2] == '*';
      Comments.push_back({static_cast<std::uint32_t>(S),
                          static_cast<std::uint32_t>(I), Doc});
      continue;
    }
    std::size_t S = I;
    if (identStart(C)) {
      while (I < N && identPart(Src[I]))
        ++I;
      // non-sealed is the only hyphenated keyword
      if (Src.substr(S, I - S) == "non" && Src.substr(I, 7) == "-sealed")
        I += 7;
      std::string_view W = Src.substr(S, I - S);
      Emit(isKeyword(W) ? Tok::Keyword : Tok::Ident, S, I);
      continue;
    }
    if (std::isdigit(C) || (C == '.' && I + 1 < N && std::isdigit(Src[I + 1]))) {
      if (C == '0' && I + 1 < N && (Src[I + 1] == 'x' || Src[I + 1] == 'X' ||
                                    Src[I + 1] == 'b' || Src[I + 1] == 'B')) {
        I += 2;
        while (I < N && (std::isxdigit(Src[I]) || Src[I] == '_'))
          ++I;
      } else {
        while (I < N && (std::isdigit(Src[I]) || Src[I] == '_'))
          ++I;
        if (I < N && Src[I] == '.' && I + 1 < N && std::isdigit(Src[I + 1])) {
          ++I;
          while (I < N && (std::isdigit(Src[I]) || Src[I] == '_'))
            ++I;
        } else if (I < N && Src[I] == '.' &&
                   !(I + 1 < N && identStart(Src[I + 1]))) {
          ++I;
        }
        if (I < N && (Src[I] == 'e' || Src[I] == 'E')) {
          ++I;
          if (I < N && (Src[I] == '+' || Src[I] == '-'))
            ++I;
          while (I < N && std::isdigit(Src[I]))
            ++I;
        }
      }
      if (I < N && std::strchr("lLfFdD", Src[I]) && Src[I] != '\0')
        ++I;
      if (I < N && identPart(Src[I]))
        throw ParseError("malformed number literal", S, false);
      Emit(Tok::Number, S, I);
      continue;
    }
    if (C == '"') {
      if (Src.substr(I, 3) == "\"\"\"")
        throw ParseError("text block", S, true);
      ++I;
      while (I < N && Src[I] != '"') {
        if (Src[I] == '\\')
          ++I;
        if (I < N && Src[I] == '\n')
          throw ParseError("unterminated string literal", S, false);
        ++I;
      }
      if (I >= N)
        throw ParseError("unterminated string literal", S, false);
      ++I;
      Emit(Tok::String, S, I);
      continue;
    }
    if (C == '\'') {
      ++I;
      while (I < N && Src[I] != '\'') {
        if (Src[I] == '\\')
          ++I;
        ++I;
      }
      if (I >= N)
        throw ParseError("unterminated character literal", S, false);
      ++I;
      Emit(Tok::Char, S, I);
      continue;
    }
    bool Matched = false;
    for (std::string_view Op : Operators) {
      if (Src.substr(I, Op.size()) == Op) {
        I += Op.size();
        Emit(Tok::Punct, S, I);
        Matched = true;
        break;
      }
    }
    if (Matched)
      continue;
    if (std::strchr("(){}[];,=<>!~+-*/&|^%", C)) {
      ++I;
      Emit(Tok::Punct, S, I);
      continue;
    }
    throw ParseError(std::string("unexpected character '") +
                         static_cast<char>(C) + "'",
                     S, false);
  }
  Out.push_back(Token{Tok::End, static_cast<std::uint32_t>(N),
                      static_cast<std::uint32_t>(N), {}});
  return Out;
}

} // namespace semdiff::java
