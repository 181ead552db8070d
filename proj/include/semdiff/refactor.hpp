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

#include "semdiff/decl.hpp"

namespace semdiff {

// Invocations of a method named Name with Arity arguments inside statement S.
// For a composite only its header is searched.
std::vector<Node *> callsIn(const Node *S, const std::string &Name,
                            std::size_t Arity);

// Extract Method / Extract and Move Method for one method pair. Extracted
// statements are removed from the candidates of later detections; origin
// mappings discarded as duplicates are dropped from the pair.
std::vector<Refactoring> detectExtractMethod(DeclMatchResult &D,
                                            std::size_t OriginPair,
                                            std::set<const Node *> &Claimed);
std::vector<Refactoring> detectInlineMethod(DeclMatchResult &D,
                                           std::size_t TargetPair,
                                           std::set<const Node *> &Claimed);

// Rename/Extract/Inline Variable, Rename Parameter, Change Variable Type,
// Extract/Inline Field, Parameterize Variable.
std::vector<Refactoring>
detectVariableRefactorings(const DeclMatchResult &D,
                           const std::vector<Refactoring> &Extractions);

std::vector<Refactoring> detectMergeCatch(const DeclarationPair &P);
std::vector<Refactoring> detectConsolidatedConditionals(const DeclarationPair &P);

// Every detector in dependency order; D's statement mappings may be pruned.
std::vector<Refactoring> detectRefactorings(DeclMatchResult &D);

std::vector<TaggedMapping> subExpressionMappings(const Refactoring &R);

// Mapping kinds a refactoring type may contribute.
std::vector<MappingTag> allowedTags(const std::string &Type);

std::string refactoringsToJson(const std::vector<Refactoring> &Rs);

} // namespace semdiff
