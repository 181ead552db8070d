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

#include <json.hpp>

namespace semdiff {

using Json = nlohmann::ordered_json;

namespace {
Json toJson(const Node *N) {
  Json J;
  J["typeLabel"] = N->type;
  J["value"] = N->value;
  J["span"] = Json::array({N->start, N->end});
  if (N->slot != Slot::None)
    J["slot"] = slotName(N->slot);
  Json C = Json::array();
  for (const Node *Ch : N->children)
    C.push_back(toJson(Ch));
  J["children"] = std::move(C);
  return J;
}

[[noreturn]] void fail(const std::string &Path, const std::string &Msg) {
  throw InterchangeError("at " + (Path.empty() ? std::string("/") : Path) +
                         ": " + Msg);
}

Node *fromJson(SourceFile &F, const Json &J, const std::string &Path) {
  if (!J.is_object())
    fail(Path, "expected object");
  for (auto It = J.begin(); It != J.end(); ++It) {
    const std::string &K = It.key();
    if (K != "typeLabel" && K != "value" && K != "span" && K != "children" &&
        K != "slot")
      fail(Path + "/" + K, "unknown field");
  }
  auto Need = [&](const char *K) -> const Json & {
    auto It = J.find(K);
    if (It == J.end())
      fail(Path, std::string("missing field '") + K + "'");
    return *It;
  };
  const Json &T = Need("typeLabel");
  if (!T.is_string() || T.get_ref<const std::string &>().empty())
    fail(Path + "/typeLabel", "expected non-empty string");
  const Json &V = Need("value");
  if (!V.is_string())
    fail(Path + "/value", "expected string");
  const Json &S = Need("span");
  if (!S.is_array() || S.size() != 2 || !S[0].is_number_unsigned() ||
      !S[1].is_number_unsigned())
    fail(Path + "/span", "expected [start, end] of non-negative integers");
  auto Start = S[0].get<std::uint64_t>(), End = S[1].get<std::uint64_t>();
  if (End < Start || End > UINT32_MAX)
    fail(Path + "/span", "invalid offsets");
  Node *N = F.make(T.get<std::string>(), V.get<std::string>(),
                   static_cast<std::uint32_t>(Start),
                   static_cast<std::uint32_t>(End));
  if (auto It = J.find("slot"); It != J.end()) {
    if (!It->is_string() || !slotFromName(It->get<std::string>(), N->slot))
      fail(Path + "/slot", "unknown slot");
  }
  const Json &C = Need("children");
  if (!C.is_array())
    fail(Path + "/children", "expected array");
  for (std::size_t I = 0; I < C.size(); ++I) {
    Node *Ch = fromJson(F, C[I], Path + "/children/" + std::to_string(I));
    Ch->parent = N;
    N->children.push_back(Ch);
  }
  return N;
}
} // namespace

std::string serializeTree(const Node *Root) { return toJson(Root).dump(); }

FilePtr parseInterchange(std::string_view Text) {
  Json J;
  try {
    J = Json::parse(Text);
  } catch (const Json::parse_error &E) {
    throw InterchangeError(std::string("malformed JSON: ") + E.what());
  }
  auto F = std::make_unique<SourceFile>();
  F->root = fromJson(*F, J, "");
  try {
    annotate(*F);
  } catch (const StructureError &E) {
    throw InterchangeError(E.what());
  }
  return F;
}

} // namespace semdiff
