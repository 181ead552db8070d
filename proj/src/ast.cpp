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

#include <algorithm>
#include <array>

namespace semdiff {

namespace {
constexpr std::array<const char *, 30> SlotNames = {
    "none",      "name",       "qualifier",   "receiver",  "argument",
    "type",      "returnType", "superclass",  "interface", "thrown",
    "parameter", "body",       "then",        "else",      "condition",
    "init",      "update",     "finally",     "exception", "initializer",
    "expression", "operand",   "left",        "right",     "operator",
    "index",     "dimension",  "typeArgument", "element",  "label"};

constexpr std::uint64_t Seed = 0x5eed5eed0badc0deULL;

std::uint64_t splitmix(std::uint64_t X) {
  X += 0x9e3779b97f4a7c15ULL;
  X = (X ^ (X >> 30)) * 0xbf58476d1ce4e5b9ULL;
  X = (X ^ (X >> 27)) * 0x94d049bb133111ebULL;
  return X ^ (X >> 31);
}
} // namespace

const char *slotName(Slot S) { return SlotNames[static_cast<int>(S)]; }

bool slotFromName(std::string_view Name, Slot &Out) {
  for (std::size_t I = 0; I < SlotNames.size(); ++I)
    if (Name == SlotNames[I]) {
      Out = static_cast<Slot>(I);
      return true;
    }
  return false;
}

Node *Node::child(Slot S) const {
  for (Node *C : children)
    if (C->slot == S)
      return C;
  return nullptr;
}

std::vector<Node *> Node::childrenIn(Slot S) const {
  std::vector<Node *> R;
  for (Node *C : children)
    if (C->slot == S)
      R.push_back(C);
  return R;
}

int Node::indexInParent() const {
  if (!parent)
    return 0;
  auto &C = parent->children;
  return static_cast<int>(std::find(C.begin(), C.end(), this) - C.begin());
}

Node *SourceFile::make(std::string Type, std::string Value, std::uint32_t Start,
                       std::uint32_t End) {
  auto N = std::make_unique<Node>();
  N->type = std::move(Type);
  N->value = std::move(Value);
  N->start = Start;
  N->end = End;
  N->file = this;
  pool.push_back(std::move(N));
  return pool.back().get();
}

SourceFile *Snapshot::find(std::string_view Path) const {
  for (auto &F : files)
    if (F->path == Path)
      return F.get();
  return nullptr;
}

void Snapshot::add(FilePtr F) {
  if (find(F->path))
    throw StructureError("duplicate path in snapshot: " + F->path);
  files.push_back(std::move(F));
  std::sort(files.begin(), files.end(),
            [](const FilePtr &A, const FilePtr &B) { return A->path < B->path; });
}

std::string NodeRef::str() const {
  return filePath + ":" + typeLabel + "[" + std::to_string(start) + "-" +
         std::to_string(end) + "]";
}

NodeRef refOf(const Node *N) {
  return NodeRef{N->file ? N->file->path : std::string(), N->type, N->start,
                 N->end};
}

std::string describe(const Node *N) {
  return N->type + "[" + std::to_string(N->start) + "-" +
         std::to_string(N->end) + "]";
}

std::uint64_t hashString(std::string_view S) {
  std::uint64_t H = 0xcbf29ce484222325ULL ^ Seed;
  for (unsigned char C : S) {
    H ^= C;
    H *= 0x100000001b3ULL;
  }
  return splitmix(H);
}

std::uint64_t hashCombine(std::uint64_t H, std::uint64_t V) {
  return splitmix(H ^ (V + 0x9e3779b97f4a7c15ULL + (H << 6) + (H >> 2)));
}

namespace {
void validate(const Node *N) {
  for (std::size_t I = 0; I < N->children.size(); ++I) {
    const Node *C = N->children[I];
    if (C->start < N->start || C->end > N->end || C->start > C->end)
      throw StructureError("span of " + describe(C) + " not contained in " +
                           describe(N));
    if (I > 0 && N->children[I - 1]->end > C->start)
      throw StructureError("span of " + describe(C) + " overlaps or precedes " +
                           describe(N->children[I - 1]));
  }
}

void annotateRec(Node *N, int Depth, int &Pre, int &Post,
                 std::vector<Node *> *Order) {
  validate(N);
  N->id = Pre++;
  N->depth = Depth;
  if (Order)
    Order->push_back(N);
  int H = 0, S = 1;
  std::uint64_t VH = hashCombine(hashString(N->type), hashString(N->value));
  std::uint64_t SH = hashString(N->type);
  for (Node *C : N->children) {
    C->parent = N;
    if (N->file && !C->file)
      C->file = N->file;
    annotateRec(C, Depth + 1, Pre, Post, Order);
    H = std::max(H, C->height);
    S += C->size;
    VH = hashCombine(VH, C->valueHash);
    SH = hashCombine(SH, C->structureHash);
  }
  N->height = H + 1;
  N->size = S;
  N->valueHash = hashCombine(VH, N->children.size());
  N->structureHash = hashCombine(SH, N->children.size());
  N->postId = Post++;
  N->constructor = false;
  if (N->type == "MethodDeclaration") {
    for (Node *C : N->children) {
      if (C->type == "Modifier")
        continue;
      N->constructor = C->type == "SimpleName";
      break;
    }
  }
}
} // namespace

void annotate(Node *Root) {
  int Pre = 0, Post = 0;
  Root->parent = nullptr;
  annotateRec(Root, 0, Pre, Post, nullptr);
}

void annotate(SourceFile &F) {
  if (!F.root)
    throw StructureError("file has no root: " + F.path);
  if (!F.content.empty() &&
      (F.root->start != 0 || F.root->end != F.content.size()))
    throw StructureError("root " + describe(F.root) +
                         " does not cover the file content");
  F.Order.clear();
  int Pre = 0, Post = 0;
  F.root->parent = nullptr;
  F.root->file = &F;
  annotateRec(F.root, 0, Pre, Post, &F.Order);
}

bool isomorphic(const Node *A, const Node *B) {
  if (A == B)
    return true;
  if (A->valueHash != B->valueHash || A->type != B->type ||
      A->value != B->value || A->children.size() != B->children.size())
    return false;
  for (std::size_t I = 0; I < A->children.size(); ++I)
    if (!isomorphic(A->children[I], B->children[I]))
      return false;
  return true;
}

bool sameShape(const Node *A, const Node *B) {
  if (A == B)
    return true;
  if (A->structureHash != B->structureHash || A->type != B->type ||
      A->children.size() != B->children.size())
    return false;
  for (std::size_t I = 0; I < A->children.size(); ++I)
    if (!sameShape(A->children[I], B->children[I]))
      return false;
  return true;
}

void preorder(Node *N, const std::function<void(Node *)> &F) {
  F(N);
  for (Node *C : N->children)
    preorder(C, F);
}

void postorder(Node *N, const std::function<void(Node *)> &F) {
  for (Node *C : N->children)
    postorder(C, F);
  F(N);
}

std::vector<Node *> descendants(Node *N) {
  std::vector<Node *> R;
  for (Node *C : N->children)
    preorder(C, [&](Node *D) { R.push_back(D); });
  return R;
}

bool isAncestor(const Node *A, const Node *D) {
  for (const Node *P = D->parent; P; P = P->parent)
    if (P == A)
      return true;
  return false;
}

bool positionLess(const Node *A, const Node *B) {
  const std::string &PA = A->file ? A->file->path : std::string();
  const std::string &PB = B->file ? B->file->path : std::string();
  if (PA != PB)
    return PA < PB;
  if (A->id != B->id)
    return A->id < B->id;
  return A < B;
}

Node *locate(const Snapshot &S, const NodeRef &R) {
  SourceFile *F = S.find(R.filePath);
  if (!F)
    throw ResolutionError("no file " + R.filePath + " for " + R.str());
  std::vector<Node *> Hits, Near;
  for (Node *N : F->nodes()) {
    if (N->start == R.start && N->end == R.end) {
      if (N->type == R.typeLabel)
        Hits.push_back(N);
      else
        Near.push_back(N);
    } else if (N->type == R.typeLabel &&
               (N->start == R.start || N->end == R.end)) {
      Near.push_back(N);
    }
  }
  if (Hits.size() == 1)
    return Hits.front();
  std::string Msg = Hits.empty() ? "no node matches " : "ambiguous reference ";
  Msg += R.str() + "; candidates:";
  for (Node *N : Hits.empty() ? Near : Hits)
    Msg += " " + describe(N);
  if (Hits.empty() && Near.empty())
    Msg += " none";
  throw ResolutionError(Msg);
}

namespace {
void insertSorted(std::vector<Node *> &V, Node *N) {
  auto It = std::lower_bound(V.begin(), V.end(), N, positionLess);
  V.insert(It, N);
}
bool eraseOne(std::vector<Node *> &V, const Node *N) {
  auto It = std::find(V.begin(), V.end(), N);
  if (It == V.end())
    return false;
  V.erase(It);
  return true;
}
} // namespace

bool MappingStore::add(Node *L, Node *R) {
  if (has(L, R))
    return false;
  insertSorted(LeftIdx[L], R);
  insertSorted(RightIdx[R], L);
  ++Count;
  return true;
}

bool MappingStore::remove(Node *L, Node *R) {
  auto It = LeftIdx.find(L);
  if (It == LeftIdx.end() || !eraseOne(It->second, R))
    return false;
  if (It->second.empty())
    LeftIdx.erase(It);
  auto Jt = RightIdx.find(R);
  eraseOne(Jt->second, L);
  if (Jt->second.empty())
    RightIdx.erase(Jt);
  --Count;
  return true;
}

void MappingStore::removeLeft(Node *L) {
  for (Node *R : partnersOfLeft(L))
    remove(L, R);
}

void MappingStore::removeRight(Node *R) {
  for (Node *L : partnersOfRight(R))
    remove(L, R);
}

bool MappingStore::has(const Node *L, const Node *R) const {
  auto It = LeftIdx.find(L);
  return It != LeftIdx.end() &&
         std::find(It->second.begin(), It->second.end(), R) != It->second.end();
}

bool MappingStore::hasLeft(const Node *L) const { return LeftIdx.count(L); }
bool MappingStore::hasRight(const Node *R) const { return RightIdx.count(R); }

std::vector<Node *> MappingStore::partnersOfLeft(const Node *L) const {
  auto It = LeftIdx.find(L);
  return It == LeftIdx.end() ? std::vector<Node *>() : It->second;
}

std::vector<Node *> MappingStore::partnersOfRight(const Node *R) const {
  auto It = RightIdx.find(R);
  return It == RightIdx.end() ? std::vector<Node *>() : It->second;
}

Node *MappingStore::firstLeft(const Node *L) const {
  auto It = LeftIdx.find(L);
  return It == LeftIdx.end() ? nullptr : It->second.front();
}

Node *MappingStore::firstRight(const Node *R) const {
  auto It = RightIdx.find(R);
  return It == RightIdx.end() ? nullptr : It->second.front();
}

std::vector<MappingStore::Pair> MappingStore::pairs() const {
  std::vector<Pair> R;
  R.reserve(Count);
  for (auto &[L, Rs] : LeftIdx)
    for (Node *X : Rs)
      R.emplace_back(const_cast<Node *>(L), X);
  std::sort(R.begin(), R.end(), [](const Pair &A, const Pair &B) {
    if (A.first != B.first)
      return positionLess(A.first, B.first);
    return positionLess(A.second, B.second);
  });
  return R;
}

void MappingStore::merge(const MappingStore &O) {
  for (auto &[L, R] : O.pairs())
    add(L, R);
}

void addMapping(MappingStore &M, const Snapshot &L, const Snapshot &R,
                const NodeRef &LR, const NodeRef &RR) {
  M.add(locate(L, LR), locate(R, RR));
}

} // namespace semdiff
