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

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semdiff {

// Position of a node inside its parent. Needed wherever two children of the
// same label play different parts (receiver vs. argument, then vs. else).
enum class Slot : std::uint8_t {
  None,
  Name,
  Qualifier,
  Receiver,
  Argument,
  Type,
  ReturnType,
  Superclass,
  Interface,
  Thrown,
  Parameter,
  Body,
  Then,
  Else,
  Condition,
  Init,
  Update,
  Finally,
  Exception,
  Initializer,
  Expression,
  Operand,
  Left,
  Right,
  Operator,
  Index,
  Dimension,
  TypeArgument,
  Element,
  Label,
};

const char *slotName(Slot S);
bool slotFromName(std::string_view Name, Slot &Out);

struct SourceFile;

struct Node {
  std::string type;
  std::string value;
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  std::vector<Node *> children;
  Node *parent = nullptr;
  Slot slot = Slot::None;

  int height = 1;
  int size = 1;
  std::uint64_t valueHash = 0;
  std::uint64_t structureHash = 0;
  int id = -1;      // preorder index, doubles as source-position order
  int postId = -1;  // postorder index
  int depth = 0;
  bool constructor = false;
  SourceFile *file = nullptr;

  bool isLeaf() const { return children.empty(); }
  bool is(std::string_view T) const { return type == T; }
  Node *child(Slot S) const;
  std::vector<Node *> childrenIn(Slot S) const;
  int indexInParent() const;
};

struct Comment {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  bool javadoc = false;
};

// Owns every node of one tree. Nodes point back at their file, so a
// SourceFile is pinned in memory once created.
struct SourceFile {
  std::string path;
  std::string content;
  Node *root = nullptr;
  std::vector<Comment> comments;
  std::vector<std::unique_ptr<Node>> pool;

  SourceFile() = default;
  SourceFile(const SourceFile &) = delete;
  SourceFile &operator=(const SourceFile &) = delete;

  Node *make(std::string Type, std::string Value, std::uint32_t Start,
             std::uint32_t End);
  // Nodes in preorder after annotate().
  const std::vector<Node *> &nodes() const { return Order; }
  std::vector<Node *> Order;
};

using FilePtr = std::unique_ptr<SourceFile>;

struct Snapshot {
  std::vector<FilePtr> files;
  SourceFile *find(std::string_view Path) const;
  void add(FilePtr F);
};

struct CommitPair {
  Snapshot left;
  Snapshot right;
};

struct NodeRef {
  std::string filePath;
  std::string typeLabel;
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  bool operator==(const NodeRef &) const = default;
  auto operator<=>(const NodeRef &) const = default;
  std::string str() const;
};

NodeRef refOf(const Node *N);

class StructureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class ResolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class InterchangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Fills height, size, hashes, ids and depth; validates span nesting.
void annotate(SourceFile &F);
void annotate(Node *Root);

std::uint64_t hashString(std::string_view S);
std::uint64_t hashCombine(std::uint64_t H, std::uint64_t V);

bool isomorphic(const Node *A, const Node *B);
bool sameShape(const Node *A, const Node *B);

void preorder(Node *N, const std::function<void(Node *)> &F);
void postorder(Node *N, const std::function<void(Node *)> &F);
std::vector<Node *> descendants(Node *N); // excludes N
bool isAncestor(const Node *A, const Node *D); // strict
std::string describe(const Node *N);           // Type[start-end]

// Source-position order across files: path, then preorder id.
bool positionLess(const Node *A, const Node *B);

Node *locate(const Snapshot &S, const NodeRef &R);

class MappingStore {
public:
  using Pair = std::pair<Node *, Node *>;

  bool add(Node *L, Node *R);
  bool remove(Node *L, Node *R);
  void removeLeft(Node *L);
  void removeRight(Node *R);
  bool has(const Node *L, const Node *R) const;
  bool hasLeft(const Node *L) const;
  bool hasRight(const Node *R) const;
  std::vector<Node *> partnersOfLeft(const Node *L) const;
  std::vector<Node *> partnersOfRight(const Node *R) const;
  Node *firstLeft(const Node *L) const;
  Node *firstRight(const Node *R) const;
  std::vector<Pair> pairs() const;
  std::size_t size() const { return Count; }
  bool empty() const { return Count == 0; }
  void merge(const MappingStore &O);

private:
  std::unordered_map<const Node *, std::vector<Node *>> LeftIdx, RightIdx;
  std::size_t Count = 0;
};

void addMapping(MappingStore &M, const Snapshot &L, const Snapshot &R,
                const NodeRef &LR, const NodeRef &RR);

std::string prettyPrint(const Node *N);
// Header of a composite statement ("if (x > 0)"); full text for leaves.
std::string headerText(const Node *N);
// Complete rendering including nested bodies, on one line.
std::string printFull(const Node *N);

std::string serializeTree(const Node *Root);
FilePtr parseInterchange(std::string_view Json);

} // namespace semdiff
