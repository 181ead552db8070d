#include "semdiff/ast.hpp"
#include "semdiff/java.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace semdiff;

namespace {

// Independent shape/value comparison used as an oracle for the hashes.
bool walkEqual(const Node *A, const Node *B, bool Values) {
  if (A->type != B->type || A->children.size() != B->children.size())
    return false;
  if (Values && A->value != B->value)
    return false;
  for (std::size_t I = 0; I < A->children.size(); ++I)
    if (!walkEqual(A->children[I], B->children[I], Values))
      return false;
  return true;
}

int countPreorder(const Node *N) {
  int C = 1;
  for (const Node *Ch : N->children)
    C += countPreorder(Ch);
  return C;
}

int heightOf(const Node *N) {
  int H = 0;
  for (const Node *Ch : N->children)
    H = std::max(H, heightOf(Ch));
  return H + 1;
}

Node *findNode(const SourceFile &F, const std::string &Type,
               const std::string &Value = "") {
  for (Node *N : F.nodes())
    if (N->type == Type && (Value.empty() || N->value == Value))
      return N;
  return nullptr;
}

const char *Method50 = R"(class A {
  int sum(int[] xs, int limit) {
    int total = 0;
    for (int i = 0; i < xs.length; i++) {
      if (xs[i] > limit) {
        total += xs[i] * 2;
      } else {
        total = total - 1;
      }
    }
    return total;
  }
})";

} // namespace

TEST(Annotate, LeafAndTwoChildren) {
  SourceFile F;
  F.content = "a b";
  Node *Root = F.make("X", "", 0, 3);
  Node *A = F.make("SimpleName", "a", 0, 1);
  Node *B = F.make("SimpleName", "b", 2, 3);
  Root->children = {A, B};
  F.root = Root;
  annotate(F);
  EXPECT_EQ(A->height, 1);
  EXPECT_EQ(A->size, 1);
  EXPECT_EQ(Root->height, 2);
  EXPECT_EQ(Root->size, 3);
}

TEST(Annotate, MalformedSpanNamesNode) {
  SourceFile F;
  F.content = "abcdef";
  Node *Root = F.make("Block", "", 0, 6);
  Node *A = F.make("SimpleName", "a", 0, 4);
  Node *B = F.make("SimpleName", "b", 3, 6);
  Root->children = {A, B};
  F.root = Root;
  try {
    annotate(F);
    FAIL() << "overlapping siblings accepted";
  } catch (const StructureError &E) {
    EXPECT_NE(std::string(E.what()).find("SimpleName[3-6]"), std::string::npos)
        << E.what();
  }
}

TEST(Annotate, RenamedIdentifierHashes) {
  auto A = parseJava("A.java", "class A { void m() { foo(x); } }");
  auto B = parseJava("A.java", "class A { void m() { foo(y); } }");
  EXPECT_TRUE(walkEqual(A->root, B->root, false));
  EXPECT_FALSE(walkEqual(A->root, B->root, true));
  EXPECT_EQ(A->root->structureHash, B->root->structureHash);
  EXPECT_NE(A->root->valueHash, B->root->valueHash);
}

TEST(Annotate, PropertiesOnRandomTrees) {
  std::mt19937 Rng(7);
  for (int I = 0; I < 300; ++I) {
    auto F = testutil::randomTree(Rng, 40);
    for (Node *N : F->nodes()) {
      ASSERT_EQ(N->size, countPreorder(N));
      ASSERT_EQ(N->height, heightOf(N));
    }
    ASSERT_EQ(static_cast<int>(F->nodes().size()), F->root->size);
  }
}

TEST(Annotate, DeterministicAcrossRuns) {
  auto A = parseJava("A.java", Method50);
  auto B = parseJava("A.java", Method50);
  ASSERT_EQ(A->nodes().size(), B->nodes().size());
  for (std::size_t I = 0; I < A->nodes().size(); ++I) {
    EXPECT_EQ(A->nodes()[I]->valueHash, B->nodes()[I]->valueHash);
    EXPECT_EQ(A->nodes()[I]->start, B->nodes()[I]->start);
  }
}

TEST(Isomorphic, Basic) {
  auto A = parseJava("A.java", "class A { int f() { return x; } int g() { return y; } }");
  std::vector<Node *> Returns;
  for (Node *N : A->nodes())
    if (N->type == "ReturnStatement")
      Returns.push_back(N);
  ASSERT_EQ(Returns.size(), 2u);
  EXPECT_TRUE(isomorphic(Returns[0], Returns[0]));
  EXPECT_FALSE(isomorphic(Returns[0], Returns[1]));
}

TEST(Isomorphic, IndependentParsesOfSameMethod) {
  auto A = parseJava("A.java", Method50);
  auto B = parseJava("B.java", std::string("\n\n") + Method50);
  Node *MA = findNode(*A, "MethodDeclaration");
  Node *MB = findNode(*B, "MethodDeclaration");
  ASSERT_GE(MA->size, 50);
  EXPECT_TRUE(walkEqual(MA, MB, true));
  EXPECT_TRUE(isomorphic(MA, MB));
}

TEST(Isomorphic, EquivalenceRelation) {
  std::mt19937 Rng(11);
  std::vector<FilePtr> Trees;
  for (int I = 0; I < 60; ++I)
    Trees.push_back(testutil::randomTree(Rng, 5, 2, 1));
  std::vector<Node *> Ns;
  for (auto &T : Trees)
    for (Node *N : T->nodes())
      Ns.push_back(N);
  for (Node *A : Ns) {
    ASSERT_TRUE(isomorphic(A, A));
    for (Node *B : Ns) {
      bool AB = isomorphic(A, B);
      ASSERT_EQ(AB, isomorphic(B, A));
      ASSERT_EQ(AB, walkEqual(A, B, true));
    }
  }
  // transitivity on a sample
  for (std::size_t I = 0; I < Ns.size(); I += 7)
    for (std::size_t J = 0; J < Ns.size(); J += 5)
      for (std::size_t K = 0; K < Ns.size(); K += 3)
        if (isomorphic(Ns[I], Ns[J]) && isomorphic(Ns[J], Ns[K]))
          ASSERT_TRUE(isomorphic(Ns[I], Ns[K]));
}

TEST(MappingStore, MultiMappingSemantics) {
  auto F = parseJava("A.java", "class A { void m() { a(); b(); c(); } }");
  std::vector<Node *> S;
  for (Node *N : F->nodes())
    if (N->type == "ExpressionStatement")
      S.push_back(N);
  ASSERT_EQ(S.size(), 3u);
  MappingStore M;
  M.add(S[0], S[2]);
  M.add(S[0], S[1]);
  EXPECT_EQ(M.partnersOfLeft(S[0]), (std::vector<Node *>{S[1], S[2]}));
  MappingStore R;
  R.add(S[1], S[0]);
  R.add(S[2], S[0]);
  EXPECT_EQ(R.partnersOfRight(S[0]), (std::vector<Node *>{S[1], S[2]}));
  MappingStore D;
  D.add(S[0], S[1]);
  D.add(S[0], S[1]);
  EXPECT_EQ(D.size(), 1u);
}

TEST(MappingStore, InsertionOrderIndependent) {
  std::mt19937 Rng(3);
  auto L = testutil::randomTree(Rng, 15);
  auto R = testutil::randomTree(Rng, 15);
  std::vector<MappingStore::Pair> Ps;
  for (int I = 0; I < 30; ++I)
    Ps.emplace_back(L->nodes()[Rng() % L->nodes().size()],
                    R->nodes()[Rng() % R->nodes().size()]);
  MappingStore Ref;
  for (auto &P : Ps)
    Ref.add(P.first, P.second);
  for (int Round = 0; Round < 20; ++Round) {
    std::shuffle(Ps.begin(), Ps.end(), Rng);
    MappingStore M;
    for (auto &P : Ps)
      M.add(P.first, P.second);
    ASSERT_EQ(M.pairs(), Ref.pairs());
    for (Node *N : L->nodes())
      ASSERT_EQ(M.partnersOfLeft(N), Ref.partnersOfLeft(N));
  }
}

TEST(MappingStore, AddMappingUnresolvable) {
  Snapshot L, R;
  L.add(parseJava("A.java", "class A {}"));
  R.add(parseJava("A.java", "class A {}"));
  MappingStore M;
  addMapping(M, L, R, refOf(L.files[0]->root), refOf(R.files[0]->root));
  EXPECT_EQ(M.size(), 1u);
  NodeRef Bad{"A.java", "TypeDeclaration", 0, 99};
  EXPECT_THROW(addMapping(M, L, R, Bad, refOf(R.files[0]->root)),
               ResolutionError);
}

TEST(Locate, RootAndOffByOne) {
  Snapshot S;
  S.add(parseJava("p/A.java", Method50));
  Node *Root = S.files[0]->root;
  EXPECT_EQ(locate(S, refOf(Root)), Root);
  Node *M = findNode(*S.files[0], "MethodDeclaration");
  NodeRef R = refOf(M);
  R.end += 1;
  try {
    locate(S, R);
    FAIL();
  } catch (const ResolutionError &E) {
    EXPECT_NE(std::string(E.what()).find("candidates"), std::string::npos);
    EXPECT_NE(std::string(E.what()).find(describe(M)), std::string::npos);
  }
}

TEST(Locate, EveryNodeRoundTrips) {
  Snapshot S;
  S.add(parseJava("p/A.java", Method50));
  S.add(parseJava("p/B.java", testutil::synthJava("p", "B", 5, 1)));
  for (auto &F : S.files)
    for (Node *N : F->nodes())
      ASSERT_EQ(locate(S, refOf(N)), N) << describe(N);
}

TEST(PrettyPrint, Canonical) {
  auto F = parseJava("A.java",
                     "class A { void m() { int z = a+  b; if (z>0) { z++; } } }");
  EXPECT_EQ(prettyPrint(findNode(*F, "SimpleName", "z")), "z");
  EXPECT_EQ(prettyPrint(findNode(*F, "InfixExpression")), "a + b");
  Node *If = findNode(*F, "IfStatement");
  EXPECT_EQ(headerText(If), "if (z > 0)");
  EXPECT_EQ(prettyPrint(If), "if (z > 0) {...}");
  EXPECT_EQ(prettyPrint(findNode(*F, "VariableDeclarationStatement")),
            "int z = a + b;");
}

TEST(Interchange, EmptyMethodRoundTrip) {
  auto F = parseJava("A.java", "class A { void m() {} }");
  std::string J = serializeTree(F->root);
  auto G = parseInterchange(J);
  EXPECT_EQ(serializeTree(G->root), J);
  EXPECT_TRUE(isomorphic(F->root, G->root));
}

TEST(Interchange, LargeFixtureRoundTrip) {
  std::string Src = testutil::synthJava("p", "Big", 80, 5);
  ASSERT_GE(std::count(Src.begin(), Src.end(), '\n'), 1000);
  auto F = parseJava("Big.java", Src);
  std::string J = serializeTree(F->root);
  auto G = parseInterchange(J);
  EXPECT_EQ(serializeTree(G->root), J);
}

TEST(Interchange, RandomTreesRoundTrip) {
  std::mt19937 Rng(5);
  for (int I = 0; I < 100; ++I) {
    auto F = testutil::randomTree(Rng, 30);
    std::string J = serializeTree(F->root);
    auto G = parseInterchange(J);
    ASSERT_EQ(serializeTree(G->root), J);
    ASSERT_TRUE(isomorphic(F->root, G->root));
  }
}

TEST(Interchange, StrictSchema) {
  std::string J = R"({"typeLabel":"Block","value":"","span":[0,4],"children":[)"
                  R"({"typeLabel":"SimpleName","value":"x","span":[1,2],"children":[],"extra":1}]})";
  try {
    parseInterchange(J);
    FAIL();
  } catch (const InterchangeError &E) {
    EXPECT_NE(std::string(E.what()).find("/children/0/extra"), std::string::npos)
        << E.what();
  }
  EXPECT_THROW(parseInterchange(R"({"typeLabel":"A","value":"","children":[]})"),
               InterchangeError);
}
