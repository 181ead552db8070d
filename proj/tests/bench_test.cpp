#include "oracles.hpp"
#include "semdiff/bench.hpp"
#include "semdiff/java.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace semdiff;

namespace {

RefPair ref(int I) {
  return {{"A.java", "SimpleName", static_cast<std::uint32_t>(I),
           static_cast<std::uint32_t>(I + 1)},
          {"A.java", "SimpleName", static_cast<std::uint32_t>(I),
           static_cast<std::uint32_t>(I + 1)}};
}

std::set<RefPair> refs(int From, int To) {
  std::set<RefPair> S;
  for (int I = From; I < To; ++I)
    S.insert(ref(I));
  return S;
}

Node *find(Node *Root, const std::string &Type, const std::string &Text, int Nth = 0) {
  Node *Hit = nullptr;
  preorder(Root, [&](Node *N) {
    if (!Hit && N->type == Type && printFull(N) == Text && Nth-- == 0)
      Hit = N;
  });
  return Hit;
}

CommitPair commit(const std::string &L, const std::string &R) {
  CommitPair P;
  P.left.add(parseJava("p/C.java", L));
  P.right.add(parseJava("p/C.java", R));
  return P;
}

} // namespace

TEST(GroundTruth, InfoParsesToTwoRefs) {
  auto P = parseInfo("MethodInvocation[10-25]:MethodInvocation[12-27]", "a/L.java", "a/R.java");
  ASSERT_TRUE(P);
  EXPECT_EQ(P->first, (NodeRef{"a/L.java", "MethodInvocation", 10, 25}));
  EXPECT_EQ(P->second, (NodeRef{"a/R.java", "MethodInvocation", 12, 27}));
  EXPECT_EQ(formatInfo(P->first, P->second), "MethodInvocation[10-25]:MethodInvocation[12-27]");
}

TEST(GroundTruth, MalformedInfoIsRejected) {
  for (const char *Bad : {"MethodInvocation[10-25:MethodInvocation[12-27]",
                          "MethodInvocation10-25]:MethodInvocation[12-27]",
                          "MethodInvocation[25-10]:MethodInvocation[12-27]",
                          "MethodInvocation[10-25]", "[10-25]:X[1-2]", ""})
    EXPECT_FALSE(parseInfo(Bad, "L", "R")) << Bad;
}

TEST(GroundTruth, MinimalFileRoundTripsByteIdentical) {
  GroundTruthFile G;
  G.leftFile = G.rightFile = "p/C.java";
  G.intraFile.leftFile = G.intraFile.rightFile = "p/C.java";
  G.intraFile.mappings.push_back(
      {"x", "y", {"p/C.java", "SimpleName", 3, 4}, {"p/C.java", "SimpleName", 5, 6}});
  std::string Bytes = saveGroundTruth(G);
  EXPECT_EQ(saveGroundTruth(loadGroundTruth(Bytes)), Bytes);
  EXPECT_NE(Bytes.find("\"info\": \"SimpleName[3-4]:SimpleName[5-6]\""), std::string::npos);
}

TEST(GroundTruth, FullFileRoundTripsWithMetadataAndInterFile) {
  GroundTruthFile G;
  G.leftFile = "a/A.java";
  G.rightFile = "a/A.java";
  G.intraFile = {"a/A.java", "a/A.java", {}, {}};
  G.intraFile.matchedElements.push_back(
      {"type a.A", "type a.A", {"a/A.java", "TypeDeclaration", 0, 90}, {"a/A.java", "TypeDeclaration", 0, 40}});
  GtGroup X{"a/A.java", "a/B.java", {}, {}};
  X.mappings.push_back({"f();", "f();", {"a/A.java", "ExpressionStatement", 50, 54},
                        {"a/B.java", "ExpressionStatement", 70, 74}});
  G.interFile.push_back(X);
  G.metadata = BenchmarkMetadata{true, 0.25, 0.5, "medium", "duplicated region extracted"};
  std::string Bytes = saveGroundTruth(G);
  GroundTruthFile Back = loadGroundTruth(Bytes);
  EXPECT_EQ(saveGroundTruth(Back), Bytes);
  ASSERT_EQ(Back.interFile.size(), 1u);
  EXPECT_EQ(Back.interFile[0].mappings[0].rightRef.filePath, "a/B.java");
  ASSERT_TRUE(Back.metadata);
  EXPECT_EQ(Back.metadata->challengeLevel, "medium");
}

TEST(GroundTruth, RejectionNamesTheOffendingEntry) {
  std::string J = R"({"leftFile":"L","rightFile":"R","intraFile":{"matchedElements":[],
    "mappings":[{"left":"a","right":"b","info":"X[1-2]:X[3-4]"},
                {"left":"a","right":"b","info":"X[1-2:X[3-4]"}]}})";
  try {
    loadGroundTruth(J);
    FAIL() << "accepted a malformed info";
  } catch (const BenchError &E) {
    EXPECT_EQ(E.entry, 1);
    EXPECT_NE(std::string(E.what()).find("mappings[1]"), std::string::npos);
  }
  EXPECT_THROW(loadGroundTruth("{\"leftFile\":\"L\"}"), BenchError);
  EXPECT_THROW(loadGroundTruth("not json"), BenchError);
}

TEST(Metrics, ReferenceCountsGiveReportedRatios) {
  // 1410 shared, 4 tool-only, 23 benchmark-only
  std::set<RefPair> T = refs(0, 1414), B = refs(0, 1410);
  for (int I = 2000; I < 2023; ++I)
    B.insert(ref(I));
  MetricsReport R = computeMetrics(T, B);
  EXPECT_EQ(R.tp, 1410u);
  EXPECT_EQ(R.fp, 4u);
  EXPECT_EQ(R.fn, 23u);
  EXPECT_NEAR(R.precision, 0.9972, 5e-5);
  EXPECT_NEAR(R.recall, 0.9839, 5e-5);
  EXPECT_NEAR(R.fscore, 2.0 * 1410 / (2 * 1410 + 4 + 23), 1e-12);
  EXPECT_FALSE(R.perfectDiff);
}

TEST(Metrics, IdenticalSetsArePerfect) {
  MetricsReport R = computeMetrics(refs(0, 10), refs(0, 10));
  EXPECT_EQ(R.precision, 1.0);
  EXPECT_EQ(R.recall, 1.0);
  EXPECT_EQ(R.fscore, 1.0);
  EXPECT_TRUE(R.perfectDiff);
}

TEST(Metrics, ZeroDenominatorConventions) {
  MetricsReport Empty = computeMetrics({}, refs(0, 5));
  EXPECT_EQ(Empty.recall, 0.0);
  EXPECT_EQ(Empty.precision, 0.0);
  EXPECT_EQ(Empty.fscore, 0.0);
  MetricsReport None = computeMetrics({}, {});
  EXPECT_EQ(None.precision, 1.0);
  EXPECT_EQ(None.recall, 1.0);
  EXPECT_EQ(None.fscore, 1.0);
  EXPECT_TRUE(None.perfectDiff);
}

TEST(Metrics, SwappingSetsSwapsErrorsAndRatios) {
  std::mt19937 Rng(7);
  for (int Trial = 0; Trial < 200; ++Trial) {
    std::set<RefPair> A, B;
    int N = 1 + Rng() % 30;
    for (int I = 0; I < N; ++I) {
      if (Rng() % 3)
        A.insert(ref(Rng() % 40));
      if (Rng() % 3)
        B.insert(ref(Rng() % 40));
    }
    MetricsReport X = computeMetrics(A, B), Y = computeMetrics(B, A);
    EXPECT_EQ(X.fp, Y.fn);
    EXPECT_EQ(X.fn, Y.fp);
    EXPECT_EQ(X.tp, Y.tp);
    EXPECT_DOUBLE_EQ(X.precision, Y.recall);
    EXPECT_DOUBLE_EQ(X.recall, Y.precision);
    if (X.perfectDiff) {
      EXPECT_EQ(X.precision, 1.0);
      EXPECT_EQ(X.recall, 1.0);
    }
  }
}

namespace {

const char *Unchanged = R"(package p;
class C {
  int same(int a) {
    int b = a + 1;
    return b;
  }
  int changed(int a) {
    return a * 2;
  }
})";
const char *Changed = R"(package p;
class C {
  int same(int a) {
    int b = a + 1;
    return b;
  }
  int changed(int a) {
    return a * 3;
  }
})";

GroundTruthFile truthFor(const CommitPair &P, const std::vector<NodePair> &Elems,
                         const std::vector<NodePair> &Maps) {
  GroundTruthFile G;
  G.leftFile = G.rightFile = G.intraFile.leftFile = G.intraFile.rightFile = "p/C.java";
  (void)P;
  for (auto &[L, R] : Elems)
    G.intraFile.matchedElements.push_back(makeEntry(L, R));
  for (auto &[L, R] : Maps)
    G.intraFile.mappings.push_back(makeEntry(L, R));
  return G;
}

} // namespace

TEST(Metrics, MappingsUnderUnchangedElementsAreExcluded) {
  CommitPair P = commit(Unchanged, Changed);
  Node *L = P.left.files[0]->root, *R = P.right.files[0]->root;
  Node *SameL = find(L, "MethodDeclaration", "int same(int a) { int b = a + 1; return b; }");
  Node *SameR = find(R, "MethodDeclaration", "int same(int a) { int b = a + 1; return b; }");
  Node *ChL = find(L, "ReturnStatement", "return a * 2;");
  Node *ChR = find(R, "ReturnStatement", "return a * 3;");
  ASSERT_TRUE(SameL && SameR && ChL && ChR);
  GroundTruthFile G = truthFor(P, {{SameL, SameR}}, {{SameL, SameR}, {ChL, ChR}});

  MappingStore Tool;
  Tool.add(SameL, SameR);
  Tool.add(ChL, ChR);
  MetricsReport Base = evaluate(P, {G}, Tool, Granularity::SubExpression);
  EXPECT_TRUE(Base.perfectDiff);

  // adding (even wrong) mappings nested under the unchanged method changes nothing
  Node *BL = find(SameL, "VariableDeclarationStatement", "int b = a + 1;");
  Node *BR = find(SameR, "ReturnStatement", "return b;");
  Tool.add(BL, BR);
  Tool.add(find(SameL, "SimpleName", "a", 1), find(SameR, "SimpleName", "a", 1));
  MetricsReport After = evaluate(P, {G}, Tool, Granularity::SubExpression);
  EXPECT_EQ(After.tp, Base.tp);
  EXPECT_EQ(After.fp, Base.fp);
  EXPECT_EQ(After.fn, Base.fn);
  EXPECT_TRUE(After.perfectDiff);

  // the same wrong pair outside an unchanged element counts
  Tool.add(find(L, "SimpleName", "a", 3), find(R, "SimpleName", "a", 3));
  EXPECT_EQ(evaluate(P, {G}, Tool, Granularity::SubExpression).fp, 1u);
}

TEST(Metrics, StatementGranularityKeepsStatementsAndDeclarations) {
  CommitPair P = commit(Unchanged, Changed);
  Node *ChL = find(P.left.files[0]->root, "ReturnStatement", "return a * 2;");
  Node *ChR = find(P.right.files[0]->root, "ReturnStatement", "return a * 3;");
  Node *NL = find(ChL, "NumberLiteral", "2"), *NR = find(ChR, "NumberLiteral", "3");
  ASSERT_TRUE(NL && NR);
  GroundTruthFile G = truthFor(P, {}, {{ChL, ChR}, {NL, NR}});
  MappingStore Tool;
  Tool.add(ChL, ChR);
  MetricsReport Sub = evaluate(P, {G}, Tool, Granularity::SubExpression);
  MetricsReport Stmt = evaluate(P, {G}, Tool, Granularity::Statement);
  EXPECT_EQ(Sub.fn, 1u);
  EXPECT_EQ(Stmt.fn, 0u);
  EXPECT_TRUE(Stmt.perfectDiff);
}

TEST(Metrics, UnresolvableReferenceIsAnError) {
  CommitPair P = commit(Unchanged, Changed);
  GroundTruthFile G;
  G.leftFile = G.rightFile = G.intraFile.leftFile = G.intraFile.rightFile = "p/C.java";
  G.intraFile.mappings.push_back({"?", "?", {"p/C.java", "IfStatement", 1, 2},
                                  {"p/C.java", "IfStatement", 1, 2}});
  EXPECT_THROW(evaluate(P, {G}, MappingStore{}, Granularity::SubExpression), BenchError);
}

TEST(Audit, MethodBodyMappedToIfBodyIsIncompatible) {
  CommitPair P = commit("package p;\nclass C {\n  void f() { g(); }\n}\n",
                        "package p;\nclass C {\n  void f() { if (x) { g(); } }\n}\n");
  Node *MB = P.left.files[0]->root->children.back()->children.back()->child(Slot::Body);
  Node *IfB = find(P.right.files[0]->root, "Block", "{ g(); }");
  ASSERT_TRUE(MB && IfB);
  ASSERT_EQ(IfB->parent->type, "IfStatement");
  auto C = auditIncompatibility({{MB, IfB}}, {});
  EXPECT_EQ(C.byKind["Block"], 1);
  EXPECT_EQ(C.total(), 1);
  // a benchmark pair is never counted
  EXPECT_EQ(auditIncompatibility({{MB, IfB}}, {{refOf(MB), refOf(IfB)}}).total(), 0);
}

TEST(Audit, ModifierGroups) {
  CommitPair P = commit("package p;\nclass C {\n  public final void f() { }\n}\n",
                        "package p;\nclass C {\n  static private final void f() { }\n}\n");
  auto Mod = [&](const Snapshot &S, const std::string &V) {
    Node *Hit = nullptr;
    preorder(S.files[0]->root, [&](Node *N) {
      if (N->type == "Modifier" && N->value == V)
        Hit = N;
    });
    return Hit;
  };
  Node *Pub = Mod(P.left, "public"), *Fin = Mod(P.left, "final");
  Node *Sta = Mod(P.right, "static"), *Pri = Mod(P.right, "private"),
       *Sea = Mod(P.right, "final");
  ASSERT_TRUE(Pub && Fin && Sta && Pri && Sea);
  EXPECT_EQ(incompatibleKind(Pub, Sta), "Modifier");
  EXPECT_FALSE(incompatibleKind(Pub, Pri));
  EXPECT_FALSE(incompatibleKind(Fin, Sea));
  EXPECT_EQ(incompatibleKind(Fin, Pri), "Modifier");
  SourceFile Holder;
  Node *Sealed = Holder.make("Modifier", "sealed", 0, 6);
  Node *NonSealed = Holder.make("Modifier", "non-sealed", 0, 10);
  EXPECT_FALSE(incompatibleKind(Fin, Sealed));
  EXPECT_FALSE(incompatibleKind(NonSealed, Sealed));
  EXPECT_EQ(incompatibleKind(Sealed, Sta), "Modifier");
  auto C = auditIncompatibility({{Pub, Sta}, {Pub, Pri}, {Fin, Sea}}, {});
  EXPECT_EQ(C.byKind["Modifier"], 1);
}

TEST(Audit, ComposedDiffsHaveNoIncompatiblePairs) {
  const std::pair<const char *, const char *> Commits[] = {
      {Unchanged, Changed},
      {"package p;\nclass C {\n  void run(int n) {\n    int a = n + 1;\n    log(a);\n    save(a);\n  }\n}\n",
       "package p;\nclass C {\n  void run(int n) {\n    int a = n + 1;\n    persist(a);\n  }\n"
       "  void persist(int a) {\n    log(a);\n    save(a);\n  }\n}\n"},
      {"package p;\nclass C {\n  void f() {\n    try { w(); } catch (IOException e) { fail(e); }"
       " catch (ParseException e) { fail(e); }\n  }\n}\n",
       "package p;\nclass C {\n  void f() {\n    try { w(); } catch (IOException | ParseException e)"
       " { fail(e); }\n  }\n}\n"},
  };
  for (auto &[L, R] : Commits) {
    CommitPair P = commit(L, R);
    ComposedDiff D = diffCommit(P);
    // only refactoring-sourced pairs (catch types to union members) may
    // change parent kind; a benchmark holding them audits to zero
    std::vector<NodePair> Declared;
    for (auto &Pr : D.store.pairs())
      if (!D.fromRefactorings.count(Pr))
        Declared.push_back(Pr);
    EXPECT_EQ(auditIncompatibility(Declared, {}).total(), 0) << L;
    EXPECT_EQ(auditIncompatibility(D.store.pairs(), refPairs(D.store.pairs())).total(), 0);
    for (const Refactoring &F : D.refactorings)
      EXPECT_NE(F.type, "Change Variable Type") << F.description;
  }
}

TEST(Churn, MatchesLineDiffOracle) {
  EXPECT_EQ(computeChurn("a\nb\nc\n", "a\nb\nc\n"), std::make_pair(0.0, 0.0));
  std::string Ten, Other;
  for (int I = 0; I < 10; ++I) {
    Ten += "line " + std::to_string(I) + "\n";
    Other += "other " + std::to_string(I) + "\n";
  }
  EXPECT_EQ(computeChurn(Ten, Other), std::make_pair(1.0, 1.0));
  std::string Twenty, Edited;
  for (int I = 0; I < 20; ++I) {
    Twenty += "l" + std::to_string(I) + "\n";
    Edited += (I == 4 || I == 11 ? "changed" + std::to_string(I) : "l" + std::to_string(I)) + "\n";
  }
  auto [LC, RC] = computeChurn(Twenty, Edited);
  EXPECT_DOUBLE_EQ(LC, 0.1);
  EXPECT_DOUBLE_EQ(RC, 0.1);

  std::mt19937 Rng(3);
  for (int Trial = 0; Trial < 100; ++Trial) {
    std::string A, B;
    int NA = 1 + Rng() % 15, NB = 1 + Rng() % 15;
    for (int I = 0; I < NA; ++I)
      A += std::string(1, static_cast<char>('a' + Rng() % 4)) + "\n";
    for (int I = 0; I < NB; ++I)
      B += std::string(1, static_cast<char>('a' + Rng() % 4)) + "\n";
    auto D = oracle::lineDiff(A, B);
    auto [L, R] = computeChurn(A, B);
    EXPECT_DOUBLE_EQ(L, double(D.removed + D.modified) / NA);
    EXPECT_DOUBLE_EQ(R, double(D.added + D.modified) / NB);
    EXPECT_GE(L, 0.0);
    EXPECT_LE(R, 1.0);
  }
}

TEST(Timing, PositiveSamplesAndStatistics) {
  CommitPair P = commit(Unchanged, Unchanged);
  TimingStats S = timeDiff([&] { diffCommit(P); }, 5, 1);
  ASSERT_EQ(S.samples.size(), 5u);
  for (long long X : S.samples)
    EXPECT_GT(X, 0);
  EXPECT_GE(S.mean, static_cast<double>(S.min));
  EXPECT_GE(S.stddev, 0.0);
  EXPECT_LE(S.min, S.median);
}

TEST(GroundTruth, ComposedDiffExportsResolvableEntries) {
  CommitPair P = commit(Unchanged, Changed);
  ComposedDiff D = diffCommit(P);
  ASSERT_EQ(D.files.size(), 1u);
  GroundTruthFile G = loadGroundTruth(saveGroundTruth(toGroundTruth(D.files[0])));
  EXPECT_EQ(G.intraFile.mappings.size(), D.store.size());
  EXPECT_EQ(resolveMappings(P, {G}).size(), D.store.size());
  MetricsReport Self = evaluate(P, {G}, D.store, Granularity::SubExpression);
  EXPECT_TRUE(Self.perfectDiff);
}
