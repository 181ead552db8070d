#pragma once

// Builds benchmark documents from hand-written pair specifications. Only the
// coarse correspondences are written by hand; sub-expression mappings are
// expanded here by zipping the paired subtrees slot by slot. Nothing in this
// file calls the matchers under test.
//
// Spec lines:
//   element LOC => LOC   program element pair, header zipped, body block paired
//   stmt LOC => LOC      statement pair, header (composite) or subtree zipped
//   group LOC => LOC     program element pair without expansion
//   expr LOC => LOC      sub-expression pair, subtree zipped
//   pair LOC => LOC      single node pair, no expansion
//   rebind LOC => LOC    the left node's expanded pairs are replaced by this
//                        one (a sub-expression that became a call argument)
//   file PATH => PATH    a file pair receiving its own document
//   meta challenge=LEVEL [multi] [comment=TEXT]
// LOC is PATH:"snippet"[#occurrence][^Type]. Without ^Type it names the
// outermost node spanning exactly the snippet; with ^Type, the innermost
// node of that type enclosing it. Inside the snippet, [[...]] narrows the
// node span to the bracketed part while the rest only anchors the search.

#include "oracles.hpp"
#include "semdiff/bench.hpp"
#include "semdiff/java.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace truth {

using namespace semdiff;

inline std::string slurp(const std::filesystem::path &P) {
  std::ifstream In(P, std::ios::binary);
  if (!In)
    throw std::runtime_error("cannot read " + P.string());
  std::stringstream S;
  S << In.rdbuf();
  return S.str();
}

inline void loadSide(const std::filesystem::path &Dir, Snapshot &Into) {
  std::vector<std::string> Rel;
  for (const auto &E : std::filesystem::recursive_directory_iterator(Dir))
    if (E.is_regular_file() && E.path().extension() == ".java")
      Rel.push_back(std::filesystem::relative(E.path(), Dir).generic_string());
  std::sort(Rel.begin(), Rel.end());
  for (const std::string &R : Rel)
    Into.add(parseJava(R, slurp(Dir / R)));
}

inline CommitPair loadFixture(const std::filesystem::path &Dir) {
  CommitPair C;
  loadSide(Dir / "before", C.left);
  loadSide(Dir / "after", C.right);
  return C;
}

inline Node *resolveLoc(const Snapshot &S, const std::string &Loc) {
  static const std::regex Re(R"re(^([^:]+):"((?:[^"\\]|\\.)*)"(?:#(\d+))?(?:\^(\w+))?$)re");
  std::smatch M;
  if (!std::regex_match(Loc, M, Re))
    throw std::runtime_error("bad locator " + Loc);
  SourceFile *F = S.find(M[1].str());
  if (!F)
    throw std::runtime_error("no file in " + Loc);
  std::string Snip;
  std::string Raw = M[2].str();
  for (std::size_t I = 0; I < Raw.size(); ++I) {
    if (Raw[I] == '\\' && I + 1 < Raw.size()) {
      ++I;
      Snip += Raw[I] == 'n' ? '\n' : Raw[I];
    } else {
      Snip += Raw[I];
    }
  }
  std::string Plain = Snip;
  if (std::size_t Open = Plain.find("[["); Open != std::string::npos) {
    Plain.erase(Open, 2);
    if (std::size_t Close = Plain.find("]]"); Close != std::string::npos)
      Plain.erase(Close, 2);
  }
  int Occ = M[3].matched ? std::stoi(M[3].str()) : 1;
  std::size_t At = std::string::npos, From = 0;
  for (int I = 0; I < Occ; ++I) {
    At = F->content.find(Plain, From);
    if (At == std::string::npos)
      throw std::runtime_error("snippet not found: " + Loc);
    From = At + 1;
  }
  std::uint32_t Start = static_cast<std::uint32_t>(At);
  std::uint32_t End = static_cast<std::uint32_t>(At + Snip.size());
  if (std::size_t Open = Snip.find("[["); Open != std::string::npos) {
    std::size_t Close = Snip.find("]]", Open);
    if (Close == std::string::npos)
      throw std::runtime_error("unbalanced [[ in " + Loc);
    End = static_cast<std::uint32_t>(At + Close - 2);
    Start = static_cast<std::uint32_t>(At + Open);
  }
  Node *Best = nullptr;
  for (Node *N : F->nodes()) {
    if (M[4].matched) {
      if (N->type == M[4].str() && N->start <= Start && End <= N->end &&
          (!Best || N->depth > Best->depth))
        Best = N;
    } else if (N->start == Start && N->end == End && (!Best || N->depth < Best->depth)) {
      Best = N;
    }
  }
  if (!Best)
    throw std::runtime_error("no node for " + Loc);
  return Best;
}

struct Expanded {
  std::vector<std::pair<Node *, Node *>> elements, mappings;
};

inline bool ownElement(const Node *N) {
  return isBodyDeclaration(N) || N->type == "ImportDeclaration" ||
         N->type == "PackageDeclaration";
}

inline std::map<Slot, std::vector<Node *>> bySlot(const Node *N,
                                                  bool (*Keep)(const Node *)) {
  std::map<Slot, std::vector<Node *>> Out;
  for (Node *C : N->children)
    if (Keep(C))
      Out[C->slot].push_back(C);
  return Out;
}

// Children aligned slot by slot: in order when the counts agree, otherwise
// by a longest common subsequence over type and value.
inline std::vector<std::pair<Node *, Node *>> align(const std::vector<Node *> &A,
                                                    const std::vector<Node *> &B) {
  std::vector<std::pair<Node *, Node *>> Out;
  if (A.size() == B.size()) {
    for (std::size_t I = 0; I < A.size(); ++I)
      if (A[I]->type == B[I]->type)
        Out.emplace_back(A[I], B[I]);
    return Out;
  }
  std::size_t N = A.size(), M = B.size();
  std::vector<std::vector<int>> D(N + 1, std::vector<int>(M + 1, 0));
  auto Eq = [&](std::size_t I, std::size_t J) {
    return A[I]->type == B[J]->type && A[I]->value == B[J]->value;
  };
  for (std::size_t I = N; I-- > 0;)
    for (std::size_t J = M; J-- > 0;)
      D[I][J] = Eq(I, J) ? D[I + 1][J + 1] + 1 : std::max(D[I + 1][J], D[I][J + 1]);
  for (std::size_t I = 0, J = 0; I < N && J < M;) {
    if (Eq(I, J) && D[I][J] == D[I + 1][J + 1] + 1) {
      Out.emplace_back(A[I], B[J]);
      ++I;
      ++J;
    } else if (D[I + 1][J] >= D[I][J + 1]) {
      ++I;
    } else {
      ++J;
    }
  }
  return Out;
}

inline void zip(Node *A, Node *B, std::vector<std::pair<Node *, Node *>> &Out,
                bool (*Keep)(const Node *)) {
  if (A->type != B->type)
    return;
  Out.emplace_back(A, B);
  auto SA = bySlot(A, Keep), SB = bySlot(B, Keep);
  for (auto &[S, Xs] : SA) {
    auto It = SB.find(S);
    if (It == SB.end())
      continue;
    for (auto &[X, Y] : align(Xs, It->second))
      zip(X, Y, Out, [](const Node *) { return true; });
  }
}

inline bool headerChild(const Node *N) {
  return !ownElement(N) && !isStatement(N) && N->type != "Block";
}

inline bool isBlock(const Node *N) { return N->type == "Block"; }

inline bool hasBody(const Node *N) {
  for (const Node *C : N->children)
    if (isStatement(C) || C->type == "Block")
      return true;
  return false;
}

inline void expandHeader(Node *A, Node *B, std::vector<std::pair<Node *, Node *>> &Out) {
  Out.emplace_back(A, B);
  auto SA = bySlot(A, headerChild), SB = bySlot(B, headerChild);
  for (auto &[S, Xs] : SA)
    if (auto It = SB.find(S); It != SB.end())
      for (auto &[X, Y] : align(Xs, It->second))
        zip(X, Y, Out, [](const Node *) { return true; });
  auto BA = bySlot(A, isBlock), BB = bySlot(B, isBlock);
  for (auto &[S, Xs] : BA)
    if (auto It = BB.find(S); It != BB.end() && Xs.size() == It->second.size())
      for (std::size_t I = 0; I < Xs.size(); ++I)
        Out.emplace_back(Xs[I], It->second[I]);
}

struct FileSpec {
  std::string left, right;
};

struct Spec {
  Expanded pairs;
  std::vector<FileSpec> files;
  std::optional<BenchmarkMetadata> meta;
};

inline Spec parseSpec(const CommitPair &C, const std::string &Text) {
  Spec S;
  std::istringstream In(Text);
  std::string Line;
  int No = 0;
  std::vector<std::pair<Node *, Node *>> Rebinds;
  static const std::regex Rule(R"(^(element|group|stmt|expr|pair|rebind|file)\s+(.+?)\s+=>\s+(.+)$)");
  while (std::getline(In, Line)) {
    ++No;
    if (Line.empty() || Line[0] == '#')
      continue;
    try {
      if (Line.rfind("meta", 0) == 0) {
        BenchmarkMetadata M;
        static const std::regex Ch(R"(challenge=(\w+))"), Cm(R"(comment=(.*)$)");
        std::smatch X;
        if (std::regex_search(Line, X, Ch))
          M.challengeLevel = X[1].str();
        M.multiMappings = Line.find(" multi") != std::string::npos;
        if (std::regex_search(Line, X, Cm))
          M.comments = X[1].str();
        S.meta = M;
        continue;
      }
      std::smatch X;
      if (!std::regex_match(Line, X, Rule))
        throw std::runtime_error("unrecognised line");
      std::string Kind = X[1].str();
      if (Kind == "file") {
        S.files.push_back({X[2].str(), X[3].str()});
        continue;
      }
      Node *A = resolveLoc(C.left, X[2].str());
      Node *B = resolveLoc(C.right, X[3].str());
      if (Kind == "pair") {
        S.pairs.mappings.emplace_back(A, B);
      } else if (Kind == "group") {
        S.pairs.elements.emplace_back(A, B);
        S.pairs.mappings.emplace_back(A, B);
      } else if (Kind == "rebind") {
        Rebinds.emplace_back(A, B);
      } else if (Kind == "element") {
        S.pairs.elements.emplace_back(A, B);
        if (A->type == "CompilationUnit")
          S.pairs.mappings.emplace_back(A, B);
        else if (isBodyDeclaration(A) && hasBody(A))
          expandHeader(A, B, S.pairs.mappings);
        else if (A->type == "TypeDeclaration" || A->type == "EnumDeclaration")
          expandHeader(A, B, S.pairs.mappings);
        else
          zip(A, B, S.pairs.mappings, [](const Node *) { return true; });
      } else if (isCompositeStatement(A) && isCompositeStatement(B)) {
        expandHeader(A, B, S.pairs.mappings);
      } else {
        zip(A, B, S.pairs.mappings, [](const Node *) { return true; });
        if (A->type != B->type)
          S.pairs.mappings.emplace_back(A, B);
      }
    } catch (const std::exception &E) {
      throw std::runtime_error("spec line " + std::to_string(No) + ": " + E.what());
    }
  }
  for (auto &[A, B] : Rebinds) {
    auto &M = S.pairs.mappings;
    M.erase(std::remove_if(M.begin(), M.end(), [&](auto &P) { return P.first == A; }), M.end());
    M.emplace_back(A, B);
  }
  return S;
}

inline std::pair<double, double> churn(const std::string &L, const std::string &R) {
  oracle::LineDiff D = oracle::lineDiff(L, R);
  double NL = static_cast<double>(oracle::lines(L).size());
  double NR = static_cast<double>(oracle::lines(R).size());
  return {NL ? (D.removed + D.modified) / NL : 0.0, NR ? (D.added + D.modified) / NR : 0.0};
}

// One document per declared file pair. Pairs crossing files go into the
// inter-file groups of both files involved.
inline std::vector<std::pair<std::string, GroundTruthFile>> build(const CommitPair &C,
                                                                  const Spec &S) {
  auto PathOf = [](const Node *N) { return N->file->path; };
  std::vector<std::pair<std::string, GroundTruthFile>> Docs;
  for (const FileSpec &F : S.files) {
    GroundTruthFile G;
    G.leftFile = G.intraFile.leftFile = F.left;
    G.rightFile = G.intraFile.rightFile = F.right;
    std::map<std::pair<std::string, std::string>, GtGroup> Inter;
    std::set<std::pair<Node *, Node *>> Seen;
    auto Place = [&](const std::pair<Node *, Node *> &P, bool Element) {
      std::string LP = PathOf(P.first), RP = PathOf(P.second);
      GtGroup *Grp = nullptr;
      if (LP == F.left && RP == F.right) {
        Grp = &G.intraFile;
      } else if (LP == F.left || RP == F.right) {
        Grp = &Inter[{LP, RP}];
        Grp->leftFile = LP;
        Grp->rightFile = RP;
      } else {
        return;
      }
      (Element ? Grp->matchedElements : Grp->mappings).push_back(makeEntry(P.first, P.second));
    };
    for (const auto &P : S.pairs.elements)
      Place(P, true);
    for (const auto &P : S.pairs.mappings)
      if (Seen.insert(P).second)
        Place(P, false);
    auto Sort = [](std::vector<GtEntry> &V) {
      std::sort(V.begin(), V.end(), [](const GtEntry &A, const GtEntry &B) {
        return std::tie(A.leftRef.start, A.leftRef.end, A.leftRef.typeLabel, A.rightRef.filePath,
                        A.rightRef.start, A.rightRef.end, A.rightRef.typeLabel) <
               std::tie(B.leftRef.start, B.leftRef.end, B.leftRef.typeLabel, B.rightRef.filePath,
                        B.rightRef.start, B.rightRef.end, B.rightRef.typeLabel);
      });
    };
    Sort(G.intraFile.matchedElements);
    Sort(G.intraFile.mappings);
    for (auto &[K, Grp] : Inter) {
      Sort(Grp.matchedElements);
      Sort(Grp.mappings);
      G.interFile.push_back(Grp);
    }
    if (S.meta) {
      BenchmarkMetadata M = *S.meta;
      SourceFile *L = C.left.find(F.left);
      SourceFile *R = C.right.find(F.right);
      auto [CL, CR] = churn(L ? L->content : "", R ? R->content : "");
      M.leftChurn = std::round(CL * 1000) / 1000;
      M.rightChurn = std::round(CR * 1000) / 1000;
      G.metadata = M;
    }
    std::string Key;
    for (char Ch : F.left.empty() ? F.right : F.left)
      Key += std::isalnum(static_cast<unsigned char>(Ch)) ? Ch : '_';
    Docs.emplace_back(Key + ".json", G);
  }
  return Docs;
}

} // namespace truth
