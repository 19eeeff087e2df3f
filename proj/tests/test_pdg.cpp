#include <doctest.h>

#include <algorithm>
#include <map>

#include "generators.hpp"
#include "rubyeval/parser.hpp"
#include "rubyeval/pdg.hpp"

using namespace rubyeval;

namespace {

const char* kCode1 =
    "void foo(int i) {"
    "  int j;"
    "  if (i < 2) {"
    "    j = 1;"
    "  } else {"
    "    j = 2;"
    "  }"
    "}";

const char* kCode2 =
    "void foo(int i) {"
    "  int j;"
    "  if (i < 2)"
    "    j = i;"
    "  j = 2;"
    "}";

DependenceGraph build(const char* src) {
    ParseOutcome out = parse_source(src);
    REQUIRE(out.parsed());
    PdgBuildResult r = build_pdg(*out.tree);
    REQUIRE(r.applicable());
    return *r.graph;
}

int node_by_label(const DependenceGraph& g, const std::string& label) {
    for (const auto& n : g.nodes)
        if (n.label == label) return n.id;
    return -1;
}

bool has_edge(const DependenceGraph& g, int from, int to, PdgEdgeKind kind) {
    return std::any_of(g.edges.begin(), g.edges.end(), [&](const PdgEdge& e) {
        return e.from == from && e.to == to && e.kind == kind;
    });
}

std::vector<std::string> labels_of(const DependenceGraph& g) {
    std::vector<std::string> out;
    for (const auto& n : g.nodes) out.push_back(n.label);
    return out;
}

}  // namespace

TEST_CASE("branching fragment: nodes and control shape") {
    DependenceGraph g = build(kCode1);
    // entry + param + decl + predicate + two assignments
    REQUIRE(g.nodes.size() == 6);
    CHECK(g.nodes[0].kind == PdgNodeKind::Entry);
    CHECK(g.nodes[0].defs.empty());
    CHECK(g.nodes[0].uses.empty());

    std::vector<std::string> expected = {"entry",     "inputInt",  "declareInt",
                                         "intSmall2", "intEqual1", "intEqual2"};
    CHECK(labels_of(g) == expected);

    int pred = node_by_label(g, "intSmall2");
    CHECK(g.nodes[static_cast<std::size_t>(pred)].kind == PdgNodeKind::Predicate);
    CHECK(has_edge(g, pred, node_by_label(g, "intEqual1"), PdgEdgeKind::Control));
    CHECK(has_edge(g, pred, node_by_label(g, "intEqual2"), PdgEdgeKind::Control));
    CHECK(has_edge(g, 0, node_by_label(g, "inputInt"), PdgEdgeKind::Control));
    CHECK(has_edge(g, 0, node_by_label(g, "declareInt"), PdgEdgeKind::Control));
    CHECK(has_edge(g, 0, pred, PdgEdgeKind::Control));
    // i flows from the parameter into the predicate
    CHECK(has_edge(g, node_by_label(g, "inputInt"), pred, PdgEdgeKind::Data));
    CHECK(g.size() == 6 + 6);
}

TEST_CASE("straight-line reaching definitions") {
    // textbook reaching-definitions by hand: the assignment kills the bare
    // declaration, so only assignment -> return carries data
    DependenceGraph g = build("void f() { int j; j = 1; return j; }");
    int decl = node_by_label(g, "declareInt");
    int assign = node_by_label(g, "intEqual1");
    int ret = node_by_label(g, "returnInt");
    REQUIRE(decl > 0);
    REQUIRE(assign > 0);
    REQUIRE(ret > 0);
    CHECK(has_edge(g, assign, ret, PdgEdgeKind::Data));
    CHECK(!has_edge(g, decl, ret, PdgEdgeKind::Data));
    CHECK(!has_edge(g, decl, assign, PdgEdgeKind::Data));
}

TEST_CASE("empty body is not applicable") {
    ParseOutcome out = parse_source("void f(int i) { }");
    REQUIRE(out.parsed());
    PdgBuildResult r = build_pdg(*out.tree);
    CHECK(!r.applicable());
    CHECK(!r.reason.empty());
}

TEST_CASE("multi-method unit is not applicable") {
    ParseOutcome out = parse_source("void f() { a(); } void g() { b(); }");
    REQUIRE(out.parsed());
    CHECK(!build_pdg(*out.tree).applicable());
}

TEST_CASE("every non-entry node is control-reachable from entry") {
    testgen::Rng rng(31);
    for (int it = 0; it < 120; ++it) {
        std::string src = testgen::random_method_source(rng, testgen::pick(rng, 1, 7));
        ParseOutcome out = parse_source(src);
        REQUIRE(out.parsed());
        PdgBuildResult r = build_pdg(*out.tree);
        REQUIRE(r.applicable());
        const DependenceGraph& g = *r.graph;

        std::vector<bool> seen(g.nodes.size(), false);
        std::vector<int> stack = {0};
        seen[0] = true;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges)
                if (e.kind == PdgEdgeKind::Control && e.from == n &&
                    !seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = true;
                    stack.push_back(e.to);
                }
        }
        for (bool s : seen) CHECK(s);
    }
}

TEST_CASE("data edges between statements form a source-ordered DAG on straight-line code") {
    DependenceGraph g = build(
        "void f(int a) { int x = a; int y = x + 1; int z = x + y; return z; }");
    for (const auto& e : g.edges)
        if (e.kind == PdgEdgeKind::Data) CHECK(e.from < e.to);
}

TEST_CASE("consistent renaming leaves the graph identical") {
    const char* original =
        "void f(int count) { int total = 0; if (count < 5) { total = count; } return total; }";
    const char* renamed =
        "void f(int n) { int sum = 0; if (n < 5) { sum = n; } return sum; }";
    DependenceGraph a = build(original);
    DependenceGraph b = build(renamed);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].label == b.nodes[i].label);
        CHECK(a.nodes[i].kind == b.nodes[i].kind);
    }
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        CHECK(a.edges[i].from == b.edges[i].from);
        CHECK(a.edges[i].to == b.edges[i].to);
        CHECK(a.edges[i].kind == b.edges[i].kind);
    }
}

TEST_CASE("loops carry data dependence backward") {
    DependenceGraph g = build("void f(int n) { int i = 0; while (i < n) { i = i + 1; } }");
    int assign = node_by_label(g, "intEqualInt");
    int pred = node_by_label(g, "intSmallInt");
    REQUIRE(assign > 0);
    REQUIRE(pred > 0);
    CHECK(has_edge(g, assign, pred, PdgEdgeKind::Data));  // loop-carried
    CHECK(has_edge(g, assign, assign, PdgEdgeKind::Data));
}

TEST_CASE("break and continue depend on the loop predicate") {
    DependenceGraph g = build(
        "void f(int n) { while (n > 0) { if (n == 3) break; n = n - 1; } return n; }");
    int pred = node_by_label(g, "intGreat0");
    int brk = node_by_label(g, "break");
    REQUIRE(pred > 0);
    REQUIRE(brk > 0);
    CHECK(has_edge(g, pred, brk, PdgEdgeKind::Control));
}

TEST_CASE("deterministic construction") {
    DependenceGraph a = build(kCode2);
    DependenceGraph b = build(kCode2);
    CHECK(a.to_dot() == b.to_dot());
}

TEST_CASE("dot dump lists nodes and edge kinds") {
    DependenceGraph g = build(kCode1);
    std::string dot = g.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("intSmall2") != std::string::npos);
    CHECK(dot.find("kind=control") != std::string::npos);
    CHECK(dot.find("kind=data") != std::string::npos);
}
