#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace stabgraph;

namespace {

constexpr std::size_t kIterations = 200;

ColoredGraph cycle4() { return parse_edge_list("4 t=0\n1 2\n2 3\n1 4\n3 4"); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

std::vector<std::size_t> random_internal_perm(oracle::Random& rnd, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  if (n > 3) std::shuffle(perm.begin() + 1, perm.end() - 1, rnd.engine());
  return perm;
}

}  // namespace

TEST(ColoredGraph, Validation) {
  EXPECT_EQ(code_of([] { ColoredGraph(3, make_rational(1)); }), Errc::InvalidT);
  EXPECT_EQ(code_of([] { ColoredGraph(3, make_rational(-1, 2)); }), Errc::InvalidT);
  EXPECT_EQ(code_of([] { ColoredGraph(0); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([] { ColoredGraph(65); }), Errc::TooLarge);
  ColoredGraph g(3);
  g.add_edge(1, 2);
  EXPECT_EQ(code_of([&] { g.add_edge(2, 1); }), Errc::DuplicateEdge);
  EXPECT_EQ(code_of([&] { g.add_edge(2, 2); }), Errc::LoopEdge);
  EXPECT_EQ(code_of([&] { g.add_edge(1, 4); }), Errc::IndexOutOfRange);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(ColoredGraph(64).order(), 64u);
}

TEST(EdgeList, ParsesSamples) {
  const ColoredGraph g = cycle4();
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.t(), 0);
  EXPECT_EQ(g.edges(), (std::vector<ColoredGraph::Edge>{{1, 2}, {1, 4}, {2, 3}, {3, 4}}));

  const ColoredGraph single = parse_edge_list("1 t=0");
  EXPECT_EQ(single.order(), 1u);
  EXPECT_EQ(single.edge_count(), 0u);

  const ColoredGraph half = parse_edge_list("2 t=1/2\n1 2");
  EXPECT_EQ(half.t(), make_rational(1, 2));
  EXPECT_TRUE(half.has_edge(1, 2));

  const ColoredGraph commented = parse_edge_list("# comment\n3 t=2/4  # trailing\n\n1 2\r\n# x\n2 3\n");
  EXPECT_EQ(commented.t(), make_rational(1, 2));
  EXPECT_EQ(commented.edge_count(), 2u);
  EXPECT_EQ(parse_edge_list("3\n1 3").t(), 0);
}

TEST(EdgeList, Errors) {
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=1\n1 2"); }), Errc::InvalidT);
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=0\n1 2\n2 1"); }), Errc::DuplicateEdge);
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=0\n2 2"); }), Errc::LoopEdge);
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=0\n1 4"); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=0\n0 1"); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([] { parse_edge_list(""); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_edge_list("3 t=x"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_edge_list("3 s=0"); }), Errc::ParseError);
  try {
    parse_edge_list("3 t=0\n1 2\n1 b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3, column 3"), std::string::npos) << e.what();
  }
}

TEST(EdgeList, RoundTrip) {
  oracle::Random rnd(41);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const ColoredGraph g = rnd.graph(static_cast<std::size_t>(rnd.integer(1, 9)), make_rational(rnd.integer(0, 6), 7));
    EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
  }
}

TEST(Graph6, KnownStrings) {
  const ColoredGraph a = parse_graph6("A_");
  EXPECT_EQ(a.order(), 2u);
  EXPECT_TRUE(a.has_edge(1, 2));
  const ColoredGraph k4 = parse_graph6("C~");
  EXPECT_EQ(k4.edge_count(), 6u);
  const ColoredGraph empty = parse_graph6("D??");
  EXPECT_EQ(empty.order(), 5u);
  EXPECT_EQ(empty.edge_count(), 0u);
  EXPECT_EQ(parse_graph6(">>graph6<<A_\n"), a);
  EXPECT_EQ(parse_graph6("A_", make_rational(1, 3)).t(), make_rational(1, 3));
  EXPECT_EQ(to_graph6(cycle4()), oracle::reference_graph6(cycle4()));
}

TEST(Graph6, Errors) {
  EXPECT_EQ(code_of([] { parse_graph6(""); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_graph6("~??"); }), Errc::UnsupportedLongForm);
  EXPECT_EQ(code_of([] { parse_graph6("C"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_graph6("C~~"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_graph6("A "); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { to_graph6(ColoredGraph(63)); }), Errc::UnsupportedLongForm);
}

TEST(Graph6Property, MatchesReferenceCodecAndRoundTrips) {
  oracle::Random rnd(42);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const ColoredGraph g = rnd.graph(static_cast<std::size_t>(rnd.integer(1, 20)));
    const std::string s = to_graph6(g);
    EXPECT_EQ(s, oracle::reference_graph6(g));
    EXPECT_EQ(parse_graph6(s), g);
    EXPECT_EQ(to_graph6(parse_graph6(s)), s);
  }
}

TEST(ShortestPath, Examples) {
  EXPECT_EQ(shortest_path_len(cycle4(), 1, 4), 1u);
  EXPECT_EQ(shortest_path_len(cycle4(), 2, 4), 2u);
  EXPECT_EQ(shortest_path_len(cycle4(), 3, 3), 0u);
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(shortest_path_len(path_graph(n), 1, n), n - 1);
  const ColoredGraph split(4, {{1, 2}, {3, 4}});
  EXPECT_FALSE(shortest_path_len(split, 1, 4).has_value());
  EXPECT_THROW(shortest_path_len(split, 1, 5), Error);
}

TEST(ShortestPathProperty, SymmetricWithTriangleInequality) {
  oracle::Random rnd(43);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 10));
    const ColoredGraph g = rnd.graph(n);
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = 1; v <= n; ++v) {
        const auto uv = shortest_path_len(g, u, v);
        EXPECT_EQ(uv, shortest_path_len(g, v, u));
        if (!uv) continue;
        const std::size_t w = static_cast<std::size_t>(rnd.integer(1, static_cast<long>(n)));
        const auto uw = shortest_path_len(g, u, w);
        const auto wv = shortest_path_len(g, w, v);
        if (uw && wv) EXPECT_LE(*uv, *uw + *wv);
      }
  }
}

TEST(Connectivity, Trichotomy) {
  EXPECT_EQ(is_connected_1n(ColoredGraph(4, {{2, 3}, {3, 4}})), Connectivity::Isolated1);
  EXPECT_EQ(is_connected_1n(ColoredGraph(4, {{1, 2}, {3, 4}})), Connectivity::NotConnected1n);
  EXPECT_EQ(is_connected_1n(ColoredGraph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})), Connectivity::Connected1n);
  EXPECT_EQ(is_connected_1n(ColoredGraph(1)), Connectivity::Isolated1);
  EXPECT_EQ(is_connected_1n(path_graph(2)), Connectivity::Connected1n);
}

TEST(Modifications, AppendAndPrepend) {
  const ColoredGraph cycle(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  const ColoredGraph appended = mod_append_tail(cycle);
  EXPECT_EQ(appended, ColoredGraph(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}}));
  EXPECT_EQ(mod_append_tail(ColoredGraph(1)), path_graph(2));
  EXPECT_EQ(mod_prepend_head(ColoredGraph(1)), path_graph(2));
  EXPECT_EQ(mod_prepend_head(path_graph(2)), path_graph(3));
  for (std::size_t n = 2; n < 8; ++n) EXPECT_EQ(mod_append_tail(path_graph(n)), path_graph(n + 1));
  EXPECT_EQ(mod_append_tail(path_graph(3, make_rational(1, 4))).t(), make_rational(1, 4));
}

TEST(Modifications, Attach) {
  const ColoredGraph host(4, {{1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(code_of([&] { mod_attach(host, ColoredGraph(1), {}); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { mod_attach(host, ColoredGraph(1), {{1, 4}}); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { mod_attach(ColoredGraph(4, {{1, 2}, {2, 4}, {3, 4}}), ColoredGraph(1), {{1, 3}}); }),
            Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { mod_attach(host, ColoredGraph(1), {{2, 3}}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { mod_attach(host, ColoredGraph(1), {{1, 3}, {1, 2}}); }), Errc::PreconditionViolated);

  const ColoredGraph one = mod_attach(host, ColoredGraph(1), {{1, 3}});
  EXPECT_EQ(one, ColoredGraph(5, {{1, 2}, {2, 3}, {3, 4}, {3, 5}}));

  const ColoredGraph attached = mod_attach(host, path_graph(2), {{1, 3}, {2, 5 - 1}});
  EXPECT_EQ(attached.order(), 6u);
  EXPECT_TRUE(attached.has_edge(3, 6));
  EXPECT_TRUE(attached.has_edge(4, 5));
  EXPECT_TRUE(attached.has_edge(3, 4));
  EXPECT_TRUE(attached.has_edge(5, 6));
}

TEST(ModificationsProperty, PathLengthChanges) {
  oracle::Random rnd(44);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 7));
    const ColoredGraph g = rnd.connected_graph(n);
    const std::size_t ell = *shortest_path_len(g, 1, n);
    EXPECT_EQ(shortest_path_len(mod_append_tail(g), 1, n + 1), ell + 1);
    EXPECT_EQ(shortest_path_len(mod_prepend_head(g), 1, n + 1), ell + 1);

    const ColoredGraph host = mod_append_tail(g);
    const ColoredGraph h = rnd.graph(static_cast<std::size_t>(rnd.integer(1, 3)));
    std::vector<AttachLink> links;
    for (std::size_t v = 1; v <= h.order(); ++v)
      if (v == 1 || rnd.coin()) links.push_back({v, n});
    const ColoredGraph attached = mod_attach(host, h, links);
    EXPECT_EQ(shortest_path_len(attached, 1, attached.order()), ell + 1);
    EXPECT_EQ(attached.edge_count(), host.edge_count() + h.edge_count() + links.size());
  }
}

TEST(Canonical, Examples) {
  const ColoredGraph c1(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  const ColoredGraph c2(4, {{1, 3}, {3, 2}, {2, 4}, {1, 4}});
  EXPECT_EQ(canonical_form(c1), canonical_form(c2));
  const ColoredGraph path = path_graph(4);
  const ColoredGraph star(4, {{1, 2}, {2, 3}, {2, 4}});
  EXPECT_NE(canonical_form(path), canonical_form(star));
  EXPECT_NE(canonical_form(path_graph(3)), canonical_form(ColoredGraph(3, {{1, 2}, {1, 3}})));
  EXPECT_THROW(canonical_form(ColoredGraph(11)), Error);
  EXPECT_EQ(canonical_graph(c1).t(), c1.t());
}

TEST(CanonicalProperty, MatchesBruteForceAndIsOrbitInvariant) {
  oracle::Random rnd(45);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(1, 7));
    const ColoredGraph g = rnd.graph(n);
    const ColoredGraph canon = canonical_graph(g);
    EXPECT_EQ(oracle::bits(canon), oracle::brute_canonical(g));
    EXPECT_EQ(canonical_form(g.relabeled(random_internal_perm(rnd, n))), canonical_form(g));
    EXPECT_EQ(canon.edge_count(), g.edge_count());
    EXPECT_EQ(canon.degree(1), g.degree(1));
    EXPECT_EQ(canon.degree(n), g.degree(n));
  }
}

TEST(CanonicalProperty, ExhaustiveInvarianceUpToSix) {
  oracle::Random rnd(46);
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t k = 0; k < 20; ++k) {
      const ColoredGraph g = rnd.graph(n);
      const std::string expected = canonical_form(g);
      std::vector<std::size_t> inner(n - 2);
      std::iota(inner.begin(), inner.end(), 2);
      do {
        std::vector<std::size_t> perm{1};
        perm.insert(perm.end(), inner.begin(), inner.end());
        perm.push_back(n);
        ASSERT_EQ(canonical_form(g.relabeled(perm)), expected);
      } while (std::next_permutation(inner.begin(), inner.end()));
    }
  }
}

TEST(Enumeration, SmallCounts) {
  EXPECT_EQ(enumerate_graphs(2).size(), 2u);
  EXPECT_EQ(enumerate_graphs(2, 0, true).size(), 1u);
  EXPECT_EQ(enumerate_graphs(3, 0, true).size(), oracle::brute_class_count(3, true));
  EXPECT_EQ(enumerate_graphs(4, 0, true).size(), oracle::brute_class_count(4, true));
  EXPECT_THROW(enumerate_graphs(1), Error);
  EXPECT_THROW(enumerate_graphs(9), Error);
}

TEST(Enumeration, MatchesBruteForceUpToSix) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (bool connected : {false, true})
      EXPECT_EQ(enumerate_graphs(n, 0, connected).size(), oracle::brute_class_count(n, connected))
          << "n=" << n << " connected=" << connected;
}

TEST(EnumerationProperty, RepresentativesAreDistinctCanonicalAndSorted) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto graphs = enumerate_graphs(n, make_rational(1, 3), true);
    std::vector<std::string> keys;
    for (const auto& g : graphs) {
      EXPECT_EQ(g.t(), make_rational(1, 3));
      EXPECT_EQ(g, canonical_graph(g));
      EXPECT_EQ(is_connected_1n(g), Connectivity::Connected1n);
      keys.push_back(canonical_form(g));
    }
    EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end()) << "duplicate class at n=" << n;
  }
}

TEST(EnumerationProperty, Deterministic) {
  EXPECT_EQ(enumerate_graphs(6), enumerate_graphs(6));
}

TEST(SampleData, FilesParse) {
  const std::string dir = STABGRAPH_DATA_DIR "/graphs/";
  auto load = [&](const std::string& name) {
    std::ifstream in(dir + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str());
  };
  EXPECT_EQ(load("cycle4.el"), cycle4());
  EXPECT_EQ(load("cycle4_half.el"), cycle4().with_t(make_rational(1, 2)));
  for (std::size_t n = 2; n <= 9; ++n) EXPECT_EQ(load("path" + std::to_string(n) + ".el"), path_graph(n));
  EXPECT_EQ(is_connected_1n(load("isolated_v1.el")), Connectivity::Isolated1);
  EXPECT_EQ(is_connected_1n(load("split.el")), Connectivity::NotConnected1n);
  EXPECT_EQ(is_connected_1n(load("cycle4_reordered.el")), Connectivity::Connected1n);
  EXPECT_EQ(load("cycle4_tail.el"), mod_append_tail(load("cycle4_reordered.el")));
  EXPECT_EQ(load("cycle4_head.el"), mod_prepend_head(cycle4()));
  EXPECT_EQ(load("path4_attach.el"), mod_attach(path_graph(4), path_graph(2), {{2, 3}}));
}
