#include <gtest/gtest.h>

#include <cmath>

#include "latticelab/errors.hpp"
#include "latticelab/graphs_mckay.hpp"

using namespace latticelab;

TEST(Catalog, ExtendedDiagramsHaveNormTwo) {
  const auto labels = extended_catalog(10);
  EXPECT_GE(labels.size(), 5u);
  for (const auto& l : labels) EXPECT_NEAR(graph_norm(catalog_graph(l)), 2.0, 1e-12) << l;
}

TEST(Catalog, FiniteDiagramsHaveCoxeterNorms) {
  const double pi = std::acos(-1.0);
  for (const auto& l : finite_catalog(9)) {
    const double norm = graph_norm(catalog_graph(l));
    EXPECT_LT(norm, 2.0) << l;
    EXPECT_NEAR(norm, 2.0 * std::cos(pi / coxeter_number(l)), 1e-12) << l;
  }
  EXPECT_NEAR(graph_norm(catalog_graph("A3")), std::sqrt(2.0), 1e-12);
}

TEST(Catalog, LabelSpellings) {
  EXPECT_EQ(catalog_graph("E8~").adjacency(), catalog_graph("E~8").adjacency());
  EXPECT_EQ(catalog_graph("e~8").size(), 9u);
  EXPECT_THROW(catalog_graph("F4"), ParseError);
  EXPECT_THROW(catalog_graph("E9"), DomainError);
}

TEST(Perron, IntegralOnExtendedDiagrams) {
  for (const auto& l : extended_catalog(10)) {
    const auto g = catalog_graph(l);
    ASSERT_TRUE(g.star().has_value()) << l;
    const auto ip = integral_perron(g);
    EXPECT_LT(ip.rounding_residual, 1e-9) << l;
    EXPECT_TRUE(ip.exact_eigenvector) << l;
    EXPECT_EQ(ip.values[*g.star()], 1) << l;
  }
}

TEST(Perron, E8TildeSumOfSquares) {
  const auto ip = integral_perron(catalog_graph("E8~"));
  EXPECT_EQ(ip.sum_of_squares, 120);
  std::vector<long> sorted = ip.values;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<long>{1, 2, 2, 3, 3, 4, 4, 5, 6}));
}

TEST(Perron, KnownVectors) {
  for (const auto& v : perron_vector(catalog_graph("A~5"))) EXPECT_NEAR(v, 1.0, 1e-12);
  const auto star = MarkedGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {}, 1);
  const auto p = perron_vector(star);
  EXPECT_NEAR(p[0], 2.0, 1e-12);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR(p[i], 1.0, 1e-12);
  const auto two = MarkedGraph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(perron_vector(two), DomainError);
}

TEST(Norm, TrivialGroupGraphIsDoubleLoop) {
  const MarkedGraph g(std::vector<std::vector<int>>{{2}});
  EXPECT_NEAR(graph_norm(g), 2.0, 1e-15);
  EXPECT_EQ(classify_norm2(g), "A~0");
  EXPECT_THROW(graph_norm(MarkedGraph()), DomainError);
}

TEST(Classify, CyclesStarsAndCatalogRoundTrip) {
  std::vector<std::pair<std::size_t, std::size_t>> cycle;
  for (std::size_t i = 0; i < 7; ++i) cycle.emplace_back(i, (i + 1) % 7);
  EXPECT_EQ(classify_norm2(MarkedGraph::from_edges(7, cycle)), "A~6");
  EXPECT_EQ(classify_norm2(MarkedGraph::from_edges(5, {{3, 0}, {3, 1}, {3, 2}, {3, 4}})), "D~4");
  for (const auto& l : extended_catalog(10)) {
    // relabel by reversing vertex order, then classify
    const auto g = catalog_graph(l);
    const std::size_t n = g.size();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) adj[n - 1 - i][n - 1 - j] = g(i, j);
    EXPECT_EQ(classify_norm2(MarkedGraph(adj)), l);
  }
  EXPECT_THROW(classify_norm2(catalog_graph("A5")), DomainError);
}

TEST(Roots, GramOfExtendedDiagrams) {
  for (const auto& l : extended_catalog(10)) {
    const auto g = catalog_graph(l);
    const auto r = root_gram(g);
    EXPECT_TRUE(r.positive_semidefinite) << l;
    EXPECT_EQ(r.rank + 1, g.size()) << l;
    EXPECT_LT(r.reconstruction_error, 1e-8) << l;
    if (g.size() < 3) continue;  // A~0, A~1 carry loops / double edges
    const Eigen::MatrixXd inner = r.root_vectors * r.root_vectors.transpose();
    for (Eigen::Index i = 0; i < inner.rows(); ++i)
      for (Eigen::Index j = 0; j < inner.cols(); ++j) {
        const double x = inner(i, j);
        if (i == j)
          EXPECT_NEAR(x, 2.0, 1e-8);
        else
          EXPECT_TRUE(std::abs(x) < 1e-8 || std::abs(x + 1.0) < 1e-8) << l << " " << x;
      }
  }
  EXPECT_EQ(root_gram(catalog_graph("E~6")).rank, 6u);
  EXPECT_EQ(root_gram(catalog_graph("A2")).rank, 2u);
  std::vector<std::pair<std::size_t, std::size_t>> k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_THROW(root_gram(MarkedGraph::from_edges(4, k4)), DomainError);
}

TEST(Roots, DeletingAnyVertexGivesRootSystem) {
  for (const auto& l : extended_catalog(10)) {
    const auto g = catalog_graph(l);
    if (g.size() < 2) continue;
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto h = g.without_vertex(v);
      EXPECT_LT(graph_norm(h), 2.0 - 1e-9) << l << " minus " << v;
      EXPECT_EQ(root_gram(h).rank, h.size()) << l << " minus " << v;
    }
  }
}

TEST(Indices, QuantizedValues) {
  const auto v = admissible_indices(12);
  EXPECT_NEAR(v[0].second, 1.0, 1e-12);
  EXPECT_NEAR(v[1].second, 2.0, 1e-12);
  EXPECT_NEAR(v[2].second, (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(v[3].second, 3.0, 1e-12);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i].second, v[i - 1].second);
  EXPECT_LT(v.back().second, 4.0);
  EXPECT_THROW(admissible_indices(2), DomainError);
}

TEST(Bipartite, LambdaBlock) {
  const auto g = catalog_graph("D~4");
  const auto lambda = g.lambda_block();
  ASSERT_TRUE(lambda.has_value());
  std::size_t entries = 0;
  for (const auto& row : *lambda) entries += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
  EXPECT_EQ(entries, 4u);
  EXPECT_FALSE(catalog_graph("A~2").lambda_block().has_value());
}

TEST(GroupGraphs, SymmetricGroupS3) {
  const auto s3 = group_subfactor_graphs({1, 1, 2}, 6);
  EXPECT_EQ(s3.gamma.size(), 4u);
  EXPECT_EQ(s3.gamma(0, 3), 2);
  EXPECT_EQ(s3.gamma_check.size(), 7u);
  // both have norm sqrt(6)
  EXPECT_NEAR(graph_norm(s3.gamma), std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(graph_norm(s3.gamma_check), std::sqrt(6.0), 1e-12);
  const auto z2 = group_subfactor_graphs({1, 1}, 2);
  EXPECT_EQ(z2.gamma.adjacency(), z2.gamma_check.adjacency());
  EXPECT_THROW(group_subfactor_graphs({1, 1}, 3), DomainError);
}

TEST(ConnesTensor, DimensionRule) {
  EXPECT_EQ(connes_tensor_dims({2, 3}, {1, 2}, {4, 1}).total, 6);
  const auto unit = connes_tensor_dims({3}, {5}, {3});
  EXPECT_EQ(unit.total, 15);  // V (5 x 3) tensored with M itself
  EXPECT_THROW(connes_tensor_dims({2}, {1, 2}, {1}), DomainError);
}

TEST(ConnesTensor, Associative) {
  const Bimodule a{{1, 2}, {2, 3}, {{1, 0}, {2, 1}}};
  const Bimodule b{{2, 3}, {1, 1, 2}, {{1, 0, 1}, {0, 2, 1}}};
  const Bimodule c{{1, 1, 2}, {3}, {{1}, {2}, {1}}};
  EXPECT_EQ(connes_tensor(connes_tensor(a, b), c), connes_tensor(a, connes_tensor(b, c)));
  EXPECT_THROW(connes_tensor(a, c), DomainError);
}

TEST(Dot, ExportListsEveryEdge) {
  const auto dot = catalog_graph("A~1").to_dot();
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '-') / 2, 2);
}
