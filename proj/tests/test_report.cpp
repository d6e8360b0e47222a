#include <gtest/gtest.h>

#include <regex>

#include "genecon/report.hpp"
#include "support.hpp"

using namespace genecon;
using genecon::testing::Gen;

namespace {

const TraitGrid kCaterpillar({11, 17, 23, 29, 35, 40});

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> attribute_values(const std::string& svg, const std::string& element_class,
                                          const std::string& attribute) {
  std::vector<std::string> out;
  const std::regex element("<[a-z]+ class=\"" + element_class + "\"[^>]*>");
  const std::regex attr(attribute + "=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), element); it != std::sregex_iterator(); ++it) {
    std::smatch m;
    const std::string tag = it->str();
    if (std::regex_search(tag, m, attr)) out.push_back(m[1]);
  }
  return out;
}

GMatrix caterpillar_diagonal() {
  return clip_negative_eigenvalues(
             SymMatrix::diagonal((Vector(6) << 0.618, 0.200, 0.153, 0.061, 0.008, 0.0).finished()))
      .with_grid(kCaterpillar);
}

FigureSpec spec_for(const SubspacePartition& part) {
  FigureSpec spec{.partition = part, .grid = kCaterpillar, .title = "test <figure> & co"};
  spec.provenance = Json{{"inputs", {{"g_matrix", "a<b>.json"}}}};
  return spec;
}

}  // namespace

TEST(FormatSig6, Formatting) {
  EXPECT_EQ(format_sig6(0.0), "0");
  EXPECT_EQ(format_sig6(-0.0), "0");
  EXPECT_EQ(format_sig6(0.59423076923), "0.594231");
  EXPECT_EQ(format_sig6(1234567.0), "1.23457e+06");
  EXPECT_EQ(format_sig6(-2.5), "-2.5");
  EXPECT_EQ(format_sig6(4.0), "4");
}

TEST(PartitionReport, ContentsAndExactRoundTrip) {
  const GMatrix g = caterpillar_diagonal();
  const auto m = first_difference_measure(kCaterpillar);
  const auto part = partition(g, 4, m);
  Provenance prov;
  prov.inputs["g_matrix"] = "g.json";
  prov.measure_kind = "first-difference";
  const Json report = partition_report(part, g, m, prov);

  EXPECT_EQ(report["K"], 6);
  EXPECT_EQ(report["J"], 4);
  EXPECT_EQ(report["vectors"].size(), 6u);
  EXPECT_EQ(report["vectors"][0]["role"], "model");
  EXPECT_EQ(report["vectors"][4]["role"], "null");
  EXPECT_FALSE(report["vectors"][4].contains("eigenvalue"));
  EXPECT_NEAR(report["vectors"][0]["proportion"].get<double>(), 0.5942, 0.0005);
  EXPECT_EQ(report["provenance"]["software"], "genecon");
  EXPECT_EQ(report["provenance"]["seed"], nullptr);
  EXPECT_EQ(report["provenance"]["tolerances"]["clip"], 0.0);

  const Json back = Json::parse(dump_report(report));
  EXPECT_EQ(back, report);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto coords = back["vectors"][i]["coordinates"].get<std::vector<double>>();
    const Vector original = part.basis().col(static_cast<Index>(i));
    for (std::size_t t = 0; t < coords.size(); ++t) EXPECT_EQ(coords[t], original(static_cast<Index>(t)));
    EXPECT_EQ(back["vectors"][i]["simplicity_score"].get<double>(), part.scores()(static_cast<Index>(i)));
  }
}

TEST(PartitionReport, ClippedIndicesListed) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  const GMatrix g = clip_negative_eigenvalues(SymMatrix(m));
  const auto meas = sparseness_measure(2);
  const Json report = partition_report(partition(g, 1, meas), g, meas, {});
  EXPECT_EQ(report["clipped_indices"], Json::array({1}));
  EXPECT_EQ(report["rank"], 1);
  EXPECT_NEAR(report["raw_eigenvalues"][1].get<double>(), -1.0, 1e-14);
}

TEST(PartitionFigure, FourModelTwoNullLayout) {
  const GMatrix g = caterpillar_diagonal();
  const auto m = first_difference_measure(kCaterpillar);
  const auto part = partition(g, 4, m);
  const std::string svg = render_partition_figure(spec_for(part));

  EXPECT_EQ(count(svg, "class=\"panel "), 8u);
  EXPECT_EQ(count(svg, "class=\"panel vector-panel model\""), 4u);
  EXPECT_EQ(count(svg, "class=\"panel vector-panel null\""), 2u);
  EXPECT_EQ(count(svg, "class=\"curve model\""), 4u);
  EXPECT_EQ(count(svg, "class=\"curve null\""), 2u);
  EXPECT_EQ(count(svg, "<polyline"), 6u);
  EXPECT_EQ(count(svg, "stroke-dasharray"), 2u);
  EXPECT_EQ(count(svg, "class=\"panel scatter-panel\""), 1u);
  EXPECT_EQ(count(svg, "<circle class=\"point "), 6u);
  EXPECT_EQ(count(svg, "class=\"panel bar-panel\""), 1u);
  EXPECT_EQ(count(svg, "<rect class=\"bar "), 2u);

  // First row: PC1 then the simplest null vector.
  const auto first = svg.find("vector-panel model\" data-role=\"model\" data-rank=\"1\"");
  const auto second = svg.find("vector-panel null\" data-role=\"null\" data-rank=\"1\"");
  const auto third = svg.find("data-rank=\"2\"");
  EXPECT_LT(first, second);
  EXPECT_LT(second, third);
}

TEST(PartitionFigure, ScatterMatchesReport) {
  const GMatrix g = caterpillar_diagonal();
  const auto m = first_difference_measure(kCaterpillar);
  const auto part = partition(g, 4, m);
  const Json report = partition_report(part, g, m, {});
  const std::string svg = render_partition_figure(spec_for(part));
  const auto proportions = attribute_values(svg, "point (model|null)", "data-proportion");
  const auto scores = attribute_values(svg, "point (model|null)", "data-score");
  ASSERT_EQ(proportions.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(proportions[i], format_sig6(report["vectors"][i]["proportion"].get<double>()));
    EXPECT_EQ(scores[i], format_sig6(report["vectors"][i]["simplicity_score"].get<double>()));
  }
  const auto fractions = attribute_values(svg, "bar (model|null)", "data-fraction");
  ASSERT_EQ(fractions.size(), 2u);
  EXPECT_EQ(fractions[0], format_sig6(report["model_variance_fraction"].get<double>()));
  EXPECT_EQ(fractions[1], format_sig6(report["null_variance_fraction"].get<double>()));
}

TEST(PartitionFigure, FullModelSpaceHasFlatNullBar) {
  const GMatrix g = caterpillar_diagonal();
  const auto part = partition(g, 6, first_difference_measure(kCaterpillar));
  const std::string svg = render_partition_figure(spec_for(part));
  EXPECT_EQ(count(svg, "class=\"panel vector-panel model\""), 6u);
  EXPECT_EQ(count(svg, "class=\"panel vector-panel null\""), 0u);
  EXPECT_EQ(count(svg, "stroke-dasharray"), 0u);
  const auto heights = attribute_values(svg, "bar null", "height");
  ASSERT_EQ(heights.size(), 1u);
  EXPECT_EQ(heights[0], "0");
}

TEST(PartitionFigure, DeterministicAndEscaped) {
  const GMatrix g = caterpillar_diagonal();
  const auto part = partition(g, 2, second_difference_measure(kCaterpillar));
  const std::string a = render_partition_figure(spec_for(part));
  const std::string b = render_partition_figure(spec_for(part));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("<metadata id=\"provenance\">"), std::string::npos);
  EXPECT_NE(a.find("a&lt;b&gt;.json"), std::string::npos);
  EXPECT_NE(a.find("test &lt;figure&gt; &amp; co"), std::string::npos);
  EXPECT_EQ(a.find("<figure>"), std::string::npos);
}

TEST(StudyFigure, CurvesPerReplicate) {
  const TraitGrid grid({0, 1, 2, 3});
  Matrix gm(4, 4);
  gm << 1.0, 0.5, 0.2, 0.0, 0.5, 1.0, 0.5, 0.2, 0.2, 0.5, 1.0, 0.5, 0.0, 0.2, 0.5, 1.0;
  SimulationParams p{.grid = grid,
                     .mu = Vector::Zero(4),
                     .g = simulation_covariance(SymMatrix(gm)),
                     .e = SymMatrix::identity(4)};
  p.families = 20;
  p.family_size = 4;
  const auto m = first_difference_measure(grid);

  const auto one = run_study(p, 1, 2, m);
  const std::string svg1 = render_study_figure(one);
  // 1 + null_dim vector panels and as many response panels.
  EXPECT_EQ(count(svg1, "class=\"panel study-panel"), 6u);
  EXPECT_EQ(count(svg1, "class=\"curve replicate\""), 6u);
  EXPECT_EQ(count(svg1, "class=\"curve truth\""), 3u);

  const auto three = run_study(p, 3, 2, m);
  const std::string svg3 = render_study_figure(three);
  EXPECT_EQ(count(svg3, "class=\"curve replicate\""), 18u);
  EXPECT_EQ(svg3, render_study_figure(three));
}

TEST(StudyReport, AggregatesAndReplicates) {
  const TraitGrid grid({0, 1, 2});
  SimulationParams p{.grid = grid,
                     .mu = Vector::Zero(3),
                     .g = simulation_covariance(SymMatrix::diagonal((Vector(3) << 1.0, 0.5, 0.0).finished())),
                     .e = SymMatrix::identity(3)};
  p.families = 10;
  p.family_size = 3;
  p.seed = 9;
  const auto s = run_study(p, 4, 1, sparseness_measure(3));
  Provenance prov;
  prov.seed = p.seed;
  const Json j = study_report(s, prov);
  EXPECT_EQ(j["replicates"].size(), 4u);
  EXPECT_EQ(j["provenance"]["seed"], 9);
  EXPECT_EQ(j["params"]["relatedness"], 4.0);
  EXPECT_EQ(j["aggregate"]["simplest_response_norm"]["mean"].get<double>(), s.simplest_response.mean);
  EXPECT_EQ(Json::parse(dump_report(j)), j);
}
