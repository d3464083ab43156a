#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cmath>
#include <functional>
#include <sstream>

#include "diachrona/svg.hpp"

using namespace diachrona;
namespace pt = boost::property_tree;

namespace {

pt::ptree parse(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

// Collects (class attribute, text) for every <text> element under node.
void collect_text(const pt::ptree& node, std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [name, child] : node) {
    if (name == "text") out.emplace_back(child.get("<xmlattr>.class", ""), child.get_value<std::string>());
    if (name != "<xmlattr>") collect_text(child, out);
  }
}

std::size_t count_elements(const pt::ptree& node, const std::string& tag) {
  std::size_t n = 0;
  for (const auto& [name, child] : node) {
    if (name == tag) ++n;
    if (name != "<xmlattr>") n += count_elements(child, tag);
  }
  return n;
}

}  // namespace

TEST(Svg, EmptySeriesIsWellFormedAxes) {
  PlotSpec spec;
  spec.title = "nothing";
  auto svg = emit_svg(spec);
  auto tree = parse(svg);
  ASSERT_EQ(tree.size(), 1u);
  const auto& root = tree.get_child("svg");
  EXPECT_EQ(root.get<std::string>("<xmlattr>.xmlns"), "http://www.w3.org/2000/svg");
  EXPECT_GT(count_elements(root, "line"), 2u);
}

TEST(Svg, ScatterHasOneLabelPerPoint) {
  PlotSpec spec;
  spec.kind = PlotSpec::Kind::Scatter;
  spec.points = {{0.1, -0.2, "a"}, {-0.5, 0.3, "b"}, {0.7, 0.7, "c"}};
  auto tree = parse(emit_svg(spec));
  std::vector<std::pair<std::string, std::string>> texts;
  collect_text(tree, texts);
  std::vector<std::string> labels;
  for (const auto& [cls, t] : texts)
    if (cls == "label") labels.push_back(t);
  EXPECT_EQ(labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(count_elements(tree, "circle"), 3u);
}

TEST(Svg, SeriesHasOnePolylinePerCurveAndTicks) {
  PlotSpec spec;
  spec.curves = {{"pater", {{800, 3}, {850, 5}, {900, NAN}, {950, 2}}}, {"avg", {{800, 4}, {950, 4}}}};
  auto tree = parse(emit_svg(spec));
  EXPECT_EQ(count_elements(tree, "polyline"), 2u);
  std::vector<std::pair<std::string, std::string>> texts;
  collect_text(tree, texts);
  EXPECT_GE(std::count_if(texts.begin(), texts.end(), [](auto& t) { return t.first == "tick"; }), 4);
}

TEST(Svg, EscapesMarkupAndIsDeterministic) {
  PlotSpec spec;
  spec.kind = PlotSpec::Kind::Scatter;
  spec.title = "a < b & \"c\"";
  spec.points = {{1, 1, "<x>"}};
  auto svg = emit_svg(spec);
  EXPECT_EQ(svg, emit_svg(spec));
  auto tree = parse(svg);
  std::vector<std::pair<std::string, std::string>> texts;
  collect_text(tree, texts);
  EXPECT_EQ(texts.front().second, "a < b & \"c\"");
  EXPECT_EQ(svg.find("\r"), std::string::npos);
}

TEST(Svg, RejectsNonPositiveSize) {
  PlotSpec spec;
  spec.width = 0;
  EXPECT_THROW(emit_svg(spec), std::invalid_argument);
}
