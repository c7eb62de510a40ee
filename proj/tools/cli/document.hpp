#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgraph/classify.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/tri.hpp"

namespace kg::cli {

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk graph format, version 1.
struct GraphDocument {
  int format_version = 1;
  int k = 1;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<SquareSpec> squares;
};

bool operator==(const GraphDocument& a, const GraphDocument& b);

GraphDocument parse_graph_document(const std::string& text);
std::string serialize(const GraphDocument& doc);
GraphDocument to_document(const KGraph& g);
/// Throws StructuralError on bad references.
KGraph to_graph(const GraphDocument& doc);

/// Terms "v(n1,...,nk)*c" joined by "+"; "0" is the zero element.
TElement parse_element(const KGraph& g, const std::string& text);
std::string format_element(const KGraph& g, const TElement& a);

struct PropertyEntry {
  Verdict verdict = Verdict::Unknown;
  bool bounded = false;
  Certificate cert;
};

/// Results keyed by property name, with the bounds that produced them.
struct ReportDocument {
  int format_version = 1;
  std::string subject;
  std::map<std::string, PropertyEntry> properties;
  std::map<std::string, std::int64_t> bounds;
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, double> timings;
};

bool operator==(const PropertyEntry& a, const PropertyEntry& b);
bool operator==(const ReportDocument& a, const ReportDocument& b);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReportDocument& r);
ReportDocument report_from_json(const nlohmann::json& j);
std::string serialize(const ReportDocument& r);
ReportDocument parse_report_document(const std::string& text);

PropertyEntry entry(const Tri& t);
ReportDocument make_report(const KGraph& g, const ClassificationReport& r, const std::string& subject);

}  // namespace kg::cli
