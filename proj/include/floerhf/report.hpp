#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floerhf/finite_type.hpp"
#include "floerhf/monodromy.hpp"
#include "floerhf/puiseux.hpp"
#include "floerhf/splice.hpp"

namespace floerhf::io {

using json = nlohmann::ordered_json;

struct InputDocument {
  std::string kind;  // finite_type_map | polynomial | puiseux_data | ak_config
  finite_type::FiniteTypeMap map;
  std::string poly_text;
  std::vector<puiseux::FracPowerSeries> branches;
  long ak = 0;
  std::optional<monodromy::EmbeddingSpec> embedding;
  long order_bound = 64;
  json echo;  // the parsed document, for the report
};

InputDocument parse_document(const json& j);
monodromy::EmbeddingSpec parse_embedding(const json& j);

struct RunResult {
  json report;
  int exit_code = 0;
  std::string dot;  // nonempty when requested and available
};

RunResult cmd_validate(const InputDocument& doc);
RunResult cmd_hf_map(const InputDocument& doc);
RunResult cmd_hf_sing(const InputDocument& doc);
RunResult cmd_splice(const InputDocument& doc, bool want_dot);

std::string render_text(const json& report);

json rat_json(const Rat& q);
json series_json(const puiseux::FracPowerSeries& f);
json char_entry_json(const splice::CharEntry& e);
json diagram_json(const splice::SpliceDiagram& g);

}  // namespace floerhf::io
