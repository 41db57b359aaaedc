#pragma once

#include <string>

#include <json.hpp>

#include "fracsteady/fracop.hpp"
#include "fracsteady/mesh.hpp"
#include "fracsteady/model.hpp"

namespace fracsteady {

// Shortest decimal form of v that parses back to exactly the same double.
std::string format_full(double v);

// Compact decimal form for SVG coordinates (6 significant digits).
std::string format_svg(double v);

// Writes text to path, creating parent directories; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

// CSV with header "x,value", one row per interior node, full-precision floats.
void write_solution_csv(const GridFunction& u, const std::string& path);

// Reads a CSV produced by write_solution_csv back onto the given grid.
GridFunction read_solution_csv(const GridPtr& grid, const std::string& path);

// Textual matrix dump: one row per line, space-separated full-precision floats.
void write_operator_dump(const OperatorMatrix& A, const std::string& path);

// Threshold constants as a JSON object (fixed key set).
nlohmann::json threshold_json(const ThresholdSet& t);

// Serializes j with 2-space indentation and a trailing newline.
void write_json_file(const nlohmann::json& j, const std::string& path);

// Self-contained SVG line plot of the ordered triple lower <= u <= upper.
void svg_solution_overlay(const GridFunction& lower, const GridFunction& solution,
                          const GridFunction& upper, const std::string& path);

}  // namespace fracsteady
