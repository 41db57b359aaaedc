#include "fracsteady/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "fracsteady/errors.hpp"

namespace fracsteady {
namespace {

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string printf_double_prec(int precision, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
  }
}

}  // namespace

std::string format_full(double v) {
  for (int precision = 1; precision <= 16; ++precision) {
    std::string s = printf_double_prec(precision, v);
    if (std::strtod(s.c_str(), nullptr) == v) return s;
  }
  return printf_double_prec(17, v);
}

std::string format_svg(double v) { return printf_double("%.6g", v); }

void write_text_file(const std::string& path, const std::string& text) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

void write_solution_csv(const GridFunction& u, const std::string& path) {
  std::ostringstream os;
  os << "x,value\n";
  const auto& x = u.grid->nodes();
  for (int i = 0; i < u.size(); ++i) {
    os << format_full(x[i]) << ',' << format_full(u.values[i]) << '\n';
  }
  write_text_file(path, os.str());
}

GridFunction read_solution_csv(const GridPtr& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::string line;
  if (!std::getline(in, line) || line != "x,value") {
    throw IoError(path + ": missing x,value header");
  }
  Eigen::VectorXd values(grid->n());
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(path + ": malformed row '" + line + "'");
    if (row >= grid->n()) throw IoError(path + ": more rows than grid nodes");
    values[row++] = std::stod(line.substr(comma + 1));
  }
  if (row != grid->n()) throw IoError(path + ": expected " + std::to_string(grid->n()) + " rows");
  return GridFunction(grid, values);
}

void write_operator_dump(const OperatorMatrix& A, const std::string& path) {
  const Eigen::MatrixXd& M = A.entries();
  std::ostringstream os;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_full(M(i, j));
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

nlohmann::json threshold_json(const ThresholdSet& t) {
  return nlohmann::json{{"alpha", t.alpha},           {"theta", t.theta},
                        {"eta", t.eta},               {"m_lambda", t.m_lambda},
                        {"sigma_lower", t.sigma_lower}, {"sigma_upper", t.sigma_upper},
                        {"eps_star", t.eps_star},     {"A_super", t.A_super}};
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  write_text_file(path, j.dump(2) + "\n");
}

namespace {

// Maps data coordinates onto the fixed SVG viewport.
struct PlotFrame {
  double x0, x1, y0, y1;            // data ranges
  double left, right, top, bottom;  // pixel box
  double px(double x) const { return left + (x - x0) / (x1 - x0) * (right - left); }
  double py(double y) const { return bottom - (y - y0) / (y1 - y0) * (bottom - top); }
};

void append_polyline(std::ostringstream& os, const PlotFrame& f, const GridFunction& u,
                     const char* color) {
  os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  const auto& x = u.grid->nodes();
  for (int i = 0; i < u.size(); ++i) {
    if (i > 0) os << ' ';
    os << format_svg(f.px(x[i])) << ',' << format_svg(f.py(u.values[i]));
  }
  os << "\"/>\n";
}

}  // namespace

void svg_solution_overlay(const GridFunction& lower, const GridFunction& solution,
                          const GridFunction& upper, const std::string& path) {
  require_same_grid(lower, solution, "svg_solution_overlay");
  require_same_grid(solution, upper, "svg_solution_overlay");
  const Interval dom = solution.grid->interval();
  double ymax = upper.values.maxCoeff();
  double ymin = std::min(0.0, lower.values.minCoeff());
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double pad = 0.05 * (ymax - ymin);
  const PlotFrame f{dom.a, dom.b, ymin - pad, ymax + pad, 60.0, 620.0, 20.0, 380.0};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"420\" "
        "viewBox=\"0 0 660 420\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"660\" height=\"420\" fill=\"white\"/>\n";
  // Axes box.
  os << "  <rect x=\"" << format_svg(f.left) << "\" y=\"" << format_svg(f.top) << "\" width=\""
     << format_svg(f.right - f.left) << "\" height=\"" << format_svg(f.bottom - f.top)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Zero line when visible.
  if (f.y0 < 0.0 && f.y1 > 0.0) {
    os << "  <line x1=\"" << format_svg(f.left) << "\" y1=\"" << format_svg(f.py(0.0))
       << "\" x2=\"" << format_svg(f.right) << "\" y2=\"" << format_svg(f.py(0.0))
       << "\" stroke=\"#cccccc\"/>\n";
  }
  append_polyline(os, f, lower, "#1f77b4");
  append_polyline(os, f, solution, "#000000");
  append_polyline(os, f, upper, "#d62728");
  // Legend.
  const char* names[3] = {"lower", "solution", "upper"};
  const char* colors[3] = {"#1f77b4", "#000000", "#d62728"};
  for (int k = 0; k < 3; ++k) {
    const double y = 40.0 + 18.0 * k;
    os << "  <line x1=\"480\" y1=\"" << format_svg(y) << "\" x2=\"510\" y2=\"" << format_svg(y)
       << "\" stroke=\"" << colors[k] << "\" stroke-width=\"1.5\"/>\n";
    os << "  <text x=\"516\" y=\"" << format_svg(y + 4.0)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << names[k] << "</text>\n";
  }
  // Axis labels.
  os << "  <text x=\"330\" y=\"410\" font-family=\"sans-serif\" font-size=\"12\" "
        "text-anchor=\"middle\">x</text>\n";
  os << "  <text x=\"20\" y=\"200\" font-family=\"sans-serif\" font-size=\"12\" "
        "text-anchor=\"middle\">u</text>\n";
  os << "</svg>\n";
  write_text_file(path, os.str());
}

}  // namespace fracsteady
