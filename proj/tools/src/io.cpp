#include "geodisc/app/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

namespace geodisc::app {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<double>& clearance) {
  const int n = traj.n;
  std::ostringstream os;
  os << "t";
  for (const char* block : {"q", "qdot", "p0_", "p1_", "u"}) {
    for (int i = 0; i < n; ++i) os << ',' << block << i;
  }
  os << ",H,clearance\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const SecondOrderState& s = traj.states[k];
    os << format_real(traj.time(static_cast<int>(k)));
    for (const Vector* v : {&s.q, &s.qdot, &s.p0, &s.p1, &traj.controls[k]}) {
      for (int i = 0; i < n; ++i) os << ',' << format_real((*v)[i]);
    }
    os << ',' << format_real(traj.H[k]) << ',';
    if (k < clearance.size()) os << format_real(clearance[k]);
    os << '\n';
  }
  return os.str();
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  auto it = columns.find(name);
  if (it == columns.end()) throw InputError("CSV has no column '" + name + "'");
  return it->second;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open CSV '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw InputError("CSV '" + path + "' has no header");
  table.header = split(line);
  for (const std::string& name : table.header) table.columns[name];

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != table.header.size()) {
      throw InputError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(table.header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cells[c].empty()) {
        std::size_t used = 0;
        try {
          v = std::stod(cells[c], &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != cells[c].size()) {
          throw InputError("CSV line " + std::to_string(lineno) + ": '" + cells[c] + "' is not a number");
        }
      }
      table.columns[table.header[c]].push_back(v);
    }
    ++table.rows;
  }
  return table;
}

std::string xy_svg(const std::vector<double>& x, const std::vector<double>& y,
                   const std::optional<Circle>& circle) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto extend = [&](double px, double py) {
    xmin = std::min(xmin, px);
    xmax = std::max(xmax, px);
    ymin = std::min(ymin, py);
    ymax = std::max(ymax, py);
  };
  for (std::size_t i = 0; i < x.size(); ++i) extend(x[i], y[i]);
  if (circle) {
    extend(circle->cx - circle->r, circle->cy - circle->r);
    extend(circle->cx + circle->r, circle->cy + circle->r);
  }
  if (!std::isfinite(xmin)) xmin = xmax = ymin = ymax = 0.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = 0.05 * span;
  xmin -= pad;
  ymin -= pad;
  const double w = (xmax - xmin) + pad;
  const double hgt = (ymax - ymin) + pad;
  // Flip y so that the plot reads with y up.
  const double flip = 2.0 * ymin + hgt;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_real(xmin) << ' '
     << format_real(ymin) << ' ' << format_real(w) << ' ' << format_real(hgt)
     << "\" width=\"600\" height=\"" << static_cast<int>(std::lround(600.0 * hgt / w)) << "\">\n";
  if (circle) {
    os << "  <circle cx=\"" << format_real(circle->cx) << "\" cy=\"" << format_real(flip - circle->cy)
       << "\" r=\"" << format_real(circle->r)
       << "\" fill=\"#ddd\" stroke=\"#555\" stroke-width=\"" << format_real(span / 300.0) << "\"/>\n";
  }
  os << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" << format_real(span / 200.0)
     << "\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << (i ? " " : "") << format_real(x[i]) << ',' << format_real(flip - y[i]);
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace geodisc::app
