#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minaber/design.hpp"
#include "minaber/errors.hpp"

namespace minaber {

// Design file format:
//   levels: s1 s2 ... sk
//   x1 x2 ... xk          (one run per line)
// Blank lines and lines starting with '#' are ignored anywhere.
inline Design read_design(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<int> levels;
  bool have_header = false;
  std::vector<Run> runs;

  while (std::getline(in, line)) {
    ++lineno;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    if (!have_header) {
      std::istringstream ss(line);
      std::string tag;
      ss >> tag;
      if (tag != "levels:") {
        throw ParseError("expected header \"levels: s1 s2 ...\"", lineno);
      }
      int s;
      while (ss >> s) levels.push_back(s);
      if (!ss.eof()) {
        throw ParseError("level counts must be integers", lineno);
      }
      if (levels.empty()) {
        throw ParseError("header lists no factors", lineno);
      }
      for (int v : levels) {
        if (v < 2) {
          throw ParseError("level count must be at least 2", lineno);
        }
      }
      have_header = true;
      continue;
    }

    std::istringstream ss(line);
    Run x;
    int v;
    while (ss >> v) x.push_back(v);
    if (!ss.eof()) {
      throw ParseError("run line must contain only integers", lineno);
    }
    if (x.size() != levels.size()) {
      throw ParseError("expected " + std::to_string(levels.size()) +
                           " coordinates, got " + std::to_string(x.size()),
                       lineno);
    }
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 0 || x[i] >= levels[i]) {
        throw ValidationError("line " + std::to_string(lineno) + ": level " +
                              std::to_string(x[i]) +
                              " out of range for factor " + std::to_string(i));
      }
    }
    runs.push_back(std::move(x));
  }
  if (!have_header) {
    throw ParseError("missing \"levels:\" header", lineno == 0 ? 1 : lineno);
  }
  return Design(DesignSpace(levels), std::move(runs));
}

inline Design read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open " + path);
  }
  return read_design(in);
}

inline void write_design(std::ostream& out, const Design& design) {
  out << "levels:";
  for (int s : design.space().levels()) out << ' ' << s;
  out << '\n';
  for (const Run& x : design.runs()) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (i) out << ' ';
      out << x[i];
    }
    out << '\n';
  }
}

}  // namespace minaber
