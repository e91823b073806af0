// Command-line front end for the minaber library: reads design files,
// computes indicator coefficients, wordlength patterns, isomorphism
// tests, classifications, correlations, and runs the projection search.
//
// Exit codes: 0 success (or isomorphic), 1 nonisomorphic, 2 usage error,
// 3 invalid input.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minaber/minaber.hpp"

using nlohmann::json;

namespace {

// 6 significant digits, trailing zeros trimmed by defaultfloat.
std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// Text reports show values below the tolerance as exact zeros.
double snap(double v, double tol) { return std::abs(v) <= tol ? 0.0 : v; }

std::string roman(int n) {
  static const std::pair<int, const char*> parts[] = {
      {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"},
      {90, "XC"},  {50, "L"},   {40, "XL"}, {10, "X"},   {9, "IX"},
      {5, "V"},    {4, "IV"},   {1, "I"}};
  std::string out;
  for (const auto& [value, digits] : parts) {
    while (n >= value) {
      out += digits;
      n -= value;
    }
  }
  return out;
}

std::string index_label(const minaber::DesignSpace& space,
                        const minaber::MultiIndex& t) {
  bool compact = true;
  for (int s : space.levels()) compact = compact && s <= 10;
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!compact && i) out += ',';
    out += std::to_string(t[i]);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) +
                                 ": expected comma-separated integers");
    }
  }
  if (out.empty()) {
    throw CLI::ValidationError(std::string(what) + ": empty list");
  }
  return out;
}

minaber::Design load_parent(const std::string& parent) {
  std::string lower;
  for (char c : parent) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lower == "l18") return minaber::builtin_l18();
  return minaber::read_design_file(parent);
}

minaber::Scheme parse_scheme(const std::string& name) {
  if (name == "alpha") return minaber::Scheme::alpha;
  if (name == "beta") return minaber::Scheme::beta;
  if (name == "deg-card") return minaber::Scheme::degree_then_cardinality;
  if (name == "card-deg") return minaber::Scheme::cardinality_then_degree;
  throw CLI::ValidationError("unknown scheme: " + name);
}

// Multiplicity-squared sum over distinct runs: n2 = sum_x F(x)^2.
long long replicate_sum(const minaber::Design& design) {
  std::vector<long long> ranks = design.sorted_run_ranks();
  long long n2 = 0, runlen = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    ++runlen;
    if (i + 1 == ranks.size() || ranks[i + 1] != ranks[i]) {
      n2 += runlen * runlen;
      runlen = 0;
    }
  }
  return n2;
}

std::string resolution_text(const std::optional<int>& r, bool as_roman) {
  if (!r) return as_roman ? "" : "full";
  return as_roman ? roman(*r) : std::to_string(*r);
}

json wlp_to_json(const minaber::WordlengthPattern& wlp, double tol) {
  json classes = json::array();
  for (const minaber::WlpClass& c : wlp.classes) {
    classes.push_back({{"norm0", c.norm0}, {"norm1", c.norm1}});
  }
  const std::optional<int> res = minaber::resolution(wlp, tol);
  return {{"scheme", minaber::scheme_name(wlp.scheme)},
          {"values", wlp.values},
          {"classes", classes},
          {"resolution", res ? json(*res) : json("full")}};
}

// beta_3..beta_5 slice used by the search reports.
std::vector<double> beta345(const minaber::WordlengthPattern& beta) {
  std::vector<double> out;
  for (size_t i = 0; i < beta.values.size(); ++i) {
    const int deg = beta.classes[i].norm1;
    if (deg >= 3 && deg <= 5) out.push_back(beta.values[i]);
  }
  return out;
}

std::string triple_text(const std::vector<double>& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + ")";
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int perm_index_from_label(const std::string& label, int s) {
  if (label == "I" || label == "i") return 0;
  if (s == 3) {
    if (label == "u") return 1;
    if (label == "u2" || label == "u^2" || label == "u²") return 2;
  }
  try {
    size_t pos = 0;
    const int idx = std::stoi(label, &pos);
    if (pos == label.size()) return idx;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("unknown permutation label: " + label);
}

//----------------------------------------------------------------------

int cmd_coeffs(const std::string& file, bool as_json, double tol) {
  const minaber::Design design = minaber::read_design_file(file);
  if (design.run_count() == 0) {
    throw minaber::EmptyDesignError("design has no runs");
  }
  const minaber::ContrastBasis basis(design.space());
  const minaber::CoefficientTable table = minaber::coefficients(design, basis);

  if (as_json) {
    emit({{"levels", design.space().levels()},
          {"n", table.n},
          {"N", design.space().num_points()},
          {"b0", table.b0()},
          {"b", table.entries}});
    return 0;
  }
  std::cout << "n = " << table.n << "  N = " << design.space().num_points()
            << "  b_0 = " << fmt(table.b0()) << '\n';
  std::vector<int> t(design.space().num_factors(), 0);
  long long r = 0;
  do {
    if (r > 0 && std::abs(table.entries[r]) > tol) {
      std::cout << "b_" << index_label(design.space(), t) << " = "
                << fmt(table.entries[r]) << '\n';
    }
    ++r;
  } while (design.space().next_point(t));
  return 0;
}

int cmd_wlp(const std::string& file, const std::string& scheme_name,
            bool as_json, double wlp_tol) {
  const minaber::Design design = minaber::read_design_file(file);
  if (design.run_count() == 0) {
    throw minaber::EmptyDesignError("design has no runs");
  }
  const minaber::Scheme scheme = parse_scheme(scheme_name);
  const minaber::ContrastBasis basis(design.space());
  const minaber::CoefficientTable table = minaber::coefficients(design, basis);
  const minaber::WordlengthPattern wlp = minaber::custom_wlp(table, scheme);

  double sum = 1.0;
  for (double v : wlp.values) sum += v;
  const double n = table.n;
  const double identity = static_cast<double>(replicate_sum(design)) *
                          static_cast<double>(design.space().num_points()) /
                          (n * n);
  const bool ok = std::abs(sum - identity) <= wlp_tol;
  const int str = minaber::strength(table, wlp_tol);
  const std::optional<int> res = minaber::resolution(wlp, wlp_tol);

  if (as_json) {
    json j = wlp_to_json(wlp, wlp_tol);
    j["strength"] = str;
    j["sum_check"] = {{"one_plus_sum", sum}, {"identity", identity}, {"ok", ok}};
    emit(j);
    return 0;
  }
  std::cout << "scheme: " << minaber::scheme_name(scheme) << '\n';
  if (scheme == minaber::Scheme::alpha || scheme == minaber::Scheme::beta) {
    std::cout << "pattern:";
    for (double v : wlp.values) std::cout << ' ' << fmt(snap(v, wlp_tol));
    std::cout << '\n';
  } else {
    for (size_t i = 0; i < wlp.values.size(); ++i) {
      std::cout << "deg=" << wlp.classes[i].norm1
                << " card=" << wlp.classes[i].norm0 << ": "
                << fmt(snap(wlp.values[i], wlp_tol)) << '\n';
    }
  }
  std::cout << "resolution: " << resolution_text(res, false) << '\n';
  std::cout << "strength: " << str << '\n';
  std::cout << "sum check: 1 + sum(pattern) = " << fmt(sum)
            << ", n2*N/n^2 = " << fmt(identity) << (ok ? ", ok" : ", FAIL")
            << '\n';
  return 0;
}

int cmd_iso(const std::string& file_a, const std::string& file_b,
            const std::string& mode, bool as_json) {
  const minaber::Design A = minaber::read_design_file(file_a);
  const minaber::Design B = minaber::read_design_file(file_b);

  if (mode == "geom") {
    const std::optional<minaber::GeomTransform> g =
        minaber::geom_isomorphic(A, B);
    if (as_json) {
      json j = {{"mode", "geom"}, {"isomorphic", g.has_value()}};
      if (g) {
        j["witness"] = {{"sources", g->source_factor},
                        {"reversed", std::vector<int>(g->reversed.begin(),
                                                      g->reversed.end())}};
      } else {
        j["witness"] = nullptr;
      }
      emit(j);
    } else if (g) {
      std::cout << "geometrically isomorphic\nwitness: sources = (";
      for (size_t l = 0; l < g->source_factor.size(); ++l) {
        std::cout << (l ? " " : "") << g->source_factor[l];
      }
      std::cout << "), reversed = (";
      for (size_t l = 0; l < g->reversed.size(); ++l) {
        std::cout << (l ? " " : "") << int(g->reversed[l]);
      }
      std::cout << ")\n";
    } else {
      std::cout << "not geometrically isomorphic\n";
    }
    return g ? 0 : 1;
  }
  if (mode != "comb") {
    throw CLI::ValidationError("mode must be geom or comb");
  }
  const std::optional<minaber::CombTransform> c =
      minaber::comb_isomorphic(A, B);
  if (as_json) {
    json j = {{"mode", "comb"}, {"isomorphic", c.has_value()}};
    if (c) {
      j["witness"] = {{"sources", c->source_factor},
                      {"level_maps", c->level_perm}};
    } else {
      j["witness"] = nullptr;
    }
    emit(j);
  } else if (c) {
    std::cout << "combinatorially isomorphic\nwitness: sources = (";
    for (size_t l = 0; l < c->source_factor.size(); ++l) {
      std::cout << (l ? " " : "") << c->source_factor[l];
    }
    std::cout << "), level maps =";
    for (const std::vector<int>& p : c->level_perm) {
      std::cout << " (";
      for (size_t v = 0; v < p.size(); ++v) std::cout << (v ? " " : "") << p[v];
      std::cout << ")";
    }
    std::cout << '\n';
  } else {
    std::cout << "not combinatorially isomorphic\n";
  }
  return c ? 0 : 1;
}

int cmd_classify(const std::vector<std::string>& files,
                 const std::string& parent, const std::string& columns,
                 bool as_json) {
  std::vector<minaber::Design> designs;
  std::vector<std::string> names;
  if (!columns.empty()) {
    const minaber::Design par = load_parent(parent);
    const std::vector<int> cols = parse_int_list(columns, "--columns");
    for (minaber::Variant& v : minaber::enumerate_variants(par, cols)) {
      names.push_back(v.label());
      designs.push_back(std::move(v.design));
    }
  } else {
    if (files.empty()) {
      throw CLI::ValidationError("classify needs design files or --columns");
    }
    for (const std::string& f : files) {
      designs.push_back(minaber::read_design_file(f));
      names.push_back(f);
    }
  }

  const minaber::GeomPartition part = minaber::classify_geometric(designs);
  if (as_json) {
    json classes = json::array();
    for (size_t c = 0; c < part.members.size(); ++c) {
      json members = json::array();
      for (int i : part.members[c]) members.push_back(names[i]);
      classes.push_back({{"size", part.members[c].size()},
                         {"members", members},
                         {"representative", part.representatives[c].runs()}});
    }
    emit({{"count", designs.size()}, {"classes", classes}});
    return 0;
  }
  std::cout << designs.size() << " designs, " << part.members.size()
            << " classes\n";
  for (size_t c = 0; c < part.members.size(); ++c) {
    std::cout << "class " << c + 1 << " (" << part.members[c].size()
              << " members):";
    for (size_t j = 0; j < part.members[c].size(); ++j) {
      std::cout << (j ? " | " : " ") << names[part.members[c][j]];
    }
    std::cout << '\n';
  }
  return 0;
}

json variant_to_json(const minaber::Variant& v, double wlp_tol) {
  const std::optional<int> res = minaber::resolution(v.beta, wlp_tol);
  return {{"columns", v.columns},
          {"label", v.label()},
          {"perm_index", v.perm_index},
          {"beta", v.beta.values},
          {"beta345", beta345(v.beta)},
          {"resolution", res ? json(*res) : json("full")}};
}

int cmd_search(const std::string& parent, int size, bool include_two_level,
               bool all, bool as_json, double wlp_tol) {
  const minaber::Design par = load_parent(parent);
  const minaber::SearchResult result = minaber::min_aberration_projection(
      par, size, include_two_level, all, wlp_tol);

  if (as_json) {
    json minima = json::array();
    for (const minaber::Variant& v : result.minima) {
      minima.push_back(variant_to_json(v, wlp_tol));
    }
    json j = {{"parent", parent},
              {"size", size},
              {"include_two_level", include_two_level},
              {"minima", minima}};
    if (all) {
      json ranking = json::array();
      for (const minaber::Variant& v : result.ranking) {
        ranking.push_back(variant_to_json(v, wlp_tol));
      }
      j["ranking"] = ranking;
    }
    emit(j);
    return 0;
  }

  auto print_row = [&](const minaber::Variant& v) {
    std::string label = v.label();
    // Pad on display width: the superscript in "u²" is two bytes wide.
    size_t width = label.size();
    for (char c : label) {
      if (static_cast<unsigned char>(c) == 0xC2) --width;
    }
    if (width < 24) label.append(24 - width, ' ');
    std::vector<double> triple = beta345(v.beta);
    for (double& x : triple) x = snap(x, wlp_tol);
    std::cout << label << "  " << triple_text(triple);
    const std::string res = resolution_text(
        minaber::resolution(v.beta, wlp_tol), true);
    if (!res.empty()) std::cout << "  " << res;
    std::cout << '\n';
  };
  std::cout << "parent: " << parent << "  size: " << size
            << (include_two_level ? "  (two-level column included)" : "")
            << '\n';
  std::cout << "minima (beta3, beta4, beta5; resolution):\n";
  for (const minaber::Variant& v : result.minima) print_row(v);
  if (all) {
    std::cout << "ranking:\n";
    for (const minaber::Variant& v : result.ranking) print_row(v);
  }
  return 0;
}

int cmd_corr(const std::string& file, const std::string& u_text,
             const std::string& v_text, bool as_json) {
  const minaber::Design design = minaber::read_design_file(file);
  if (design.run_count() == 0) {
    throw minaber::EmptyDesignError("design has no runs");
  }
  const std::vector<int> u = parse_int_list(u_text, "-u");
  const std::vector<int> v = parse_int_list(v_text, "-v");
  const minaber::ContrastBasis basis(design.space());
  const minaber::CoefficientTable table = minaber::coefficients(design, basis);
  const double value = minaber::contrast_correlation(table, u, v);
  if (as_json) {
    emit({{"u", u}, {"v", v}, {"value", value}});
  } else {
    std::cout << "corr(C_" << index_label(design.space(), u) << ", C_"
              << index_label(design.space(), v) << ") = " << fmt(value)
              << '\n';
  }
  return 0;
}

int cmd_export(const std::string& file, const std::string& parent,
               const std::string& columns, const std::string& perms,
               const std::string& output) {
  minaber::Design design =
      file.empty() ? load_parent(parent) : minaber::read_design_file(file);
  if (!columns.empty()) {
    const std::vector<int> cols = parse_int_list(columns, "--columns");
    design = minaber::project(design, cols);
    if (!perms.empty()) {
      std::vector<std::string> labels;
      std::stringstream ss(perms);
      std::string item;
      while (std::getline(ss, item, ',')) labels.push_back(item);
      if (labels.size() != cols.size()) {
        throw CLI::ValidationError("--perms needs one label per column");
      }
      minaber::CombTransform t;
      const int k = design.space().num_factors();
      t.source_factor.resize(k);
      std::iota(t.source_factor.begin(), t.source_factor.end(), 0);
      for (int i = 0; i < k; ++i) {
        const int s = design.space().level_count(i);
        const auto reps = minaber::level_permutation_reps(s);
        const int idx = perm_index_from_label(labels[i], s);
        if (idx < 0 || idx >= static_cast<int>(reps.size())) {
          throw CLI::ValidationError("permutation index out of range: " +
                                     labels[i]);
        }
        t.level_perm.push_back(reps[idx]);
      }
      design = minaber::apply_comb(design, t);
    }
  } else if (!perms.empty()) {
    throw CLI::ValidationError("--perms requires --columns");
  }
  if (output.empty() || output == "-") {
    minaber::write_design(std::cout, design);
  } else {
    std::ofstream out(output);
    if (!out) {
      throw minaber::ValidationError("cannot open " + output);
    }
    minaber::write_design(out, design);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factorial design aberration and isomorphism toolkit"};
  app.require_subcommand(1);

  bool as_json = false;
  double tol = -1.0;  // negative: use per-quantity defaults
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--tol", tol, "override coefficient and WLP tolerances");

  std::string file_a, file_b, scheme = "beta", mode = "geom";
  std::string parent = "l18", columns, perms, u_text, v_text, output;
  std::vector<std::string> files;
  int size = 0;
  bool include_two_level = false, all = false;

  CLI::App* coeffs = app.add_subcommand("coeffs", "indicator coefficients");
  coeffs->add_option("file", file_a, "design file")->required();

  CLI::App* wlp = app.add_subcommand("wlp", "wordlength pattern");
  wlp->add_option("file", file_a, "design file")->required();
  wlp->add_option("--scheme", scheme, "alpha | beta | deg-card | card-deg");

  CLI::App* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("a", file_a, "first design file")->required();
  iso->add_option("b", file_b, "second design file")->required();
  iso->add_option("--mode", mode, "geom | comb");

  CLI::App* classify =
      app.add_subcommand("classify", "geometric classification");
  classify->add_option("files", files, "design files");
  classify->add_option("--parent", parent, "parent array (l18 or file)");
  classify->add_option("--columns", columns,
                       "classify all permutation variants of this projection");

  CLI::App* search = app.add_subcommand("search", "minimum aberration search");
  search->add_option("--parent", parent, "parent array (l18 or file)");
  search->add_option("--size", size, "projection size")->required();
  search->add_flag("--include-two-level", include_two_level,
                   "force two-level columns into every subset");
  search->add_flag("--all", all, "print the full ranking");

  CLI::App* corr = app.add_subcommand("corr", "contrast correlation");
  corr->add_option("file", file_a, "design file")->required();
  corr->add_option("-u,--u", u_text, "first multi-index, comma-separated")
      ->required();
  corr->add_option("-v,--v", v_text, "second multi-index, comma-separated")
      ->required();

  CLI::App* exp = app.add_subcommand("export", "write a design file");
  exp->add_option("file", file_a, "design file to re-export");
  exp->add_option("--parent", parent, "parent array (l18 or file)");
  exp->add_option("--columns", columns, "project to these columns");
  exp->add_option("--perms", perms, "permutation labels, one per column");
  exp->add_option("-o,--output", output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  const double coeff_tol = tol >= 0 ? tol : 1e-9;
  const double wlp_tol = tol >= 0 ? tol : 1e-6;

  try {
    if (coeffs->parsed()) return cmd_coeffs(file_a, as_json, coeff_tol);
    if (wlp->parsed()) return cmd_wlp(file_a, scheme, as_json, wlp_tol);
    if (iso->parsed()) return cmd_iso(file_a, file_b, mode, as_json);
    if (classify->parsed())
      return cmd_classify(files, parent, columns, as_json);
    if (search->parsed())
      return cmd_search(parent, size, include_two_level, all, as_json,
                        wlp_tol);
    if (corr->parsed()) return cmd_corr(file_a, u_text, v_text, as_json);
    if (exp->parsed())
      return cmd_export(file_a, parent, columns, perms, output);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const minaber::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
