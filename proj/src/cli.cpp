#include "isom4d/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isom4d/linalg.hpp"
#include "isom4d/metrics.hpp"
#include "isom4d/stabilizer.hpp"

namespace isom4d {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::size_t utf8_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = utf8_length(header[c]);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], utf8_length(row[c]));
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c] << std::string(width[c] - utf8_length(row[c]), ' ');
      os << (c + 1 == row.size() ? "\n" : "  ");
    }
  };
  emit(header);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 == width.size() ? 0 : 2);
  os << std::string(total, '-') << "\n";
  for (const auto& row : rows) emit(row);
  return os.str();
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c)
    os << csv_quote(header[c]) << (c + 1 == header.size() ? "\n" : ",");
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      os << csv_quote(row[c]) << (c + 1 == row.size() ? "\n" : ",");
  return os.str();
}

std::string params_to_string(const std::map<std::string, Rational>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    out += k + "=" + v.str();
  }
  return out;
}

void check_common(const RunConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (cfg.trials < 0) throw std::invalid_argument("trials must be nonnegative");
  if (cfg.format != "table" && cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("format must be one of table, json, csv");
  cfg.weights.validate();
}

std::optional<SolWeights> weights_for(const RunConfig& cfg, GroupName g) {
  if (g == GroupName::SolMN4) return cfg.weights;
  return std::nullopt;
}

std::map<std::string, Rational> case_params(const RunConfig& cfg, GroupName g, int case_id) {
  auto params = default_metric_params(g, case_id);
  const auto accepted = metric_param_names(g, case_id);
  for (const auto& [k, v] : cfg.params)
    if (std::find(accepted.begin(), accepted.end(), k) != accepted.end()) params[k] = v;
  return params;
}

struct RowComputation {
  MetricSpec spec;
  StabilizerResult st;
  IsometryDescriptor descriptor;
};

RowComputation compute_row(const RunConfig& cfg, GroupName g, int case_id) {
  RowComputation row;
  row.spec = MetricSpec{g, case_id, case_params(cfg, g, case_id)};
  const LieAlgebra alg = catalog_algebra(g, weights_for(cfg, g));
  const AutFamily fam = aut_family(g);
  const Mat metric = metric_matrix(row.spec);
  row.st = stabilizer(alg, fam, metric, StabilizerOptions{cfg.trials, cfg.seed});
  row.descriptor = isom_descriptor(g, case_id, row.st, alg);
  return row;
}

}  // namespace

const std::vector<ExpectedRow>& expected_results() {
  static const std::vector<ExpectedRow> rows = {
      {GroupName::Nil3xR, 1, true, GroupTypeKind::O2Extension, 4, 1, "O(2)×Z₂ [dim 1, 4 components]"},
      {GroupName::Nil4, 1, false, GroupTypeKind::Z2xZ2, 4, 0, "(Z₂)²"},
      {GroupName::Nil4, 2, false, GroupTypeKind::Z2, 2, 0, "Z₂"},
      {GroupName::SolMN4, 1, false, GroupTypeKind::Z2xZ2xZ2, 8, 0, "(Z₂)³"},
      {GroupName::SolMN4, 2, false, GroupTypeKind::Z2xZ2, 4, 0, "(Z₂)²"},
      {GroupName::SolMN4, 3, false, GroupTypeKind::Z2, 2, 0, "Z₂"},
      {GroupName::Sol3xR, 1, false, GroupTypeKind::D4xZ2, 16, 0, "D(4)×Z₂"},
      {GroupName::Sol3xR, 2, false, GroupTypeKind::Z2xZ2, 4, 0, "(Z₂)²"},
      {GroupName::Sol3xR, 3, false, GroupTypeKind::Z2, 2, 0, "Z₂"},
      {GroupName::Sol04, 1, true, GroupTypeKind::O2Extension, 4, 1, "O(2)×Z₂ [dim 1, 4 components]"},
      {GroupName::Sol04, 2, false, GroupTypeKind::Z2xZ2, 4, 0, "(Z₂)²"},
      {GroupName::Sol0p4, 1, false, GroupTypeKind::Z2xZ2, 4, 0, "(Z₂)²"},
      {GroupName::Sol0p4, 2, false, GroupTypeKind::Z2, 2, 0, "Z₂"},
      {GroupName::Sol14, 1, false, GroupTypeKind::D4, 8, 0, "D(4)"},
      {GroupName::Sol14, 2, false, GroupTypeKind::Z2, 2, 0, "Z₂"},
      {GroupName::Sol14, 3, false, GroupTypeKind::Trivial, 1, 0, "trivial"},
  };
  return rows;
}

void deliver(const RunConfig& cfg, const std::string& rendered) {
  if (cfg.out_path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
  out << rendered;
}

CommandResult cmd_catalog_export(const RunConfig& cfg) {
  check_common(cfg);
  CommandResult res;
  res.rendered = catalog_json(cfg.weights).dump(2) + "\n";
  return res;
}

CommandResult cmd_catalog_verify(const RunConfig& cfg) {
  check_common(cfg);

  // Algebras under test: built in, or loaded from a catalog export.
  std::map<GroupName, LieAlgebra> algebras;
  for (GroupName g : kAllGroups)
    algebras.emplace(g, catalog_algebra(g, weights_for(cfg, g)));
  if (!cfg.catalog_path.empty()) {
    std::ifstream in(cfg.catalog_path);
    if (!in) throw std::invalid_argument("cannot open catalog file '" + cfg.catalog_path + "'");
    json doc = json::parse(in);
    for (GroupName g : kAllGroups) {
      const std::string key(ascii_name(g));
      if (doc.at("algebras").contains(key))
        algebras.at(g) = algebra_from_json(doc.at("algebras").at(key));
    }
  }

  struct Check {
    GroupName group;
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Check> checks;
  const bool expected_nilpotent[7] = {true, true, false, false, false, false, false};

  for (std::size_t gi = 0; gi < kAllGroups.size(); ++gi) {
    const GroupName g = kAllGroups[gi];
    const LieAlgebra& alg = algebras.at(g);
    const bool jac = alg.check_jacobi();
    checks.push_back({g, "jacobi", jac, ""});
    checks.push_back({g, "unimodular", alg.is_unimodular(), ""});
    const bool nil = alg.is_nilpotent(), sol = alg.is_solvable();
    checks.push_back({g, "nilpotent_flag", nil == expected_nilpotent[gi],
                      std::string(nil ? "nilpotent" : "not nilpotent")});
    checks.push_back({g, "solvable", sol, ""});
    const TypeRReport tr = is_type_r_sampled(alg, cfg.samples, cfg.seed);
    checks.push_back({g, "type_r_sampling", tr.all_real_rooted,
                      std::to_string(tr.samples) + " samples"});
    // family consistency only makes sense when the algebra is at least a Lie algebra
    bool fam_ok = false;
    std::string fam_detail;
    if (jac) {
      const FamilyVerification fv = verify_family_against(alg, aut_family(g), cfg.samples, cfg.seed);
      fam_ok = fv.ok;
      fam_detail = std::to_string(fv.checked) + " members";
    } else {
      fam_detail = "skipped (jacobi failed)";
    }
    checks.push_back({g, "aut_family", fam_ok, fam_detail});
    const int der_dim = static_cast<int>(alg.derivations().size());
    const int expected_dim = aut_family_param_count(g);
    checks.push_back({g, "derivation_dim", der_dim == expected_dim,
                      std::to_string(der_dim) + " (family parameters: " +
                          std::to_string(expected_dim) + ")"});
  }

  bool all_ok = true;
  for (const auto& c : checks) all_ok = all_ok && c.pass;

  CommandResult res;
  res.exit_code = all_ok ? 0 : 1;
  if (cfg.format == "json") {
    json out;
    out["command"] = "catalog verify";
    out["seed"] = cfg.seed;
    out["samples"] = cfg.samples;
    json rows = json::array();
    for (const auto& c : checks)
      rows.push_back(json{{"group", std::string(ascii_name(c.group))},
                          {"check", c.name},
                          {"pass", c.pass},
                          {"detail", c.detail}});
    out["checks"] = std::move(rows);
    out["ok"] = all_ok;
    res.rendered = out.dump(2) + "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : checks)
      rows.push_back({std::string(ascii_name(c.group)), c.name, c.pass ? "pass" : "FAIL", c.detail});
    const std::vector<std::string> header = {"group", "check", "status", "detail"};
    res.rendered = cfg.format == "csv" ? render_csv(header, rows) : render_table(header, rows);
    if (cfg.format == "table")
      res.rendered += all_ok ? "all checks passed\n" : "SOME CHECKS FAILED\n";
  }
  return res;
}

CommandResult cmd_stabilizer(const RunConfig& cfg) {
  check_common(cfg);
  if (!cfg.group) throw std::invalid_argument("stabilizer: --group is required");
  const GroupName g = *cfg.group;
  if (cfg.case_id != 0 && (cfg.case_id < 1 || cfg.case_id > metric_case_count(g)))
    throw std::invalid_argument("stabilizer: case must be 0 (free form) or 1.." +
                                std::to_string(metric_case_count(g)));
  // a single-case query rejects parameters the case does not accept
  const auto accepted = metric_param_names(g, cfg.case_id);
  for (const auto& [k, v] : cfg.params)
    if (std::find(accepted.begin(), accepted.end(), k) == accepted.end())
      throw std::invalid_argument("stabilizer: parameter '" + k + "' does not apply (" +
                                  metric_constraint_text(g, cfg.case_id) + ")");
  const RowComputation row = compute_row(cfg, g, cfg.case_id);

  CommandResult res;
  if (cfg.format == "csv") {
    std::vector<std::vector<std::string>> rows = {
        {"group", std::string(ascii_name(g))},
        {"case", std::to_string(cfg.case_id)},
        {"params", params_to_string(row.spec.params)},
        {"dim", std::to_string(row.st.identity_component_dim)},
        {"order", row.st.finite_order ? std::to_string(*row.st.finite_order) : "infinite"},
        {"components", std::to_string(row.st.component_count())},
        {"stabilizer", row.descriptor.stabilizer_type.name()},
        {"isometry_group", row.descriptor.structure},
    };
    res.rendered = render_csv({"key", "value"}, rows);
  } else {
    json out;
    out["command"] = "stabilizer";
    out["group"] = std::string(ascii_name(g));
    out["case"] = cfg.case_id;
    json params = json::object();
    for (const auto& [k, v] : row.spec.params) params[k] = rational_json(v);
    out["params"] = std::move(params);
    out["stabilizer"] = stabilizer_json(row.st);
    out["descriptor"] = descriptor_json(row.descriptor);
    if (cfg.format == "json") {
      res.rendered = out.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "group:           " << display_name(g) << " (case " << cfg.case_id << ")\n";
      os << "params:          " << params_to_string(row.spec.params) << "\n";
      os << "identity dim:    " << row.st.identity_component_dim << "\n";
      os << "components:      " << row.st.component_count() << "\n";
      os << "order:           "
         << (row.st.finite_order ? std::to_string(*row.st.finite_order) : "infinite") << "\n";
      os << "stabilizer:      " << row.descriptor.stabilizer_type.name() << "\n";
      os << "isometry group:  " << row.descriptor.structure << "\n";
      os << "evidence:        " << row.st.evidence.trials << " trials, "
         << row.st.evidence.certified_hits << " certified hits, "
         << row.st.evidence.violations << " violations (seed " << row.st.evidence.seed << ")\n";
      os << "component representatives:\n";
      for (const Mat& m : row.st.component_reps) {
        for (Index i = 0; i < m.rows(); ++i) {
          os << "  [";
          for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).str();
          os << "]\n";
        }
        os << "\n";
      }
      res.rendered = os.str();
    }
  }
  return res;
}

CommandResult cmd_reproduce(const RunConfig& cfg) {
  check_common(cfg);

  struct Outcome {
    const ExpectedRow* expected;
    std::string computed;
    std::string params;
    bool match;
  };
  std::vector<Outcome> outcomes;
  for (const ExpectedRow& exp : expected_results()) {
    const RowComputation row = compute_row(cfg, exp.group, exp.case_id);
    Outcome oc;
    oc.expected = &exp;
    oc.params = params_to_string(row.spec.params);
    if (exp.continuous) {
      oc.match = !row.st.finite_order && row.st.identity_component_dim == exp.dim &&
                 row.st.component_count() == exp.order;
      oc.computed = row.descriptor.stabilizer_type.name() + " [dim " +
                    std::to_string(row.st.identity_component_dim) + ", " +
                    std::to_string(row.st.component_count()) + " components]";
    } else {
      oc.match = row.st.finite_order && *row.st.finite_order == exp.order &&
                 row.descriptor.stabilizer_type.kind == exp.kind &&
                 row.st.identity_component_dim == 0;
      oc.computed = row.descriptor.stabilizer_type.name();
    }
    outcomes.push_back(std::move(oc));
  }

  bool all = true;
  int matches = 0;
  for (const auto& oc : outcomes) {
    all = all && oc.match;
    matches += oc.match ? 1 : 0;
  }

  CommandResult res;
  res.exit_code = all ? 0 : 1;
  if (cfg.format == "json") {
    json out;
    out["command"] = "reproduce";
    out["seed"] = cfg.seed;
    out["trials"] = cfg.trials;
    json rows = json::array();
    for (const auto& oc : outcomes)
      rows.push_back(json{{"group", std::string(ascii_name(oc.expected->group))},
                          {"case", oc.expected->case_id},
                          {"params", oc.params},
                          {"expected", oc.expected->display},
                          {"computed", oc.computed},
                          {"match", oc.match}});
    out["rows"] = std::move(rows);
    out["matched"] = matches;
    out["total"] = static_cast<int>(outcomes.size());
    out["ok"] = all;
    res.rendered = out.dump(2) + "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& oc : outcomes)
      rows.push_back({std::string(display_name(oc.expected->group)),
                      std::to_string(oc.expected->case_id), oc.params, oc.expected->display,
                      oc.computed, oc.match ? "match" : "MISMATCH"});
    const std::vector<std::string> header = {"group", "case", "params",
                                             "expected", "computed", "status"};
    res.rendered = cfg.format == "csv" ? render_csv(header, rows) : render_table(header, rows);
    if (cfg.format == "table")
      res.rendered += std::to_string(matches) + "/" + std::to_string(outcomes.size()) + " rows match\n";
  }
  return res;
}

}  // namespace isom4d
