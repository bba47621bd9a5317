#include "isom4d/serialize.hpp"

#include <stdexcept>

namespace isom4d {

json rational_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational_from_json: expected a string");
  return Rational::from_string(j.get<std::string>());
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("mat_from_json: expected row arrays");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("mat_from_json: ragged rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(row.at(static_cast<std::size_t>(c)));
  }
  return m;
}

json algebra_json(const LieAlgebra& g) {
  json out;
  out["dim"] = g.dim();
  json brackets = json::array();
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = i + 1; j < g.dim(); ++j) {
      const Vec v = g.basis_bracket(i, j);
      json coeffs = json::array();
      for (Index k = 0; k < g.dim(); ++k)
        if (!v(k).is_zero()) coeffs.push_back(json::array({k + 1, rational_json(v(k))}));
      if (!coeffs.empty())
        brackets.push_back(json{{"i", i + 1}, {"j", j + 1}, {"coeffs", std::move(coeffs)}});
    }
  out["brackets"] = std::move(brackets);
  return out;
}

LieAlgebra algebra_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  std::vector<std::tuple<Index, Index, Vec>> brackets;
  for (const json& b : j.at("brackets")) {
    const Index i = b.at("i").get<Index>() - 1;
    const Index jj = b.at("j").get<Index>() - 1;
    Vec v = Vec::Zero(dim);
    for (const json& kc : b.at("coeffs")) {
      const Index k = kc.at(0).get<Index>() - 1;
      if (k < 0 || k >= dim) throw std::invalid_argument("algebra_from_json: index out of range");
      v(k) = rational_from_json(kc.at(1));
    }
    brackets.emplace_back(i, jj, std::move(v));
  }
  return LieAlgebra::from_brackets(dim, brackets);
}

json family_json(const AutFamily& fam) {
  json out;
  out["group"] = std::string(ascii_name(fam.group));
  json branches = json::array();
  for (const auto& b : fam.branches) {
    json jb;
    json params = json::array();
    for (const auto& p : b.params)
      params.push_back(json{{"name", p.name},
                            {"domain", p.domain == ParamDomain::Nonzero ? "nonzero" : "free"}});
    jb["params"] = std::move(params);
    json tmpl = json::array();
    for (Index i = 0; i < 4; ++i) {
      json row = json::array();
      for (Index j = 0; j < 4; ++j)
        row.push_back(b.entries[static_cast<std::size_t>(i * 4 + j)].source());
      tmpl.push_back(std::move(row));
    }
    jb["template"] = std::move(tmpl);
    branches.push_back(std::move(jb));
  }
  out["branches"] = std::move(branches);
  return out;
}

json stabilizer_json(const StabilizerResult& st) {
  json out;
  out["dim"] = st.identity_component_dim;
  if (st.finite_order)
    out["order"] = *st.finite_order;
  else
    out["order"] = "infinite";
  json comps = json::array();
  for (const Mat& m : st.component_reps) comps.push_back(mat_json(m));
  out["components"] = std::move(comps);
  if (st.continuous_block) {
    out["continuous_block"] = json{{"plane", json::array({st.continuous_block->i + 1,
                                                          st.continuous_block->j + 1})},
                                   {"rotation", "((1-t^2)/(1+t^2), 2t/(1+t^2))"}};
  } else {
    out["continuous_block"] = nullptr;
  }
  out["evidence"] = json{{"trials", st.evidence.trials},
                         {"seed", st.evidence.seed},
                         {"certified_hits", st.evidence.certified_hits},
                         {"violations", st.evidence.violations}};
  return out;
}

json descriptor_json(const IsometryDescriptor& d) {
  json out;
  out["group"] = std::string(ascii_name(d.group));
  out["case"] = d.case_id;
  json stab;
  stab["type"] = d.stabilizer_type.ascii_token();
  stab["name"] = d.stabilizer_type.name();
  if (d.stabilizer_order)
    stab["order"] = *d.stabilizer_order;
  else
    stab["order"] = "infinite";
  json profile = json::object();
  for (const auto& [o, c] : d.stabilizer_type.invariants.profile)
    profile[std::to_string(o)] = c;
  stab["profile"] = std::move(profile);
  stab["dim"] = d.identity_component_dim;
  stab["components"] = d.components;
  out["stabilizer"] = std::move(stab);
  out["isometry_group"] = d.structure;
  return out;
}

json catalog_json(const SolWeights& weights) {
  json out;
  out["weights"] = json::array(
      {rational_json(weights.w1), rational_json(weights.w2), rational_json(weights.w3)});
  json algebras = json::object();
  json families = json::object();
  for (GroupName g : kAllGroups) {
    const std::string key(ascii_name(g));
    algebras[key] = algebra_json(catalog_algebra(
        g, g == GroupName::SolMN4 ? std::optional<SolWeights>(weights) : std::nullopt));
    families[key] = family_json(aut_family(g));
  }
  out["algebras"] = std::move(algebras);
  out["aut_families"] = std::move(families);
  return out;
}

}  // namespace isom4d
