#include "isom4d/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "isom4d/linalg.hpp"

namespace isom4d {

namespace {

const Rational kOne(1);

struct CaseDef {
  std::vector<std::string> free_params;                  // canonical order
  std::map<std::string, Rational> fixed;                 // implied values
  std::string constraint_text;
  // admissibility of the free parameters
  bool (*admissible)(const std::map<std::string, Rational>&);
};

bool positive(const std::map<std::string, Rational>& p, const char* k) {
  return p.at(k).sign() > 0;
}
bool nonneg(const std::map<std::string, Rational>& p, const char* k) {
  return p.at(k).sign() >= 0;
}
bool nonzero(const std::map<std::string, Rational>& p, const char* k) {
  return !p.at(k).is_zero();
}

const CaseDef& case_def(GroupName g, int case_id) {
  static const std::map<std::pair<GroupName, int>, CaseDef> defs = [] {
    std::map<std::pair<GroupName, int>, CaseDef> m;
    m[{GroupName::Nil3xR, 1}] = {{"alpha"}, {}, "alpha > 0",
                                 [](const std::map<std::string, Rational>& p) { return positive(p, "alpha"); }};
    m[{GroupName::Nil3xR, 0}] = m[{GroupName::Nil3xR, 1}];

    m[{GroupName::Nil4, 1}] = {{"alpha", "gamma"},
                               {{"beta", Rational(0)}},
                               "alpha > 0, gamma > 0, beta = 0",
                               [](const std::map<std::string, Rational>& p) {
                                 return positive(p, "alpha") && positive(p, "gamma");
                               }};
    m[{GroupName::Nil4, 2}] = {{"alpha", "beta", "gamma"},
                               {},
                               "alpha > 0, gamma > 0, beta > 0",
                               [](const std::map<std::string, Rational>& p) {
                                 return positive(p, "alpha") && positive(p, "gamma") &&
                                        positive(p, "beta");
                               }};
    m[{GroupName::Nil4, 0}] = {{"alpha", "beta", "gamma"},
                               {},
                               "alpha > 0, gamma > 0, beta >= 0",
                               [](const std::map<std::string, Rational>& p) {
                                 return positive(p, "alpha") && positive(p, "gamma") &&
                                        nonneg(p, "beta");
                               }};

    for (GroupName g : {GroupName::SolMN4, GroupName::Sol3xR}) {
      m[{g, 1}] = {{"mu"},
                   {{"alpha", Rational(0)}, {"beta", Rational(0)}, {"gamma", Rational(0)}},
                   "mu > 0, alpha = beta = gamma = 0",
                   [](const std::map<std::string, Rational>& p) { return positive(p, "mu"); }};
      m[{g, 2}] = {{"alpha", "mu"},
                   {{"beta", Rational(0)}, {"gamma", Rational(0)}},
                   "alpha > 0, mu > 0, beta = gamma = 0",
                   [](const std::map<std::string, Rational>& p) {
                     return positive(p, "alpha") && positive(p, "mu");
                   }};
      m[{g, 3}] = {{"alpha", "beta", "gamma", "mu"},
                   {},
                   "alpha > 0, beta != 0, mu > 0",
                   [](const std::map<std::string, Rational>& p) {
                     return positive(p, "alpha") && nonzero(p, "beta") && positive(p, "mu");
                   }};
      m[{g, 0}] = {{"alpha", "beta", "gamma", "mu"},
                   {},
                   "mu > 0, alpha >= 0, gamma >= 0",
                   [](const std::map<std::string, Rational>& p) {
                     return positive(p, "mu") && nonneg(p, "alpha") && nonneg(p, "gamma");
                   }};
    }

    m[{GroupName::Sol04, 1}] = {{"beta"},
                                {{"alpha", Rational(0)}},
                                "beta > 0, alpha = 0",
                                [](const std::map<std::string, Rational>& p) { return positive(p, "beta"); }};
    m[{GroupName::Sol04, 2}] = {{"alpha", "beta"},
                                {},
                                "alpha > 0, beta > 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return positive(p, "alpha") && positive(p, "beta");
                                }};
    m[{GroupName::Sol04, 0}] = {{"alpha", "beta"},
                                {},
                                "alpha >= 0, beta > 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return nonneg(p, "alpha") && positive(p, "beta");
                                }};

    m[{GroupName::Sol0p4, 1}] = {{"alpha", "mu"},
                                 {{"beta", Rational(0)}, {"gamma", Rational(0)}},
                                 "alpha > 0, mu > 0, beta = gamma = 0",
                                 [](const std::map<std::string, Rational>& p) {
                                   return positive(p, "alpha") && positive(p, "mu");
                                 }};
    m[{GroupName::Sol0p4, 2}] = {{"alpha", "beta", "mu"},
                                 {{"gamma", Rational(0)}},
                                 "alpha > 0, beta != 0, mu > 0, gamma = 0",
                                 [](const std::map<std::string, Rational>& p) {
                                   return positive(p, "alpha") && nonzero(p, "beta") &&
                                          positive(p, "mu");
                                 }};
    m[{GroupName::Sol0p4, 0}] = {{"alpha", "beta", "gamma", "mu"},
                                 {},
                                 "alpha > 0, mu > 0, beta >= 0",
                                 [](const std::map<std::string, Rational>& p) {
                                   return positive(p, "alpha") && positive(p, "mu") &&
                                          nonneg(p, "beta");
                                 }};

    m[{GroupName::Sol14, 1}] = {{"alpha", "nu"},
                                {{"beta", Rational(0)}, {"gamma", Rational(0)}, {"mu", Rational(0)}},
                                "alpha > 0, nu > 0, beta = gamma = mu = 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return positive(p, "alpha") && positive(p, "nu");
                                }};
    m[{GroupName::Sol14, 2}] = {{"alpha", "beta", "nu"},
                                {{"gamma", Rational(0)}, {"mu", Rational(0)}},
                                "alpha > 0, beta > 0, nu > 0, gamma = mu = 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return positive(p, "alpha") && positive(p, "beta") &&
                                         positive(p, "nu");
                                }};
    m[{GroupName::Sol14, 3}] = {{"alpha", "beta", "mu", "nu"},
                                {{"gamma", Rational(0)}},
                                "alpha > 0, beta > 0, mu > 0, nu > 0, gamma = 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return positive(p, "alpha") && positive(p, "beta") &&
                                         positive(p, "mu") && positive(p, "nu");
                                }};
    m[{GroupName::Sol14, 0}] = {{"alpha", "beta", "gamma", "mu", "nu"},
                                {},
                                "alpha > 0, nu > 0, beta >= 0, mu >= 0",
                                [](const std::map<std::string, Rational>& p) {
                                  return positive(p, "alpha") && positive(p, "nu") &&
                                         nonneg(p, "beta") && nonneg(p, "mu");
                                }};
    return m;
  }();
  const auto it = defs.find({g, case_id});
  if (it == defs.end())
    throw std::invalid_argument("metric case " + std::to_string(case_id) + " is not defined for " +
                                std::string(ascii_name(g)));
  return it->second;
}

/// Complete, validated parameter map (free + fixed) for a case.
std::map<std::string, Rational> resolve_params(const MetricSpec& spec) {
  const CaseDef& def = case_def(spec.group, spec.case_id);
  std::map<std::string, Rational> full = def.fixed;
  std::map<std::string, Rational> free_vals;
  for (const auto& [k, v] : spec.params) {
    const auto fixed_it = def.fixed.find(k);
    if (fixed_it != def.fixed.end()) {
      if (!(fixed_it->second == v))
        throw std::invalid_argument("parameter '" + k + "' is fixed to " + fixed_it->second.str() +
                                    " in this case (" + def.constraint_text + ")");
      continue;
    }
    if (std::find(def.free_params.begin(), def.free_params.end(), k) == def.free_params.end())
      throw std::invalid_argument("unknown parameter '" + k + "' for " +
                                  std::string(ascii_name(spec.group)) + " case " +
                                  std::to_string(spec.case_id));
    free_vals[k] = v;
  }
  for (const auto& name : def.free_params) {
    if (!free_vals.count(name))
      throw std::invalid_argument("missing parameter '" + name + "' (" + def.constraint_text + ")");
    full[name] = free_vals[name];
  }
  if (!def.admissible(full))
    throw std::invalid_argument("parameters violate the case constraint: " + def.constraint_text);
  return full;
}

Mat upper_template(GroupName g, const std::map<std::string, Rational>& p) {
  const Rational z(0), o(1);
  switch (g) {
    case GroupName::Nil3xR:
      return mat_from_rows({{p.at("alpha"), z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, o}});
    case GroupName::Nil4:
      return mat_from_rows({{p.at("alpha"), p.at("beta"), z, z},
                            {z, p.at("gamma"), z, z},
                            {z, z, o, z},
                            {z, z, z, o}});
    case GroupName::SolMN4:
    case GroupName::Sol3xR:
      return mat_from_rows({{o, p.at("alpha"), p.at("beta"), z},
                            {z, o, p.at("gamma"), z},
                            {z, z, o, z},
                            {z, z, z, p.at("mu")}});
    case GroupName::Sol04:
      return mat_from_rows({{o, z, p.at("alpha"), z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, p.at("beta")}});
    case GroupName::Sol0p4:
      return mat_from_rows({{o, z, p.at("beta"), z},
                            {z, p.at("alpha"), p.at("gamma"), z},
                            {z, z, o, z},
                            {z, z, z, p.at("mu")}});
    case GroupName::Sol14:
      return mat_from_rows({{p.at("alpha"), p.at("beta"), p.at("gamma"), z},
                            {z, o, p.at("mu"), z},
                            {z, z, o, z},
                            {z, z, z, p.at("nu")}});
  }
  throw std::logic_error("upper_template: unreachable");
}

}  // namespace

int metric_case_count(GroupName g) {
  switch (g) {
    case GroupName::Nil3xR: return 1;
    case GroupName::Nil4: return 2;
    case GroupName::SolMN4: return 3;
    case GroupName::Sol3xR: return 3;
    case GroupName::Sol04: return 2;
    case GroupName::Sol0p4: return 2;
    case GroupName::Sol14: return 3;
  }
  return 0;
}

std::vector<std::string> metric_param_names(GroupName g, int case_id) {
  return case_def(g, case_id).free_params;
}

std::map<std::string, Rational> default_metric_params(GroupName g, int case_id) {
  std::map<std::string, Rational> out;
  for (const auto& name : case_def(g, case_id).free_params) out[name] = Rational(1);
  return out;
}

std::string metric_constraint_text(GroupName g, int case_id) {
  return case_def(g, case_id).constraint_text;
}

Mat metric_upper_m(const MetricSpec& spec) {
  return upper_template(spec.group, resolve_params(spec));
}

Mat displayed_metric(const MetricSpec& spec) {
  if (spec.case_id == 0)
    throw std::invalid_argument("displayed_metric: case 0 has no closed-form display");
  const auto p = resolve_params(spec);
  const Rational z(0), o(1);
  switch (spec.group) {
    case GroupName::Nil3xR: {
      const Rational a = p.at("alpha");
      return mat_from_rows({{o / (a * a), z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, o}});
    }
    case GroupName::Nil4: {
      const Rational a = p.at("alpha"), b = p.at("beta"), g2 = p.at("gamma");
      if (spec.case_id == 1)
        return mat_from_rows(
            {{o / (a * a), z, z, z}, {z, o / (g2 * g2), z, z}, {z, z, o, z}, {z, z, z, o}});
      const Rational off = -b / (a * a * g2);
      const Rational mid = o / (g2 * g2) + b * b / (a * a * g2 * g2);
      return mat_from_rows({{o / (a * a), off, z, z}, {off, mid, z, z}, {z, z, o, z}, {z, z, z, o}});
    }
    case GroupName::SolMN4:
    case GroupName::Sol3xR: {
      const Rational mu = p.at("mu");
      const Rational m44 = o / (mu * mu);
      if (spec.case_id == 1)
        return mat_from_rows({{o, z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational a = p.at("alpha");
      if (spec.case_id == 2)
        return mat_from_rows(
            {{o, -a, z, z}, {-a, o + a * a, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational b = p.at("beta"), g2 = p.at("gamma");
      const Rational t = a * g2 - b;
      return mat_from_rows({{o, -a, t, z},
                            {-a, o + a * a, -a * t - g2, z},
                            {t, -a * t - g2, t * t + g2 * g2 + o, z},
                            {z, z, z, m44}});
    }
    case GroupName::Sol04: {
      const Rational b = p.at("beta");
      const Rational m44 = o / (b * b);
      if (spec.case_id == 1)
        return mat_from_rows({{o, z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational a = p.at("alpha");
      return mat_from_rows({{o, z, -a, z}, {z, o, z, z}, {-a, z, o + a * a, z}, {z, z, z, m44}});
    }
    case GroupName::Sol0p4: {
      const Rational a = p.at("alpha"), mu = p.at("mu");
      const Rational m22 = o / (a * a), m44 = o / (mu * mu);
      if (spec.case_id == 1)
        return mat_from_rows({{o, z, z, z}, {z, m22, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational b = p.at("beta");
      return mat_from_rows(
          {{o, z, -b, z}, {z, m22, z, z}, {-b, z, o + b * b, z}, {z, z, z, m44}});
    }
    case GroupName::Sol14: {
      const Rational a = p.at("alpha"), nu = p.at("nu");
      const Rational m11 = o / (a * a), m44 = o / (nu * nu);
      if (spec.case_id == 1)
        return mat_from_rows({{m11, z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational b = p.at("beta");
      const Rational off = -b / (a * a);
      const Rational m22 = o + b * b / (a * a);
      if (spec.case_id == 2)
        return mat_from_rows({{m11, off, z, z}, {off, m22, z, z}, {z, z, o, z}, {z, z, z, m44}});
      const Rational mu = p.at("mu");
      const Rational m13 = b * mu / (a * a);
      const Rational m23 = -b * b * mu / (a * a) - mu;
      const Rational m33 = b * b * mu * mu / (a * a) + mu * mu + o;
      return mat_from_rows(
          {{m11, off, m13, z}, {off, m22, m23, z}, {m13, m23, m33, z}, {z, z, z, m44}});
    }
  }
  throw std::logic_error("displayed_metric: unreachable");
}

Mat phi(const Mat& b) {
  if (b.rows() != b.cols()) throw std::invalid_argument("phi: matrix not square");
  for (Index i = 0; i < b.rows(); ++i) {
    if (b(i, i).sign() <= 0)
      throw std::invalid_argument("phi: diagonal entries must be positive");
    for (Index j = 0; j < i; ++j)
      if (!b(i, j).is_zero()) throw std::invalid_argument("phi: matrix must be upper triangular");
  }
  const Mat inv = inverse(b);
  return inv.transpose() * inv;
}

PhiInverseOutcome phi_inverse(const Mat& s) {
  PhiInverseOutcome out;
  out.certificate = cholesky_upper(s);
  if (out.certificate.status == CholeskyOutcome::Status::NotSymmetric)
    throw std::invalid_argument("phi_inverse: matrix not symmetric");
  if (!out.certificate.ok()) return out;
  out.m = inverse(out.certificate.factor);
  if (!exactly_equal(phi(out.m), s)) throw std::logic_error("phi_inverse: round trip failed");
  out.ok = true;
  return out;
}

Mat metric_matrix(const MetricSpec& spec) {
  const Mat via_phi = phi(metric_upper_m(spec));
  if (spec.case_id != 0) {
    const Mat shown = displayed_metric(spec);
    if (!exactly_equal(shown, via_phi))
      throw std::logic_error("metric_matrix: closed form disagrees with phi of the template");
  }
  return via_phi;
}

Mat pullback_metric(const Mat& theta, const Mat& s) {
  if (theta.rows() != theta.cols() || theta.rows() != s.rows() || !is_symmetric(s))
    throw std::invalid_argument("pullback_metric: shape mismatch");
  const Mat inv = inverse(theta);  // throws on singular theta
  return inv.transpose() * s * inv;
}

}  // namespace isom4d
