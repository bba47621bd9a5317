#pragma once

#include <map>
#include <string>
#include <vector>

#include "isom4d/catalog.hpp"
#include "isom4d/cholesky.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

/// A metric class instance: the group, the case number within the group's
/// normal-form table (0 stands for "other": any admissible parameter choice
/// of the group's upper-triangular template, carrying no classified claim),
/// and the named parameters.
struct MetricSpec {
  GroupName group = GroupName::Nil3xR;
  int case_id = 1;
  std::map<std::string, Rational> params;
};

int metric_case_count(GroupName g);

/// Names of the parameters accepted by a case, in canonical order.
std::vector<std::string> metric_param_names(GroupName g, int case_id);

/// The all-ones admissible assignment for a case.
std::map<std::string, Rational> default_metric_params(GroupName g, int case_id);

/// Human-readable constraint line for a case, echoed in error messages.
std::string metric_constraint_text(GroupName g, int case_id);

/// The upper-triangular positive-diagonal matrix M of the normal form;
/// throws std::invalid_argument when the parameters violate the case
/// constraints.
Mat metric_upper_m(const MetricSpec& spec);

/// The inner-product matrix of the case written in closed form, entry for
/// entry. Only defined for the numbered cases.
Mat displayed_metric(const MetricSpec& spec);

/// Correspondence between upper-triangular positive-diagonal matrices and
/// symmetric positive definite ones: B -> (B^{-1})^T (B^{-1}).
Mat phi(const Mat& b);

struct PhiInverseOutcome {
  bool ok = false;
  Mat m;                     // upper triangular, positive diagonal (ok only)
  CholeskyOutcome certificate;  // factorization outcome, including minors
};

/// Unique upper-triangular positive-diagonal preimage of an SPD matrix under
/// phi, when that preimage is rational.
PhiInverseOutcome phi_inverse(const Mat& s);

/// The metric matrix of a case: closed form cross-checked against
/// phi(metric_upper_m); for case 0 computed as phi of the template.
Mat metric_matrix(const MetricSpec& spec);

/// (theta^{-1})^T s theta^{-1}: the unique solution g' of
/// s = theta^T g' theta. Throws on a singular theta.
Mat pullback_metric(const Mat& theta, const Mat& s);

}  // namespace isom4d
