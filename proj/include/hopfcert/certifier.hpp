// SPDX-License-Identifier: Apache-2.0
//
// Hypothesis checks (P0)–(P5) for ẋ = A(α)x + f(α, x) and the certificate of
// a branch of periodic orbits with symmetry at least H^φ whose amplitudes
// sweep [r, R].
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopfcert/estimator.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/spectral.hpp"

namespace hopfcert::certifier {

using Json = nlohmann::ordered_json;
using spectral::Point;

enum class Verdict { verified, violated, unverifiable };

// "verified", "violated", "unverifiable_at_resolution".
std::string to_string(Verdict v);

struct ConditionResult {
  Verdict verdict = Verdict::unverifiable;
  std::string detail;
};

// Bound on the nonlinearity. Functional kinds describe a nondecreasing g
// with |f(α, x)| ≤ g(|x|)·|x|; the explicit kind states (P4) directly as
// |f(α, x)| ≤ N(α)·max{r, |x|} for |x| ≤ R with N piecewise constant.
struct NonlinearEnvelope {
  enum class Kind { power, polynomial, table, explicit_bound };

  struct Piece {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double n = 0.0;
  };

  Kind kind = Kind::power;
  double coefficient = 1.0;                      // power: c·s^p
  double exponent = 2.0;
  std::vector<double> coefficients;              // polynomial: Σ c_k s^k, c_k ≥ 0
  std::vector<std::pair<double, double>> table;  // (s, g), s from 0, piecewise linear
  std::vector<Piece> pieces;                     // explicit
  double r = 0.0;
  double R = 0.0;

  // Throws ConfigError on negative coefficients, a table that is not
  // nondecreasing or does not start at s = 0, or an empty explicit bound.
  void validate() const;
  // +inf beyond the last table sample.
  double g(double s) const;
  // True when g is constant, so g < 𝒩 holds globally.
  bool constant() const;
  std::string kind_name() const;
  Json to_json() const;
};

struct Tolerances {
  double m_rel_tol = 1e-6;        // M enclosures on ∂𝒟
  double equivariance = 1e-10;    // witness commutator residual
  double p1_abs_floor = 1e-12;
  int axis_grid = 400;            // α grid of the imaginary-axis sweep
  contour::WindingOptions winding;
  contour::ScanOptions faces;
};

struct ProblemSpec {
  spectral::LinearFamily family;
  group::RepresentationSpace space;
  group::TwistedSubgroup symmetry;
  NonlinearEnvelope envelope;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  std::optional<Point> hopf_hint;
  estimator::NormMode mode = estimator::NormMode::frobenius;
  estimator::DomainStrategy domain;
  Tolerances tol;
  std::string parameter = "alpha";  // label of the bifurcation parameter
  Json header = Json::object();     // model description echoed into the certificate
};

struct P2Result {
  ConditionResult condition;
  std::optional<int> t_minus;
  std::optional<int> t_plus;
  bool bottom_face_failed = false;
};

struct P3Result {
  ConditionResult condition;
  int mode_cap = 0;  // L*
  std::vector<std::pair<int, int>> n_l;
  std::vector<spectral::AxisRoot> axis_roots;
};

struct P45Result {
  ConditionResult p4;
  ConditionResult p5;
  std::optional<double> threshold;  // 𝒩
  std::optional<double> m_max;
  std::optional<Point> m_max_at;
  std::optional<double> n_value;  // the N realized by the envelope
  std::optional<double> r;
  std::optional<double> R;  // +inf for an unbounded branch
};

ConditionResult check_p1(const ProblemSpec& spec, const spectral::RestrictedFamily& rf);
P2Result check_p2(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                  const spectral::RegionP& region);
P3Result check_p3(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                  const spectral::DomainD& d, const spectral::RegionP& region);
P45Result check_p4_p5(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                      const spectral::DomainD& d);

// Non-persistent roots of Λ_1(·, 0, ·) in the α interval; the one nearest
// the interval midpoint, if any.
std::optional<Point> detect_hopf_point(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                                       const spectral::RegionP& region);

// sup{s : g(s) < 𝒩} by monotone bisection; nullopt when g(0) ≥ 𝒩 and +inf
// when g stays below 𝒩.
std::optional<double> invert_envelope(const NonlinearEnvelope& env, double threshold);

struct Certificate {
  // "certified", "violated", "unverifiable_at_resolution" or "invalid_input".
  std::string verdict = "invalid_input";
  std::string symmetry;
  std::size_t symmetry_order = 0;
  int phase_period = 1;
  std::vector<int> fixed_dims;  // dim V_l^{H^φ} for l = 0..period−1
  std::string parameter = "alpha";
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  estimator::NormMode mode = estimator::NormMode::frobenius;
  std::array<ConditionResult, 6> conditions;  // P0..P5
  std::optional<spectral::RegionP> region;
  std::optional<Point> hopf_point;
  std::optional<spectral::DomainD> domain;
  std::optional<estimator::SegmentMinimum> minimum;
  std::optional<int> t_minus;
  std::optional<int> t_plus;
  std::optional<int> n_0;
  int mode_cap = 0;
  std::vector<std::pair<int, int>> n_l;
  std::vector<spectral::AxisRoot> axis_roots;
  std::optional<double> threshold;
  std::optional<double> m_max;
  std::optional<double> r;
  std::optional<double> R;
  NonlinearEnvelope envelope;
  Json header = Json::object();
  std::vector<std::string> notes;
  std::vector<std::string> diagnostics;

  std::optional<int> n_1() const;
  Json to_json() const;
  std::string serialize() const;  // to_json().dump(2) plus a trailing newline
};

// Never throws on bad numerics: failures become verdicts and diagnostics.
// Invalid specs yield verdict "invalid_input".
Certificate certify(const ProblemSpec& spec);

// 0 certified, 2 violated, 4 unverifiable_at_resolution, 3 invalid_input.
int exit_code(const std::string& verdict);

// Overall verdict from condition verdicts: certified only when all of P1..P5
// are verified, the crossing numbers differ and r < R; any violation wins
// over unverifiable.
std::string overall_verdict(const std::array<ConditionResult, 6>& conditions,
                            std::optional<int> t_minus, std::optional<int> t_plus,
                            std::optional<double> r, std::optional<double> R);

}  // namespace hopfcert::certifier
