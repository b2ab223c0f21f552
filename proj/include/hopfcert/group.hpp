// SPDX-License-Identifier: Apache-2.0
//
// Elements of G = Z2 × Sym(n) × S¹ with exact rational phases, twisted
// subgroups H^φ (graphs of φ: H → S¹), the cube catalog, real spatial
// representations and fixed-point spaces of the l-folded action.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hopfcert/linalg.hpp"

namespace hopfcert::group {

// Element of S¹ = ℝ/ℤ stored as a reduced fraction in [0, 1).
class Phase {
 public:
  Phase() = default;
  Phase(std::int64_t num, std::int64_t den);

  // Accepts "0", "1", "3/4", "-1/2"; the value is reduced mod 1.
  static Phase parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Phase operator+(const Phase& other) const;
  Phase operator-() const;
  Phase times(std::int64_t l) const;
  bool is_zero() const { return num_ == 0; }

  auto operator<=>(const Phase&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Bijection of {0..n-1}; printed and parsed 1-based in cycle notation.
class Permutation {
 public:
  explicit Permutation(int n = 0);

  static Permutation from_images(std::vector<int> images);
  // "()" or products of cycles such as "(17)(28)(35)(46)". Single digits are
  // points when n ≤ 9; otherwise points inside a cycle are comma separated.
  static Permutation parse(std::string_view cycles, int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  // (this ∘ rhs)(i) = this(rhs(i)).
  Permutation compose(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::string str() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

struct GroupElement {
  int sign = 1;
  Permutation perm;
  Phase phase;

  static GroupElement identity(int n) { return {1, Permutation(n), Phase()}; }
  GroupElement inverse() const;
  GroupElement spatial() const { return {sign, perm, Phase()}; }
  std::string str() const;

  auto operator<=>(const GroupElement&) const = default;
};

// Signs multiply, permutations compose, phases add mod 1.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

class TwistedSubgroup {
 public:
  // The trivial group on one point.
  TwistedSubgroup() : TwistedSubgroup("trivial", {GroupElement::identity(1)}) {}
  // Validates closure, inverses and the graph property; elements are sorted.
  TwistedSubgroup(std::string name, std::vector<GroupElement> elements);

  const std::string& name() const { return name_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  int points() const { return elements_.front().perm.size(); }
  bool contains(const GroupElement& g) const;

  // The spatial part H with phases dropped.
  std::vector<GroupElement> spatial_part() const;
  // ker φ as spatial elements.
  std::vector<GroupElement> kernel() const;
  // lcm of phase denominators; fixed spaces depend on l only modulo this.
  std::int64_t phase_period() const;
  // φ(h) for a spatial element h ∈ H.
  Phase phase_of(const GroupElement& spatial) const;

 private:
  std::string name_;
  std::vector<GroupElement> elements_;
};

// {h·k : h ∈ H, k ∈ K} validated as a twisted subgroup.
TwistedSubgroup product(const TwistedSubgroup& h, const TwistedSubgroup& k, std::string name);

// Names: base groups S4, D4z, D3z, D2d, Z4c, Z3t, D4d, D3, S4-; decorated
// forms "+X", "-X", "+Xbar", "-Xbar"; raw "Gamma" (Z2×O4), "O4", "trivial".
// Unknown names throw LookupError; "D3d" names are flagged unresolved.
TwistedSubgroup catalog(std::string_view name);
std::vector<std::string> catalog_base_names();
std::vector<std::string> catalog_names();
// The decorator groups (Z2×O1)^o, (Z2×O1)^oz, (1×O1)^o, (1×O1)^oz.
TwistedSubgroup decorator(char sign, bool bar);
TwistedSubgroup trivial_subgroup(int points);

// Real orthogonal action of a finite group Γ ⊂ Z2 × Sym(n) on V = ℝ^N.
class RepresentationSpace {
 public:
  // Z2 × O4 on ℝ^16, coordinates interleaved as (j_1, u_1, ..., j_8, u_8);
  // (s, σ) acts by s·(P_σ ⊗ I_2) with P_σ e_i = e_σ(i). Without the sign
  // the group is O4 alone.
  static RepresentationSpace cube(bool with_sign = true);
  // Closure of the given (sign, perm) ↦ matrix generators. Throws
  // StructuralError when matrices are not orthogonal or do not define a
  // homomorphism on the generated group.
  static RepresentationSpace generated(
      int points, int dim, const std::vector<std::pair<GroupElement, MatrixXd>>& generators);

  int dim() const { return dim_; }
  int points() const { return points_; }
  std::size_t order() const { return table_.size(); }
  bool contains(const GroupElement& g) const { return table_.count(g.spatial()) > 0; }
  const MatrixXd& action(const GroupElement& g) const;
  std::vector<GroupElement> elements() const;
  // Generators recorded at construction (used as equivariance witnesses).
  const std::vector<GroupElement>& generators() const { return generators_; }

  // sign·P·e^{2πi·l·phase}.
  MatrixXc rep_matrix(const GroupElement& g, int l) const;

 private:
  int points_ = 0;
  int dim_ = 0;
  std::map<GroupElement, MatrixXd> table_;
  std::vector<GroupElement> generators_;
};

struct FixedSpaceBasis {
  int l = 0;
  MatrixXc columns;  // N × d, orthonormal
  int dim() const { return static_cast<int>(columns.cols()); }
};

MatrixXc averaging_projector(const RepresentationSpace& space, const TwistedSubgroup& h, int l);
// Orthonormal basis of the range of the averaging projector; real whenever
// the projector is real.
FixedSpaceBasis fixed_space(const RepresentationSpace& space, const TwistedSubgroup& h, int l);
// Real orthonormal basis of V^K for a set of spatial elements K.
MatrixXd real_fixed_space(const RepresentationSpace& space, const std::vector<GroupElement>& k);

}  // namespace hopfcert::group
