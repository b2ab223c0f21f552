// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "hopfcert/errors.hpp"

namespace hopfcert::group {

namespace detail {
const std::vector<std::string_view>& embedded_catalog();
}

// ---------------------------------------------------------------- Phase

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den == 0) throw StructuralError("phase with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
  if (num_ == 0) den_ = 1;
}

Phase Phase::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Phase(n, 1);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const long long n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const long long d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return Phase(n, d);
  } catch (const std::logic_error&) {
    throw StructuralError("malformed phase '" + std::string(text) + "'");
  }
}

std::string Phase::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Phase Phase::operator+(const Phase& o) const {
  const std::int64_t l = std::lcm(den_, o.den_);
  return Phase(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Phase Phase::operator-() const { return Phase(-num_, den_); }

Phase Phase::times(std::int64_t l) const { return Phase((num_ * (l % den_)) % den_, den_); }

// ---------------------------------------------------------- Permutation

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[static_cast<std::size_t>(v)])
      throw StructuralError("permutation images are not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::parse(std::string_view cycles, int n) {
  Permutation p(n);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw StructuralError("malformed cycle notation '" + std::string(cycles) + "': " + why);
  };
  while (i < cycles.size()) {
    const char c = cycles[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') fail("expected '('");
    const auto close = cycles.find(')', i);
    if (close == std::string_view::npos) fail("unbalanced parentheses");
    const std::string_view body = cycles.substr(i + 1, close - i - 1);
    std::vector<int> pts;
    if (body.find(',') != std::string_view::npos || n > 9) {
      std::stringstream ss{std::string(body)};
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" ") == std::string::npos) continue;
        try {
          pts.push_back(std::stoi(tok) - 1);
        } catch (const std::logic_error&) {
          fail("bad point '" + tok + "'");
        }
      }
    } else {
      for (char d : body) {
        if (std::isspace(static_cast<unsigned char>(d))) continue;
        if (!std::isdigit(static_cast<unsigned char>(d))) fail("bad point");
        pts.push_back(d - '1');
      }
    }
    for (int q : pts) {
      if (q < 0 || q >= n) fail("point out of range 1.." + std::to_string(n));
      if (used[static_cast<std::size_t>(q)]) fail("point repeated");
      used[static_cast<std::size_t>(q)] = 1;
    }
    for (std::size_t k = 0; k < pts.size(); ++k)
      p.images_[static_cast<std::size_t>(pts[k])] = pts[(k + 1) % pts.size()];
    i = close + 1;
  }
  return p;
}

Permutation Permutation::compose(const Permutation& rhs) const {
  if (rhs.size() != size()) throw StructuralError("permutations act on different index sets");
  Permutation p(size());
  for (int i = 0; i < size(); ++i) p.images_[static_cast<std::size_t>(i)] = (*this)(rhs(i));
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p(size());
  for (int i = 0; i < size(); ++i) p.images_[static_cast<std::size_t>((*this)(i))] = i;
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

std::string Permutation::str() const {
  const bool wide = size() > 9;
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || (*this)(start) == start) continue;
    out += '(';
    int j = start;
    bool first = true;
    do {
      if (wide && !first) out += ',';
      out += std::to_string(j + 1);
      seen[static_cast<std::size_t>(j)] = 1;
      j = (*this)(j);
      first = false;
    } while (j != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// --------------------------------------------------------- GroupElement

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  return {g1.sign * g2.sign, g1.perm.compose(g2.perm), g1.phase + g2.phase};
}

GroupElement GroupElement::inverse() const { return {sign, perm.inverse(), -phase}; }

std::string GroupElement::str() const {
  return "(" + std::to_string(sign) + "," + perm.str() + "," + phase.str() + ")";
}

// ------------------------------------------------------ TwistedSubgroup

TwistedSubgroup::TwistedSubgroup(std::string name, std::vector<GroupElement> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  if (elements_.empty()) throw StructuralError(name_ + ": empty element set");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const int n = elements_.front().perm.size();
  std::set<GroupElement> spatial;
  for (const auto& g : elements_) {
    if (g.perm.size() != n) throw StructuralError(name_ + ": mixed index sets");
    if (g.sign != 1 && g.sign != -1) throw StructuralError(name_ + ": sign must be ±1");
    if (!spatial.insert(g.spatial()).second)
      throw StructuralError(name_ + ": spatial element " + g.spatial().str() +
                            " carries two phases (not a graph)");
  }
  if (!contains(GroupElement::identity(n)))
    throw StructuralError(name_ + ": identity missing");
  for (const auto& a : elements_)
    for (const auto& b : elements_)
      if (!contains(compose(a, b)))
        throw StructuralError(name_ + ": not closed, " + a.str() + "·" + b.str() + " missing");
}

bool TwistedSubgroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::vector<GroupElement> TwistedSubgroup::spatial_part() const {
  std::vector<GroupElement> out;
  out.reserve(elements_.size());
  for (const auto& g : elements_) out.push_back(g.spatial());
  return out;
}

std::vector<GroupElement> TwistedSubgroup::kernel() const {
  std::vector<GroupElement> out;
  for (const auto& g : elements_)
    if (g.phase.is_zero()) out.push_back(g);
  return out;
}

std::int64_t TwistedSubgroup::phase_period() const {
  std::int64_t p = 1;
  for (const auto& g : elements_) p = std::lcm(p, g.phase.den());
  return p;
}

Phase TwistedSubgroup::phase_of(const GroupElement& spatial) const {
  for (const auto& g : elements_)
    if (g.sign == spatial.sign && g.perm == spatial.perm) return g.phase;
  throw LookupError(name_ + ": " + spatial.str() + " is not in the spatial part");
}

TwistedSubgroup product(const TwistedSubgroup& h, const TwistedSubgroup& k, std::string name) {
  std::vector<GroupElement> els;
  els.reserve(h.order() * k.order());
  for (const auto& a : h.elements())
    for (const auto& b : k.elements()) els.push_back(compose(a, b));
  return TwistedSubgroup(std::move(name), std::move(els));
}

// -------------------------------------------------------------- catalog

namespace {

constexpr std::string_view kO1 = "(17)(28)(35)(46)";

struct BaseEntry {
  std::string name;
  std::vector<GroupElement> elements;
};

const std::vector<BaseEntry>& base_catalog() {
  static const std::vector<BaseEntry> entries = [] {
    std::vector<BaseEntry> out;
    for (auto doc : detail::embedded_catalog()) {
      const auto j = nlohmann::json::parse(doc);
      BaseEntry e;
      e.name = j.at("name").get<std::string>();
      const int n = j.at("points").get<int>();
      for (const auto& el : j.at("elements"))
        e.elements.push_back({el.at(0).get<int>(),
                              Permutation::parse(el.at(1).get<std::string>(), n),
                              Phase::parse(el.at(2).get<std::string>())});
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

GroupElement elem(int sign, std::string_view cycles, Phase phase) {
  return {sign, Permutation::parse(cycles, 8), phase};
}

TwistedSubgroup base_group(std::string_view name) {
  for (const auto& e : base_catalog())
    if (e.name == name) return TwistedSubgroup(e.name, e.elements);
  if (name.substr(0, 3) == "D3d")
    throw LookupError("twisted subgroup 'D3d' is unresolved: its element set is not defined",
                      true);
  throw LookupError("unknown twisted subgroup '" + std::string(name) + "'");
}

}  // namespace

TwistedSubgroup decorator(char sign, bool bar) {
  const Phase z, h(1, 2);
  std::vector<GroupElement> els;
  if (sign == '+' && !bar)
    els = {elem(1, "()", z), elem(1, kO1, z), elem(-1, "()", h), elem(-1, kO1, h)};
  else if (sign == '-' && !bar)
    els = {elem(1, "()", z), elem(-1, kO1, z), elem(-1, "()", h), elem(1, kO1, h)};
  else if (sign == '+' && bar)
    els = {elem(1, "()", z), elem(1, kO1, z)};
  else if (sign == '-' && bar)
    els = {elem(1, "()", z), elem(1, kO1, h)};
  else
    throw LookupError(std::string("unknown decorator sign '") + sign + "'");
  const std::string label = std::string(bar ? "(1xO1)" : "(Z2xO1)") + (sign == '+' ? "^o" : "^oz");
  return TwistedSubgroup(label, std::move(els));
}

TwistedSubgroup trivial_subgroup(int points) {
  return TwistedSubgroup("trivial", {GroupElement::identity(points)});
}

std::vector<std::string> catalog_base_names() {
  return {"S4", "D4z", "D3z", "D2d", "Z4c", "Z3t", "D4d", "D3", "S4-"};
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out = catalog_base_names();
  for (const auto& b : catalog_base_names())
    for (const char* pre : {"+", "-"})
      for (const char* post : {"", "bar"}) out.push_back(pre + b + post);
  out.insert(out.end(), {"Gamma", "O4", "trivial"});
  return out;
}

TwistedSubgroup catalog(std::string_view name) {
  if (name == "trivial") return trivial_subgroup(8);
  if (name == "O4" || name == "Gamma") {
    const TwistedSubgroup s4 = base_group("S4");
    std::vector<GroupElement> o1 = {elem(1, "()", Phase()), elem(1, kO1, Phase())};
    if (name == "Gamma") {
      o1.push_back(elem(-1, "()", Phase()));
      o1.push_back(elem(-1, kO1, Phase()));
    }
    return product(s4, TwistedSubgroup("k", o1), std::string(name));
  }
  if (!name.empty() && (name.front() == '+' || name.front() == '-')) {
    std::string_view rest = name.substr(1);
    bool bar = false;
    if (rest.size() > 3 && rest.substr(rest.size() - 3) == "bar") {
      bar = true;
      rest.remove_suffix(3);
    }
    return product(base_group(rest), decorator(name.front(), bar), std::string(name));
  }
  return base_group(name);
}

// ------------------------------------------------- RepresentationSpace

namespace {

void check_orthogonal(const MatrixXd& m, const std::string& what) {
  const auto n = m.rows();
  if (m.cols() != n) throw StructuralError(what + ": action matrix is not square");
  if ((m.transpose() * m - MatrixXd::Identity(n, n)).norm() > 1e-12)
    throw StructuralError(what + ": action matrix is not orthogonal");
}

}  // namespace

RepresentationSpace RepresentationSpace::cube(bool with_sign) {
  RepresentationSpace r;
  r.points_ = 8;
  r.dim_ = 16;
  const TwistedSubgroup gamma = catalog(with_sign ? "Gamma" : "O4");
  for (const auto& g : gamma.elements()) {
    MatrixXd p = MatrixXd::Zero(8, 8);
    for (int i = 0; i < 8; ++i) p(g.perm(i), i) = 1.0;
    MatrixXd m = Eigen::kroneckerProduct(p, Eigen::Matrix2d::Identity());
    r.table_.emplace(g.spatial(), static_cast<double>(g.sign) * m);
  }
  r.generators_ = {elem(1, "(1234)(5678)", Phase()), elem(1, "(254)(368)", Phase()),
                   elem(1, kO1, Phase())};
  if (with_sign) r.generators_.push_back(elem(-1, "()", Phase()));
  return r;
}

RepresentationSpace RepresentationSpace::generated(
    int points, int dim, const std::vector<std::pair<GroupElement, MatrixXd>>& generators) {
  RepresentationSpace r;
  r.points_ = points;
  r.dim_ = dim;
  const GroupElement e = GroupElement::identity(points);
  r.table_.emplace(e, MatrixXd::Identity(dim, dim));
  for (const auto& [g, m] : generators) {
    if (g.perm.size() != points)
      throw StructuralError("generator " + g.str() + " acts on the wrong index set");
    if (m.rows() != dim) throw StructuralError("generator matrix has wrong dimension");
    check_orthogonal(m, "generator " + g.str());
    r.generators_.push_back(g.spatial());
  }
  std::deque<GroupElement> queue = {e};
  while (!queue.empty()) {
    const GroupElement g = queue.front();
    queue.pop_front();
    const MatrixXd mg = r.table_.at(g);
    for (const auto& [s, ms] : generators) {
      const GroupElement h = compose(s.spatial(), g);
      const MatrixXd mh = ms * mg;
      const auto it = r.table_.find(h);
      if (it == r.table_.end()) {
        if (r.table_.size() > 100000) throw StructuralError("generated group is too large");
        r.table_.emplace(h, mh);
        queue.push_back(h);
      } else if ((it->second - mh).norm() > 1e-9) {
        throw StructuralError("generator matrices do not define a representation (conflict at " +
                              h.str() + ")");
      }
    }
  }
  return r;
}

const MatrixXd& RepresentationSpace::action(const GroupElement& g) const {
  const auto it = table_.find(g.spatial());
  if (it == table_.end())
    throw StructuralError("element " + g.spatial().str() + " does not act on this space");
  return it->second;
}

std::vector<GroupElement> RepresentationSpace::elements() const {
  std::vector<GroupElement> out;
  out.reserve(table_.size());
  for (const auto& kv : table_) out.push_back(kv.first);
  return out;
}

MatrixXc RepresentationSpace::rep_matrix(const GroupElement& g, int l) const {
  const double theta = 2.0 * M_PI * g.phase.times(l).value();
  return action(g).cast<cplx>() * std::polar(1.0, theta);
}

// ------------------------------------------------------ fixed spaces

MatrixXc averaging_projector(const RepresentationSpace& space, const TwistedSubgroup& h, int l) {
  if (l < 0) throw StructuralError("mode index must be non-negative");
  MatrixXc p = MatrixXc::Zero(space.dim(), space.dim());
  for (const auto& g : h.elements()) p += space.rep_matrix(g, l);
  p /= static_cast<double>(h.order());
  if ((p * p - p).norm() > 1e-10)
    throw StructuralError(h.name() + ": averaging projector is not idempotent");
  return p;
}

namespace {

template <typename Scalar>
Mat<Scalar> projector_range(const Mat<Scalar>& p, const std::string& what) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(p, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-8 * std::max(smax, 1.0)) {
      if (std::abs(s(i) - 1.0) > 1e-8)
        throw StructuralError(what + ": projector has a singular value " + std::to_string(s(i)) +
                              " strictly between 0 and 1");
      ++rank;
    }
  }
  return svd.matrixU().leftCols(rank);
}

}  // namespace

FixedSpaceBasis fixed_space(const RepresentationSpace& space, const TwistedSubgroup& h, int l) {
  const MatrixXc p = averaging_projector(space, h, l);
  FixedSpaceBasis b;
  b.l = l;
  if (p.imag().norm() < 1e-14)
    b.columns = projector_range<double>(p.real(), h.name()).cast<cplx>();
  else
    b.columns = projector_range<cplx>(p, h.name());
  return b;
}

MatrixXd real_fixed_space(const RepresentationSpace& space, const std::vector<GroupElement>& k) {
  MatrixXd p = MatrixXd::Zero(space.dim(), space.dim());
  for (const auto& g : k) p += space.action(g);
  p /= static_cast<double>(k.size());
  if ((p * p - p).norm() > 1e-10)
    throw StructuralError("spatial element set does not average to a projector");
  return projector_range<double>(p, "fixed subspace");
}

}  // namespace hopfcert::group
