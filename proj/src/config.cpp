// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "hopfcert/errors.hpp"

namespace hopfcert::config {

namespace {

// Object reader that records consumed keys and rejects the rest.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where_ + ": " + msg); }

  bool has(const std::string& key) {
    if (!j_.contains(key)) return false;
    seen_.insert(key);
    return true;
  }

  const Json& get(const std::string& key) {
    if (!has(key)) fail("missing key '" + key + "'");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const Json& v = get(key);
    if (!v.is_number()) fail("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail("'" + key + "' must be finite");
    return x;
  }
  double number(const std::string& key, double dflt) { return j_.contains(key) ? number(key) : dflt; }

  int integer(const std::string& key, int dflt) {
    if (!j_.contains(key)) return dflt;
    const Json& v = get(key);
    if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
    return v.get<int>();
  }

  std::string string(const std::string& key) {
    const Json& v = get(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& dflt) {
    return j_.contains(key) ? string(key) : dflt;
  }

  std::array<double, 2> pair(const std::string& key) {
    const Json& v = get(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail("'" + key + "' must be a two-element numeric array");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) fail("unknown key '" + key + "'");
  }

  const std::string& where() const { return where_; }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

MatrixXd read_matrix(Reader& r, const std::string& key, int n) {
  const Json& v = r.get(key);
  if (!v.is_array()) r.fail("'" + key + "' must be an array");
  MatrixXd m(n, n);
  const bool nested = !v.empty() && v[0].is_array();
  if (nested) {
    if (static_cast<int>(v.size()) != n)
      r.fail("'" + key + "' has " + std::to_string(v.size()) + " rows, expected " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
      const Json& row = v[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        r.fail("'" + key + "' row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
      for (int j = 0; j < n; ++j) {
        if (!row[static_cast<std::size_t>(j)].is_number()) r.fail("'" + key + "' entries must be numbers");
        m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
      }
    }
  } else {
    if (static_cast<int>(v.size()) != n * n)
      r.fail("'" + key + "' has " + std::to_string(v.size()) + " entries, expected " +
             std::to_string(n * n) + " (row-major " + std::to_string(n) + "x" + std::to_string(n) + ")");
    for (int k = 0; k < n * n; ++k) {
      if (!v[static_cast<std::size_t>(k)].is_number()) r.fail("'" + key + "' entries must be numbers");
      m(k / n, k % n) = v[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

Json matrix_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

group::GroupElement read_element(const Json& e, int points, const std::string& where) {
  if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_string() ||
      !(e[2].is_string() || e[2].is_number_integer()))
    throw ConfigError(where + ": elements must be [sign, \"cycles\", \"phase\"]");
  const int sign = e[0].get<int>();
  if (sign != 1 && sign != -1) throw ConfigError(where + ": sign must be 1 or -1");
  const std::string phase = e[2].is_string() ? e[2].get<std::string>() : std::to_string(e[2].get<int>());
  try {
    return {sign, group::Permutation::parse(e[1].get<std::string>(), points), group::Phase::parse(phase)};
  } catch (const Error& ex) {
    throw ConfigError(where + ": " + ex.what());
  }
}

Json cube_header(const ModelInfo& m) {
  const auto& p = m.cube;
  Json h;
  h["preset"] = "cube";
  h["R"] = p.R;
  h["L"] = p.L;
  h["C"] = p.C;
  h["rho"] = p.rho;
  h["sigma"] = p.sigma;
  h["q"] = p.q;
  h["parameter"] = m.parameter;
  if (m.parameter == "rho") h["alpha"] = m.fixed_alpha;
  Json hopf = Json::array(), steady = Json::array();
  for (int j = 0; j <= 3; ++j) {
    hopf.push_back(models::cube_hopf_alpha(p, j));
    steady.push_back(models::cube_steady_alpha(p, j));
  }
  h["alpha_hopf"] = hopf;
  h["alpha_steady"] = steady;
  h["C_ratio"] = models::cube_c(p);
  h["omega"] = models::cube_omega(p);
  return h;
}

}  // namespace

Config parse(const Json& doc, const std::filesystem::path& base_dir) {
  Config cfg;
  Reader top(doc, "config");
  Json norm;

  // ---- model
  {
    Reader r(top.get("model"), "model");
    Json nm;
    if (r.has("preset")) {
      cfg.model.preset = r.string("preset");
      nm["preset"] = cfg.model.preset;
      if (cfg.model.preset == "vdp") {
        // nothing else
      } else if (cfg.model.preset == "cube") {
        auto& p = cfg.model.cube;
        p.R = r.number("R", p.R);
        p.L = r.number("L", p.L);
        p.C = r.number("C", p.C);
        p.rho = r.number("rho", p.rho);
        p.sigma = r.number("sigma", p.sigma);
        p.q = r.number("q", p.q);
        if (!(p.R > 0 && p.L > 0 && p.C > 0)) r.fail("R, L, C must be positive");
        if (!(p.rho > 0)) r.fail("rho must be positive");
        cfg.model.parameter = r.string("parameter", "alpha");
        if (cfg.model.parameter != "alpha" && cfg.model.parameter != "rho")
          r.fail("'parameter' must be \"alpha\" or \"rho\"");
        cfg.model.fixed_alpha = r.number("alpha", p.R * p.C / p.L);
        nm["R"] = p.R;
        nm["L"] = p.L;
        nm["C"] = p.C;
        nm["rho"] = p.rho;
        nm["sigma"] = p.sigma;
        nm["q"] = p.q;
        nm["parameter"] = cfg.model.parameter;
        if (cfg.model.parameter == "rho") nm["alpha"] = cfg.model.fixed_alpha;
      } else {
        r.fail("unknown preset '" + cfg.model.preset + "' (expected vdp or cube)");
      }
    } else {
      const Json& dj = r.get("dimension");
      if (!dj.is_number_integer() || dj.get<int>() < 1) r.fail("'dimension' must be a positive integer");
      const int n = dj.get<int>();
      cfg.spec.family.a0 = read_matrix(r, "A0", n);
      cfg.spec.family.a1 = read_matrix(r, "A1", n);
      nm["dimension"] = n;
      nm["A0"] = matrix_json(cfg.spec.family.a0);
      nm["A1"] = matrix_json(cfg.spec.family.a1);
    }
    r.finish();
    norm["model"] = nm;
  }

  // ---- interval and family
  const auto iv = top.pair("alpha_interval");
  if (!(iv[0] < iv[1])) top.fail("alpha_interval must satisfy lo < hi");
  cfg.spec.alpha_lo = iv[0];
  cfg.spec.alpha_hi = iv[1];
  if (cfg.model.preset == "vdp") {
    cfg.spec.family = models::vdp_family(iv[0], iv[1]);
    cfg.field = models::vdp_field();
    cfg.spec.header = Json{{"preset", "vdp"}};
  } else if (cfg.model.preset == "cube") {
    cfg.spec.family = cfg.model.parameter == "rho"
                          ? models::cube_family_rho(cfg.model.cube, cfg.model.fixed_alpha, iv[0], iv[1])
                          : models::cube_family_alpha(cfg.model.cube, iv[0], iv[1]);
    cfg.field = models::cube_field(cfg.model.cube, cfg.spec.family);
    cfg.spec.header = cube_header(cfg.model);
    cfg.spec.parameter = cfg.model.parameter;
  } else {
    cfg.spec.family.alpha_lo = iv[0];
    cfg.spec.family.alpha_hi = iv[1];
    cfg.spec.header = Json{{"preset", "explicit"}, {"dimension", cfg.spec.family.dim()}};
  }
  const int dim = cfg.spec.family.dim();

  // ---- group
  {
    const std::string dflt = cfg.model.preset == "cube" ? "Z2xO4" : "trivial";
    Json ng;
    if (!top.has("group")) {
      ng["preset"] = dflt;
    } else {
      Reader r(doc.at("group"), "group");
      if (r.has("preset")) {
        ng["preset"] = r.string("preset");
      } else {
        const Json& pj = r.get("points");
        if (!pj.is_number_integer() || pj.get<int>() < 1) r.fail("'points' must be a positive integer");
        const int points = pj.get<int>();
        const Json& gens = r.get("generators");
        if (!gens.is_array()) r.fail("'generators' must be an array");
        std::vector<std::pair<group::GroupElement, MatrixXd>> list;
        Json ngens = Json::array();
        for (std::size_t i = 0; i < gens.size(); ++i) {
          Reader gr(gens[i], "group.generators[" + std::to_string(i) + "]");
          const int sign = gr.integer("sign", 1);
          if (sign != 1 && sign != -1) gr.fail("sign must be 1 or -1");
          const std::string perm = gr.string("perm");
          MatrixXd m = read_matrix(gr, "matrix", dim);
          gr.finish();
          try {
            list.emplace_back(group::GroupElement{sign, group::Permutation::parse(perm, points), {}}, m);
          } catch (const Error& e) {
            gr.fail(e.what());
          }
          ngens.push_back(Json{{"sign", sign}, {"perm", perm}, {"matrix", matrix_json(m)}});
        }
        try {
          cfg.spec.space = group::RepresentationSpace::generated(points, dim, list);
        } catch (const Error& e) {
          r.fail(e.what());
        }
        ng["points"] = points;
        ng["generators"] = ngens;
      }
      r.finish();
    }
    if (ng.contains("preset")) {
      const std::string preset = ng["preset"].get<std::string>();
      if (preset == "trivial") {
        cfg.spec.space = group::RepresentationSpace::generated(1, dim, {});
      } else if (preset == "Z2xO4" || preset == "O4") {
        if (dim != 16) throw ConfigError("group: preset '" + preset + "' acts on 16-dimensional states, model has " + std::to_string(dim));
        cfg.spec.space = group::RepresentationSpace::cube(preset == "Z2xO4");
      } else {
        throw ConfigError("group: unknown preset '" + preset + "' (expected trivial, Z2xO4 or O4)");
      }
    }
    norm["group"] = ng;
  }

  // ---- symmetry
  {
    const int points = cfg.spec.space.points();
    if (!top.has("symmetry") || doc.at("symmetry").is_string()) {
      const std::string name = doc.contains("symmetry") ? doc.at("symmetry").get<std::string>() : "trivial";
      try {
        cfg.spec.symmetry = name == "trivial" ? group::trivial_subgroup(points) : group::catalog(name);
      } catch (const LookupError& e) {
        throw ConfigError(std::string("symmetry: ") + e.what() +
                          (e.unresolved() ? " (catalog entry unresolved)" : ""));
      } catch (const Error& e) {
        throw ConfigError(std::string("symmetry: ") + e.what());
      }
      norm["symmetry"] = name;
    } else {
      Reader r(doc.at("symmetry"), "symmetry");
      const std::string name = r.string("name", "custom");
      const Json& els = r.get("elements");
      if (!els.is_array() || els.empty()) r.fail("'elements' must be a non-empty array");
      std::vector<group::GroupElement> list;
      Json nels = Json::array();
      for (const auto& e : els) {
        list.push_back(read_element(e, points, "symmetry"));
        nels.push_back(Json{list.back().sign, list.back().perm.str(), list.back().phase.str()});
      }
      r.finish();
      try {
        cfg.spec.symmetry = group::TwistedSubgroup(name, list);
      } catch (const Error& e) {
        r.fail(e.what());
      }
      norm["symmetry"] = Json{{"name", name}, {"elements", nels}};
    }
  }

  // ---- envelope
  {
    auto& env = cfg.spec.envelope;
    Json ne;
    Json src = top.has("envelope") ? doc.at("envelope")
               : cfg.model.preset == "vdp"  ? Json{{"kind", "power"}, {"coefficient", 1.0}, {"exponent", 2.0}}
               : cfg.model.preset == "cube" ? Json{{"kind", "derived"}}
                                            : Json();
    if (src.is_null()) throw ConfigError("envelope: required for explicit models");
    Reader r(src, "envelope");
    const std::string kind = r.string("kind");
    ne["kind"] = kind;
    using K = certifier::NonlinearEnvelope::Kind;
    if (kind == "power") {
      env.kind = K::power;
      env.coefficient = r.number("coefficient", 1.0);
      env.exponent = r.number("exponent", 2.0);
      ne["coefficient"] = env.coefficient;
      ne["exponent"] = env.exponent;
    } else if (kind == "polynomial") {
      env.kind = K::polynomial;
      const Json& c = r.get("coefficients");
      if (!c.is_array()) r.fail("'coefficients' must be an array");
      for (const auto& x : c) {
        if (!x.is_number()) r.fail("'coefficients' must be numbers");
        env.coefficients.push_back(x.get<double>());
      }
      ne["coefficients"] = env.coefficients;
    } else if (kind == "table") {
      env.kind = K::table;
      const Json& pts = r.get("points");
      if (!pts.is_array()) r.fail("'points' must be an array of [s, g] pairs");
      Json np = Json::array();
      for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          r.fail("'points' must be an array of [s, g] pairs");
        env.table.emplace_back(p[0].get<double>(), p[1].get<double>());
        np.push_back({env.table.back().first, env.table.back().second});
      }
      ne["points"] = np;
    } else if (kind == "explicit") {
      env.kind = K::explicit_bound;
      const Json& ps = r.get("pieces");
      if (!ps.is_array()) r.fail("'pieces' must be an array");
      Json np = Json::array();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        Reader pr(ps[i], "envelope.pieces[" + std::to_string(i) + "]");
        certifier::NonlinearEnvelope::Piece piece{pr.number("alpha_lo"), pr.number("alpha_hi"),
                                                  pr.number("N")};
        pr.finish();
        env.pieces.push_back(piece);
        np.push_back(Json{{"alpha_lo", piece.alpha_lo}, {"alpha_hi", piece.alpha_hi}, {"N", piece.n}});
      }
      env.r = r.number("r", 0.0);
      if (r.has("R") && src.at("R").is_string()) {
        if (src.at("R").get<std::string>() != "unbounded") r.fail("'R' must be a number or \"unbounded\"");
        env.R = INFINITY;
      } else {
        env.R = r.number("R");
      }
      ne["pieces"] = np;
      ne["r"] = env.r;
      ne["R"] = std::isinf(env.R) ? Json("unbounded") : Json(env.R);
    } else if (kind == "derived") {
      if (cfg.model.preset != "cube") r.fail("kind 'derived' is only defined for the cube preset");
      // Per oscillator |−(σ/C)u³ + (q/C)u²| ≤ ((|q|s + σs²)/C)|u| for |u| ≤ s = |x|.
      const auto& p = cfg.model.cube;
      env.kind = K::polynomial;
      env.coefficients = {0.0, std::abs(p.q) / p.C, std::abs(p.sigma) / p.C};
    } else {
      r.fail("unknown kind '" + kind + "'");
    }
    r.finish();
    try {
      env.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("envelope: ") + e.what());
    }
    norm["envelope"] = ne;
  }

  norm["alpha_interval"] = {iv[0], iv[1]};
  if (top.has("hopf_hint")) {
    const auto h = top.pair("hopf_hint");
    cfg.spec.hopf_hint = spectral::Point(h[0], h[1]);
    norm["hopf_hint"] = {h[0], h[1]};
  }

  // ---- numeric
  {
    Json src = top.has("numeric") ? doc.at("numeric") : Json::object();
    Reader r(src, "numeric");
    Json nn;
    try {
      cfg.spec.mode = estimator::parse_norm_mode(r.string("norm_mode", "frobenius"));
    } catch (const Error& e) {
      r.fail(e.what());
    }
    cfg.spec.tol.m_rel_tol = r.number("m_rel_tol", 1e-6);
    cfg.spec.tol.axis_grid = r.integer("axis_grid", 400);
    cfg.spec.tol.equivariance = r.number("equivariance_tol", 1e-10);
    if (!(cfg.spec.tol.m_rel_tol > 0) || cfg.spec.tol.axis_grid < 8 || !(cfg.spec.tol.equivariance > 0))
      r.fail("tolerances must be positive and axis_grid >= 8");
    nn["norm_mode"] = estimator::to_string(cfg.spec.mode);
    nn["m_rel_tol"] = cfg.spec.tol.m_rel_tol;
    nn["axis_grid"] = cfg.spec.tol.axis_grid;
    nn["equivariance_tol"] = cfg.spec.tol.equivariance;

    auto& d = cfg.spec.domain;
    Json dsrc = r.has("domain") ? src.at("domain") : Json::object();
    Reader dr(dsrc, "numeric.domain");
    d.kind = dr.string("strategy", cfg.model.preset == "vdp" ? "level-curve" : "disk");
    if (d.kind != "disk" && d.kind != "level-curve")
      dr.fail("'strategy' must be \"disk\" or \"level-curve\"");
    Json nd;
    nd["strategy"] = d.kind;
    if (d.kind == "disk") {
      d.radius = dr.number("radius", d.radius);
      d.disk_segments = dr.integer("segments", d.disk_segments);
      if (!(d.radius > 0) || d.disk_segments < 8) dr.fail("radius must be positive, segments >= 8");
      nd["radius"] = d.radius;
      nd["segments"] = d.disk_segments;
    } else {
      d.grid = dr.integer("grid", d.grid);
      d.window_factor = dr.number("window_factor", d.window_factor);
      d.level_offset = dr.number("level_offset", d.level_offset);
      if (d.grid < 11 || !(d.window_factor > 0) || !(d.level_offset > 0))
        dr.fail("grid >= 11, window_factor > 0 and level_offset > 0 required");
      nd["grid"] = d.grid;
      nd["window_factor"] = d.window_factor;
      nd["level_offset"] = d.level_offset;
      if (dr.has("level")) {
        d.level = dr.number("level");
        nd["level"] = *d.level;
      }
      if (dr.has("segment")) {
        const auto s = dr.pair("segment");
        if (!(0 < s[0] && s[0] < s[1])) dr.fail("'segment' must satisfy 0 < lo < hi");
        d.segment_lo = s[0];
        d.segment_hi = s[1];
        nd["segment"] = {s[0], s[1]};
      }
    }
    dr.finish();
    nn["domain"] = nd;
    r.finish();
    norm["numeric"] = nn;
  }

  // ---- scan
  {
    Json src = top.has("scan") ? doc.at("scan") : Json::object();
    Reader r(src, "scan");
    auto& s = cfg.scan;
    s.alpha = r.has("alpha") ? r.pair("alpha") : iv;
    if (r.has("beta")) s.beta = r.pair("beta");
    s.n_alpha = r.integer("n_alpha", s.n_alpha);
    s.n_beta = r.integer("n_beta", s.n_beta);
    if (!(s.alpha[0] < s.alpha[1]) || !(0 < s.beta[0] && s.beta[0] < s.beta[1]) || s.n_alpha < 2 ||
        s.n_beta < 2)
      r.fail("scan ranges must be increasing, beta > 0, and at least 2 nodes per axis");
    r.finish();
    norm["scan"] = Json{{"alpha", {s.alpha[0], s.alpha[1]}},
                        {"beta", {s.beta[0], s.beta[1]}},
                        {"n_alpha", s.n_alpha},
                        {"n_beta", s.n_beta}};
  }

  // ---- oracle
  {
    Json src = top.has("oracle") ? doc.at("oracle") : Json::object();
    Reader r(src, "oracle");
    auto& o = cfg.oracle;
    o.alpha_start = r.number("alpha_start", cfg.spec.hopf_hint ? cfg.spec.hopf_hint->x() : 0.5 * (iv[0] + iv[1]));
    o.alpha_min = r.number("alpha_min", iv[0]);
    o.alpha_max = r.number("alpha_max", iv[1]);
    if (r.has("amplitude_min")) o.amplitude_min = r.number("amplitude_min");
    if (r.has("amplitude_max")) o.amplitude_max = r.number("amplitude_max");
    r.finish();
    Json no;
    no["alpha_start"] = o.alpha_start;
    no["alpha_min"] = o.alpha_min;
    no["alpha_max"] = o.alpha_max;
    if (o.amplitude_min) no["amplitude_min"] = *o.amplitude_min;
    if (o.amplitude_max) no["amplitude_max"] = *o.amplitude_max;
    norm["oracle"] = no;
  }

  // ---- output
  {
    Json src = top.has("output") ? doc.at("output") : Json::object();
    Reader r(src, "output");
    Json nout;
    auto path = [&](const char* key, const char* dflt, std::filesystem::path& dst) {
      const std::string v = r.string(key, dflt);
      nout[key] = v;
      const std::filesystem::path p(v);
      dst = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    };
    path("certificate", "certificate.json", cfg.output.certificate);
    path("m_grid", "m_grid.csv", cfg.output.m_grid);
    path("polygon", "domain.csv", cfg.output.polygon);
    path("contour", "contour.csv", cfg.output.contour);
    path("trace", "trace.csv", cfg.output.trace);
    r.finish();
    norm["output"] = nout;
  }

  top.finish();
  cfg.normalized = norm;
  return cfg;
}

Config load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config '" + file.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    throw ConfigError("config '" + file.string() + "' is not valid JSON: " + msg);
  }
  return parse(doc, file.parent_path());
}

std::vector<std::string> example_names() { return {"vdp", "cube-hopf", "cube-coupling"}; }

Json example(std::string_view name) {
  Json doc;
  if (name == "vdp") {
    doc = Json::parse(R"({
      "model": {"preset": "vdp"},
      "symmetry": "trivial",
      "envelope": {"kind": "power", "coefficient": 1.0, "exponent": 2.0},
      "alpha_interval": [-1.0, 1.0],
      "numeric": {"norm_mode": "frobenius", "domain": {"strategy": "level-curve"}},
      "scan": {"alpha": [-0.6, 0.6], "beta": [0.3, 1.5], "n_alpha": 121, "n_beta": 121},
      "oracle": {"alpha_start": 0.01, "amplitude_min": 0.04, "amplitude_max": 0.35,
                 "alpha_min": -0.2, "alpha_max": 0.2},
      "output": {"certificate": "vdp.cert.json", "m_grid": "vdp_m_grid.csv",
                 "polygon": "vdp_domain.csv", "contour": "vdp_contour.csv", "trace": "vdp_trace.csv"}
    })");
  } else if (name == "cube-hopf") {
    // 𝒞 = 5/3: ρ = 0.3; α₂^h = 1.1 with ω = 1/2.
    doc = Json::parse(R"({
      "model": {"preset": "cube", "R": 1.0, "L": 2.0, "C": 1.0, "rho": 0.3, "sigma": 1.0, "q": 0.0,
                "parameter": "alpha"},
      "group": {"preset": "Z2xO4"},
      "symmetry": "+D4d",
      "envelope": {"kind": "derived"},
      "alpha_interval": [1.01, 1.19],
      "hopf_hint": [1.1, 0.5],
      "numeric": {"norm_mode": "frobenius", "domain": {"strategy": "disk", "radius": 0.075}},
      "scan": {"alpha": [1.01, 1.19], "beta": [0.2, 0.8], "n_alpha": 61, "n_beta": 61},
      "oracle": {"alpha_start": 1.1005, "amplitude_min": 0.005, "amplitude_max": 0.12,
                 "alpha_min": 1.01, "alpha_max": 1.19},
      "output": {"certificate": "cube_hopf.cert.json", "m_grid": "cube_hopf_m_grid.csv",
                 "polygon": "cube_hopf_domain.csv", "contour": "cube_hopf_contour.csv",
                 "trace": "cube_hopf_trace.csv"}
    })");
  } else if (name == "cube-coupling") {
    // α = RC/L fixed, ρ the parameter; every block is at its Hopf point at ρ = 0.
    doc = Json::parse(R"({
      "model": {"preset": "cube", "R": 1.0, "L": 2.0, "C": 1.0, "rho": 0.3, "sigma": 1.0, "q": 0.0,
                "parameter": "rho", "alpha": 0.5},
      "group": {"preset": "Z2xO4"},
      "symmetry": "-S4-bar",
      "envelope": {"kind": "derived"},
      "alpha_interval": [-0.1, 0.1],
      "hopf_hint": [0.0, 0.5],
      "numeric": {"norm_mode": "frobenius", "domain": {"strategy": "disk", "radius": 0.05}},
      "scan": {"alpha": [-0.1, 0.1], "beta": [0.2, 0.8], "n_alpha": 41, "n_beta": 61},
      "oracle": {"alpha_start": -0.0003, "amplitude_min": 0.005, "amplitude_max": 0.2,
                 "alpha_min": -0.1, "alpha_max": 0.1},
      "output": {"certificate": "cube_coupling.cert.json", "m_grid": "cube_coupling_m_grid.csv",
                 "polygon": "cube_coupling_domain.csv", "contour": "cube_coupling_contour.csv",
                 "trace": "cube_coupling_trace.csv"}
    })");
  } else {
    throw ConfigError("unknown example '" + std::string(name) + "' (expected vdp, cube-hopf or cube-coupling)");
  }
  return parse(doc).normalized;
}

}  // namespace hopfcert::config
