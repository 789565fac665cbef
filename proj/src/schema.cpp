#include "dbn/schema.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace dbn {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Schema, "schema violation at " + path + ": " + msg);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
  }
}

std::optional<DensityKind> density_kind(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(DensityKind::Case8); ++i) {
    const auto k = static_cast<DensityKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::set<std::string> density_params(DensityKind k) {
  switch (k) {
    case DensityKind::RiemannPhi: return {"K"};
    case DensityKind::Gaussian: return {"K", "b0"};
    case DensityKind::ExpPower: return {"K", "q"};
    case DensityKind::CoshExp: return {"K", "a"};
    case DensityKind::DBNClass: return {"K", "m", "alpha", "beta", "a_j"};
    case DensityKind::PolyaQuartic: return {"K", "a", "b", "c", "q"};
    case DensityKind::AbsExpGaussian: return {"K", "a", "lambda"};
    case DensityKind::PolyDecayGaussian: return {"K", "theta", "lambda"};
    case DensityKind::SexticExp: return {"K", "a", "b", "c"};
    case DensityKind::Case6: return {"K"};
    case DensityKind::Case8: return {};
  }
  return {};
}

DensitySpec parse_density(DensityKind kind, const json& params, const std::string& path) {
  DensitySpec d;
  d.kind = kind;
  if (kind == DensityKind::Gaussian) d.K = 0;  // filled from b0 below unless given
  if (params.is_null()) {
    if (kind == DensityKind::Gaussian) d.K = std::sqrt(d.b0 / M_PI);
    return d;
  }
  only_keys(params, density_params(kind), path);
  auto num = [&](const char* key, double& out) {
    if (params.contains(key)) out = number(params[key], path + "." + key);
  };
  auto in = [&](const char* key, int& out) {
    if (params.contains(key)) out = integer(params[key], path + "." + key);
  };
  num("K", d.K);
  num("b0", d.b0);
  in("q", d.q);
  num("a", d.a);
  num("b", d.b);
  num("c", d.c);
  in("m", d.m);
  num("alpha", d.alpha);
  num("beta", d.beta);
  num("lambda", d.lambda);
  num("theta", d.theta);
  if (params.contains("a_j")) {
    const json& a = params["a_j"];
    if (!a.is_array()) fail(path + ".a_j", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) d.a_j.push_back(number(a[i], path + ".a_j[" + std::to_string(i) + "]"));
  }
  if (kind == DensityKind::Gaussian && !params.contains("K")) d.K = std::sqrt(d.b0 / M_PI);
  return d;
}

std::vector<Atom> parse_atoms(const json& a, const std::string& path) {
  if (!a.is_array()) fail(path, "expected an array of [t, w] pairs");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 2) fail(p, "expected [t, w]");
    out.push_back({number(a[i][0], p + "[0]"), number(a[i][1], p + "[1]")});
  }
  return out;
}

}  // namespace

EvenMeasure parse_measure(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const json& kj = member(j, "kind", path);
  if (!kj.is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = kj.get<std::string>();
  const json params = j.contains("params") ? j["params"] : json();
  EvenMeasure m;
  try {
    if (kind == "SymmetricAtoms") {
      only_keys(j, {"kind", "atoms"}, path);
      m = EvenMeasure::symmetric_atoms(parse_atoms(member(j, "atoms", path), path + ".atoms"));
    } else if (kind == "NamedDensity") {
      only_keys(j, {"kind", "params"}, path);
      const json& dj = member(params, "density", path + ".params");
      if (!dj.is_string()) fail(path + ".params.density", "expected a string");
      const auto dk = density_kind(dj.get<std::string>());
      if (!dk) fail(path + ".params.density", "unknown density kind \"" + dj.get<std::string>() + "\"");
      json rest = params;
      rest.erase("density");
      m = EvenMeasure::named(parse_density(*dk, rest.empty() ? json() : rest, path + ".params"));
    } else if (kind == "GaussianConvolution") {
      only_keys(j, {"kind", "params", "base", "atoms"}, path);
      only_keys(params, {"b0"}, path + ".params");
      const double b0 = number(member(params, "b0", path + ".params"), path + ".params.b0");
      EvenMeasure base;
      if (j.contains("base")) {
        base = parse_measure(j["base"], path + ".base");
      } else {
        base = EvenMeasure::symmetric_atoms(parse_atoms(member(j, "atoms", path), path + ".atoms"));
      }
      m = convolve_gaussian(base, b0);
    } else if (kind == "MultipliedMeasure") {
      only_keys(j, {"kind", "params", "base"}, path);
      only_keys(params, {"lambda", "normalized"}, path + ".params");
      const double lambda = number(member(params, "lambda", path + ".params"), path + ".params.lambda");
      const bool normalized = params.contains("normalized") && boolean(params["normalized"], path + ".params.normalized");
      m = apply_gaussian_multiplier(parse_measure(member(j, "base", path), path + ".base"), lambda, normalized);
    } else if (const auto dk = density_kind(kind)) {
      only_keys(j, {"kind", "params"}, path);
      m = EvenMeasure::named(parse_density(*dk, params, path + ".params"));
    } else {
      throw Error(ErrorCode::UnknownKind, "schema violation at " + path + ".kind: unknown measure kind \"" + kind + "\"");
    }
    m.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::RangeError) fail(path, e.what());
    throw;
  }
  return m;
}

json measure_to_json(const EvenMeasure& m) {
  json j;
  switch (m.kind) {
    case MeasureKind::SymmetricAtoms: {
      j["kind"] = "SymmetricAtoms";
      j["atoms"] = json::array();
      for (const auto& a : m.atoms) j["atoms"].push_back({a.t, a.w});
      break;
    }
    case MeasureKind::NamedDensity: {
      const DensitySpec& d = m.density;
      j["kind"] = "NamedDensity";
      json p;
      p["density"] = to_string(d.kind);
      const auto keys = density_params(d.kind);
      auto put = [&](const char* k, auto v) {
        if (keys.count(k)) p[k] = v;
      };
      put("K", d.K);
      put("b0", d.b0);
      put("q", d.q);
      put("a", d.a);
      put("b", d.b);
      put("c", d.c);
      put("m", d.m);
      put("alpha", d.alpha);
      put("beta", d.beta);
      put("lambda", d.lambda);
      put("theta", d.theta);
      put("a_j", d.a_j);
      j["params"] = p;
      break;
    }
    case MeasureKind::GaussianConvolution: {
      j["kind"] = "GaussianConvolution";
      j["params"] = {{"b0", m.b0}};
      j["atoms"] = json::array();
      for (const auto& a : m.atoms) j["atoms"].push_back({a.t, a.w});
      break;
    }
    case MeasureKind::MultipliedMeasure: {
      j["kind"] = "MultipliedMeasure";
      j["params"] = {{"lambda", m.lambda}, {"normalized", m.normalized}};
      j["base"] = measure_to_json(*m.base);
      break;
    }
  }
  return j;
}

std::optional<Rectangle> parse_window(const json& j, const std::string& path) {
  if (!j.contains("window")) return std::nullopt;
  const json& w = j["window"];
  const std::string p = path + ".window";
  if (!w.is_array() || w.size() != 4) fail(p, "expected [re_min, re_max, im_min, im_max]");
  Rectangle r{number(w[0], p + "[0]"), number(w[1], p + "[1]"), number(w[2], p + "[2]"), number(w[3], p + "[3]")};
  try {
    r.validate();
  } catch (const Error& e) {
    fail(p, e.what());
  }
  return r;
}

SpinSystem parse_system(const json& j, const std::string& path) {
  only_keys(j, {"n", "J", "beta", "field_weights", "site", "search_mode", "window"}, path);
  SpinSystem s;
  s.n = integer(member(j, "n", path), path + ".n");
  if (s.n < 1) fail(path + ".n", "must be >= 1");
  if (s.n > kMaxSpins) throw Error(ErrorCode::SizeLimit, "schema violation at " + path + ".n: exceeds " + std::to_string(kMaxSpins));
  if (j.contains("beta")) s.beta = number(j["beta"], path + ".beta");
  if (j.contains("search_mode")) s.search_mode = boolean(j["search_mode"], path + ".search_mode");
  s.J.assign(static_cast<std::size_t>(s.n) * s.n, 0.0);
  if (j.contains("J")) {
    const json& J = j["J"];
    if (!J.is_array() || J.size() != static_cast<std::size_t>(s.n)) fail(path + ".J", "expected an n x n array");
    for (int i = 0; i < s.n; ++i) {
      const std::string pi = path + ".J[" + std::to_string(i) + "]";
      if (!J[i].is_array() || J[i].size() != static_cast<std::size_t>(s.n)) fail(pi, "expected a row of length n");
      for (int k = 0; k < s.n; ++k) s.J[static_cast<std::size_t>(i) * s.n + k] = number(J[i][k], pi + "[" + std::to_string(k) + "]");
    }
  }
  if (j.contains("field_weights")) {
    const json& f = j["field_weights"];
    if (!f.is_array() || f.size() != static_cast<std::size_t>(s.n)) fail(path + ".field_weights", "expected n numbers");
    for (int i = 0; i < s.n; ++i) s.field_weights.push_back(number(f[i], path + ".field_weights[" + std::to_string(i) + "]"));
  }
  if (j.contains("site")) {
    const json& sj = j["site"];
    const std::string p = path + ".site";
    only_keys(sj, {"kind", "a", "b", "c"}, p);
    const json& kj = member(sj, "kind", p);
    if (!kj.is_string()) fail(p + ".kind", "expected a string");
    const std::string k = kj.get<std::string>();
    if (k == "PlusMinusOne") {
      s.site.kind = SiteKind::PlusMinusOne;
    } else if (k == "Phi4") {
      s.site.kind = SiteKind::Phi4;
    } else if (k == "Phi6") {
      s.site.kind = SiteKind::Phi6;
    } else {
      throw Error(ErrorCode::UnknownKind, "schema violation at " + p + ".kind: unknown site kind \"" + k + "\"");
    }
    if (sj.contains("a")) s.site.a = number(sj["a"], p + ".a");
    if (sj.contains("b")) s.site.b = number(sj["b"], p + ".b");
    if (sj.contains("c")) s.site.c = number(sj["c"], p + ".c");
  }
  parse_window(j, path);
  try {
    s.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(path, e.what());
    throw;
  }
  return s;
}

FlowState parse_flow_init(const json& j, const std::string& path) {
  only_keys(j, {"t", "positions"}, path);
  const json& p = member(j, "positions", path);
  if (!p.is_array() || p.empty()) fail(path + ".positions", "expected a non-empty array");
  std::vector<double> x;
  for (std::size_t i = 0; i < p.size(); ++i) x.push_back(number(p[i], path + ".positions[" + std::to_string(i) + "]"));
  const double t = j.contains("t") ? number(j["t"], path + ".t") : 0.0;
  try {
    return make_state(t, x);
  } catch (const Error& e) {
    fail(path + ".positions", e.what());
  }
}

json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + file);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, file + ": " + e.what());
  }
}

json to_json(const TailSet& t) {
  json j;
  switch (t.shape) {
    case TailSet::Shape::AllReals: j["shape"] = "AllReals"; break;
    case TailSet::Shape::OpenUpTo: j["shape"] = "OpenUpTo"; break;
    case TailSet::Shape::ClosedUpTo: j["shape"] = "ClosedUpTo"; break;
  }
  if (t.shape != TailSet::Shape::AllReals) j["b0"] = t.b0;
  j["text"] = t.describe();
  return j;
}

json to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Rectangle& r) { return json::array({r.re_min, r.re_max, r.im_min, r.im_max}); }

json to_json(const RealityVerdict& v) {
  json j;
  j["window"] = to_json(v.window);
  j["window_relative"] = true;
  j["all_real"] = v.all_real;
  j["window_count"] = v.window_count;
  j["real_count"] = v.real_count;
  j["margin"] = v.margin;
  j["worst_offender"] = v.worst_offender ? to_json(*v.worst_offender) : json();
  j["offenders"] = json::array();
  for (const auto& z : v.offenders) {
    j["offenders"].push_back({{"z", to_json(z.z())}, {"multiplicity", z.multiplicity}, {"residual", z.residual}});
  }
  j["real_zeros"] = json::array();
  for (const auto& z : v.real_zeros) {
    j["real_zeros"].push_back(
        {{"x", z.z().real()}, {"multiplicity", z.multiplicity}, {"residual", z.residual}, {"cluster", z.cluster}});
  }
  j["symmetry_ok"] = v.symmetry_ok;
  j["warnings"] = v.warnings;
  return j;
}

}  // namespace dbn
