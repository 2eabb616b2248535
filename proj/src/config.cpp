#include <json.hpp>

#include "pcband/cli.hpp"
#include "pcband/spectrum.hpp"

namespace pcband {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok)
      throw ValidationError(std::string("unknown key \"") + key + "\" in " +
                            where);
  }
}

double num(const json& obj, const char* where, const char* key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number())
    throw ValidationError(std::string(where) + "." + key + " must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const char* where, const char* key, int dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_integer())
    throw ValidationError(std::string(where) + "." + key +
                          " must be an integer");
  return obj[key].get<int>();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config root must be an object");
  reject_unknown(j, "config",
                 {"dimension", "material", "contrast", "shape", "resolution",
                  "path", "lattice", "bandgap", "oracle", "ball_check"});

  RunConfig cfg;
  cfg.dimension = integer(j, "config", "dimension", 2);
  if (cfg.dimension != 2 && cfg.dimension != 3)
    throw ValidationError("config.dimension must be 2 or 3");

  if (j.contains("material")) {
    const auto& m = j["material"];
    if (!m.is_object()) throw ValidationError("config.material must be an object");
    reject_unknown(m, "material", {"lambda", "mu", "rho"});
    cfg.material.lambda = num(m, "material", "lambda", 1.0);
    cfg.material.mu = num(m, "material", "mu", 1.0);
    cfg.material.rho = num(m, "material", "rho", 1.0);
  }
  if (!validate_convexity(cfg.material, cfg.dimension))
    throw PhysicsError(
        "material violates strong convexity (requires mu > 0 and "
        "d lambda + 2 mu > 0)");
  if (cfg.material.rho <= 0.0)
    throw PhysicsError("material density must be positive");

  if (j.contains("contrast")) {
    const auto& c = j["contrast"];
    if (!c.is_object()) throw ValidationError("config.contrast must be an object");
    reject_unknown(c, "contrast", {"delta", "epsilon", "tau"});
    cfg.delta = num(c, "contrast", "delta", 1e-4);
    if (c.contains("epsilon") && c.contains("tau"))
      throw ValidationError("contrast takes epsilon or tau, not both");
    if (c.contains("tau")) {
      cfg.tau = num(c, "contrast", "tau", 1.0);
      if (cfg.tau <= 0.0) throw ValidationError("contrast.tau must be positive");
      cfg.epsilon = cfg.delta / (cfg.tau * cfg.tau);
    } else {
      cfg.epsilon = num(c, "contrast", "epsilon", cfg.delta);
    }
  }
  const auto contrast = make_contrast(cfg.delta, cfg.epsilon);  // validates
  cfg.tau = contrast.tau;

  // shape; default circle in 2D, sphere in 3D
  if (cfg.dimension == 3) cfg.shape = ShapeSpec::sphere(0.25);
  if (j.contains("shape")) {
    const auto& s = j["shape"];
    if (!s.is_object()) throw ValidationError("config.shape must be an object");
    reject_unknown(s, "shape", {"kind", "radius", "a", "b", "cos", "sin"});
    const std::string kind = s.value("kind", cfg.dimension == 2 ? "circle" : "sphere");
    if (kind == "circle") {
      cfg.shape = ShapeSpec::circle(num(s, "shape", "radius", 0.25));
    } else if (kind == "sphere") {
      cfg.shape = ShapeSpec::sphere(num(s, "shape", "radius", 0.25));
    } else if (kind == "ellipse") {
      cfg.shape = ShapeSpec::ellipse(num(s, "shape", "a", 0.3),
                                     num(s, "shape", "b", 0.2));
    } else if (kind == "curve") {
      auto series = [&](const char* key, int comp) -> std::vector<double> {
        if (!s.contains(key)) return {};
        const auto& arr = s[key];
        if (!arr.is_array() || arr.size() != 2 || !arr[comp].is_array())
          throw ValidationError("shape.cos / shape.sin must be [2][m] arrays");
        return arr[comp].get<std::vector<double>>();
      };
      cfg.shape = ShapeSpec::fourier(series("cos", 0), series("sin", 0),
                                     series("cos", 1), series("sin", 1));
    } else {
      throw ValidationError("shape.kind must be circle, ellipse, curve or sphere");
    }
  }
  if (cfg.shape.dimension() != cfg.dimension)
    throw ValidationError("shape kind is inconsistent with config.dimension");

  cfg.resolution = integer(j, "config", "resolution", 0);
  if (cfg.resolution == 0)
    cfg.resolution = cfg.dimension == 2 ? kDefaultCurveNodes : kDefaultPolarCount;
  if (cfg.resolution < 4) throw ValidationError("config.resolution too small");

  if (j.contains("path")) {
    const auto& p = j["path"];
    if (!p.is_object()) throw ValidationError("config.path must be an object");
    reject_unknown(p, "path", {"samples", "alphas"});
    cfg.path_samples = integer(p, "path", "samples", 0);
    if (p.contains("alphas")) {
      if (!p["alphas"].is_array())
        throw ValidationError("path.alphas must be an array");
      for (const auto& a : p["alphas"]) {
        if (!a.is_array() || static_cast<int>(a.size()) != cfg.dimension)
          throw ValidationError("each path.alphas entry needs d components");
        Vec3 v = Vec3::Zero();
        for (int c = 0; c < cfg.dimension; ++c) v[c] = a[c].get<double>();
        cfg.alphas.push_back(v);
      }
    }
  }
  if (cfg.path_samples == 0) cfg.path_samples = cfg.dimension == 2 ? 32 : 24;

  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    if (!l.is_object()) throw ValidationError("config.lattice must be an object");
    reject_unknown(l, "lattice",
                   {"split_parameter", "fourier_truncation", "spatial_truncation",
                    "target_tol"});
    cfg.lattice.split_parameter = num(l, "lattice", "split_parameter", 0.0);
    cfg.lattice.fourier_truncation = integer(l, "lattice", "fourier_truncation", 12);
    cfg.lattice.spatial_truncation = integer(l, "lattice", "spatial_truncation", 3);
    cfg.lattice.target_tol = num(l, "lattice", "target_tol", 1e-8);
  }

  if (j.contains("bandgap")) {
    const auto& b = j["bandgap"];
    if (!b.is_object()) throw ValidationError("config.bandgap must be an object");
    reject_unknown(b, "bandgap", {"eta", "omega_sharp"});
    if (b.contains("eta")) cfg.bandgap_eta = num(b, "bandgap", "eta", 0.0);
    cfg.omega_sharp = num(b, "bandgap", "omega_sharp", 1.0);
  }

  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    if (!o.is_object()) throw ValidationError("config.oracle must be an object");
    reject_unknown(o, "oracle", {"deltas", "tau", "window", "grid_points"});
    if (o.contains("deltas")) {
      if (!o["deltas"].is_array())
        throw ValidationError("oracle.deltas must be an array");
      cfg.oracle_deltas = o["deltas"].get<std::vector<double>>();
    }
    cfg.oracle_tau = num(o, "oracle", "tau", 1.0);
    if (o.contains("window")) {
      const auto& w = o["window"];
      if (!w.is_array() || w.size() != 2)
        throw ValidationError("oracle.window must be [lo, hi]");
      cfg.oracle_window_lo = w[0].get<double>();
      cfg.oracle_window_hi = w[1].get<double>();
    }
    cfg.oracle_grid_points = integer(o, "oracle", "grid_points", 96);
  }

  if (j.contains("ball_check")) {
    const auto& b = j["ball_check"];
    if (!b.is_object()) throw ValidationError("config.ball_check must be an object");
    reject_unknown(b, "ball_check", {"s_tol", "q_tol"});
    cfg.ball_s_tol = num(b, "ball_check", "s_tol", 1e-6);
    cfg.ball_q_tol = num(b, "ball_check", "q_tol", 1e-5);
  }

  // defaults-expanded echo; nlohmann objects iterate in sorted key order, so
  // the dump (and its hash) is stable
  json echo;
  echo["dimension"] = cfg.dimension;
  echo["material"] = {{"lambda", cfg.material.lambda},
                      {"mu", cfg.material.mu},
                      {"rho", cfg.material.rho}};
  echo["contrast"] = {{"delta", cfg.delta}, {"epsilon", cfg.epsilon},
                      {"tau", cfg.tau}};
  switch (cfg.shape.kind) {
    case ShapeSpec::Kind::Circle:
      echo["shape"] = {{"kind", "circle"}, {"radius", cfg.shape.radius}};
      break;
    case ShapeSpec::Kind::Sphere:
      echo["shape"] = {{"kind", "sphere"}, {"radius", cfg.shape.radius}};
      break;
    case ShapeSpec::Kind::Ellipse:
      echo["shape"] = {{"kind", "ellipse"}, {"a", cfg.shape.ax},
                       {"b", cfg.shape.by}};
      break;
    case ShapeSpec::Kind::FourierCurve:
      echo["shape"] = {{"kind", "curve"},
                       {"cos", {cfg.shape.ccos[0], cfg.shape.ccos[1]}},
                       {"sin", {cfg.shape.csin[0], cfg.shape.csin[1]}}};
      break;
  }
  echo["resolution"] = cfg.resolution;
  json path = {{"samples", cfg.path_samples}};
  if (!cfg.alphas.empty()) {
    json arr = json::array();
    for (const auto& a : cfg.alphas) {
      json row = json::array();
      for (int c = 0; c < cfg.dimension; ++c) row.push_back(a[c]);
      arr.push_back(row);
    }
    path["alphas"] = arr;
  }
  echo["path"] = path;
  echo["lattice"] = {{"split_parameter", cfg.lattice.split_parameter},
                     {"fourier_truncation", cfg.lattice.fourier_truncation},
                     {"spatial_truncation", cfg.lattice.spatial_truncation},
                     {"target_tol", cfg.lattice.target_tol}};
  json gap = {{"omega_sharp", cfg.omega_sharp}};
  if (cfg.bandgap_eta) gap["eta"] = *cfg.bandgap_eta;
  echo["bandgap"] = gap;
  echo["oracle"] = {{"deltas", cfg.oracle_deltas},
                    {"tau", cfg.oracle_tau},
                    {"window", {cfg.oracle_window_lo, cfg.oracle_window_hi}},
                    {"grid_points", cfg.oracle_grid_points}};
  echo["ball_check"] = {{"s_tol", cfg.ball_s_tol}, {"q_tol", cfg.ball_q_tol}};
  cfg.canonical = echo.dump();
  cfg.config_hash = fnv1a(cfg.canonical);
  return cfg;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (dynamic_cast<const PhysicsError*>(&e)) return 3;
  if (dynamic_cast<const GeometryError*>(&e)) return 3;
  if (dynamic_cast<const WindowError*>(&e)) return 3;
  if (dynamic_cast<const SingularityError*>(&e)) return 3;
  if (dynamic_cast<const AccuracyError*>(&e)) return 4;
  return 1;
}

}  // namespace pcband
