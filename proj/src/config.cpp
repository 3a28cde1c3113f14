// JSON run-configuration parsing, validation, and canonical serialization.
#include "nlh/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

namespace nlh::config {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

using FieldHandler = std::function<void(const json&, const std::string&)>;

// Dispatch each key of an object to its named handler; unknown keys are
// rejected with their full path.
void walk_object(const json& j, const std::string& path,
                 std::initializer_list<std::pair<const char*, FieldHandler>> fields) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : fields) {
      if (key == f.first) {
        f.second(value, join(path, key));
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, key), "unknown key");
  }
}

void parse_grid(const json& j, const std::string& path, GridSpec& g) {
  walk_object(j, path,
              {{"min", [&](const json& v, const std::string& p) { g.min = get_num(v, p); }},
               {"max", [&](const json& v, const std::string& p) { g.max = get_num(v, p); }},
               {"n", [&](const json& v, const std::string& p) { g.n = get_int(v, p); }}});
}

void check_positive(double v, const std::string& path) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(path, "must be positive");
}

void check_finite(double v, const std::string& path) {
  if (!std::isfinite(v)) fail(path, "must be finite");
}

void validate_grid(const GridSpec& g, const std::string& path) {
  if (g.n < 2) fail(path + ".n", "must be >= 2 (got " + std::to_string(g.n) + ")");
  check_finite(g.min, path + ".min");
  check_finite(g.max, path + ".max");
  if (!(g.max > g.min)) fail(path + ".max", "must exceed " + path + ".min");
}

}  // namespace

std::vector<double> grid_points(const GridSpec& g) {
  if (g.n < 2) throw ConfigError("grid_points: n must be >= 2");
  std::vector<double> pts(g.n);
  const double h = (g.max - g.min) / (g.n - 1);
  for (int i = 0; i < g.n; ++i) pts[i] = g.min + i * h;
  pts.back() = g.max;
  return pts;
}

scattering::Profile make_profile(const ProfileSpec& p) {
  if (p.kind == "gaussian")
    return scattering::gaussian_profile(p.amplitude, p.width, p.center, p.halfwidth);
  if (p.kind == "sech")
    return scattering::sech_profile(p.amplitude, p.width, p.center, p.halfwidth);
  if (p.kind == "table") return scattering::table_profile_from_file(p.table_path);
  throw ConfigError("profile.kind: must be one of gaussian, sech, table (got \"" +
                    p.kind + "\")");
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("output.format: must be \"csv\" or \"json\" (got \"" + s + "\")");
}

void validate(const RunConfig& cfg) {
  if (cfg.schema_version != kSchemaVersion)
    fail("schema_version",
         "unsupported version " + std::to_string(cfg.schema_version) +
             " (expected " + std::to_string(kSchemaVersion) + ")");
  check_finite(cfg.alpha, "alpha");
  check_finite(cfg.beta, "beta");

  const ProfileSpec& p = cfg.profile;
  if (p.kind != "gaussian" && p.kind != "sech" && p.kind != "table")
    fail("profile.kind", "must be one of gaussian, sech, table (got \"" + p.kind + "\")");
  if (p.kind == "table") {
    if (p.table_path.empty()) fail("profile.table_path", "required for the table kind");
  } else {
    check_finite(p.amplitude, "profile.amplitude");
    check_positive(p.width, "profile.width");
    check_finite(p.center, "profile.center");
    if (p.halfwidth < 0.0 || !std::isfinite(p.halfwidth))
      fail("profile.halfwidth", "must be >= 0 (0 selects the default truncation)");
  }

  validate_grid(cfg.lambda_grid, "lambda_grid");
  validate_grid(cfg.x_domain, "x_domain");

  check_positive(cfg.tolerances.ode, "tolerances.ode");
  check_positive(cfg.tolerances.quad, "tolerances.quad");
  check_positive(cfg.tolerances.linear, "tolerances.linear");

  if (!(cfg.eps_disk > 0.0) || !(cfg.eps_disk < 1.0))
    fail("eps_disk", "must lie in (0, 1): it is a fraction of the stationary-point half-separation");
  if (cfg.threads < 0) fail("threads", "must be >= 0 (0 = hardware concurrency)");
  if (!cfg.rays.empty() && cfg.beta == 0.0)
    fail("beta", "must be nonzero when rays are present (the phase needs two stationary points)");

  for (std::size_t i = 0; i < cfg.rays.size(); ++i) {
    const std::string rp = "rays[" + std::to_string(i) + "]";
    const RaySpec& r = cfg.rays[i];
    check_finite(r.xi, rp + ".xi");
    const double disc = cfg.alpha * cfg.alpha - 3.0 * cfg.beta * r.xi;
    if (!(disc > 0.0))
      fail(rp + ".xi", "stationary-point discriminant alpha^2 - 3 beta xi = " +
                           std::to_string(disc) + " must be positive");
    for (std::size_t k = 0; k < r.t_values.size(); ++k) {
      const double t = r.t_values[k];
      if (!(t >= 0.0) || !std::isfinite(t))
        fail(rp + ".t[" + std::to_string(k) + "]", "must be >= 0");
    }
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  bool saw_version = false;

  auto num_field = [](double& dst) {
    return [&dst](const json& v, const std::string& p) { dst = get_num(v, p); };
  };
  auto str_field = [](std::string& dst) {
    return [&dst](const json& v, const std::string& p) { dst = get_str(v, p); };
  };

  walk_object(
      j, "",
      {{"schema_version",
        [&](const json& v, const std::string& p) {
          cfg.schema_version = get_int(v, p);
          saw_version = true;
        }},
       {"alpha", num_field(cfg.alpha)},
       {"beta", num_field(cfg.beta)},
       {"profile",
        [&](const json& v, const std::string& p) {
          walk_object(v, p,
                      {{"kind", str_field(cfg.profile.kind)},
                       {"amplitude", num_field(cfg.profile.amplitude)},
                       {"width", num_field(cfg.profile.width)},
                       {"center", num_field(cfg.profile.center)},
                       {"halfwidth", num_field(cfg.profile.halfwidth)},
                       {"table_path", str_field(cfg.profile.table_path)}});
        }},
       {"lambda_grid",
        [&](const json& v, const std::string& p) { parse_grid(v, p, cfg.lambda_grid); }},
       {"rays",
        [&](const json& v, const std::string& p) {
          if (!v.is_array()) fail(p, "expected an array");
          cfg.rays.clear();
          for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string rp = p + "[" + std::to_string(i) + "]";
            RaySpec ray;
            walk_object(v[i], rp,
                        {{"xi", num_field(ray.xi)},
                         {"t",
                          [&](const json& tv, const std::string& tp) {
                            if (!tv.is_array()) fail(tp, "expected an array");
                            ray.t_values.clear();
                            for (std::size_t k = 0; k < tv.size(); ++k)
                              ray.t_values.push_back(
                                  get_num(tv[k], tp + "[" + std::to_string(k) + "]"));
                          }}});
            cfg.rays.push_back(std::move(ray));
          }
        }},
       {"x_domain",
        [&](const json& v, const std::string& p) { parse_grid(v, p, cfg.x_domain); }},
       {"tolerances",
        [&](const json& v, const std::string& p) {
          walk_object(v, p,
                      {{"ode", num_field(cfg.tolerances.ode)},
                       {"quad", num_field(cfg.tolerances.quad)},
                       {"linear", num_field(cfg.tolerances.linear)}});
        }},
       {"eps_disk", num_field(cfg.eps_disk)},
       {"output",
        [&](const json& v, const std::string& p) {
          walk_object(v, p,
                      {{"dir", str_field(cfg.output.dir)},
                       {"format",
                        [&](const json& fv, const std::string& fp) {
                          const std::string s = get_str(fv, fp);
                          if (s != "csv" && s != "json")
                            fail(fp, "must be \"csv\" or \"json\" (got \"" + s + "\")");
                          cfg.output.format = format_from_string(s);
                        }}});
        }},
       {"threads",
        [&](const json& v, const std::string& p) { cfg.threads = get_int(v, p); }}});

  if (!saw_version) fail("schema_version", "required field is missing");
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  json jp;
  jp["kind"] = cfg.profile.kind;
  jp["amplitude"] = cfg.profile.amplitude;
  jp["width"] = cfg.profile.width;
  jp["center"] = cfg.profile.center;
  jp["halfwidth"] = cfg.profile.halfwidth;
  jp["table_path"] = cfg.profile.table_path;
  j["profile"] = std::move(jp);
  auto grid_json = [](const GridSpec& g) {
    json jg;
    jg["min"] = g.min;
    jg["max"] = g.max;
    jg["n"] = g.n;
    return jg;
  };
  j["lambda_grid"] = grid_json(cfg.lambda_grid);
  json rays = json::array();
  for (const RaySpec& r : cfg.rays) {
    json jr;
    jr["xi"] = r.xi;
    jr["t"] = r.t_values;
    rays.push_back(std::move(jr));
  }
  j["rays"] = std::move(rays);
  j["x_domain"] = grid_json(cfg.x_domain);
  json jt;
  jt["ode"] = cfg.tolerances.ode;
  jt["quad"] = cfg.tolerances.quad;
  jt["linear"] = cfg.tolerances.linear;
  j["tolerances"] = std::move(jt);
  j["eps_disk"] = cfg.eps_disk;
  json jo;
  jo["dir"] = cfg.output.dir;
  jo["format"] = to_string(cfg.output.format);
  j["output"] = std::move(jo);
  j["threads"] = cfg.threads;
  return j.dump(2) + "\n";
}

}  // namespace nlh::config
