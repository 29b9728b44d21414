// Command-line front end for the velspace library: density evaluation,
// boosts, invariant geometry, sampling, and the verification suites.
// All results go to stdout (JSON by default, CSV on request); diagnostics go
// to stderr. Exit codes: 0 success, 1 invalid input or usage, 2 verification
// failure.
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "velspace/error.hpp"
#include "velspace/geometry.hpp"
#include "velspace/kinematics.hpp"
#include "velspace/measures.hpp"
#include "velspace/sampler.hpp"
#include "velspace/velocity.hpp"
#include "velspace/verify.hpp"

namespace {

using velspace::CartesianVelocity;
using velspace::Model;
using velspace::PolarVelocity;

/// Full round-trip decimal formatting: 17 significant digits.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Flat ordered key->value record, serialized as JSON or a CSV header+row.
class Record {
 public:
  using Value = std::variant<double, std::vector<double>, std::string, bool, long long,
                             unsigned long long>;

  void add(std::string key, Value value) { fields_.emplace_back(std::move(key), std::move(value)); }

  std::string json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ", ";
      out += quote(fields_[i].first) + ": " + value_json(fields_[i].second);
    }
    return out + "}";
  }

  std::string csv() const {
    std::string header, row;
    for (const auto& [key, value] : fields_) {
      if (const auto* vec = std::get_if<std::vector<double>>(&value)) {
        for (std::size_t i = 0; i < vec->size(); ++i) {
          append_cell(header, key + "_" + std::to_string(i));
          append_cell(row, fmt((*vec)[i]));
        }
      } else {
        append_cell(header, key);
        append_cell(row, value_csv(value));
      }
    }
    return header + "\n" + row + "\n";
  }

 private:
  static void append_cell(std::string& line, const std::string& cell) {
    if (!line.empty()) line += ",";
    line += cell;
  }

  static std::string value_json(const Value& value) {
    if (const auto* d = std::get_if<double>(&value)) return fmt(*d);
    if (const auto* vec = std::get_if<std::vector<double>>(&value)) {
      std::string out = "[";
      for (std::size_t i = 0; i < vec->size(); ++i) {
        if (i) out += ", ";
        out += fmt((*vec)[i]);
      }
      return out + "]";
    }
    if (const auto* s = std::get_if<std::string>(&value)) return quote(*s);
    if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
    if (const auto* n = std::get_if<long long>(&value)) return std::to_string(*n);
    return std::to_string(std::get<unsigned long long>(value));
  }

  static std::string value_csv(const Value& value) {
    if (const auto* d = std::get_if<double>(&value)) return fmt(*d);
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
    if (const auto* n = std::get_if<long long>(&value)) return std::to_string(*n);
    return std::to_string(std::get<unsigned long long>(value));
  }

  std::vector<std::pair<std::string, Value>> fields_;
};

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("VELSPACE_SEED");
  if (!raw || !*raw) return 0;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0') {
    throw velspace::DomainError("VELSPACE_SEED must be a nonnegative integer");
  }
  return value;
}

Model parse_model(const std::string& name) {
  if (name == "classical") return Model::Classical;
  if (name == "relativistic") return Model::Relativistic;
  throw velspace::DomainError("unknown model '" + name + "' (classical|relativistic)");
}

void require_values(const std::vector<double>& point, std::size_t n, const char* what) {
  if (point.size() != n) {
    throw velspace::DomainError(std::string(what) + ": expected " + std::to_string(n) +
                                " value(s), got " + std::to_string(point.size()));
  }
}

void emit(const Record& record, const std::string& format) {
  if (format == "csv") {
    std::cout << record.csv();
  } else {
    std::cout << record.json() << "\n";
  }
}

// --- subcommand state -----------------------------------------------------

struct Options {
  std::string model = "relativistic";
  std::string coords = "cartesian";
  std::string frame = "lorentz";
  std::string format = "json";
  std::string suite = "all";
  std::vector<double> point;
  double alpha = 0.0;
  double scale = 1.0;
  double beta_max = 0.9;
  long long n = 10;
  long trials = 10000;
  double tol = 0.0;
  bool tol_set = false;
  std::uint64_t seed = 0;
};

int run_prior(const Options& opt) {
  const Model model = parse_model(opt.model);
  Record record;
  record.add("model", opt.model);
  record.add("coords", opt.coords);
  velspace::DensityValue density{0.0, velspace::Parametrization::Cartesian3D, opt.scale};
  if (opt.coords == "cartesian") {
    require_values(opt.point, 3, "--point");
    const CartesianVelocity v(model, {opt.point[0], opt.point[1], opt.point[2]});
    density = model == Model::Relativistic ? velspace::prior_relativistic_cartesian(v, opt.scale)
                                           : velspace::prior_classical(v, opt.scale);
  } else if (opt.coords == "polar") {
    require_values(opt.point, 3, "--point");
    const PolarVelocity p(model, opt.point[0], opt.point[1], opt.point[2]);
    if (model == Model::Relativistic) {
      density = velspace::prior_relativistic_polar(p, opt.scale);
    } else {
      density = velspace::prior_classical(velspace::polar_to_cartesian(p), opt.scale);
    }
  } else if (opt.coords == "rapidity") {
    if (model != Model::Relativistic) {
      throw velspace::DomainError("rapidity coordinates require --model relativistic");
    }
    require_values(opt.point, 1, "--point");
    density = velspace::prior_relativistic_rapidity(opt.point[0], opt.scale);
  } else if (opt.coords == "energy") {
    if (model != Model::Relativistic) {
      throw velspace::DomainError("energy coordinates require --model relativistic");
    }
    // Energies are given in units of the rest energy (E0 = 1).
    require_values(opt.point, 1, "--point");
    density = velspace::prior_relativistic_energy(velspace::EnergyPoint(opt.point[0], 1.0),
                                                  opt.scale);
  } else {
    throw velspace::DomainError("unknown coords '" + opt.coords + "'");
  }
  record.add("point", opt.point);
  record.add("density", density.value);
  record.add("parametrization", std::string(velspace::to_string(density.parametrization)));
  record.add("scale", density.scale);
  emit(record, opt.format);
  return 0;
}

int run_boost(const Options& opt, bool frame_given, bool model_given) {
  // --frame lorentz|galilean and --model relativistic|classical are synonyms;
  // reject contradictory combinations.
  Model model = Model::Relativistic;
  if (opt.frame == "galilean") model = Model::Classical;
  else if (opt.frame != "lorentz") {
    throw velspace::DomainError("unknown frame '" + opt.frame + "' (lorentz|galilean)");
  }
  if (model_given) {
    const Model from_model = parse_model(opt.model);
    if (frame_given && from_model != model) {
      throw velspace::DomainError("--frame and --model disagree");
    }
    model = from_model;
  }

  Record record;
  record.add("frame", model == Model::Relativistic ? "lorentz" : "galilean");
  record.add("alpha", opt.alpha);
  if (opt.coords == "polar") {
    require_values(opt.point, 3, "--velocity");
    const PolarVelocity p(model, opt.point[0], opt.point[1], opt.point[2]);
    if (model != Model::Relativistic) {
      throw velspace::DomainError("polar boosts are relativistic only");
    }
    const PolarVelocity out = velspace::polar_lorentz_boost(p, opt.alpha);
    record.add("velocity", std::vector<double>{out.beta, out.cos_theta, out.phi});
    record.add("coords", std::string("polar"));
    record.add("precision_degraded",
               velspace::near_lightlike(p.beta) || velspace::near_lightlike(opt.alpha) ||
                   velspace::near_lightlike(out.beta));
  } else if (opt.coords == "cartesian") {
    require_values(opt.point, 3, "--velocity");
    const CartesianVelocity v(model, {opt.point[0], opt.point[1], opt.point[2]});
    const CartesianVelocity out =
        model == Model::Relativistic
            ? velspace::lorentz_boost_3d(v, opt.alpha)
            : velspace::galilean_boost_3d(v, velspace::Boost(model, opt.alpha));
    record.add("velocity",
               std::vector<double>{out.components[0], out.components[1], out.components[2]});
    record.add("coords", std::string("cartesian"));
    if (model == Model::Relativistic) {
      record.add("precision_degraded",
                 velspace::near_lightlike(v.speed()) || velspace::near_lightlike(opt.alpha) ||
                     velspace::near_lightlike(out.speed()));
    }
  } else {
    throw velspace::DomainError("boost supports cartesian or polar coords");
  }
  emit(record, opt.format);
  return 0;
}

int run_distance(const Options& opt) {
  const Model model = parse_model(opt.model);
  require_values(opt.point, 6, "--point (twice)");
  const CartesianVelocity u(model, {opt.point[0], opt.point[1], opt.point[2]});
  const CartesianVelocity v(model, {opt.point[3], opt.point[4], opt.point[5]});
  const double d = model == Model::Relativistic
                       ? velspace::geodesic_distance(u, v, opt.scale)
                       : velspace::classical_distance(u, v, opt.scale);
  Record record;
  record.add("model", opt.model);
  record.add("distance", d);
  record.add("scale", opt.scale);
  emit(record, opt.format);
  return 0;
}

int run_metric(const Options& opt) {
  const Model model = parse_model(opt.model);
  velspace::MetricTensor g{Eigen::Matrix3d::Identity(), velspace::Coords::Cartesian, opt.scale,
                           false};
  if (opt.coords == "polar") {
    // Polar metric chart is (beta, theta, phi): the angle itself, not its
    // cosine.
    require_values(opt.point, 3, "--point");
    g = model == Model::Relativistic
            ? velspace::metric_relativistic_polar(opt.point[0], opt.point[1], opt.scale)
            : velspace::metric_classical_polar(opt.point[0], opt.point[1], opt.scale);
  } else if (opt.coords == "cartesian") {
    require_values(opt.point, 3, "--point");
    if (model == Model::Relativistic) {
      g = velspace::metric_relativistic_cartesian(
          CartesianVelocity(model, {opt.point[0], opt.point[1], opt.point[2]}), opt.scale);
    } else {
      g.components = opt.scale * opt.scale * Eigen::Matrix3d::Identity();
    }
  } else {
    throw velspace::DomainError("metric supports cartesian or polar coords");
  }
  Record record;
  record.add("model", opt.model);
  record.add("coords", opt.coords);
  std::vector<double> entries;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) entries.push_back(g.components(row, col));
  record.add("metric", entries);
  record.add("volume_element", velspace::volume_element(g));
  record.add("degenerate", g.degenerate);
  record.add("scale", opt.scale);
  emit(record, opt.format);
  return 0;
}

int run_volume(const Options& opt) {
  const Model model = parse_model(opt.model);
  const double volume =
      velspace::region_measure(model, velspace::BallRegion{opt.beta_max}, opt.scale);
  Record record;
  record.add("model", opt.model);
  record.add("radius", opt.beta_max);
  record.add("volume", volume);
  record.add("scale", opt.scale);
  emit(record, opt.format);
  return 0;
}

int run_sample(const Options& opt) {
  const Model model = parse_model(opt.model);
  if (opt.n < 0) throw velspace::DomainError("-n must be nonnegative");
  const velspace::SampleBatch batch =
      model == Model::Relativistic
          ? velspace::sample_invariant_ball(opt.beta_max, static_cast<std::size_t>(opt.n),
                                            opt.seed)
          : velspace::sample_classical_ball(opt.beta_max, static_cast<std::size_t>(opt.n),
                                            opt.seed);
  if (opt.format == "csv") {
    std::string out = "bx,by,bz\n";
    for (const CartesianVelocity& v : batch.points) {
      out += fmt(v.components[0]) + "," + fmt(v.components[1]) + "," + fmt(v.components[2]) +
             "\n";
    }
    std::cout << out;
  } else {
    std::string out = "{\"model\": " + quote(opt.model) +
                      ", \"radius\": " + fmt(batch.radius) +
                      ", \"seed\": " + std::to_string(batch.seed) +
                      ", \"n\": " + std::to_string(batch.points.size()) + ", \"points\": [";
    for (std::size_t i = 0; i < batch.points.size(); ++i) {
      if (i) out += ", ";
      const Eigen::Vector3d& v = batch.points[i].components;
      out += "[" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + "]";
    }
    out += "]}";
    std::cout << out << "\n";
  }
  return 0;
}

int run_verify(const Options& opt) {
  velspace::CheckConfig config;
  config.trials = opt.trials;
  config.seed = opt.seed;
  if (opt.tol_set) config.tol = opt.tol;
  if (opt.suite != "all") {
    config.suite.clear();
    std::size_t start = 0;
    while (start <= opt.suite.size()) {
      const std::size_t comma = opt.suite.find(',', start);
      const std::string name =
          opt.suite.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!name.empty()) {
        const auto check = velspace::check_from_string(name);
        if (!check) throw velspace::DomainError("unknown check '" + name + "'");
        config.suite.push_back(*check);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (config.suite.empty()) throw velspace::DomainError("--suite selected no checks");
  }

  const velspace::VerificationReport report = velspace::run_checks(config);
  if (opt.format == "csv") {
    std::string out = "check,pass,trials,max_error,tol,seconds\n";
    for (const velspace::CheckResult& r : report.checks) {
      out += r.check + "," + (r.pass ? "true" : "false") + "," + std::to_string(r.trials) + "," +
             fmt(r.max_error) + "," + fmt(r.tol) + "," + fmt(r.seconds) + "\n";
    }
    std::cout << out;
  } else {
    std::cout << velspace::report_to_json(report) << "\n";
  }
  return report.overall ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"velocity-space kinematics, least-informative priors, invariant geometry"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "json or csv")->default_str("json");
    return cmd;
  };

  CLI::App* prior = add_common(app.add_subcommand("prior", "evaluate a least-informative density"));
  prior->add_option("--model", opt.model, "classical or relativistic");
  prior->add_option("--coords", opt.coords, "cartesian, polar, rapidity, or energy");
  prior->add_option("--point", opt.point,
                    "evaluation point: x,y,z (cartesian), beta,cos_theta,phi (polar), b "
                    "(rapidity), E in rest-energy units (energy)")
      ->delimiter(',')
      ->required();
  prior->add_option("--scale", opt.scale, "scale constant a");

  CLI::App* boost = add_common(app.add_subcommand("boost", "apply a frame change along x"));
  CLI::Option* frame_opt = boost->add_option("--frame", opt.frame, "lorentz or galilean");
  CLI::Option* model_opt = boost->add_option("--model", opt.model, "relativistic or classical");
  boost->add_option("--alpha", opt.alpha, "boost speed along x")->required();
  boost->add_option("--velocity,--point", opt.point, "velocity to transform: x,y,z")
      ->delimiter(',')
      ->required();
  boost->add_option("--coords", opt.coords, "cartesian or polar");

  CLI::App* distance = add_common(app.add_subcommand("distance", "invariant distance between velocities"));
  distance->add_option("--model", opt.model, "classical or relativistic");
  distance->add_option("--point", opt.point, "two endpoints; pass --point x,y,z twice")
      ->delimiter(',')
      ->required();
  distance->add_option("--scale", opt.scale, "scale constant a");

  CLI::App* metric = add_common(app.add_subcommand("metric", "metric tensor at a point"));
  metric->add_option("--model", opt.model, "classical or relativistic");
  metric->add_option("--coords", opt.coords, "cartesian or polar (beta,theta,phi)");
  metric->add_option("--point", opt.point, "chart point")->delimiter(',')->required();
  metric->add_option("--scale", opt.scale, "scale constant a");

  CLI::App* volume = add_common(app.add_subcommand("volume", "invariant ball volume"));
  volume->add_option("--model", opt.model, "classical or relativistic");
  volume->add_option("--beta-max", opt.beta_max, "ball radius")->required();
  volume->add_option("--scale", opt.scale, "scale constant a");

  CLI::App* sample = add_common(app.add_subcommand("sample", "draw i.i.d. velocities from a ball"));
  sample->add_option("--model", opt.model, "classical or relativistic");
  sample->add_option("--beta-max", opt.beta_max, "ball radius")->required();
  sample->add_option("-n", opt.n, "number of samples");
  CLI::Option* sample_seed = sample->add_option("--seed", opt.seed, "RNG seed");

  CLI::App* verify = add_common(app.add_subcommand("verify", "run the verification suites"));
  verify->add_option("--suite", opt.suite, "comma-separated check names, or 'all'");
  verify->add_option("--trials", opt.trials, "randomized draws per check");
  CLI::Option* tol_opt = verify->add_option("--tol", opt.tol, "override primary tolerances");
  CLI::Option* verify_seed = verify->add_option("--seed", opt.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (!sample_seed->count() && !verify_seed->count()) opt.seed = seed_from_environment();
    opt.tol_set = tol_opt->count() > 0;
    if (prior->parsed()) return run_prior(opt);
    if (boost->parsed()) return run_boost(opt, frame_opt->count() > 0, model_opt->count() > 0);
    if (distance->parsed()) return run_distance(opt);
    if (metric->parsed()) return run_metric(opt);
    if (volume->parsed()) return run_volume(opt);
    if (sample->parsed()) return run_sample(opt);
    if (verify->parsed()) return run_verify(opt);
  } catch (const velspace::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const velspace::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
