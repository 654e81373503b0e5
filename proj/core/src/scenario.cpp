#include "owpt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

using nlohmann::json;

void SweepGrid::validate() const {
  if (!(step_deg > 0.0) || !std::isfinite(step_deg)) {
    throw ConfigError("sweep step must be positive");
  }
  if (!(start_deg < stop_deg) || !std::isfinite(start_deg) || !std::isfinite(stop_deg)) {
    throw ConfigError("sweep start must be below stop");
  }
}

std::vector<double> SweepGrid::angles_deg() const {
  validate();
  const auto count = static_cast<long>(std::floor((stop_deg - start_deg) / step_deg + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long k = 0; k <= count; ++k) {
    out.push_back(start_deg + static_cast<double>(k) * step_deg);
  }
  return out;
}

double Scenario::omega0() const { return angular_frequency(f0); }

double Scenario::source_rms() const {
  if (v_s) return *v_s;
  if (v_dc) return source_rms_from_dc(*v_dc);
  throw ConfigError("scenario defines neither V_dc nor V_s");
}

void Scenario::validate() const {
  try {
    layout.validate();
    quadrature.validate();
    controller.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  sweep.validate();
  if (!(rx_distance > 0.0)) throw ConfigError("rx_distance must be positive");
  if (!(f0 > 0.0)) throw ConfigError("working frequency must be positive");
  if (!(r_load > 0.0)) throw ConfigError("load resistance must be positive");
  if (v_dc.has_value() == v_s.has_value()) {
    throw ConfigError("set exactly one of electrical.V_dc and electrical.V_s");
  }
  if (!std::isfinite(source_rms())) throw ConfigError("source voltage must be finite");
  if (x_t && !std::isfinite(*x_t)) throw ConfigError("X_t must be finite or \"auto\"");
}

Scenario default_scenario() { return Scenario{}; }

namespace {

// Reads one JSON object section, rejecting keys it was never asked about.
class Section {
 public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    if (root.contains(name_)) {
      node_ = &root.at(name_);
      if (!node_->is_object()) throw ConfigError("section '" + name_ + "' must be an object");
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    try {
      out = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(name_ + "." + key + ": " + e.what());
    }
  }

  void read_scaled(const std::string& key, double& out, double scale) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    double v = 0.0;
    read(key, v);
    out = v * scale;
  }

  // Absent key leaves `out` alone; explicit null clears it.
  void read_optional(const std::string& key, std::optional<double>& out) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    const json& v = node_->at(key);
    if (v.is_null()) {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      throw ConfigError(name_ + "." + key + " must be a number or null");
    }
  }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return nullptr;
    return &node_->at(key);
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key '" + name_ + "." + key + "'");
    }
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

void read_coil(const json& coils, const std::string& label, CoilElectrical& out) {
  Section s(coils, label);
  s.read_scaled("L_uH", out.inductance, 1e-6);
  s.read("R_ohm", out.resistance);
  s.read("Q", out.quality_factor);
  double resonance_khz = 0.0;  // informational only
  s.read("f_res_kHz", resonance_khz);
  s.finish();
}

void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  std::string pointer = "/" + key;
  for (auto& c : pointer) {
    if (c == '.') c = '/';
  }
  try {
    root[json::json_pointer(pointer)] = value;
  } catch (const json::exception& e) {
    throw ConfigError("override '" + assignment + "': " + e.what());
  }
}

Scenario from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("scenario must be a JSON object");
  static const std::set<std::string> sections{"layout",   "coils",      "electrical", "sweep",
                                              "controller", "quadrature", "output"};
  for (const auto& [key, value] : root.items()) {
    if (!sections.count(key)) throw ConfigError("unknown section '" + key + "'");
  }

  Scenario sc = default_scenario();
  auto& lp = sc.layout;
  {
    Section s(root, "layout");
    s.read_scaled("tx_radius_mm", lp.tx_radius, 1e-3);
    s.read("tx_turns", lp.tx_turns);
    s.read_scaled("rp_radius_mm", lp.rp_radius, 1e-3);
    s.read("rp_turns", lp.rp_turns);
    s.read_scaled("rx_radius_mm", lp.rx_radius, 1e-3);
    s.read("rx_turns", lp.rx_turns);
    s.read_scaled("pitch_mm", lp.pitch, 1e-3);
    s.read_scaled("tx_rp_axial_offset_mm", lp.tx_rp_axial_offset, 1e-3);
    s.read_scaled("triad_tilt_deg", lp.triad_tilt, kPi / 180.0);
    s.read_scaled("rx_distance_mm", sc.rx_distance, 1e-3);
    s.finish();
  }
  if (root.contains("coils")) {
    const json& coils = root.at("coils");
    if (!coils.is_object()) throw ConfigError("section 'coils' must be an object");
    for (const auto& [key, value] : coils.items()) {
      if (key == "Tx1" || key == "Tx2" || key == "Tx3") {
        read_coil(coils, key, lp.tx[static_cast<std::size_t>(key[2] - '1')]);
      } else if (key == "Rp1" || key == "Rp2" || key == "Rp3") {
        read_coil(coils, key, lp.rp[static_cast<std::size_t>(key[2] - '1')]);
      } else if (key == "Rx") {
        read_coil(coils, key, lp.rx);
      } else {
        throw ConfigError("unknown coil '" + key + "'");
      }
    }
  }
  {
    Section s(root, "electrical");
    s.read_scaled("f0_kHz", sc.f0, 1e3);
    s.read("R_load_ohm", sc.r_load);
    // Naming only one of the two source keys selects it.
    if (s.has("V_s") && !s.has("V_dc")) sc.v_dc.reset();
    if (s.has("V_dc") && !s.has("V_s")) sc.v_s.reset();
    s.read_optional("V_dc", sc.v_dc);
    s.read_optional("V_s", sc.v_s);
    if (const json* xt = s.raw("X_t_ohm")) {
      if (xt->is_string() && xt->get<std::string>() == "auto") {
        sc.x_t.reset();
      } else if (xt->is_number()) {
        sc.x_t = xt->get<double>();
      } else {
        throw ConfigError("electrical.X_t_ohm must be a number or \"auto\"");
      }
    }
    s.read("include_cross", sc.include_cross);
    if (const json* signs = s.raw("initial_signs")) {
      try {
        sc.initial_polarity = Polarity(signs->get<std::array<int, 3>>());
      } catch (const json::exception& e) {
        throw ConfigError(std::string("electrical.initial_signs: ") + e.what());
      } catch (const InvalidConfig& e) {
        throw ConfigError(e.what());
      }
    }
    s.finish();
  }
  {
    Section s(root, "sweep");
    s.read("start_deg", sc.sweep.start_deg);
    s.read("stop_deg", sc.sweep.stop_deg);
    s.read("step_deg", sc.sweep.step_deg);
    s.finish();
  }
  {
    Section s(root, "controller");
    s.read("enabled", sc.controller_enabled);
    s.read("warm_start", sc.warm_start);
    s.read("max_iters", sc.controller.max_iters);
    s.read("phase_tol_rad", sc.controller.phase_tolerance);
    s.read("dead_band", sc.controller.dead_band);
    s.finish();
  }
  {
    Section s(root, "quadrature");
    s.read("rel_tol", sc.quadrature.rel_tol);
    s.read("max_subdivisions", sc.quadrature.max_subdivisions);
    s.read("order", sc.quadrature.order);
    s.read("initial_grid", sc.quadrature.initial_grid);
    s.finish();
  }
  {
    Section s(root, "output");
    s.read("csv", sc.csv_path);
    s.read("summary", sc.summary_path);
    s.finish();
  }
  sc.validate();
  return sc;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }
  for (const auto& o : overrides) {
    apply_override(root, o);
  }
  return from_json(root);
}

Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), overrides);
}

}  // namespace owpt
