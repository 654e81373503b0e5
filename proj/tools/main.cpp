// owpt: receiver-rotation sweeps of the three-channel resonant link.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure,
// 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "owpt/csv.hpp"
#include "owpt/error.hpp"
#include "owpt/sweep.hpp"
#include "owpt/units.hpp"
#include "owpt/verification.hpp"

namespace {

enum Exit : int { kOk = 0, kConfig = 1, kNumeric = 2, kVerify = 3 };

struct Options {
  std::string config = OWPT_DEFAULT_SCENARIO;
  std::vector<std::string> overrides;
  std::string output;
  double angle_deg = 0.0;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw owpt::IoError("cannot write '" + path + "'");
}

int failed_records(const owpt::SweepResult& r) {
  int n = 0;
  for (const auto& rec : r.records) {
    if (!rec.ok()) {
      std::cerr << "angle " << rec.angle_deg << ": " << rec.error << "\n";
      ++n;
    }
  }
  return n;
}

int cmd_sweep(const Options& opt) {
  const owpt::Scenario sc = owpt::load_scenario(opt.config, opt.overrides);
  const owpt::SweepResult result = owpt::run_sweep(sc);
  const std::string csv_path = !opt.output.empty() ? opt.output : sc.csv_path;
  if (csv_path.empty() || csv_path == "-") {
    owpt::write_csv(std::cout, result.records);
  } else {
    owpt::emit_csv(result.records, csv_path);
  }
  const std::string summary = owpt::render_summary(result);
  if (!sc.summary_path.empty()) write_text(sc.summary_path, summary);
  std::cerr << summary;
  return failed_records(result) ? kNumeric : kOk;
}

int cmd_solve(const Options& opt) {
  owpt::Scenario sc = owpt::load_scenario(opt.config, opt.overrides);
  sc.sweep = owpt::SweepGrid{opt.angle_deg, opt.angle_deg + 1.0, 2.0};
  if (!sc.x_t) {
    throw owpt::ConfigError("solve needs a numeric X_t_ohm; \"auto\" is defined over a sweep");
  }
  const owpt::SweepResult result = owpt::run_sweep(sc);
  const owpt::SweepRecord& r = result.records.front();

  std::ostringstream out;
  out << std::setprecision(9);
  out << "angle_deg " << r.angle_deg << "\n";
  if (!r.m.empty() && std::isfinite(r.m[0])) {
    out << "M_uH      " << r.m[0] * 1e6 << " " << r.m[1] * 1e6 << " " << r.m[2] * 1e6 << "\n";
    out << "signs     " << r.signs[0] << " " << r.signs[1] << " " << r.signs[2] << "\n";
    const char* names[] = {"Tx1", "Tx2", "Tx3", "Rp1", "Rp2", "Rp3", "Rx"};
    const auto i = r.solution.currents();
    for (std::size_t k = 0; k < i.size(); ++k) {
      out << "I_" << names[k] << "    " << std::abs(i[k]) << " A  "
          << owpt::rad_to_deg(std::arg(i[k])) << " deg\n";
    }
    out << "P_in_W    " << r.solution.p_in << "\n";
    out << "P_out_W   " << r.p_out << "\n";
    out << "eta       " << r.eta << "\n";
  }
  if (opt.output.empty()) {
    std::cout << out.str();
  } else {
    write_text(opt.output, out.str());
  }
  if (!r.ok()) {
    std::cerr << r.error << "\n";
    return kNumeric;
  }
  double signed_sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) signed_sum += r.signs[c] * r.m[c];
  if (std::abs(signed_sum) < 0.5 * r.m_sum_abs) {
    std::cerr << "warning: controller settled on a cancelling sign pattern; a sweep would "
                 "warm-start past it, or set electrical.initial_signs\n";
  }
  return kOk;
}

int cmd_couplings(const Options& opt) {
  const owpt::Scenario sc = owpt::load_scenario(opt.config, opt.overrides);
  const auto angles = sc.sweep.angles_deg();
  const auto base = owpt::paper_layout(owpt::deg_to_rad(angles.front()), sc.rx_distance, sc.layout);
  const auto cluster = owpt::cluster_couplings(base, sc.quadrature);

  std::ostringstream out;
  out << "angle_deg,M1_uH,M2_uH,M3_uH,TxRx1_uH,TxRx2_uH,TxRx3_uH,gamma1,gamma2,gamma3,Msum_uH\n";
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.16e", v);
    out << buf;
  };
  for (double a : angles) {
    const auto c = owpt::coupling_set(owpt::rotate_rx(base, owpt::deg_to_rad(a)), cluster,
                                      sc.quadrature, false);
    std::snprintf(buf, sizeof buf, "%.16e", a);
    out << buf;
    for (double m : c.m) put(m * 1e6);
    for (double g : c.gamma_m) put(g * 1e6);
    for (double g : c.gamma) put(g);
    put(c.m_sum_abs() * 1e6);
    out << "\n";
  }
  if (opt.output.empty() || opt.output == "-") {
    std::cout << out.str();
  } else {
    write_text(opt.output, out.str());
  }
  std::cerr << "M0_uH " << cluster.m0[0] * 1e6 << " " << cluster.m0[1] * 1e6 << " "
            << cluster.m0[2] * 1e6 << "\nmax_cross_nH " << cluster.max_cross_channel() * 1e9
            << "\n";
  return kOk;
}

int cmd_verify(const Options& opt) {
  const owpt::Scenario sc = owpt::load_scenario(opt.config, opt.overrides);
  const owpt::SweepResult result = owpt::run_sweep(sc);
  const auto verdicts = owpt::verify_sweep(result);
  for (const auto& v : verdicts) {
    std::cout << (!v.applicable ? "N/A  " : v.passed ? "PASS " : "FAIL ") << v.name;
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << "\n";
  }
  return owpt::all_passed(verdicts) ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-channel omnidirectional resonant link simulator"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&opt](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config, "scenario file")->capture_default_str();
    sub->add_option("--set", opt.overrides, "override, e.g. electrical.X_t_ohm=auto");
    sub->add_option("-o,--output", opt.output, "output file (default stdout)");
  };
  auto* sweep = app.add_subcommand("sweep", "full receiver-angle sweep to CSV");
  auto* solve = app.add_subcommand("solve", "single angle: currents and powers");
  auto* couplings = app.add_subcommand("couplings", "mutual inductances only");
  auto* verify = app.add_subcommand("verify", "sweep and check against reference values");
  for (auto* s : {sweep, solve, couplings, verify}) common(s);
  solve->add_option("-a,--angle", opt.angle_deg, "receiver angle [deg]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep) return cmd_sweep(opt);
    if (*solve) return cmd_solve(opt);
    if (*couplings) return cmd_couplings(opt);
    return cmd_verify(opt);
  } catch (const owpt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const owpt::InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const owpt::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kConfig;
  } catch (const owpt::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  }
}
