#pragma once

// Command-line front end. Every subcommand validates its parameters, builds
// the complete output in memory, and only then writes files, so a failed run
// leaves no partial output behind.
//
// Exit codes: 0 success, 1 computational failure, 2 argument error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinwire/channels.hpp"
#include "spinwire/closed_forms.hpp"
#include "spinwire/format.hpp"
#include "spinwire/plot.hpp"
#include "spinwire/propagator.hpp"
#include "spinwire/recurrence.hpp"
#include "spinwire/series.hpp"
#include "spinwire/walks.hpp"
#include "spinwire/witness.hpp"

namespace spinwire::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"walks", "alpha", "chi-scan",
                                              "bloch", "witness", "recurrence"};
  return names;
}

inline std::string header_comment() {
  return "# generated-by " + std::string(kToolName) + " " + std::string(kToolVersion) + "\n";
}

inline std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number_float()) {
    return format_double(v.get<double>());
  }
  if (v.is_number()) {
    return v.dump();
  }
  throw InvalidArgument("unsupported config value: " + v.dump());
}

inline bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Appends `--key value` for config entries whose flag is not on the command
// line; explicit flags win.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) {
    return args;
  }
  std::ifstream in(*path);
  if (!in) {
    throw InvalidArgument("cannot read config file: " + *path);
  }
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed config file " + *path + ": " + e.what());
  }
  if (!config.is_object()) {
    throw InvalidArgument("config file must hold a JSON object: " + *path);
  }
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || flag_present(args, flag) || value.is_null()) {
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) {
        args.push_back(flag);
      }
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) {
          joined += ',';
        }
        joined += json_scalar(item);
      }
      args.push_back(flag);
      args.push_back(joined);
    } else {
      args.push_back(flag);
      args.push_back(json_scalar(value));
    }
  }
  return args;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) {
    throw InvalidArgument(message);
  }
}

inline void require_coupling(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0, std::string("--") + name + " must be finite and >= 0");
}

inline void require_grid(double tmax, int steps) {
  require(std::isfinite(tmax) && tmax >= 0.0, "--tmax must be finite and >= 0");
  require(steps >= 1, "--steps must be >= 1");
}

inline ChainSpec resolve_chain(double k0, double k, double tmax, std::optional<int> n_sites,
                               double tol) {
  if (n_sites) {
    ChainSpec spec{k0, k, static_cast<std::size_t>(*n_sites)};
    spec.validate();
    return spec;
  }
  return auto_chain(k0, k, tmax, tol);
}

struct Output {
  std::string csv;
  std::optional<PlotSeries> plot;
  PlotLabels labels;
  std::optional<std::string> sidecar;
};

}  // namespace detail

// argv without the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence of a qubit plugged into a semi-infinite xx spin chain", "spinwire"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::string plot_path;
  app.add_option("--config", config_path, "JSON file whose keys mirror the flags");
  app.add_option("--out", out_path, "Write CSV here instead of standard output");
  app.add_option("--plot", plot_path, "Also render an SVG line chart");

  // walks
  auto* walks = app.add_subcommand("walks", "Origin-returning walk counts l(n,k)");
  long long n_max = 0;
  walks->add_option("--n-max", n_max, "Largest (even) step count")->required();

  // alpha
  auto* alpha = app.add_subcommand("alpha", "Auto-fidelity alpha0(t)");
  std::string method;
  double k0 = 0.0;
  double k = 0.0;
  double tmax = 0.0;
  int steps = 0;
  int order = kDefaultSeriesOrder;
  std::optional<int> n_sites;
  double tol = kDefaultTruncationTol;
  alpha->add_option("--method", method, "series | matrix | closed")
      ->required()
      ->check(CLI::IsMember({"series", "matrix", "closed"}));
  alpha->add_option("--k0", k0, "Plug coupling")->required();
  alpha->add_option("--k", k, "Wire coupling")->required();
  alpha->add_option("--tmax", tmax, "Final time")->required();
  alpha->add_option("--steps", steps, "Number of samples on [0, tmax]")->required();
  alpha->add_option("--order", order, "Series truncation order J (terms up to t^{2J})");
  alpha->add_option("--n-sites", n_sites, "Chain length (default: certified automatically)");
  alpha->add_option("--tol", tol, "Truncation tolerance for the automatic chain length");

  // chi-scan
  auto* chi = app.add_subcommand("chi-scan", "Exponentiality metric chi versus K/K0");
  std::vector<double> ratios;
  double quad_tol = kDefaultQuadTol;
  chi->add_option("--ratios", ratios, "Comma-separated K/K0 values")->required()->delimiter(',');
  chi->add_option("--order", order, "Series truncation order");
  chi->add_option("--quad-tol", quad_tol, "Quadrature tolerance");

  // bloch
  auto* bloch = app.add_subcommand("bloch", "Bloch-vector length, magnetized wire");
  bloch->add_option("--k0", k0, "Plug coupling")->required();
  bloch->add_option("--k", k, "Wire coupling")->required();
  bloch->add_option("--tmax", tmax, "Final time")->required();
  bloch->add_option("--steps", steps, "Number of samples on [0, tmax]")->required();
  bloch->add_option("--n-sites", n_sites, "Chain length (default: automatic)");
  bloch->add_option("--tol", tol, "Truncation tolerance for the automatic chain length");

  // witness
  auto* witness = app.add_subcommand("witness", "Singlet correlation witness, two wires");
  double k0a = 0.0;
  double ka = 0.0;
  double k0b = 0.0;
  double kb = 0.0;
  std::string sidecar_path;
  witness->add_option("--k0a", k0a, "Plug coupling, qubit A")->required();
  witness->add_option("--ka", ka, "Wire coupling, qubit A")->required();
  witness->add_option("--k0b", k0b, "Plug coupling, qubit B")->required();
  witness->add_option("--kb", kb, "Wire coupling, qubit B")->required();
  witness->add_option("--tmax", tmax, "Final time")->required();
  witness->add_option("--steps", steps, "Number of samples on [0, tmax]")->required();
  witness->add_option("--tol", tol, "Truncation tolerance for the automatic chain length");
  witness->add_option("--sidecar", sidecar_path,
                      "JSON summary path (default: <out>.json, or a trailing comment)");

  // recurrence
  auto* recurrence = app.add_subcommand("recurrence", "Survival probability, finite spectrum");
  std::vector<double> freqs;
  double threshold = 0.9;
  double dt = 1e-3;
  double rec_tmax = 500.0;
  recurrence->add_option("--freqs", freqs, "Comma-separated angular frequencies")
      ->required()
      ->delimiter(',');
  recurrence->add_option("--threshold", threshold, "Exceedance threshold");
  recurrence->add_option("--tmax", rec_tmax, "Final time");
  recurrence->add_option("--dt", dt, "Grid step");

  std::string active = "spinwire";
  try {
    args = detail::merge_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  detail::Output result;
  try {
    using detail::require;
    if (walks->parsed()) {
      active = "walks";
      require(n_max >= 2 && n_max % 2 == 0, "--n-max must be even and >= 2");
      require(plot_path.empty(), "walks has no plot");
      std::ostringstream os;
      os << detail::header_comment() << "n,k,count\n";
      for (const auto& [key, count] : build_walk_table(n_max).entries) {
        os << key.first << ',' << key.second << ',' << count.get_str() << '\n';
      }
      result.csv = os.str();
    } else if (alpha->parsed()) {
      active = "alpha";
      detail::require_coupling(k0, "k0");
      detail::require_coupling(k, "k");
      detail::require_grid(tmax, steps);
      require(tol > 0.0 && tol < 1.0, "--tol must lie in (0, 1)");
      require(!n_sites || *n_sites >= 2, "--n-sites must be >= 2");
      const auto times = uniform_grid(tmax, steps);
      std::ostringstream os;
      os << detail::header_comment();
      std::vector<double> values;
      std::vector<double> errors;
      if (method == "series") {
        require(order >= 2, "--order must be >= 2");
        const auto series = build_series_from_couplings(k0, k, order);
        for (double t : times) {
          const auto v = evaluate_series(series, t);
          values.push_back(v.value);
          errors.push_back(v.error_estimate);
        }
      } else if (method == "closed") {
        const SpecialCase c = classify_couplings(k0, k);
        require(c.kind != CaseKind::generic,
                "no closed form for this coupling ratio; use --method matrix");
        const auto trace = closed_trace(c, times);
        values = trace.values;
        errors.assign(values.size(), 0.0);
      } else {
        const ChainSpec spec = detail::resolve_chain(k0, k, tmax, n_sites, tol);
        if (!n_sites) {
          os << "# n_sites=" << spec.n_sites << '\n';
        }
        const auto trace = alpha_trace(spec, times);
        values = trace.values;
        errors.assign(values.size(), trace.truncation_error_bound);
      }
      os << "t,alpha0,alphaZ,error_estimate\n";
      for (std::size_t i = 0; i < times.size(); ++i) {
        os << format_double(times[i]) << ',' << format_double(values[i]) << ','
           << format_double(alpha_z(values[i])) << ',' << format_double(errors[i]) << '\n';
      }
      result.csv = os.str();
      result.plot = PlotSeries{times, values};
      result.labels = {"alpha0(t), " + method, "t", "alpha0"};
    } else if (chi->parsed()) {
      active = "chi-scan";
      require(!ratios.empty(), "--ratios must not be empty");
      for (double r : ratios) {
        require(std::isfinite(r) && r > 0.0, "--ratios entries must be positive");
      }
      require(order >= 2, "--order must be >= 2");
      require(quad_tol > 0.0, "--quad-tol must be positive");
      const ChiScan scan = chi_scan(ratios, order, quad_tol);
      std::ostringstream os;
      os << detail::header_comment() << "ratio,chi,log_chi\n";
      std::vector<double> logs;
      for (std::size_t i = 0; i < scan.ratios.size(); ++i) {
        const double log_chi = std::log(scan.chi[i]);
        logs.push_back(log_chi);
        os << format_double(scan.ratios[i]) << ',' << format_double(scan.chi[i]) << ','
           << format_double(log_chi) << '\n';
        if (scan.truncation_dominates[i]) {
          err << "warning: series truncation exceeds the quadrature tolerance at ratio="
              << format_double(scan.ratios[i]) << "\n";
        }
      }
      result.csv = os.str();
      result.plot = PlotSeries{scan.ratios, logs};
      result.labels = {"log chi versus K/K0", "K/K0", "ln chi"};
    } else if (bloch->parsed()) {
      active = "bloch";
      detail::require_coupling(k0, "k0");
      detail::require_coupling(k, "k");
      detail::require_grid(tmax, steps);
      require(tol > 0.0 && tol < 1.0, "--tol must lie in (0, 1)");
      require(!n_sites || *n_sites >= 2, "--n-sites must be >= 2");
      const auto times = uniform_grid(tmax, steps);
      const ChainSpec spec = detail::resolve_chain(k0, k, tmax, n_sites, tol);
      std::ostringstream os;
      os << detail::header_comment();
      if (!n_sites) {
        os << "# n_sites=" << spec.n_sites << '\n';
      }
      os << "t,v_sq\n";
      PlotSeries plot;
      for (const auto& s : magnetized_bloch_trace(spec, times)) {
        os << format_double(s.t) << ',' << format_double(s.v_sq) << '\n';
        plot.x.push_back(s.t);
        plot.y.push_back(s.v_sq);
      }
      result.csv = os.str();
      result.plot = std::move(plot);
      result.labels = {"Bloch vector length, magnetized wire", "t", "v^2"};
    } else if (witness->parsed()) {
      active = "witness";
      detail::require_coupling(k0a, "k0a");
      detail::require_coupling(ka, "ka");
      detail::require_coupling(k0b, "k0b");
      detail::require_coupling(kb, "kb");
      detail::require_grid(tmax, steps);
      require(tol > 0.0 && tol < 1.0, "--tol must lie in (0, 1)");
      const auto times = uniform_grid(tmax, steps);
      const ChainSpec spec_a = auto_chain(k0a, ka, tmax, tol);
      const ChainSpec spec_b = auto_chain(k0b, kb, tmax, tol);
      const WitnessTrace trace = singlet_witness(spec_a, spec_b, times);
      std::ostringstream os;
      os << detail::header_comment() << "t,witness\n";
      for (std::size_t i = 0; i < trace.times.size(); ++i) {
        os << format_double(trace.times[i]) << ',' << format_double(trace.witness[i]) << '\n';
      }
      nlohmann::json summary;
      summary["death_time"] =
          trace.death_time ? nlohmann::json(*trace.death_time) : nlohmann::json(nullptr);
      summary["rebirth_times"] = trace.rebirth_times;
      summary["intervals"] = nlohmann::json::array();
      for (const auto& [a, b] : trace.entangled_intervals) {
        summary["intervals"].push_back({a, b});
      }
      const std::string dumped = summary.dump();
      if (!sidecar_path.empty() || !out_path.empty()) {
        result.sidecar = dumped + "\n";
      } else {
        os << "# sidecar " << dumped << '\n';
      }
      result.csv = os.str();
      result.plot = PlotSeries{trace.times, trace.witness};
      result.labels = {"Singlet correlation witness", "t", "sum T_ij^2"};
    } else if (recurrence->parsed()) {
      active = "recurrence";
      require(freqs.size() >= 2 && freqs.size() <= 8, "--freqs takes 2 to 8 values");
      require(std::isfinite(threshold), "--threshold must be finite");
      require(std::isfinite(rec_tmax) && rec_tmax > 0.0, "--tmax must be positive");
      require(std::isfinite(dt) && dt > 0.0 && dt <= rec_tmax, "--dt must lie in (0, tmax]");
      const int n = static_cast<int>(std::llround(rec_tmax / dt)) + 1;
      const auto times = uniform_grid(rec_tmax, n);
      const RecurrenceTrace trace = recurrence_demo(freqs, times, threshold);
      std::ostringstream os;
      os << detail::header_comment() << "# first_exceedance="
         << (trace.first_exceedance ? format_double(*trace.first_exceedance) : "none") << '\n'
         << "t,p\n";
      for (std::size_t i = 0; i < trace.times.size(); ++i) {
        os << format_double(trace.times[i]) << ',' << format_double(trace.probability[i])
           << '\n';
      }
      result.csv = os.str();
      result.plot = PlotSeries{trace.times, trace.probability};
      result.labels = {"Survival probability", "t", "P(t)"};
    }

    // All computation is done; only now touch the filesystem.
    std::string svg;
    if (!plot_path.empty()) {
      require(result.plot.has_value(), "no plot available for " + active);
      svg = render_svg(*result.plot, result.labels);
    }
    auto write_file = [](const std::string& path, const std::string& text) {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (!f || !(f << text) || !f.flush()) {
        throw ComputationError("cannot write " + path);
      }
    };
    if (out_path.empty()) {
      out << result.csv;
    } else {
      write_file(out_path, result.csv);
    }
    if (result.sidecar) {
      write_file(sidecar_path.empty() ? out_path + ".json" : sidecar_path, *result.sidecar);
    }
    if (!plot_path.empty()) {
      write_file(plot_path, svg);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << active << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << active << " failed: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace spinwire::cli
