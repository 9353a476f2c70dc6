// platoon: experiments for heterogeneous platoon control.
//
// Exit codes: 0 success, 1 verdict failed, 2 usage error, 3 I/O error.

#include "platoon/bidir.hpp"
#include "platoon/cascade.hpp"
#include "platoon/synthesis.hpp"
#include "platoon/text_format.hpp"

#include <CLI11/CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace platoon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("platoon");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("LOG");
  const std::string level = env ? env : "warn";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

/// Collects the run report and writes the artifacts under --out.
class Run {
 public:
  Run(std::string command, std::string out_dir) : command_(std::move(command)), out_dir_(std::move(out_dir)) {
    report_["schema"] = "report/1";
    report_["command"] = command_;
    report_["parameters"] = ordered_json::object();
    report_["verdicts"] = ordered_json::object();
    report_["artifacts"] = ordered_json::array();
  }

  ordered_json& parameters() { return report_["parameters"]; }
  ordered_json& verdicts() { return report_["verdicts"]; }

  void write_file(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    const fs::path path = fs::path(out_dir_) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    body(os);
    os.flush();
    if (!os) throw IoError("failed writing " + path.string());
    report_["artifacts"].push_back(path.generic_string());
    spdlog::info("wrote {}", path.generic_string());
  }

  void write_json(const std::string& name, const ordered_json& doc) {
    write_file(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  int finish(int code, double seconds) {
    report_["exit_code"] = code;
    ordered_json full = report_;
    full["nondeterministic"] = {{"duration_s", seconds}};
    write_json("report.json", full);
    std::cout << full.dump(2) << '\n';
    return code;
  }

 private:
  std::string command_;
  std::string out_dir_;
  ordered_json report_;
};

ExactRF parse_controller(const std::string& text) {
  try {
    return parse_rational_function(text);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot parse controller: ") + e.what());
  }
}

/// Empty when c stabilises s^-m, else the failing gang-of-four members.
std::string stability_diagnostic(const ExactRF& c, int m) {
  const auto report = internal_stability(s_power(-m), c);
  std::string failing;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!report.each_stable[k]) {
      if (!failing.empty()) failing += ", ";
      failing += std::string(StabilityReport<Rational>::kNames[k]);
    }
  }
  return failing;
}

int cmd_verify_lemma(Run& run, int n) {
  run.parameters()["n"] = n;
  const bool ok = bidir::verify_factorization(n);
  run.verdicts()["factorization"] = ok;
  if (!ok) spdlog::error("I + X H X^T != U L / s^2 for n = {}", n);
  return ok ? kExitOk : kExitVerdict;
}

int cmd_sensitivity(Run& run, int n) {
  run.parameters()["n"] = n;
  const bidir::RationalMatrix s = bidir::sensitivity_matrix(n);
  const bool corner = s(0, 0) == parse_rational_function("s/(s+1)");
  ordered_json doc;
  doc["schema"] = "sensitivity/1";
  doc["n"] = n;
  doc["entries"] = bidir::matrix_to_json(s);
  run.write_json("sensitivity.json", doc);
  run.verdicts()["top_left_is_s_over_s_plus_1"] = corner;
  return corner ? kExitOk : kExitVerdict;
}

int cmd_bode(Run& run, int n, double wmin, double wmax, int ppd) {
  run.parameters()["n"] = n;
  run.parameters()["wmin"] = wmin;
  run.parameters()["wmax"] = wmax;
  run.parameters()["ppd"] = ppd;
  if (!(wmin > 0.0) || !(wmax > wmin)) throw UsageError("need 0 < wmin < wmax");
  const FrequencyGrid grid = FrequencyGrid::log_uniform(wmin, wmax, ppd);
  const bidir::BodeTable table = bidir::bode_table(bidir::sensitivity_matrix(n), grid);
  run.write_file("bode.csv", [&](std::ostream& os) { bidir::write_bode_csv(os, table); });
  run.write_json("bode.json", bidir::bode_report(table, n));
  run.verdicts()["below_first_order_bound"] = table.below_first_order_bound;
  run.verdicts()["worst_excess"] = table.worst_excess;
  return table.below_first_order_bound ? kExitOk : kExitVerdict;
}

int cmd_synth(Run& run, int m, double eps, double bw, int count) {
  run.parameters()["m"] = m;
  run.parameters()["eps"] = eps;
  run.parameters()["bw"] = bw;
  run.parameters()["count"] = count;
  synthesis::SynthesisResult result;
  try {
    result = synthesis::synthesize(m, eps, bw, count);
  } catch (const SearchExhausted& e) {
    spdlog::error("{}", e.what());
    run.verdicts()["search"] = false;
    return kExitVerdict;
  }
  run.write_json("family.json", synthesis::family_to_json(result));
  run.verdicts()["certificate"] = synthesis::certificate_to_json(result.family.base_certificate);
  run.verdicts()["max_product"] = result.product.max_product;
  run.verdicts()["product_check"] = result.product.pass;
  if (!result.product.pass) {
    spdlog::error("cascade product {} exceeds 1 + {}", result.product.max_product, eps);
  }
  return result.product.pass ? kExitOk : kExitVerdict;
}

int cmd_family_check(Run& run, const std::string& path, std::optional<double> eps_flag, std::optional<int> n) {
  run.parameters()["family"] = path;
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed family document: ") + e.what());
  }
  const synthesis::ControllerFamily fam = synthesis::family_from_json(doc);
  const double eps = eps_flag.value_or(doc.at("epsilon").get<double>());
  run.parameters()["eps"] = eps;
  run.parameters()["n"] = n.value_or(static_cast<int>(fam.controllers.size()));
  const synthesis::ProductCheck check = synthesis::family_product_check(fam, synthesis::family_grid(fam), eps, n);
  run.verdicts()["max_product"] = check.max_product;
  run.verdicts()["argmax_omega"] = check.argmax_omega;
  run.verdicts()["product_check"] = check.pass;
  return check.pass ? kExitOk : kExitVerdict;
}

int cmd_homogeneous(Run& run, int m, const std::string& c_text, int n) {
  run.parameters()["m"] = m;
  run.parameters()["c"] = c_text;
  run.parameters()["n"] = n;
  const ExactRF c = parse_controller(c_text);
  if (const std::string failing = stability_diagnostic(c, m); !failing.empty()) {
    spdlog::error("c = {} does not internally stabilise s^-{}: unstable {}", c_text, m, failing);
    run.verdicts()["internally_stable"] = false;
    run.verdicts()["unstable_maps"] = failing;
    return kExitVerdict;
  }
  run.verdicts()["internally_stable"] = true;
  const cascade::GrowthTable table = cascade::homogeneous_growth(c, m, n);
  run.write_file("homogeneous.csv", [&](std::ostream& os) {
    os << "n,norm,omega0\n";
    for (const auto& row : table.rows) os << fmt::format("{},{:.17g},{:.17g}\n", row.n, row.norm, table.omega0);
  });
  run.verdicts()["peak"] = table.peak;
  run.verdicts()["omega0"] = table.omega0;
  run.verdicts()["exponential_growth"] = table.exponential_growth;
  const cascade::MiddletonResult mid = cascade::middleton_integral(integrator_loop_t(c, m));
  run.verdicts()["middleton_integral"] = mid.value;
  run.verdicts()["middleton_truncation_bound"] = mid.truncation_bound;
  return kExitOk;
}

int cmd_middleton(Run& run, int m, const std::string& c_text) {
  run.parameters()["m"] = m;
  run.parameters()["c"] = c_text;
  const ExactRF c = parse_controller(c_text);
  if (const std::string failing = stability_diagnostic(c, m); !failing.empty()) {
    spdlog::error("c = {} does not internally stabilise s^-{}: unstable {}", c_text, m, failing);
    run.verdicts()["internally_stable"] = false;
    return kExitVerdict;
  }
  const cascade::MiddletonResult mid = cascade::middleton_integral(integrator_loop_t(c, m));
  run.verdicts()["integral"] = mid.value;
  run.verdicts()["truncation_bound"] = mid.truncation_bound;
  run.verdicts()["omega_lo"] = mid.omega_lo;
  run.verdicts()["omega_hi"] = mid.omega_hi;
  // Middleton's inequality only constrains m >= 2.
  const bool ok = m < 2 || mid.value >= -1e-3;
  run.verdicts()["nonnegative"] = ok;
  return ok ? kExitOk : kExitVerdict;
}

int cmd_pd_random(Run& run, int n, double kmin, double kmax, int trials, std::uint64_t seed, double wmin,
                  double wmax, int ppd) {
  auto& p = run.parameters();
  p["n"] = n;
  p["kmin"] = kmin;
  p["kmax"] = kmax;
  p["trials"] = trials;
  p["seed"] = seed;
  p["wmin"] = wmin;
  p["wmax"] = wmax;
  p["ppd"] = ppd;
  if (!(kmin > 0.0) || !(kmax >= kmin)) throw UsageError("need 0 < kmin <= kmax");
  if (!(wmin > 0.0) || !(wmax > wmin)) throw UsageError("need 0 < wmin < wmax");
  const cascade::MistuneReport report =
      cascade::pd_mistune_experiment(n, kmin, kmax, trials, seed, FrequencyGrid::log_uniform(wmin, wmax, ppd));
  run.write_file("pd_random.csv", [&](std::ostream& os) { cascade::write_mistune_csv(os, report); });
  const cascade::CascadeProfile homogeneous = cascade::cascade_gain(
      std::vector<ExactRF>(static_cast<std::size_t>(n), parse_rational_function("1+s")), 2,
      FrequencyGrid::log_uniform(wmin, wmax, ppd));
  run.verdicts()["median_peak"] = report.median_peak;
  run.verdicts()["max_peak"] = report.max_peak;
  run.verdicts()["homogeneous_peak"] = homogeneous.peak;
  run.verdicts()["median_below_homogeneous"] = report.median_peak < homogeneous.peak;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Heterogeneous control of vehicle platoons"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out = ".";
  app.add_option("--out", out, "Directory for output files")->capture_default_str();

  int n = 0;
  auto* verify = app.add_subcommand("verify-lemma", "Check I + X H X^T = U L / s^2 exactly");
  verify->add_option("--n", n, "Platoon length")->required()->check(CLI::PositiveNumber);

  auto* sens = app.add_subcommand("sensitivity", "Export the entries of S_n as JSON");
  sens->add_option("--n", n, "Platoon length")->required()->check(CLI::PositiveNumber);

  double wmin = 1e-3;
  double wmax = 1e3;
  int ppd = 100;
  auto* bode = app.add_subcommand("bode", "Bode magnitudes of every entry of S_n");
  bode->add_option("--n", n, "Platoon length")->required()->check(CLI::PositiveNumber);
  bode->add_option("--wmin", wmin)->capture_default_str();
  bode->add_option("--wmax", wmax)->capture_default_str();
  bode->add_option("--ppd", ppd, "Points per decade")->capture_default_str()->check(CLI::PositiveNumber);

  int m = 4;
  double eps = 0.1;
  double bw = 1.0;
  int count = 10;
  auto* synth = app.add_subcommand("synth", "Build and certify a mistuned controller family");
  synth->add_option("--m", m, "Plant order")->required()->check(CLI::PositiveNumber);
  synth->add_option("--eps", eps)->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--bw", bw, "Bandwidth limit (rad/s)")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--count", count)->capture_default_str()->check(CLI::Range(1, synthesis::kMaxFamilyCount));

  std::string family_path;
  std::optional<double> check_eps;
  std::optional<int> check_n;
  auto* fcheck = app.add_subcommand("family-check", "Recompute the cascade product of an exported family");
  fcheck->add_option("--family", family_path, "family.json from synth")->required();
  fcheck->add_option("--eps", check_eps, "Budget (default: from the file)")->check(CLI::PositiveNumber);
  fcheck->add_option("--n", check_n, "Product length (default: whole family)")->check(CLI::NonNegativeNumber);

  std::string c_text;
  int n_max = 20;
  auto* homog = app.add_subcommand("homogeneous", "Growth of identical cascades and the Middleton integral");
  homog->add_option("--m", m, "Plant order")->required()->check(CLI::PositiveNumber);
  homog->add_option("--c", c_text, "Controller, e.g. \"1+s\"")->required();
  homog->add_option("--n", n_max, "Largest platoon length")->capture_default_str()->check(CLI::PositiveNumber);

  auto* midd = app.add_subcommand("middleton", "Complementary sensitivity integral for one controller");
  midd->add_option("--m", m, "Plant order")->required()->check(CLI::PositiveNumber);
  midd->add_option("--c", c_text, "Controller")->required();

  int pd_n = 20;
  double kmin = 0.5;
  double kmax = 2.0;
  int trials = 100;
  std::uint64_t seed = 42;
  double pd_wmin = 1e-2;
  double pd_wmax = 1e2;
  int pd_ppd = 200;
  auto* pd = app.add_subcommand("pd-random", "Randomly mistuned PD controllers c_k = 1 + k_k s on s^-2");
  pd->add_option("--n", pd_n)->capture_default_str()->check(CLI::PositiveNumber);
  pd->add_option("--kmin", kmin)->capture_default_str();
  pd->add_option("--kmax", kmax)->capture_default_str();
  pd->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  pd->add_option("--seed", seed)->capture_default_str();
  pd->add_option("--wmin", pd_wmin)->capture_default_str();
  pd->add_option("--wmax", pd_wmax)->capture_default_str();
  pd->add_option("--ppd", pd_ppd)->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), out);
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (sub == verify) {
      code = cmd_verify_lemma(run, n);
    } else if (sub == sens) {
      code = cmd_sensitivity(run, n);
    } else if (sub == bode) {
      code = cmd_bode(run, n, wmin, wmax, ppd);
    } else if (sub == synth) {
      code = cmd_synth(run, m, eps, bw, count);
    } else if (sub == fcheck) {
      code = cmd_family_check(run, family_path, check_eps, check_n);
    } else if (sub == homog) {
      code = cmd_homogeneous(run, m, c_text, n_max);
    } else if (sub == midd) {
      code = cmd_middleton(run, m, c_text);
    } else if (sub == pd) {
      code = cmd_pd_random(run, pd_n, kmin, kmax, trials, seed, pd_wmin, pd_wmax, pd_ppd);
    }
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const InvalidRange& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    code = kExitVerdict;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    return run.finish(code, seconds);
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  }
}
