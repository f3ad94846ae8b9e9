#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subshift/certificate.hpp"
#include "subshift/verify.hpp"

namespace {

using namespace subshift;

/** Relative output paths land under SUBSHIFT_OUT_DIR when it is set. */
std::string resolve_out_path(const std::string& path) {
  const char* dir = std::getenv("SUBSHIFT_OUT_DIR");
  if (!dir || !*dir || path.empty() || path.front() == '/') return path;
  std::string prefix(dir);
  if (prefix.back() != '/') prefix += '/';
  return prefix + path;
}

std::string approx(const Rat& v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v.convert_to<double>());
  return buf;
}

struct ConstructArgs {
  int group_dim = 1;
  int poly_dim = 1;
  int depth = 1;
  std::string mode = "paper";
  std::string window_cap;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  BuildConfig cfg;
  cfg.group_dim = a.group_dim;
  cfg.poly_dim = a.poly_dim;
  cfg.mode = parse_mode(a.mode);
  if (a.depth < 1) throw config_error("construct needs --depth >= 1");
  cfg.depth = a.depth;
  if (!a.window_cap.empty()) {
    try {
      cfg.window_cap = parse_int(a.window_cap);
    } catch (const std::invalid_argument&) {
      throw config_error("bad --window-cap '" + a.window_cap + "'");
    }
  }
  Construction c = Construction::build(cfg);
  std::string path = resolve_out_path(a.out);
  emit_certificate(make_certificate(c), path);
  std::cout << "wrote " << path << "\n";
  std::string sides = "sides";
  for (int k = 0; k <= c.depth(); ++k) sides += " " + int_str(c.tiling().side(k));
  std::cout << sides << "\n";
  return 0;
}

struct VerifyArgs {
  std::string cert;
  std::string suite = "all";
  std::string report;
  std::vector<int> scales;
  int samples = 50;
  std::uint64_t seed = 0x5eedULL;
  bool update_cert = false;
};

int run_verify(const VerifyArgs& a) {
  Certificate cert = load_certificate(a.cert);
  Construction c = reconstruct(cert);
  VerifyOptions opt;
  opt.scales = a.scales;
  opt.samples = a.samples;
  opt.seed = a.seed;

  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else {
    suite_exit_code(a.suite);  // validates the name
    suites.push_back(a.suite);
  }

  int exit_code = 0;
  nlohmann::ordered_json report_suites = nlohmann::ordered_json::array();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const std::string& name : suites) {
    SuiteResult res = run_suite(c, name, opt);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& chk : res.checks) {
      std::cout << (chk.ok ? "ok " : "FAIL ") << chk.name << " " << chk.detail << "\n";
      checks.push_back({{"name", chk.name}, {"ok", chk.ok}, {"detail", chk.detail}});
    }
    bool sok = res.ok();
    if (!sok && exit_code == 0) exit_code = static_cast<int>(res.code);
    report_suites.push_back({{"name", name}, {"ok", sok}, {"checks", checks}});
    summary[name] = sok ? "ok" : "FAIL";
  }
  std::cout << (exit_code == 0 ? "verify: ok" : "verify: FAIL") << "\n";

  if (!a.report.empty()) {
    nlohmann::ordered_json doc;
    doc["certificate"] = a.cert;
    doc["suites"] = report_suites;
    doc["exit_code"] = exit_code;
    std::string path = resolve_out_path(a.report);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write report to " + path);
    out << doc.dump(2) << "\n";
  }
  if (a.update_cert) {
    cert.results = nlohmann::ordered_json{{"passed", exit_code == 0 ? "yes" : "no"},
                                          {"suites", summary},
                                          {"samples", std::to_string(a.samples)},
                                          {"seed", std::to_string(a.seed)}};
    emit_certificate(cert, a.cert);
  }
  return exit_code;
}

struct InspectArgs {
  int group_dim = 1;
  int poly_dim = 1;
  int depth = 2;
  std::string mode = "paper";
  std::string window;
  bool point = false;
  bool approx = false;
};

int run_inspect(const InspectArgs& a) {
  BuildConfig cfg;
  cfg.group_dim = a.group_dim;
  cfg.poly_dim = a.poly_dim;
  cfg.mode = parse_mode(a.mode);
  cfg.depth = a.depth;
  Construction c = Construction::build(cfg);
  Window w = Window::parse(a.window, cfg.group_dim);
  std::vector<GroupPoint> pts = w.points(cfg.window_cap);
  for (const GroupPoint& g : pts) {
    std::string line = g.str() + "  ";
    if (a.point) {
      std::vector<Rat> v = c.point_value(g, c.depth());
      for (size_t i = 0; i < v.size(); ++i) line += (i ? "," : "") + dyadic_str(v[i]);
      if (a.approx) {
        line += "  ~ ";
        for (size_t i = 0; i < v.size(); ++i) line += (i ? "," : "") + approx(v[i]);
      }
    } else {
      DyadicBox box = c.resolve_box(g, c.depth());
      line += box.str();
      if (a.approx) {
        line += "  ~ ";
        for (int i = 0; i < box.dim(); ++i) {
          const DyadicInterval& iv = box.axes[static_cast<size_t>(i)];
          if (i) line += " x ";
          line += "[" + approx(iv.left()) + ", " + approx(iv.right()) + "]";
        }
      }
    }
    std::cout << line << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inductive box-tiling subshift toolkit"};
  app.footer(
      "exit codes: 0 ok, 2 bad configuration, 3 infeasible schedule, 4 depth limit,\n"
      "5 certificate unreadable, 6 certificate version, 7 certificate invariant,\n"
      "10-15 first failing verify suite (tilings, schedule, blocks, return-times,\n"
      "density, mdim)");
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* cons = app.add_subcommand("construct", "build a hierarchy and write its certificate");
  cons->add_option("--d", ca.group_dim, "lattice dimension (1 or 2)");
  cons->add_option("--dp", ca.poly_dim, "value-cube dimension (1 or 2)");
  cons->add_option("--mode", ca.mode, "schedule mode: paper or toy");
  cons->add_option("--depth", ca.depth, "levels to construct (>= 1)")->required();
  cons->add_option("--window-cap", ca.window_cap, "largest window volume renders may enumerate");
  cons->add_option("--out", ca.out, "certificate output path")->required();

  VerifyArgs va;
  CLI::App* ver = app.add_subcommand("verify", "check a certificate with the verification suites");
  ver->add_option("--cert", va.cert, "certificate path")->required();
  ver->add_option("--suite", va.suite,
                  "all or one of tilings, schedule, blocks, return-times, density, mdim");
  ver->add_option("--n", va.scales, "scales for the density and mdim suites");
  ver->add_option("--sample", va.samples, "random translates for the syndetic check");
  ver->add_option("--seed", va.seed, "rng seed");
  ver->add_option("--report", va.report, "write a JSON report to this path");
  ver->add_flag("--update-cert", va.update_cert, "record suite results inside the certificate");

  InspectArgs ia;
  CLI::App* ins = app.add_subcommand("inspect", "resolve a window of coordinates to boxes");
  ins->add_option("--d", ia.group_dim, "lattice dimension (1 or 2)");
  ins->add_option("--dp", ia.poly_dim, "value-cube dimension (1 or 2)");
  ins->add_option("--mode", ia.mode, "schedule mode: paper or toy");
  ins->add_option("--depth", ia.depth, "levels to construct");
  ins->add_option("--window", ia.window, "a..b per axis, comma separated")->required();
  ins->add_flag("--point", ia.point, "print canonical values instead of boxes");
  ins->add_flag("--approx", ia.approx, "append non-normative decimal approximations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cons->parsed()) return run_construct(ca);
    if (ver->parsed()) return run_verify(va);
    if (ins->parsed()) return run_inspect(ia);
    return 2;
  } catch (const certificate_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config);
  } catch (const infeasible_schedule_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::infeasible_schedule);
  } catch (const depth_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::depth_limit);
  } catch (const thin_box_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::depth_limit);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config);
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
