// curvelog — exact invariants of reduced plane curve germs relative to a
// smooth boundary divisor V(y).
//
// Subcommands:
//   report          invariant report for one germ (JSON or text)
//   verify-catalog  re-derive and check the classified low-delta families
//
// Exit codes: 0 success; 2 invalid input (syntax, non-reduced germ, bad
// flags); 3 internal identity violation or computation cap.  verify-catalog
// returns 1 when any catalog entry fails.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvelog/catalog.hpp"
#include "curvelog/parse.hpp"
#include "curvelog/render.hpp"

namespace {

using curvelog::BiPoly;
using curvelog::CurveGerm;
using curvelog::Error;
using curvelog::ErrorCode;
using curvelog::FieldElem;
using curvelog::IdealBasis;
using curvelog::IdealRel;
using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::NotThroughOrigin:
    case ErrorCode::DivisorComponent:
    case ErrorCode::NonReduced:
    case ErrorCode::NonReducedInput:
    case ErrorCode::DegreeTooLow:
      return 2;
    default:
      return 3;
  }
}

void print_error(const Error& e) {
  if (e.code() == ErrorCode::NonReduced || e.code() == ErrorCode::NonReducedInput)
    std::cerr << "error: non-reduced germ — " << e.what() << "\n";
  else
    std::cerr << "error: " << e.what() << "\n";
}

std::vector<std::string> basis_strings(const IdealBasis& b) {
  std::vector<std::string> out;
  out.reserve(b.gens.size());
  for (const auto& g : b.gens) out.push_back(g.to_string());
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// report

struct ReportOptions {
  std::string poly;
  std::string what = "all";
  std::string format = "text";
  std::string dot_path;
  long wmax_check = 0;
  bool has_wmax_check = false;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct RandomCheck {
  std::uint64_t seed = 0;
  bool pass = true;
  std::vector<std::string> polys;
  std::vector<long> tau_logs, tes_logs;
  std::vector<std::string> failures;
};

// Seeded sweep of trinomial germs y^l + c·y^l'·x^k' + x^k checking the
// colength identities, the ideal chain, and the deformation-count sandwich
// on each sample.  Degenerate exponent lines and the finitely many repeated-
// component coefficients are skipped deterministically.
RandomCheck random_identity_check(std::uint64_t seed, int count) {
  RandomCheck rc;
  rc.seed = seed;
  std::mt19937_64 rng(seed);
  while (static_cast<int>(rc.polys.size()) < count) {
    const int l = 2 + static_cast<int>(rng() % 3);
    const int k = 2 + static_cast<int>(rng() % 7);
    const int kp = 1 + static_cast<int>(rng() % (k - 1));
    const int lp_low = (l + 1) / 2;
    const int lp = lp_low + static_cast<int>(rng() % (l - lp_low + 1));
    const long c = (1 + static_cast<long>(rng() % 9)) * (rng() % 2 ? 1 : -1);
    if (k * lp + kp * l == k * l) continue;  // quasihomogeneous exponent line
    const BiPoly F = BiPoly::y(l) + BiPoly(FieldElem(c)) * BiPoly::y(lp) * BiPoly::x(kp) +
                     BiPoly::x(k);
    CurveGerm g;
    try {
      g = curvelog::normalize(F);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonReduced) continue;  // resample
      throw;
    }
    const curvelog::InvariantReport rep = curvelog::tau_report(g);
    const long tes = curvelog::tes_log(g);
    const auto ec_len = curvelog::colength(curvelog::ideal_ec(g));
    const std::string text = F.to_string();
    const IdealRel chain = curvelog::ideal_compare(rep.ea, rep.ea_log);
    if (chain != IdealRel::Equal && chain != IdealRel::LeftInRight)
      rc.failures.push_back(text + ": Tjurina ideal not inside the logarithmic ideal");
    if (!ec_len)
      rc.failures.push_back(text + ": valuation ideal has infinite colength");
    else if (!(rep.tau_log >= tes && tes >= *ec_len))
      rc.failures.push_back(text + ": deformation-count sandwich violated");
    rc.polys.push_back(text);
    rc.tau_logs.push_back(rep.tau_log);
    rc.tes_logs.push_back(tes);
  }
  rc.pass = rc.failures.empty();
  return rc;
}

int cmd_report(const ReportOptions& opt) {
  const BiPoly F = curvelog::parse_poly(opt.poly);
  const CurveGerm g = curvelog::normalize(F);

  curvelog::InvariantReport rep = curvelog::tau_report(g);
  rep.delta = curvelog::delta_res(g.F);
  rep.tes_cup = curvelog::tau_es(BiPoly::y() * g.F);
  rep.tes_log = curvelog::tes_log(g);

  const bool want_ideals = opt.what == "all" || opt.what == "ideals";
  const bool want_deformation = opt.what == "all" || opt.what == "deformation";
  const bool want_resolution = opt.what == "all" || opt.what == "resolution";

  if (want_ideals) {
    rep.ec = curvelog::ideal_ec(g);
    rep.cd = curvelog::ideal_cd(g);
  }

  curvelog::DeformationFamily family;
  if (want_deformation) family = curvelog::semiuniversal_family(g, curvelog::FamilyFlavor::Log);

  curvelog::ResolutionTree tree;
  if (want_resolution || !opt.dot_path.empty()) tree = curvelog::resolve(BiPoly::y() * g.F);

  std::optional<curvelog::VerificationReport> stability;
  if (opt.has_wmax_check) stability = curvelog::verify_catalog(curvelog::build_catalog(opt.wmax_check));

  std::optional<RandomCheck> random_check;
  if (opt.has_seed) random_check = random_identity_check(opt.seed, 25);

  // All computation succeeded — only now touch stdout and the filesystem.
  if (!opt.dot_path.empty()) {
    std::ofstream dot(opt.dot_path);
    if (!dot) {
      std::cerr << "error: cannot write DOT file: " << opt.dot_path << "\n";
      return 2;
    }
    curvelog::write_dot(dot, tree);
  }

  if (opt.format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["input"] = {{"poly", opt.poly}, {"w", rep.w}};
    ordered_json inv;
    inv["tau"] = rep.tau;
    inv["tau_fix"] = rep.tau_fix;
    inv["tau_rel_D"] = rep.tau_rel_D;
    inv["tau_rel_DP"] = rep.tau_rel_DP;
    inv["tau_log"] = rep.tau_log;
    inv["tau_cup"] = rep.tau_cup;
    inv["tes_cup"] = *rep.tes_cup;
    inv["tes_log"] = *rep.tes_log;
    inv["delta"] = *rep.delta;
    j["invariants"] = inv;
    if (want_ideals) {
      ordered_json ideals;
      ideals["ea"] = basis_strings(rep.ea);
      ideals["ea_fix"] = basis_strings(rep.ea_fix);
      ideals["rel_D"] = basis_strings(rep.rel_D);
      ideals["rel_DP"] = basis_strings(rep.rel_DP);
      ideals["ea_log"] = basis_strings(rep.ea_log);
      ideals["ec"] = basis_strings(*rep.ec);
      ideals["cd"] = basis_strings(*rep.cd);
      j["ideals"] = ideals;
    }
    if (want_deformation) {
      ordered_json d;
      d["k"] = family.k;
      d["basis"] = basis_strings(IdealBasis{family.basis, curvelog::MonomialOrder::lex_yx()});
      d["template"] = family.family_text;
      j["deformation"] = d;
    }
    if (want_resolution) {
      ordered_json nodes = ordered_json::array();
      for (const auto& n : tree.nodes) {
        ordered_json node;
        node["id"] = n.id;
        node["parent"] = n.parent;
        node["depth"] = n.depth;
        node["chart"] = n.chart;
        node["m"] = n.m;
        node["exc"] = n.exc;
        node["rtt"] = n.rtt;
        node["free"] = n.free_point;
        node["satellite"] = n.satellite;
        node["essential"] = n.essential;
        node["conj"] = n.conj;
        nodes.push_back(node);
      }
      j["resolution"] = {{"nodes", nodes}};
    }
    if (stability) {
      ordered_json checks = ordered_json::array();
      bool all = true;
      for (const auto& f : stability->family_checks) {
        checks.push_back({{"key", f.key}, {"pass", f.pass}, {"detail", f.detail}});
        all = all && f.pass;
      }
      j["wmax_check"] = {{"wmax", opt.wmax_check}, {"pass", all}, {"family_checks", checks}};
    }
    if (random_check) {
      ordered_json germs = ordered_json::array();
      for (std::size_t i = 0; i < random_check->polys.size(); ++i)
        germs.push_back({{"poly", random_check->polys[i]},
                         {"tau_log", random_check->tau_logs[i]},
                         {"tes_log", random_check->tes_logs[i]}});
      j["random_check"] = {{"seed", random_check->seed},
                           {"count", random_check->polys.size()},
                           {"pass", random_check->pass},
                           {"germs", germs}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::ostringstream out;
    out << "input: " << opt.poly << "\n";
    out << "w: " << rep.w << "\n";
    out << "tau: " << rep.tau << "\n";
    out << "tau_fix: " << rep.tau_fix << "\n";
    out << "tau_rel_D: " << rep.tau_rel_D << "\n";
    out << "tau_rel_DP: " << rep.tau_rel_DP << "\n";
    out << "tau_log: " << rep.tau_log << "\n";
    out << "tau_cup: " << rep.tau_cup << "\n";
    out << "tes_cup: " << *rep.tes_cup << "\n";
    out << "tes_log: " << *rep.tes_log << "\n";
    out << "delta: " << *rep.delta << "\n";
    if (want_ideals) {
      out << "ideals:\n";
      out << "  ea: " << join(basis_strings(rep.ea)) << "\n";
      out << "  ea_fix: " << join(basis_strings(rep.ea_fix)) << "\n";
      out << "  rel_D: " << join(basis_strings(rep.rel_D)) << "\n";
      out << "  rel_DP: " << join(basis_strings(rep.rel_DP)) << "\n";
      out << "  ea_log: " << join(basis_strings(rep.ea_log)) << "\n";
      out << "  ec: " << join(basis_strings(*rep.ec)) << "\n";
      out << "  cd: " << join(basis_strings(*rep.cd)) << "\n";
    }
    if (want_deformation) {
      out << "deformation:\n";
      out << "  k: " << family.k << "\n";
      out << "  basis: " << join(basis_strings(IdealBasis{family.basis, curvelog::MonomialOrder::lex_yx()}))
          << "\n";
      out << "  template: " << family.family_text << "\n";
    }
    if (want_resolution) {
      out << "resolution:\n";
      for (const auto& n : tree.nodes)
        out << "  node " << n.id << ": parent=" << n.parent << " m=" << n.m << " rtt=" << n.rtt
            << " " << (n.satellite ? "sat" : "free") << " " << (n.essential ? "ess" : "-")
            << " deg=" << n.conj << "\n";
    }
    if (stability) {
      bool all = true;
      for (const auto& f : stability->family_checks) all = all && f.pass;
      out << "wmax_check: " << (all ? "pass" : "FAIL") << " ("
          << stability->family_checks.size() << " families at wmax " << opt.wmax_check << ")\n";
      for (const auto& f : stability->family_checks)
        out << "  " << f.key << ": " << (f.pass ? "stable" : f.detail) << "\n";
    }
    if (random_check) {
      out << "random_check: " << (random_check->pass ? "pass" : "FAIL") << " ("
          << random_check->polys.size() << " germs, seed " << random_check->seed << ")\n";
      for (const auto& fail : random_check->failures) out << "  " << fail << "\n";
    }
    std::cout << out.str();
  }

  if (stability) {
    for (const auto& f : stability->family_checks) {
      if (!f.pass) {
        std::cerr << "error: catalog family " << f.key << " is unstable: " << f.detail << "\n";
        return 3;
      }
    }
  }
  if (random_check && !random_check->pass) {
    for (const auto& fail : random_check->failures) std::cerr << "error: " << fail << "\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify-catalog

int cmd_verify_catalog(long wmax, const std::string& format) {
  const auto entries = curvelog::build_catalog(wmax);
  const curvelog::VerificationReport report = curvelog::verify_catalog(entries);

  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["wmax"] = wmax;
    ordered_json rows = ordered_json::array();
    long passed = 0;
    for (const auto& e : report.entries) {
      ordered_json row;
      row["label"] = e.label;
      row["pass"] = e.pass;
      row["delta"] = e.delta;
      row["tau_log"] = e.tau_log;
      row["tes_log"] = e.tes_log;
      if (e.tes_with_boundary >= 0)
        row["tes_with_boundary"] = e.tes_with_boundary;
      else
        row["tes_with_boundary"] = nullptr;
      row["certify"] = e.certify;
      row["diffs"] = e.diffs;
      rows.push_back(row);
      if (e.pass) ++passed;
    }
    j["entries"] = rows;
    ordered_json checks = ordered_json::array();
    for (const auto& f : report.family_checks)
      checks.push_back({{"key", f.key}, {"pass", f.pass}, {"detail", f.detail}});
    j["family_checks"] = checks;
    j["all_pass"] = report.all_pass;
    j["summary"] = std::to_string(report.entries.size()) + " entries, " + std::to_string(passed) +
                   " passed";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report.render();
  }
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "curvelog: exact deformation invariants of reduced plane curve germs\n"
      "relative to the smooth boundary divisor V(y)"};
  app.require_subcommand(1);

  ReportOptions opt;
  CLI::App* rep = app.add_subcommand("report", "Compute the invariant report for one germ");
  rep->add_option("--poly", opt.poly,
                  "Defining polynomial in x and y with rational coefficients, e.g. \"y^3+x^2\"")
      ->required();
  rep->add_option("--what", opt.what, "Which sections to emit")
      ->check(CLI::IsMember({"all", "tau", "tes", "ideals", "deformation", "resolution"}))
      ->capture_default_str();
  rep->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  rep->add_option("--dot", opt.dot_path,
                  "Also write the resolution tree of the curve-plus-boundary union as Graphviz "
                  "DOT to this path");
  CLI::Option* wmax_opt =
      rep->add_option("--wmax-check", opt.wmax_check,
                      "Additionally verify that the classified families have contact-order-stable "
                      "invariants up to this bound (minimum 8); instability exits 3");
  CLI::Option* seed_opt =
      rep->add_option("--seed", opt.seed,
                      "Additionally run a seeded randomized trinomial corpus (25 germs) through "
                      "the colength identities and inclusion chain; a violation exits 3");

  long wmax = 10;
  std::string vc_format = "text";
  CLI::App* vc = app.add_subcommand(
      "verify-catalog", "Re-derive every classified low-delta family and compare all invariants");
  vc->add_option("--wmax", wmax, "Contact-order bound for the parametrized families (minimum 8)")
      ->capture_default_str();
  vc->add_option("--format", vc_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  opt.has_wmax_check = wmax_opt->count() > 0;
  opt.has_seed = seed_opt->count() > 0;

  try {
    if (rep->parsed()) return cmd_report(opt);
    return cmd_verify_catalog(wmax, vc_format);
  } catch (const Error& e) {
    print_error(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (...) {
    std::cerr << "error: unexpected internal failure\n";
    return 3;
  }
}
