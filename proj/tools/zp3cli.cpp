// zp3: command-line front end for the Z_p x| Z_3 invariant-theory drivers.
//
// Exit codes: 0 = every verdict PASS or FINDING, 1 = some verdict FAIL,
// 2 = usage error (malformed flags, module specs, sequences or points).

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zp3/invariants.hpp"
#include "zp3/separating.hpp"
#include "zp3/verify.hpp"
#include "zp3/zsum.hpp"

namespace {

using nlohmann::ordered_json;
using namespace zp3;

long now_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

RankMode parse_mode(const std::string& s) {
  if (s == "exact") return RankMode::Exact;
  if (s == "modular") return RankMode::Modular;
  if (s == "certified") return RankMode::Certified;
  throw CLI::ValidationError("--mode", "expected exact | modular | certified");
}

struct Tier {
  std::string name = "standard";
  bool allows(long p, int k) const { return name == "slow" || (p <= 7 && k <= 1); }
  int pick(int tiny, int standard, int slow) const {
    if (name == "tiny") return tiny;
    if (name == "slow") return slow;
    return standard;
  }
};

// ---------------------------------------------------------------------------
// output projections

void emit_report(const VerificationReport& r, const std::string& format) {
  if (format == "json") {
    std::cout << r.to_json() << "\n";
  } else if (format == "csv") {
    std::cout << "monomial,degree,outcome,mode\n";
    for (const ReportInstance& in : r.instances)
      std::cout << in.monomial << "," << in.degree << "," << in.outcome << "," << in.mode << "\n";
    std::cout << "verdict," << r.verdict << ",,\n";
  } else {
    std::cout << r.statement;
    for (auto& [k, v] : r.params) std::cout << "  " << k << "=" << v;
    std::cout << "  window=[" << r.window_lo << "," << r.window_hi << "]\n";
    for (const ReportInstance& in : r.instances)
      std::cout << "  d=" << in.degree << "  " << in.monomial << "  " << in.outcome << "  ("
                << in.mode << ")\n";
    std::cout << "verdict: " << r.verdict << "  [" << r.timing_ms << " ms]\n";
  }
}

int report_exit(const VerificationReport& r) { return r.ok() ? 0 : 1; }

// ---------------------------------------------------------------------------
// dims

int run_dims(long p, std::optional<long> r_over, const std::string& mspec, int max_degree,
             const std::string& format) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec g(p, r_over ? *r_over : find_r(p));
  InvariantRing ring(g, ModuleSpec::parse(mspec));

  struct Row {
    int d;
    long dim_I;
    int dim_R;
    long oracle;
  };
  std::vector<Row> rows;
  bool all_agree = true;
  for (int d = 1; d <= max_degree; d++) {
    Row row{d, ring.dim_I(d), ring.dim_R(d), ring.burnside_dim(d)};
    all_agree = all_agree && row.dim_R == row.oracle;
    rows.push_back(row);
  }
  std::string verdict = all_agree ? "PASS" : "FAIL";

  if (format == "json") {
    ordered_json j;
    j["statement"] = "dims";
    j["params"] = {{"p", std::to_string(p)},
                   {"r", std::to_string(g.r)},
                   {"module", mspec},
                   {"max_degree", std::to_string(max_degree)}};
    j["rows"] = ordered_json::array();
    for (const Row& row : rows)
      j["rows"].push_back(
          {{"d", row.d}, {"dim_I", row.dim_I}, {"dim_R", row.dim_R}, {"oracle", row.oracle}});
    j["verdict"] = verdict;
    j["timing_ms"] = now_ms(t0);
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "d,dimI,dimR,oracle\n";
    for (const Row& row : rows)
      std::cout << row.d << "," << row.dim_I << "," << row.dim_R << "," << row.oracle << "\n";
  } else {
    std::cout << "dims  p=" << p << "  module=" << mspec << "\n";
    for (const Row& row : rows)
      std::cout << "  d=" << row.d << "  dim I_d=" << row.dim_I << "  dim R_d=" << row.dim_R
                << "  oracle=" << row.oracle << "\n";
    std::cout << "verdict: " << verdict << "\n";
  }
  return all_agree ? 0 : 1;
}

// ---------------------------------------------------------------------------
// beta

int run_beta(long p, const std::string& mspec, int k, std::optional<int> d_lo,
             std::optional<int> d_hi, const std::string& mode_str, const std::string& format) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec g(p, find_r(p));
  InvariantRing ring(g, ModuleSpec::parse(mspec));
  int lo = d_lo ? *d_lo : (int)(k * p + 2);
  int hi = d_hi ? *d_hi : (int)(k * p + 4);
  auto entries = ring.beta_k_window(k, lo, hi, parse_mode(mode_str));

  VerificationReport r;
  r.statement = "beta-window";
  r.params = {{"p", std::to_string(p)},
              {"module", mspec},
              {"k", std::to_string(k)},
              {"mode", mode_str}};
  r.window_lo = lo;
  r.window_hi = hi;
  for (const auto& e : entries)
    r.instances.push_back(
        {"(R_+)_d vs (R_+^{k+1})_d", e.d, e.contained ? "contained" : "not-contained",
         mode_name(e.mode)});
  r.verdict = "PASS";
  r.timing_ms = now_ms(t0);
  emit_report(r, format);
  return 0;
}

// ---------------------------------------------------------------------------
// zsum

int run_zsum(long p, const std::string& seq, const std::string& format) {
  auto t0 = std::chrono::steady_clock::now();
  ZSequence s = ZSequence::parse(seq, p);
  Classification c = classify(s);
  Factorization f = factor_irreducible(s);
  std::set<long> sig = sigma(s);

  ordered_json j;
  j["statement"] = "zsum";
  j["params"] = {{"p", std::to_string(p)}, {"seq", s.str()}};
  j["length"] = s.length();
  j["total"] = s.total();
  j["zero_sum"] = c.zero_sum;
  j["zero_sum_free"] = c.zero_sum_free;
  j["irreducible"] = c.irreducible_zero_sum;
  j["height"] = c.height;
  j["sigma_size"] = (long)sig.size();
  j["factors"] = ordered_json::array();
  for (const ZSequence& fac : f.factors) j["factors"].push_back(fac.str());
  j["remainder"] = f.remainder.str();
  if (s.length() > 0 && s.multiplicity(0) == 0) {
    LemmaEasyResult le = lemma_easy_check(s);
    j["lemma_easy"] = {{"holds", le.bound_holds},
                       {"sigma_size", le.sigma_size},
                       {"bound", le.bound},
                       {"equality", (bool)le.equality_case}};
  }
  BoundResult bal = balandraud_bound(s);
  j["balandraud"] = {{"applicable", bal.applicable}, {"bound", bal.bound}, {"holds", bal.holds}};
  BoundResult fs = freeze_smith_bound(s);
  j["freeze_smith"] = {{"applicable", fs.applicable}, {"bound", fs.bound}, {"holds", fs.holds}};
  j["verdict"] = "PASS";
  j["timing_ms"] = now_ms(t0);

  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "key,value\n";
    for (auto& [k, v] : j.items()) {
      if (k == "timing_ms" || k == "params" || v.is_structured()) continue;
      std::cout << k << "," << v.dump() << "\n";
    }
  } else {
    std::cout << "zsum  p=" << p << "  S=" << s.str() << "\n";
    std::cout << "  zero_sum=" << (c.zero_sum ? "true" : "false")
              << "  irreducible=" << (c.irreducible_zero_sum ? "true" : "false")
              << "  height=" << c.height << "  |Sigma|=" << sig.size() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sep pair

int run_sep_pair(long p, const std::string& mspec, const std::string& v1s, const std::string& v2s,
                 int d_max, const std::string& format) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec g(p, find_r(p));
  InvariantRing ring(g, ModuleSpec::parse(mspec));
  Point v1 = parse_point(v1s);
  Point v2 = parse_point(v2s);
  SeparationCertificate c = separate_pair(ring, v1, v2, d_max);

  VerificationReport r;
  r.statement = "sep-pair";
  r.params = {{"p", std::to_string(p)},
              {"module", mspec},
              {"v1", v1.str()},
              {"v2", v2.str()},
              {"dmax", std::to_string(d_max)}};
  r.window_lo = 1;
  r.window_hi = d_max;
  switch (c.kind) {
    case SeparationCertificate::SameOrbit:
      r.instances.push_back({"witness c^" + std::to_string(c.witness.a_exp) + "*d^" +
                                 std::to_string(c.witness.b_exp),
                             0, "same-orbit", "-"});
      r.verdict = "PASS";
      break;
    case SeparationCertificate::Separated:
      r.instances.push_back({c.separator.str(ring.table()), c.degree,
                             "separated: " + c.value1.str() + " vs " + c.value2.str(), "exact"});
      r.verdict = "PASS";
      break;
    case SeparationCertificate::Inconclusive:
      r.instances.push_back({"-", c.d_max_searched, "inconclusive", "exact"});
      r.verdict = "FINDING";
      break;
  }
  r.timing_ms = now_ms(t0);
  emit_report(r, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant theory of Z_p x| Z_3: dimensions, beta windows, zero-sum "
               "sequences, statement verification, separating invariants"};
  app.require_subcommand(1);

  std::string format = "json";
  Tier tier;
  app.add_option("--format", format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--tier", tier.name, "tiny | standard | slow")
      ->check(CLI::IsMember({"tiny", "standard", "slow"}))
      ->capture_default_str();

  long p = 7;
  std::optional<long> r_over;
  std::string mspec = "V1";
  int max_degree = 0, k = 1, trials = 200, d_max = 0;
  std::optional<int> d_lo, d_hi;
  unsigned long seed = 42;
  std::string seq, v1s, v2s, mode_str = "certified", stmt, vmod;
  bool expect_sharp = false, no_sharp = false;

  std::function<int()> run;

  CLI::App* dims = app.add_subcommand("dims", "graded dimensions of I and R with oracle check");
  dims->add_option("--p", p, "prime p = 1 mod 3")->required();
  dims->add_option("--r", r_over, "override the order-3 unit r");
  dims->add_option("--module", mspec, "module spec, e.g. U1+2*V1")->capture_default_str();
  dims->add_option("--max-degree", max_degree)->required();
  dims->callback([&] { run = [&] { return run_dims(p, r_over, mspec, max_degree, format); }; });

  CLI::App* beta = app.add_subcommand("beta", "windowed beta_k containment");
  beta->add_option("--p", p)->required();
  beta->add_option("--module", mspec)->required();
  beta->add_option("--k", k)->capture_default_str();
  beta->add_option("--dlo", d_lo, "window start (default kp+2)");
  beta->add_option("--dhi", d_hi, "window end (default kp+4)");
  beta->add_option("--mode", mode_str)->capture_default_str();
  beta->callback([&] {
    run = [&] {
      if (!tier.allows(p, k))
        throw CLI::ValidationError("--tier", "p=13 or k>=2 runs need --tier slow");
      return run_beta(p, mspec, k, d_lo, d_hi, mode_str, format);
    };
  });

  CLI::App* zs = app.add_subcommand("zsum", "classify a zero-sum sequence over Z_p");
  zs->add_option("--p", p)->required();
  zs->add_option("--seq", seq, "comma-separated residues, e.g. 1,1,3,5")->required();
  zs->callback([&] { run = [&] { return run_zsum(p, seq, format); }; });

  CLI::App* verify = app.add_subcommand("verify", "verify a statement");
  verify->require_subcommand(1);
  for (const char* name : {"prop31", "cor32", "prop33", "exceptional", "betak", "i3"}) {
    CLI::App* sub = verify->add_subcommand(name);
    sub->add_option("--p", p)->capture_default_str();
    sub->add_option("--module", vmod, "module spec (statement-specific default)");
    sub->add_option("--dlo", d_lo);
    sub->add_option("--dhi", d_hi);
    sub->add_option("--max-degree", d_max, "i3: highest degree checked");
    sub->add_option("--k", k)->capture_default_str();
    sub->add_flag("--expect-sharp", expect_sharp, "require kp+2 proved non-contained");
    sub->add_flag("--no-expect-sharp", no_sharp);
    sub->add_option("--mode", mode_str)->capture_default_str();
    std::string stmt_name = name;
    sub->callback([&, stmt_name] { stmt = stmt_name; });
  }
  verify->callback([&] {
    run = [&] {
      if (!tier.allows(p, stmt == "betak" ? k : 1))
        throw CLI::ValidationError("--tier", "p=13 or k>=2 runs need --tier slow");
      RankMode mode = parse_mode(mode_str);
      VerificationReport r;
      if (stmt == "prop31") {
        std::string m = vmod.empty() ? "V1+V2" : vmod;
        int lo = d_lo ? *d_lo : (int)p + 1;
        int hi = d_hi ? *d_hi : (int)p + tier.pick(1, 3, 5);
        r = verify_prop31(p, m, lo, hi, mode);
      } else if (stmt == "cor32") {
        int lo = d_lo ? *d_lo : (int)p + 1;
        int hi = d_hi ? *d_hi : (int)p + tier.pick(1, 4, 5);
        r = verify_cor32(p, lo, hi, mode);
      } else if (stmt == "prop33") {
        int lo = d_lo ? *d_lo : (int)p + 1;
        int hi = d_hi ? *d_hi : (int)p + tier.pick(1, 2, 3);
        r = verify_prop33(p, lo, hi, mode);
      } else if (stmt == "exceptional") {
        r = exceptional_case();
      } else if (stmt == "betak") {
        std::string m = vmod.empty() ? "U1+" + doubled_induced_module(p) : vmod;
        bool sharp = expect_sharp || (k == 1 && !no_sharp);
        r = verify_betak(p, m, k, sharp, mode);
      } else if (stmt == "i3") {
        std::string m = vmod.empty() ? "U1+" + doubled_induced_module(p) : vmod;
        int hi = d_max > 0 ? d_max : tier.pick(8, 12, 12);
        r = verify_i3(p, m, hi, mode);
      }
      emit_report(r, format);
      return report_exit(r);
    };
  });

  CLI::App* sep = app.add_subcommand("sep", "separating invariants");
  sep->require_subcommand(1);
  CLI::App* sl = sep->add_subcommand("verify-lower", "degree-p pair, separated at p+1");
  sl->add_option("--p", p)->required();
  sl->callback([&] {
    run = [&] {
      VerificationReport r = verify_sep_lower(p);
      emit_report(r, format);
      return report_exit(r);
    };
  });
  CLI::App* su = sep->add_subcommand("verify-upper", "randomized separation in degree <= p+1");
  su->add_option("--p", p)->required();
  su->add_option("--trials", trials)->capture_default_str();
  su->add_option("--seed", seed)->capture_default_str();
  su->callback([&] {
    run = [&] {
      if (!tier.allows(p, 1))
        throw CLI::ValidationError("--tier", "p=13 runs need --tier slow");
      VerificationReport r = verify_sep_upper_random(p, trials, seed);
      emit_report(r, format);
      return report_exit(r);
    };
  });
  CLI::App* sp = sep->add_subcommand("pair", "separate one explicit pair of points");
  sp->add_option("--p", p)->required();
  sp->add_option("--module", mspec)->required();
  sp->add_option("--v1", v1s, "point, e.g. 1,1,0,0 or w,1,0,0")->required();
  sp->add_option("--v2", v2s)->required();
  sp->add_option("--dmax", d_max, "search depth")->required();
  sp->callback([&] { run = [&] { return run_sep_pair(p, mspec, v1s, v2s, d_max, format); }; });

  // --format/--tier live on the root; let them be given after any subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands(/*filter=*/[](const CLI::App*) { return true; }))
      allow_fallthrough(s);
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
