// lyapcert: command-line front end. Exit codes: 0 success, 2 a proof step
// could not be completed (sound but unproven), 64 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lyapcert/oracle/oracle.hpp"
#include "lyapcert/rate/rate.hpp"
#include "lyapcert/report/report.hpp"

using namespace lyapcert;
using report::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnproven = 2;
constexpr int kExitUsage = 64;

class CliUsage : public UsageError {
 public:
  using UsageError::UsageError;
};

Interval num(const std::string& text, const char* flag) {
  try {
    return Interval::from_decimal(text);
  } catch (const DomainError& e) {
    throw CliUsage(std::string(flag) + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

// "lo:hi:step" as decimal strings lo, lo + step, ... <= hi (nine decimals).
std::vector<std::string> decimal_range(const std::string& spec, const char* flag) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw CliUsage(std::string(flag) + ": expected lo:hi:step");
  const double lo = num(parts[0], flag).mid(), hi = num(parts[1], flag).mid(), st = num(parts[2], flag).mid();
  if (!(st > 0.0) || hi < lo) throw CliUsage(std::string(flag) + ": need step > 0 and lo <= hi");
  std::vector<std::string> out;
  const long long a = std::llround(lo * 1e9), b = std::llround(hi * 1e9), s = std::llround(st * 1e9);
  if (s <= 0) throw CliUsage(std::string(flag) + ": step too small");
  for (long long v = a; v <= b; v += s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", static_cast<double>(v) / 1e9);
    std::string t(buf);
    while (t.back() == '0') t.pop_back();
    if (t.back() == '.') t.pop_back();
    out.push_back(t == "-0" ? "0" : t);
  }
  return out;
}

std::vector<std::string> list_or_range(const std::string& list, const std::string& range, const char* lflag,
                                       const char* rflag, const std::vector<std::string>& fallback) {
  if (!list.empty() && !range.empty()) throw CliUsage(std::string(lflag) + " and " + rflag + " are exclusive");
  if (!list.empty()) {
    auto v = split(list);
    for (const auto& s : v) num(s, lflag);
    return v;
  }
  if (!range.empty()) return decimal_range(range, rflag);
  return fallback;
}

// Seeds from user decimals: the outer ones rounded outward, per the
// convention that the bracket must contain the stated one.
std::vector<double> seed_grid(const std::string& grid) {
  std::vector<double> out;
  const auto items = split(grid);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Interval p = num(items[i], "--p-grid");
    out.push_back(i == 0 ? p.lo() : (i + 1 == items.size() ? p.hi() : p.mid()));
  }
  if (!items.empty() && out.size() < 3) throw CliUsage("--p-grid: need at least three points");
  return out;
}

json evidence_json(const std::vector<EvidencePoint>& ev) {
  json a = json::array();
  for (const auto& e : ev) a.push_back({{"p", report::interval(e.p)}, {"Lambda", report::interval(e.lambda)}});
  return a;
}

void emit(const report::RunReport& rep, const std::string& out) {
  const std::string text = rep.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw CliUsage("--out: cannot open " + out);
    f << text;
  }
}

void emit_csv(const report::CsvWriter& csv, const std::string& path, bool stdout_fallback) {
  if (path.empty()) {
    if (stdout_fallback) csv.write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw CliUsage("--csv: cannot open " + path);
  csv.write(f);
}

// ---- pitchfork ----

struct PitchforkRow {
  json j;
  std::vector<std::string> csv;
  bool ok = false;
  std::optional<Interval> I0;
};

PitchforkRow pitchfork_row(const std::string& alpha_s, const Interval& sigma, const std::vector<double>& seeds,
                           const BracketOptions& bopt, const RateOptions& ropt, std::size_t M) {
  PitchforkRow row;
  const Interval alpha = num(alpha_s, "--alpha");
  row.j = {{"alpha", alpha_s}};
  PitchforkOptions popt;
  popt.M = M;
  try {
    const LambdaEvaluator eval = pitchfork_evaluator(alpha, sigma, popt);
    const MinimizerBracket b = bracket_minimizer(eval, seeds.empty() ? default_pitchfork_seeds() : seeds,
                                                 pitchfork_bracket_options(alpha, bopt));
    const Interval I0 = rate_at_zero(eval, b.bracket, b.evidence, ropt);
    row.ok = true;
    row.I0 = I0;
    row.j["status"] = "certified";
    row.j["I0"] = report::interval(I0);
    row.j["minimizer_bracket"] = report::interval(b.bracket);
    row.j["evidence"] = evidence_json(b.evidence);
    row.csv = {alpha_s, report::lo_str(I0), report::hi_str(I0), "certified"};
  } catch (const NoInteriorMinimum& e) {
    // Lambda decreasing over the grid: only I(0) >= max(-Lambda) is certified.
    row.j["status"] = "bracket_failure";
    row.j["message"] = e.what();
    row.j["I0_lower_bound"] = report::number(e.rate_lower_bound());
    row.j["evidence"] = evidence_json(e.evidence);
    row.csv = {alpha_s, decimal::format_directed(e.rate_lower_bound(), false), "inf", "bracket_failure"};
  } catch (const VerificationError& e) {
    row.j["status"] = "verification_failed";
    row.j["message"] = e.what();
    row.csv = {alpha_s, "", "", "verification_failed"};
  } catch (const ApproxFailure& e) {
    row.j["status"] = "verification_failed";
    row.j["message"] = e.what();
    row.csv = {alpha_s, "", "", "verification_failed"};
  }
  return row;
}

// ---- shear ----

struct ShearRow {
  json j;
  std::vector<std::string> csv;
  bool ok = false;
  std::string status;
  std::optional<Interval> dlambda;
};

ShearRow shear_row(const ShearParams& prm, const std::string& b_s, double p_lo, double p_hi,
                   const ContinuationOptions& opt) {
  ShearRow row;
  row.j = {{"b", b_s}};
  try {
    const ContinuationCertificate cert = extended_nk_validate_escalating(prm, p_lo, p_hi, opt);
    const LambdaDerivatives d = lambda_derivatives_at(cert, Interval(0.0));
    const NKBounds& nb = cert.nk.bounds;
    row.dlambda = d.dlambda;
    row.j["Lambda0"] = report::interval(d.lambda);
    row.j["dLambda0"] = report::interval(d.dlambda);
    row.j["d2Lambda0"] = report::interval(d.d2lambda);
    row.j["bounds"] = {{"Y", nb.Y},
                       {"Z1", nb.Z1},
                       {"Z1_finite", nb.Z1_finite},
                       {"Z1_finite_nonneg", nb.Z1_finite_nonneg},
                       {"Z1_tail", nb.Z1_tail},
                       {"Z2", nb.Z2},
                       {"r", cert.r},
                       {"r_min", cert.nk.r_min},
                       {"r_max", cert.nk.r_max},
                       {"N", cert.nk.N},
                       {"K", cert.nk.K},
                       {"eta", cert.nk.eta},
                       {"positivity", cert.positivity}};
    row.j["positive_lyapunov_exponent"] = d.dlambda.lo() > 0.0;
    row.csv = {b_s, "", "", report::lo_str(d.dlambda), report::hi_str(d.dlambda), report::lo_str(d.d2lambda),
               report::hi_str(d.d2lambda), d.dlambda.lo() > 0.0 ? "1" : "0"};
    try {
      const RateResult r = shear_rate(cert);
      row.j["I0"] = report::interval(r.I0);
      row.j["minimizer_bracket"] = report::interval(r.minimizer_bracket);
      row.csv[1] = report::lo_str(r.I0);
      row.csv[2] = report::hi_str(r.I0);
      row.ok = true;
      row.status = "certified";
    } catch (const BracketFailure& e) {
      // Lambda' keeps one sign on the range; the certified values on a grid
      // still bound I(0) from below.
      row.status = "bracket_failure";
      row.j["message"] = e.what();
      const LambdaEvaluator eval = certified_evaluator(cert);
      std::vector<EvidencePoint> ev;
      for (int i = 0; i <= 20; ++i) {
        const double p = i == 20 ? p_hi : p_lo + (p_hi - p_lo) * i / 20.0;
        ev.push_back({Interval(p), eval(Interval(p))});
      }
      const double lb = rate_lower_bound(ev);
      row.j["I0_lower_bound"] = report::number(lb);
      row.csv[1] = decimal::format_directed(lb, false);
      row.csv[2] = "inf";
    }
  } catch (const PositivityFailed& e) {
    row.status = "positivity_failed";
    row.j["message"] = e.what();
  } catch (const ContractionFailed& e) {
    row.status = "verification_failed";
    row.j["message"] = e.what();
    row.j["bounds"] = {{"Y", e.bounds.Y}, {"Z1", e.bounds.Z1}, {"Z2", e.bounds.Z2}};
  } catch (const VerificationError& e) {
    row.status = "verification_failed";
    row.j["message"] = e.what();
  } catch (const ApproxFailure& e) {
    row.status = "verification_failed";
    row.j["message"] = e.what();
  }
  row.j["status"] = row.status;
  if (row.csv.empty()) row.csv = {b_s, "", "", "", "", "", "", ""};
  row.csv.push_back(row.status);
  return row;
}

const std::vector<std::string> kShearCsvHeader = {"b",       "I0_lo",   "I0_hi",      "dLambda0_lo", "dLambda0_hi",
                                                  "d2Lambda0_lo", "d2Lambda0_hi", "positive_le", "status"};

std::vector<std::string> default_alpha_grid() { return decimal_range("-1:3:0.25", "grid"); }
std::vector<std::string> default_b_grid() { return decimal_range("0.5:10:0.5", "grid"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified moment Lyapunov exponents and rate functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kCodeVersion);
  std::string out, csv;

  // pitchfork-rate
  auto* pr = app.add_subcommand("pitchfork-rate", "rate function I(0) for the stochastic pitchfork");
  std::string pr_alpha, pr_sigma = "1", pr_grid;
  std::size_t pr_m = 0;
  double pr_tol = 1e-5;
  pr->add_option("--alpha", pr_alpha, "drift parameter")->required();
  pr->add_option("--sigma", pr_sigma, "noise amplitude");
  pr->add_option("--p-grid", pr_grid, "comma-separated seed points for the minimizer bracket");
  pr->add_option("--m", pr_m, "number of enclosed eigenvalues (0: default)");
  pr->add_option("--tol", pr_tol, "target minimizer bracket width");
  pr->add_option("--out", out, "JSON report path (default stdout)");
  pr->add_option("--csv", csv, "CSV output path");

  // pitchfork-scan
  auto* ps = app.add_subcommand("pitchfork-scan", "I(0) over a list of alpha values");
  std::string ps_list, ps_range, ps_sigma = "1";
  double ps_tol = 1e-5;
  ps->add_option("--alpha-list", ps_list, "comma-separated alpha values");
  ps->add_option("--alpha-range", ps_range, "lo:hi:step");
  ps->add_option("--sigma", ps_sigma, "noise amplitude");
  ps->add_option("--tol", ps_tol, "target minimizer bracket width");
  ps->add_option("--out", out, "JSON report path (default stdout)");
  ps->add_option("--csv", csv, "CSV output path");

  // pitchfork-minimum
  auto* pm = app.add_subcommand("pitchfork-minimum", "certify a local minimum of alpha -> I_alpha(0)");
  std::string pm_sigma = "1", pm_alphas;
  pm->add_option("--sigma", pm_sigma, "noise amplitude");
  pm->add_option("--alphas", pm_alphas, "a1,a2,a3 with a1 < a2 < a3")->required();
  pm->add_option("--out", out, "JSON report path (default stdout)");

  // shear-validate
  auto* sv = app.add_subcommand("shear-validate", "continuation certificate for the linear shear model");
  std::string sv_alpha = "1", sv_b = "5", sv_sigma = "1", sv_pmin = "-4", sv_pmax = "6", sv_eta = "1.01";
  int sv_N = 60;
  std::size_t sv_K = 80;
  sv->add_option("--alpha", sv_alpha, "dissipation");
  sv->add_option("--b", sv_b, "shear strength");
  sv->add_option("--sigma", sv_sigma, "noise amplitude");
  sv->add_option("--p-min", sv_pmin, "lower end of the p range");
  sv->add_option("--p-max", sv_pmax, "upper end of the p range");
  sv->add_option("--N", sv_N, "Fourier truncation");
  sv->add_option("--K", sv_K, "Chebyshev truncation");
  sv->add_option("--eta", sv_eta, "weight of the Chebyshev norm");
  sv->add_option("--out", out, "JSON report path (default stdout)");
  sv->add_option("--csv", csv, "CSV output path");

  // shear-scan
  auto* ss = app.add_subcommand("shear-scan", "shear certificates over a list of b values");
  std::string ss_list, ss_alpha = "1", ss_sigma = "1", ss_pmin = "-4", ss_pmax = "6";
  ss->add_option("--b-list", ss_list, "comma-separated b values")->required();
  ss->add_option("--alpha", ss_alpha, "dissipation");
  ss->add_option("--sigma", ss_sigma, "noise amplitude");
  ss->add_option("--p-min", ss_pmin, "lower end of the p range");
  ss->add_option("--p-max", ss_pmax, "upper end of the p range");
  ss->add_option("--out", out, "JSON report path (default stdout)");
  ss->add_option("--csv", csv, "CSV output path");

  // oracle
  auto* orc = app.add_subcommand("oracle", "non-rigorous cross-checks");
  std::string or_what, or_alpha = "1", or_b = "5", or_sigma = "1", or_p = "0", or_scheme = "heun";
  double or_t = 100.0, or_dt = 0.02;
  std::size_t or_count = 10000;
  std::uint64_t or_seed = 1;
  orc->add_option("--what", or_what, "fk-pitchfork | fk-shear | ftle-pitchfork | ftle-shear")->required()
      ->check(CLI::IsMember({"fk-pitchfork", "fk-shear", "ftle-pitchfork", "ftle-shear"}));
  orc->add_option("--alpha", or_alpha, "drift / dissipation parameter");
  orc->add_option("--b", or_b, "shear strength");
  orc->add_option("--sigma", or_sigma, "noise amplitude");
  orc->add_option("--t", or_t, "time horizon");
  orc->add_option("--dt", or_dt, "time step");
  orc->add_option("--count", or_count, "number of paths");
  orc->add_option("--seed", or_seed, "generator seed");
  orc->add_option("--p", or_p, "moment for the empirical moment Lyapunov exponent");
  orc->add_option("--scheme", or_scheme, "heun | euler")->check(CLI::IsMember({"heun", "euler"}));
  orc->add_option("--out", out, "JSON report path (default stdout)");

  // figure-data
  auto* fd = app.add_subcommand("figure-data", "CSV series behind the figures");
  std::string fd_which, fd_alist, fd_arange, fd_blist;
  double fd_tol = 1e-4;
  fd->add_option("--which", fd_which, "fig1 | fig2 | fig4")->required();
  fd->add_option("--alpha-list", fd_alist, "alpha values (fig1, fig2)");
  fd->add_option("--alpha-range", fd_arange, "lo:hi:step (fig1, fig2)");
  fd->add_option("--b-list", fd_blist, "b values (fig4)");
  fd->add_option("--tol", fd_tol, "minimizer bracket width (fig1)");
  fd->add_option("--out", out, "JSON report path");
  fd->add_option("--csv", csv, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  report::RunReport rep;
  auto finish = [&](int code) {
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(rep, out);
    return code;
  };

  try {
    if (*pr) {
      rep.command = "pitchfork-rate";
      rep.params = {{"alpha", pr_alpha}, {"sigma", pr_sigma}, {"p_grid", pr_grid}, {"m", pr_m}, {"tol", pr_tol}};
      const Interval sigma = num(pr_sigma, "--sigma");
      num(pr_alpha, "--alpha");
      BracketOptions bopt;
      bopt.tol = pr_tol;
      PitchforkRow row = pitchfork_row(pr_alpha, sigma, seed_grid(pr_grid), bopt, {}, pr_m);
      rep.status = row.ok ? "certified" : "verification_failed";
      for (const char* k : {"I0", "minimizer_bracket"})
        if (row.j.contains(k)) rep.enclosures[k] = row.j[k];
      rep.bounds["evidence"] = row.j["evidence"];
      if (row.j.contains("I0_lower_bound")) rep.bounds["I0_lower_bound"] = row.j["I0_lower_bound"];
      if (row.j.contains("message")) rep.messages.push_back(row.j["message"]);
      report::CsvWriter w({"alpha", "I0_lo", "I0_hi", "status"});
      w.row(row.csv);
      emit_csv(w, csv, false);
      return finish(row.ok ? kExitOk : kExitUnproven);
    }

    if (*ps) {
      rep.command = "pitchfork-scan";
      const auto alphas = list_or_range(ps_list, ps_range, "--alpha-list", "--alpha-range", {});
      if (alphas.empty()) throw CliUsage("pitchfork-scan: give --alpha-list or --alpha-range");
      rep.params = {{"alphas", alphas}, {"sigma", ps_sigma}, {"tol", ps_tol}};
      const Interval sigma = num(ps_sigma, "--sigma");
      BracketOptions bopt;
      bopt.tol = ps_tol;
      const auto rows = parallel_map(alphas.size(), [&](std::size_t i) { return pitchfork_row(alphas[i], sigma, {}, bopt, {}, 0); });
      report::CsvWriter w({"alpha", "I0_lo", "I0_hi", "status"});
      bool all = true;
      for (const auto& r : rows) {
        rep.rows.push_back(r.j);
        w.row(r.csv);
        all = all && r.ok;
      }
      rep.status = all ? "certified" : "verification_failed";
      emit_csv(w, csv, false);
      return finish(all ? kExitOk : kExitUnproven);
    }

    if (*pm) {
      rep.command = "pitchfork-minimum";
      const auto as = split(pm_alphas);
      if (as.size() != 3) throw CliUsage("--alphas: need exactly three values");
      std::vector<Interval> ai;
      for (const auto& a : as) ai.push_back(num(a, "--alphas"));
      if (!(ai[0].hi() < ai[1].lo() && ai[1].hi() < ai[2].lo())) throw CliUsage("--alphas: need a1 < a2 < a3");
      rep.params = {{"alphas", as}, {"sigma", pm_sigma}};
      const Interval sigma = num(pm_sigma, "--sigma");
      const auto rows = parallel_map(3, [&](std::size_t i) { return pitchfork_row(as[i], sigma, {}, {}, {}, 0); });
      bool all = true;
      for (std::size_t i = 0; i < 3; ++i) {
        rep.rows.push_back(rows[i].j);
        if (rows[i].I0) rep.enclosures["I0_" + as[i]] = report::interval(*rows[i].I0);
        all = all && rows[i].ok;
      }
      bool strict = false;
      if (all) strict = rows[1].I0->hi() < rows[0].I0->lo() && rows[1].I0->hi() < rows[2].I0->lo();
      rep.bounds["strict_local_minimum"] = strict;
      rep.enclosures["alpha_bracket"] = report::interval(Interval(ai[0].lo(), ai[2].hi()));
      rep.status = strict ? "certified" : "verification_failed";
      if (!strict) {
        std::cerr << "local minimum not certified:";
        for (std::size_t i = 0; i < 3; ++i)
          std::cerr << " I_" << as[i] << "(0) = " << (rows[i].I0 ? to_string(*rows[i].I0) : std::string("n/a"));
        std::cerr << "\n";
      }
      return finish(strict ? kExitOk : kExitUnproven);
    }

    if (*sv || *ss) {
      const bool scan = ss->parsed();
      rep.command = scan ? "shear-scan" : "shear-validate";
      const std::string& alpha_s = scan ? ss_alpha : sv_alpha;
      const std::string& sigma_s = scan ? ss_sigma : sv_sigma;
      const Interval alpha = num(alpha_s, "--alpha"), sigma = num(sigma_s, "--sigma");
      const double p_lo = num(scan ? ss_pmin : sv_pmin, "--p-min").lo();
      const double p_hi = num(scan ? ss_pmax : sv_pmax, "--p-max").hi();
      if (!(p_lo < p_hi)) throw CliUsage("need --p-min < --p-max");
      if (!(p_lo < 0.0 && 0.0 < p_hi)) throw CliUsage("the p range must contain 0 in its interior");
      if (!(sigma.lo() > 0.0)) throw CliUsage("--sigma must be positive");
      ContinuationOptions opt;
      if (!scan) {
        opt.N = sv_N;
        opt.K = sv_K;
        opt.eta = num(sv_eta, "--eta").lo();
        if (!(opt.eta > 1.0)) throw CliUsage("--eta must exceed 1");
        if (sv_N < 8) throw CliUsage("--N must be at least 8");
      }
      const std::vector<std::string> bs = scan ? split(ss_list) : std::vector<std::string>{sv_b};
      if (bs.empty()) throw CliUsage("--b-list is empty");
      for (const auto& b : bs) num(b, "--b");
      rep.params = {{"alpha", alpha_s}, {"sigma", sigma_s}, {"b", scan ? json(bs) : json(sv_b)}, {"p_min", p_lo}, {"p_max", p_hi},
                    {"N", opt.N},       {"K", opt.K},       {"eta", opt.eta}};
      const auto rows = parallel_map(bs.size(), [&](std::size_t i) {
        return shear_row(ShearParams{alpha, num(bs[i], "--b"), sigma, Interval(0.0)}, bs[i], p_lo, p_hi, opt);
      });
      report::CsvWriter w(kShearCsvHeader);
      bool all = true, neg = false, pos = false;
      for (const auto& r : rows) {
        w.row(r.csv);
        all = all && r.ok;
        if (r.dlambda) {
          neg = neg || r.dlambda->hi() < 0.0;
          pos = pos || r.dlambda->lo() > 0.0;
        }
      }
      if (scan) {
        for (const auto& r : rows) rep.rows.push_back(r.j);
        rep.bounds["lambda_prime_sign_change"] = neg && pos;
        rep.status = all ? "certified" : "verification_failed";
      } else {
        const json& j = rows[0].j;
        for (const char* k : {"Lambda0", "dLambda0", "d2Lambda0", "I0", "minimizer_bracket"})
          if (j.contains(k)) rep.enclosures[k] = j[k];
        if (j.contains("bounds")) rep.bounds = j["bounds"];
        if (j.contains("I0_lower_bound")) rep.bounds["I0_lower_bound"] = j["I0_lower_bound"];
        if (j.contains("message")) rep.messages.push_back(j["message"]);
        rep.status = rows[0].status == "certified" ? "certified" : rows[0].status;
        if (rep.status == "bracket_failure") rep.status = "verification_failed";
        rep.bounds["rate_status"] = rows[0].status;
      }
      emit_csv(w, csv, false);
      return finish(all ? kExitOk : kExitUnproven);
    }

    if (*orc) {
      rep.command = "oracle";
      const double alpha = num(or_alpha, "--alpha").mid(), b = num(or_b, "--b").mid();
      const double sigma = num(or_sigma, "--sigma").mid(), p = num(or_p, "--p").mid();
      if (!(sigma > 0.0)) throw CliUsage("--sigma must be positive");
      rep.params = {{"what", or_what}, {"alpha", or_alpha}, {"b", or_b},         {"sigma", or_sigma}, {"t", or_t},
                    {"dt", or_dt},     {"count", or_count}, {"seed", or_seed}, {"p", or_p},         {"scheme", or_scheme}};
      rep.status = "advisory";
      if (or_what == "fk-pitchfork" || or_what == "fk-shear") {
        const OracleValue v = or_what == "fk-pitchfork" ? fk_lambda_pitchfork(alpha, sigma) : fk_lambda_shear(alpha, b, sigma);
        rep.oracle.push_back({{"name", or_what}, {"value", v.value}, {"err_est", v.err_est}});
      } else {
        SimulationOptions so;
        so.scheme = or_scheme == "euler" ? Scheme::euler_maruyama : Scheme::heun;
        if (or_count == 0) throw CliUsage("--count must be positive");
        const FtleSample s = or_what == "ftle-pitchfork" ? simulate_ftle_pitchfork(alpha, sigma, or_t, or_count, or_dt, or_seed, so)
                                                         : simulate_ftle_shear(alpha, b, sigma, or_t, or_count, or_dt, or_seed, so);
        const SampleStats st = stats(s.values);
        std::size_t positive = 0;
        for (double v : s.values) positive += v > 0.0;
        json o = {{"name", or_what},
                  {"mean", st.mean},
                  {"se", st.se},
                  {"variance_times_t", st.variance * s.t},
                  {"fraction_positive", static_cast<double>(positive) / static_cast<double>(s.values.size())}};
        if (p != 0.0) {
          const MleEstimate m = empirical_mle(s, p);
          o["mle"] = {{"p", or_p}, {"estimate", m.estimate}, {"ci99_lo", m.ci_lo}, {"ci99_hi", m.ci_hi}};
        }
        rep.oracle.push_back(o);
      }
      return finish(kExitOk);
    }

    if (*fd) {
      rep.command = "figure-data";
      rep.params = {{"which", fd_which}};
      if (fd_which == "fig1" || fd_which == "fig2") {
        const auto alphas = list_or_range(fd_alist, fd_arange, "--alpha-list", "--alpha-range", default_alpha_grid());
        rep.params["alphas"] = alphas;
        if (fd_which == "fig2") {
          report::CsvWriter w({"alpha", "lambda_fk", "err_est"});
          std::size_t argmax = 0;
          std::vector<double> vals;
          for (std::size_t i = 0; i < alphas.size(); ++i) {
            const OracleValue v = fk_lambda_pitchfork(num(alphas[i], "--alpha-list").mid(), 1.0);
            vals.push_back(v.value);
            if (v.value > vals[argmax]) argmax = i;
            char a[32], e[32];
            std::snprintf(a, sizeof a, "%.17g", v.value);
            std::snprintf(e, sizeof e, "%.3g", v.err_est);
            w.row({alphas[i], a, e});
            rep.rows.push_back({{"alpha", alphas[i]}, {"lambda_fk", v.value}, {"err_est", v.err_est}});
          }
          rep.bounds["argmax_alpha"] = alphas[argmax];
          rep.bounds["all_negative"] = std::all_of(vals.begin(), vals.end(), [](double v) { return v < 0.0; });
          rep.status = "advisory";
          emit_csv(w, csv, true);
          if (!out.empty()) finish(kExitOk);
          return kExitOk;
        }
        BracketOptions bopt;
        bopt.tol = fd_tol;
        const auto rows = parallel_map(alphas.size(), [&](std::size_t i) { return pitchfork_row(alphas[i], Interval(1.0), {}, bopt, {}, 0); });
        report::CsvWriter w({"alpha", "I0_lo", "I0_hi", "status"});
        std::optional<std::size_t> argmin;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          w.row(rows[i].csv);
          rep.rows.push_back(rows[i].j);
          if (rows[i].I0 && (!argmin || rows[i].I0->mid() < rows[*argmin].I0->mid())) argmin = i;
        }
        if (argmin) rep.bounds["argmin_alpha"] = alphas[*argmin];
        rep.status = argmin ? "certified" : "verification_failed";
        emit_csv(w, csv, true);
        if (!out.empty()) finish(kExitOk);
        return argmin ? kExitOk : kExitUnproven;
      }
      if (fd_which == "fig4") {
        const auto bs = fd_blist.empty() ? default_b_grid() : split(fd_blist);
        rep.params["b"] = bs;
        const auto rows = parallel_map(bs.size(), [&](std::size_t i) {
          return shear_row(ShearParams{Interval(1.0), num(bs[i], "--b-list"), Interval(1.0), Interval(0.0)}, bs[i], -4.0,
                           6.0, {});
        });
        report::CsvWriter w(kShearCsvHeader);
        bool neg = false, pos = false, all = true;
        for (const auto& r : rows) {
          w.row(r.csv);
          rep.rows.push_back(r.j);
          all = all && r.ok;
          if (r.dlambda) {
            neg = neg || r.dlambda->hi() < 0.0;
            pos = pos || r.dlambda->lo() > 0.0;
          }
        }
        rep.bounds["lambda_prime_sign_change"] = neg && pos;
        rep.status = all ? "certified" : "verification_failed";
        emit_csv(w, csv, true);
        if (!out.empty()) finish(kExitOk);
        return all ? kExitOk : kExitUnproven;
      }
      throw CliUsage("--which: expected fig1, fig2 or fig4");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PositivityFailed& e) {
    std::cerr << "positivity not certified: " << e.what() << "\n";
    rep.status = "positivity_failed";
    rep.messages.push_back(e.what());
    return finish(kExitUnproven);
  } catch (const Error& e) {
    std::cerr << "not certified: " << e.what() << "\n";
    rep.status = "verification_failed";
    rep.messages.push_back(e.what());
    return finish(kExitUnproven);
  }
  return kExitUsage;
}
