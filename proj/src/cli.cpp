#include "entrolab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entrolab/analytic.hpp"
#include "entrolab/bounds.hpp"
#include "entrolab/certify.hpp"
#include "entrolab/errors.hpp"
#include "entrolab/format.hpp"
#include "entrolab/moments.hpp"
#include "entrolab/rng.hpp"

namespace entrolab {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size()) {
    throw ValidationError(std::string(what) + ": expected a number, got \"" +
                          tok + "\"");
  }
  return v;
}

std::int64_t parse_integer(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size()) {
    throw ValidationError(std::string(what) + ": expected an integer, got \"" +
                          tok + "\"");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> vals;
  for (const std::string& tok : split(text, ',')) {
    vals.push_back(parse_double(trim(tok), what));
  }
  return vals;
}

std::vector<std::int64_t> parse_integer_list(const std::string& text,
                                             const char* what) {
  std::vector<std::int64_t> vals;
  for (const std::string& tok : split(text, ',')) {
    vals.push_back(parse_integer(trim(tok), what));
  }
  return vals;
}

// Pulls --config out of the raw arguments and splices the file's key=value
// pairs in right after the subcommand, so that explicitly passed flags
// (which come later and take-last) win over the file.
void apply_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw ValidationError("--config needs a path");
      }
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (path.empty()) return;

  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open");
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError(path + ": line " + std::to_string(line_no) +
                            ": expected key=value");
    }
    extra.push_back("--" + trim(t.substr(0, eq)) + "=" + trim(t.substr(eq + 1)));
  }

  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return !a.empty() && a[0] != '-';
  });
  if (sub == args.end()) {
    args.insert(args.end(), extra.begin(), extra.end());
  } else {
    args.insert(sub + 1, extra.begin(), extra.end());
  }
}

struct CommonOpts {
  std::int64_t seed = 0;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  // plain --help only: the default -h short flag would shadow --h
  cmd->set_help_flag("--help", "print this help and exit");
  cmd->add_option("--seed", c.seed, "base RNG seed (default 0)");
  cmd->add_option("--output", c.output,
                  "write the report to this file instead of stdout");
}

struct EstimateOpts {
  std::string input;
  std::string format = "samples";
  double alpha = 0.0;
  double h = 0.0;
  double delta = 0.05;
  std::string alpha_grid;
  std::string h_table;
};

void run_estimate(const EstimateOpts& o, CLI::App* cmd, std::ostream& out) {
  EmpiricalMeasure emp = ingest(o.input, o.format);

  bool have_point = cmd->count("--alpha") > 0 || cmd->count("--h") > 0;
  bool have_grid = cmd->count("--alpha-grid") > 0 || cmd->count("--h-table") > 0;
  if (have_point && have_grid) {
    throw ValidationError(
        "estimate: give either --alpha/--h or --alpha-grid/--h-table, not "
        "both");
  }

  EntropyCertificate cert;
  if (have_grid) {
    if (cmd->count("--alpha-grid") == 0 || cmd->count("--h-table") == 0) {
      throw ValidationError("estimate: --alpha-grid and --h-table go together");
    }
    std::vector<double> alphas = parse_double_list(o.alpha_grid, "alpha-grid");
    std::vector<double> hs = parse_double_list(o.h_table, "h-table");
    if (alphas.size() != hs.size()) {
      throw ValidationError(
          "estimate: --alpha-grid and --h-table must have the same length");
    }
    std::map<double, double> table;
    for (std::size_t i = 0; i < alphas.size(); ++i) table[alphas[i]] = hs[i];
    cert = certificate_best_alpha(
        emp, [&table](double a) { return table.at(a); }, o.delta, alphas);
  } else {
    if (cmd->count("--alpha") == 0 || cmd->count("--h") == 0) {
      throw ValidationError(
          "estimate: need --alpha and --h (or --alpha-grid with --h-table)");
    }
    cert = certificate(emp, o.alpha, o.h, o.delta);
  }
  out << certificate_json(cert) << '\n';
}

struct RatesOpts {
  std::string family;
  std::int64_t d = 0;
  std::int64_t big_d = 0;
  double p = 0.0;
  double q = 0.0;
  std::string bounds;
  std::string n_grid;
  bool linear = false;
  double wy_c = 2.0;
};

std::vector<std::int64_t> make_n_grid(const std::string& text, bool linear) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) {
    throw ValidationError("n-grid: expected start:stop:points");
  }
  std::int64_t start = parse_integer(parts[0], "n-grid start");
  std::int64_t stop = parse_integer(parts[1], "n-grid stop");
  std::int64_t points = parse_integer(parts[2], "n-grid points");
  if (start < 1 || stop < start || points < 1) {
    throw ValidationError("n-grid: need 1 <= start <= stop and points >= 1");
  }
  std::vector<std::int64_t> ns;
  if (points == 1) {
    ns.push_back(start);
    return ns;
  }
  double a = static_cast<double>(start);
  double b = static_cast<double>(stop);
  for (std::int64_t i = 0; i < points; ++i) {
    double f = static_cast<double>(i) / static_cast<double>(points - 1);
    double v = linear ? a + f * (b - a)
                      : std::exp(std::log(a) + f * (std::log(b) - std::log(a)));
    ns.push_back(std::llround(v));
  }
  ns.front() = start;
  ns.back() = stop;
  return ns;
}

void run_rates(const RatesOpts& o, CLI::App* cmd, const CommonOpts& common,
               std::ostream& out) {
  std::string base_params;
  std::int64_t support = 0;
  AnalyticDistribution dist = [&]() -> AnalyticDistribution {
    if (o.family == "mixture") {
      if (cmd->count("--d") == 0 || cmd->count("--D") == 0 ||
          cmd->count("--p") == 0) {
        throw ValidationError("rates: mixture family needs --d, --D and --p");
      }
      support = o.d + o.big_d;
      base_params = "d=" + std::to_string(o.d) +
                    ";D=" + std::to_string(o.big_d) + ";p=" + format_g17(o.p);
      return MixtureOfUniforms(o.d, o.big_d, o.p);
    }
    if (o.family == "zeta") {
      if (cmd->count("--q") == 0) {
        throw ValidationError("rates: zeta family needs --q");
      }
      base_params = "q=" + format_g17(o.q);
      return Zeta(o.q);
    }
    throw ValidationError("rates: unknown family \"" + o.family +
                          "\" (mixture or zeta)");
  }();
  base_params += ";seed=" + std::to_string(common.seed);

  std::string bounds = o.bounds;
  if (bounds.empty()) bounds = o.family == "zeta" ? "our" : "our,wy,ct";
  std::vector<std::string> bound_list;
  for (const std::string& tok : split(bounds, ',')) {
    std::string b = trim(tok);
    if (b != "our" && b != "wy" && b != "ct") {
      throw ValidationError("rates: unknown bound \"" + b +
                            "\" (our, wy or ct)");
    }
    if (o.family == "zeta" && b != "our") {
      throw ValidationError("rates: the " + b +
                            " bound needs a finite support; the zeta family "
                            "only supports our");
    }
    bound_list.push_back(b);
  }

  std::vector<std::int64_t> ns = make_n_grid(o.n_grid, o.linear);
  out << "family,bound,n,value,params\n";
  for (std::int64_t n : ns) {
    for (const std::string& b : bound_list) {
      double value = 0.0;
      std::string label;
      std::string params = base_params;
      if (b == "our") {
        value = our_rate_bound(dist, support, n).value;
        label = "OUR";
        params += ";alpha-range=(1,64]";
      } else if (b == "wy") {
        value = wy_bound(o.d, o.big_d, n, o.wy_c);
        label = "WY";
        params += ";C=" + format_g17(o.wy_c);
      } else {
        value = ct_rate_bound(dist, support, n);
        label = "CT";
      }
      out << o.family << ',' << label << ',' << n << ',' << format_g17(value)
          << ',';
      if (params.find(',') != std::string::npos) {
        out << '"' << params << '"';
      } else {
        out << params;
      }
      out << '\n';
    }
  }
}

struct CoverageOpts {
  std::string family;
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::int64_t big_d = 0;
  double p = 0.0;
  double q = 0.0;
  std::int64_t n = 0;
  double alpha = 0.0;
  double delta = 0.05;
  std::int64_t trials = 0;
};

void run_coverage(const CoverageOpts& o, CLI::App* cmd,
                  const CommonOpts& common, std::ostream& out) {
  AnalyticDistribution dist = [&]() -> AnalyticDistribution {
    if (o.family == "unif") {
      if (cmd->count("--k") == 0) {
        throw ValidationError("coverage: unif family needs --k");
      }
      return MixtureOfUniforms(o.k, 1, 1.0);
    }
    if (o.family == "mixture") {
      if (cmd->count("--d") == 0 || cmd->count("--D") == 0 ||
          cmd->count("--p") == 0) {
        throw ValidationError(
            "coverage: mixture family needs --d, --D and --p");
      }
      return MixtureOfUniforms(o.d, o.big_d, o.p);
    }
    if (o.family == "zeta") {
      if (cmd->count("--q") == 0) {
        throw ValidationError("coverage: zeta family needs --q");
      }
      return Zeta(o.q);
    }
    throw ValidationError("coverage: unknown family \"" + o.family +
                          "\" (unif, mixture or zeta)");
  }();
  if (o.trials < 1) throw ValidationError("coverage: need --trials >= 1");

  double true_entropy = entropy(dist);
  double moment = information_moment(dist, o.alpha);

  std::int64_t violations = 0;
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(o.trials));
  for (std::int64_t t = 0; t < o.trials; ++t) {
    std::uint64_t seed_t =
        derive_seed(static_cast<std::uint64_t>(common.seed),
                    static_cast<std::uint64_t>(t));
    EmpiricalMeasure emp =
        EmpiricalMeasure::from_samples(sample(dist, o.n, seed_t));
    EntropyCertificate cert = certificate(emp, o.alpha, moment, o.delta);
    if (std::fabs(cert.estimate - true_entropy) > cert.radius) ++violations;
    radii.push_back(cert.radius);
  }

  double mean = 0.0;
  for (double r : radii) mean += r;
  mean /= static_cast<double>(o.trials);
  double var = 0.0;
  for (double r : radii) var += (r - mean) * (r - mean);
  double sd = o.trials > 1
                  ? std::sqrt(var / static_cast<double>(o.trials - 1))
                  : 0.0;

  out << "{\"trials\":" << o.trials << ",\"violations\":" << violations
      << ",\"violation_rate\":"
      << format_g17(static_cast<double>(violations) /
                    static_cast<double>(o.trials))
      << ",\"delta\":" << format_g17(o.delta)
      << ",\"radius_mean\":" << format_g17(mean)
      << ",\"radius_stddev\":" << format_g17(sd) << ",\"seed\":" << common.seed
      << "}\n";
}

struct MaxentOpts {
  std::string k_list;
  std::string alpha_list;
};

void run_maxent(const MaxentOpts& o, std::ostream& out) {
  std::vector<std::int64_t> ks = parse_integer_list(o.k_list, "k-list");
  std::vector<double> alphas = parse_double_list(o.alpha_list, "alpha-list");
  out << "K,alpha,lower,exact,upper\n";
  for (std::int64_t k : ks) {
    for (double alpha : alphas) {
      std::pair<double, double> env = max_alpha_entropy_bounds(k, alpha);
      MaxAlphaEntropy exact = max_alpha_entropy_exact(k, alpha);
      out << k << ',' << format_g17(alpha) << ',' << format_g17(env.first)
          << ',' << format_g17(exact.value) << ',' << format_g17(env.second)
          << '\n';
    }
  }
}

struct LowerBoundOpts {
  std::string kind;
  double h = 0.0;
  double alpha = 0.0;
  std::int64_t n = 0;
};

void run_lowerbound(const LowerBoundOpts& o, CLI::App* cmd,
                    std::ostream& out) {
  if (o.kind == "noemp") {
    if (cmd->count("--h") == 0 || cmd->count("--n") == 0) {
      throw ValidationError("lowerbound: kind noemp needs --h and --n");
    }
    NoEmpPair r = no_emp_construction(o.h, o.n);
    bool in_range = r.entropy_mun >= r.h / 2.0 && r.entropy_mun <= r.h;
    out << "{\"kind\":\"noemp\",\"h\":" << format_g17(r.h) << ",\"n\":" << r.n
        << ",\"a_n\":" << format_g17(r.a_n)
        << ",\"log_s\":" << format_g17(r.log_s) << ",\"s\":" << r.s
        << ",\"kl\":" << format_g17(r.kl)
        << ",\"entropy\":" << format_g17(r.entropy_mun)
        << ",\"entropy_in_range\":" << (in_range ? "true" : "false")
        << ",\"risk_floor\":" << format_g17(r.risk_floor) << "}\n";
    return;
  }
  if (o.kind == "minimax") {
    if (cmd->count("--alpha") == 0 || cmd->count("--n") == 0) {
      throw ValidationError("lowerbound: kind minimax needs --alpha and --n");
    }
    if (o.n > 100000000) {
      throw ValidationError(
          "lowerbound: n too large for the n^2 collision probe");
    }
    MinimaxLower ml = minimax_lower_value(o.alpha, o.n);
    double gap = std::log(static_cast<double>(o.n));
    double birthday = birthday_no_collision(o.n, o.n * o.n);
    out << "{\"kind\":\"minimax\",\"alpha\":" << format_g17(o.alpha)
        << ",\"n\":" << o.n << ",\"h\":" << format_g17(ml.h)
        << ",\"entropy_gap\":" << format_g17(gap)
        << ",\"bound\":" << format_g17(ml.bound)
        << ",\"birthday\":" << format_g17(birthday) << "}\n";
    return;
  }
  throw ValidationError("lowerbound: unknown kind \"" + o.kind +
                        "\" (noemp or minimax)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out,
            std::ostream& err) {
  (void)err;
  try {
    std::vector<std::string> args = args_in;
    apply_config(args);

    CLI::App app{"plug-in entropy estimates with empirical error radii"};
    app.set_help_flag("--help", "print this help and exit");
    app.option_defaults()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    CommonOpts common;

    EstimateOpts eo;
    CLI::App* est = app.add_subcommand(
        "estimate", "entropy certificate for a sample or count file");
    add_common(est, common);
    est->add_option("--input", eo.input, "input file")->required();
    est->add_option("--format", eo.format, "samples or counts (default samples)");
    est->add_option("--alpha", eo.alpha, "moment order, in (1, 64]");
    est->add_option("--h", eo.h, "assumed bound on H_alpha");
    est->add_option("--delta", eo.delta, "failure probability (default 0.05)");
    est->add_option("--alpha-grid", eo.alpha_grid,
                    "comma-separated alphas to search over");
    est->add_option("--h-table", eo.h_table,
                    "comma-separated H_alpha bounds, parallel to --alpha-grid");

    RatesOpts ro;
    CLI::App* rates = app.add_subcommand(
        "rates", "comparison bounds over a grid of sample sizes (CSV)");
    add_common(rates, common);
    rates->add_option("--family", ro.family, "mixture or zeta")->required();
    rates->add_option("--d", ro.d, "mixture: head block size");
    rates->add_option("--D", ro.big_d, "mixture: tail block size");
    rates->add_option("--p", ro.p, "mixture: head mass");
    rates->add_option("--q", ro.q, "zeta: exponent, > 1");
    rates->add_option("--bounds", ro.bounds,
                      "comma list from our,wy,ct (default all for mixture, "
                      "our for zeta)");
    rates->add_option("--n-grid", ro.n_grid, "start:stop:points")->required();
    rates->add_flag("--linear", ro.linear,
                    "space the grid linearly instead of logarithmically");
    rates->add_option("--wy-c", ro.wy_c, "constant C > 1 in wy (default 2)");

    CoverageOpts co;
    CLI::App* coverage = app.add_subcommand(
        "coverage", "Monte Carlo check of the certificate's coverage");
    add_common(coverage, common);
    coverage->add_option("--family", co.family, "unif, mixture or zeta")
        ->required();
    coverage->add_option("--k", co.k, "unif: support size");
    coverage->add_option("--d", co.d, "mixture: head block size");
    coverage->add_option("--D", co.big_d, "mixture: tail block size");
    coverage->add_option("--p", co.p, "mixture: head mass");
    coverage->add_option("--q", co.q, "zeta: exponent, > 1");
    coverage->add_option("--n", co.n, "sample size per trial")->required();
    coverage->add_option("--alpha", co.alpha, "moment order, in (1, 64]")
        ->required();
    coverage->add_option("--delta", co.delta,
                         "failure probability (default 0.05)");
    coverage->add_option("--trials", co.trials, "number of trials")
        ->required();

    MaxentOpts mo;
    CLI::App* maxent = app.add_subcommand(
        "maxent", "largest H_alpha on a K-point support, with envelope (CSV)");
    add_common(maxent, common);
    maxent->add_option("--k-list", mo.k_list, "comma-separated support sizes")
        ->required();
    maxent->add_option("--alpha-list", mo.alpha_list,
                       "comma-separated moment orders")
        ->required();

    LowerBoundOpts lo;
    CLI::App* lower = app.add_subcommand(
        "lowerbound", "adversarial constructions behind the lower bounds");
    add_common(lower, common);
    lower->add_option("--kind", lo.kind, "noemp or minimax")->required();
    lower->add_option("--h", lo.h, "noemp: entropy target");
    lower->add_option("--alpha", lo.alpha, "minimax: moment order");
    lower->add_option("--n", lo.n, "sample size");

    std::vector<std::string> argv_s;
    argv_s.reserve(args.size() + 1);
    argv_s.push_back("entrolab");
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_s.size());
    for (std::string& s : argv_s) argv.push_back(s.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      std::vector<CLI::App*> subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.front()->help());
      return 0;
    } catch (const CLI::ParseError& e) {
      throw ValidationError(e.what());
    }

    std::ostringstream report;
    if (app.got_subcommand(est)) {
      run_estimate(eo, est, report);
    } else if (app.got_subcommand(rates)) {
      run_rates(ro, rates, common, report);
    } else if (app.got_subcommand(coverage)) {
      run_coverage(co, coverage, common, report);
    } else if (app.got_subcommand(maxent)) {
      run_maxent(mo, report);
    } else {
      run_lowerbound(lo, lower, report);
    }

    if (!common.output.empty()) {
      std::ofstream f(common.output);
      if (!f) {
        throw ValidationError(common.output + ": cannot open for writing");
      }
      f << report.str();
      f.flush();
      if (!f.good()) throw ValidationError(common.output + ": write failed");
    } else {
      out << report.str();
    }
    return 0;
  } catch (const ValidationError& e) {
    out << "{\"error\":\"" << json_escape(e.what()) << "\",\"exit_code\":2}\n";
    return 2;
  } catch (const NumericError& e) {
    out << "{\"error\":\"" << json_escape(e.what()) << "\",\"exit_code\":3}\n";
    return 3;
  } catch (const std::exception& e) {
    out << "{\"error\":\"" << json_escape(e.what()) << "\",\"exit_code\":3}\n";
    return 3;
  }
}

}  // namespace entrolab
