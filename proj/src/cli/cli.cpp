#include "kvertex/cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kvertex/boxconfig/boxconfig.hpp"
#include "kvertex/qcombi/identities.hpp"
#include "kvertex/vertexk/vertex.hpp"
#include "kvertex/wallcross/wallcross.hpp"

namespace kvertex::cli {

using exactalg::LaurentPoly;
using exactalg::RatFunc;
using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands = {"dt-vertex",        "pt-vertex", "quot2-vertex", "cy-limit",
                                               "check-identities", "check-wcf", "bridge"};

int default_order(const std::string& sub) {
  if (sub == "cy-limit") return 6;
  if (sub == "check-wcf") return 3;
  if (sub == "bridge" || sub == "quot2-vertex") return 2;
  return 4;
}

struct Parser {
  CLI::App app{"Equivariant K-theoretic DT/PT vertex toolkit", "kvertex"};
  Command cmd;
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, CLI::Option*> order_opts;

  Parser() {
    app.require_subcommand(1);
    cmd.jobs = std::max(1u, std::thread::hardware_concurrency());
    for (const auto& name : kSubcommands) {
      CLI::App* s = app.add_subcommand(name);
      subs[name] = s;
      const bool series = name == "dt-vertex" || name == "pt-vertex" || name == "quot2-vertex" ||
                          name == "cy-limit" || name == "bridge";
      if (name == "dt-vertex" || name == "pt-vertex" || name == "cy-limit") {
        s->add_option("--legs", cmd.legs, "Legs as \"3,1;2;1,1\"; empty slots are empty partitions");
      }
      if (name != "check-identities") {
        order_opts[name] = s->add_option("--order", cmd.order, "Truncation order in Q")->check(CLI::NonNegativeNumber);
      }
      if (name == "check-wcf" || name == "bridge") {
        s->add_option("--frame-dim", cmd.frame_dim, "Frame dimension N (default max(8, order+1))")
            ->check(CLI::PositiveNumber);
      }
      if (name == "check-wcf") s->add_option("--n0", cmd.n0, "Cutoff n_0 of the wall-crossing sums");
      if (name == "check-identities") {
        s->add_option("--suite", cmd.suite, "Identity suite")
            ->check(CLI::IsMember({"all", "qbinom", "qmultinom", "mochizuki", "joyce_lt", "joyce_b"},
                                  CLI::ignore_case));
        s->add_option("--max-n", cmd.max_n, "Size bound of the suite")->check(CLI::PositiveNumber);
      }
      if (series || name == "check-identities") {
        s->add_option("--jobs", cmd.jobs, "Worker threads")->check(CLI::PositiveNumber);
      }
      s->add_option("--out", cmd.out, "Output file (default stdout)");
      s->add_option("--format", cmd.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    }
  }

  void finish() {
    for (const auto& [name, s] : subs) {
      if (s->parsed()) cmd.subcommand = name;
    }
    auto it = order_opts.find(cmd.subcommand);
    if (it != order_opts.end() && it->second->count() == 0) cmd.order = default_order(cmd.subcommand);
    boxconfig::Legs legs;
    try {
      legs = boxconfig::parse_legs(cmd.legs);
    } catch (const std::exception& e) {
      throw UsageError("malformed legs \"" + cmd.legs + "\": " + e.what());
    }
    cmd.legs = boxconfig::legs_to_string(legs);
    if (cmd.subcommand == "cy-limit") {
      for (const auto& l : legs) {
        if (!l.empty()) throw UsageError("cy-limit needs empty legs");
      }
    }
    if (cmd.subcommand == "check-wcf" || cmd.subcommand == "bridge") {
      if (cmd.frame_dim == 0) cmd.frame_dim = std::max(8, cmd.order - cmd.n0);
      if (cmd.order - cmd.n0 - 1 > cmd.frame_dim - 1) {
        throw UsageError("--frame-dim " + std::to_string(cmd.frame_dim) + " too small for order " +
                         std::to_string(cmd.order));
      }
    }
    std::transform(cmd.suite.begin(), cmd.suite.end(), cmd.suite.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
  }
};

// --- formatting -----------------------------------------------------------

std::string monomial_pretty(const exactalg::Monomial& m) {
  const auto& d = m.doubled();
  if (d[0] == d[1] && d[1] == d[2] && d[3] == 0 && d[4] == 0) {
    const int k = d[0];
    if (k == 0) return "";
    if (k == 2) return "κ";
    if (k % 2 == 0) return "κ^" + std::to_string(k / 2);
    return "κ^(" + std::to_string(k) + "/2)";
  }
  return m.to_string();
}

std::string poly_pretty(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string c = exactalg::to_string(t.coefficient);
    const std::string m = monomial_pretty(t.monomial);
    const bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (m.empty()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += m;
    }
  }
  return out;
}

std::string ratfunc_pretty(const RatFunc& r) {
  if (r.is_polynomial()) return poly_pretty(r.numerator());
  return "(" + poly_pretty(r.numerator()) + ")/(" + poly_pretty(r.denominator()) + ")";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Check {
  std::string name;
  bool verdict = false;
  std::string detail;
};

std::string render_checks(const std::string& command, const json& params, const std::vector<Check>& checks,
                          const std::string& format) {
  bool all = true;
  for (const auto& c : checks) all = all && c.verdict;
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"verdict", c.verdict}, {"detail", c.detail}});
    os << json{{"command", command}, {"parameters", params}, {"checks", arr}, {"verdict", all}}.dump(2) << "\n";
  } else if (format == "csv") {
    os << "name,verdict,detail\n";
    for (const auto& c : checks) os << c.name << "," << (c.verdict ? "true" : "false") << "," << csv_quote(c.detail) << "\n";
  } else {
    for (const auto& c : checks) {
      os << (c.verdict ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    os << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return os.str();
}

std::string render_series(const vertexk::VertexSeries& s, const std::string& format) {
  const auto& q = s.series;
  std::ostringstream os;
  if (format == "json") {
    json coeffs = json::array();
    for (int n = q.min_power(); n <= q.order(); ++n) {
      coeffs.push_back({{"power", n}, {"value", q.coefficient(n).to_string()}});
    }
    os << json{{"kind", vertexk::kind_name(s.kind)},
               {"legs", boxconfig::legs_to_string(s.legs)},
               {"min_power", q.min_power()},
               {"order", q.order()},
               {"coefficients", coeffs}}
              .dump(2)
       << "\n";
  } else if (format == "csv") {
    os << "power,coefficient\n";
    for (int n = q.min_power(); n <= q.order(); ++n) os << n << "," << csv_quote(q.coefficient(n).to_string()) << "\n";
  } else {
    os << vertexk::kind_name(s.kind) << " vertex, legs (" << boxconfig::legs_to_string(s.legs) << "), through Q^"
       << q.order() << "\n";
    for (int n = q.min_power(); n <= q.order(); ++n) os << "Q^" << n << ": " << ratfunc_pretty(q.coefficient(n)) << "\n";
  }
  return os.str();
}

// --- subcommands ------------------------------------------------------------

struct Outcome {
  std::string text;
  bool verdict = true;
};

Outcome run_series(const Command& cmd) {
  vertexk::RunOptions opts;
  opts.jobs = cmd.jobs;
  const auto legs = boxconfig::parse_legs(cmd.legs);
  vertexk::VertexSeries s;
  if (cmd.subcommand == "dt-vertex") {
    s = vertexk::dt_vertex_series(legs, cmd.order, opts);
  } else if (cmd.subcommand == "pt-vertex") {
    s = vertexk::pt_vertex_series(legs, cmd.order, opts);
  } else {
    s = vertexk::quot2_vertex_series(cmd.order, opts);
  }
  return {render_series(s, cmd.format), true};
}

Outcome run_cy_limit(const Command& cmd) {
  vertexk::RunOptions opts;
  opts.jobs = cmd.jobs;
  const auto consts = vertexk::cy_constancy_check(vertexk::dt_vertex_series({}, cmd.order, opts));
  const auto expected = vertexk::macmahon_signed(cmd.order);
  bool ok = consts.size() == expected.size();
  std::optional<int> first_bad;
  for (std::size_t n = 0; n < consts.size() && n < expected.size(); ++n) {
    if (consts[n] != exactalg::Rational(expected[n]) && !first_bad) first_bad = static_cast<int>(n);
  }
  ok = ok && !first_bad;
  std::ostringstream os;
  if (cmd.format == "json") {
    json rows = json::array();
    for (std::size_t n = 0; n < consts.size(); ++n) {
      rows.push_back({{"power", n}, {"constant", exactalg::to_string(consts[n])}, {"expected", expected[n].get_str()}});
    }
    json rec{{"command", "cy-limit"}, {"order", cmd.order}, {"constants", rows}, {"verdict", ok}};
    if (first_bad) rec["first_mismatch"] = *first_bad;
    os << rec.dump(2) << "\n";
  } else if (cmd.format == "csv") {
    os << "power,constant,expected\n";
    for (std::size_t n = 0; n < consts.size(); ++n) {
      os << n << "," << exactalg::to_string(consts[n]) << "," << expected[n].get_str() << "\n";
    }
  } else {
    os << "CY limit of the 0-leg DT vertex through Q^" << cmd.order << "\n";
    for (std::size_t n = 0; n < consts.size(); ++n) {
      os << "Q^" << n << ": " << exactalg::to_string(consts[n]) << "  (MacMahon " << expected[n].get_str() << ")\n";
    }
    os << (ok ? "matches MacMahon" : "mismatch at Q^" + std::to_string(first_bad.value_or(-1))) << "\n";
  }
  return {os.str(), ok};
}

std::string instance_string(qcombi::Identity id, const std::vector<int>& m, int N) {
  std::string s = qcombi::identity_name(id) + " m=(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  s += ")";
  if (id != qcombi::Identity::QBINOM && id != qcombi::Identity::QMULTINOM) s += " N=" + std::to_string(N);
  return s;
}

Outcome run_identities(const Command& cmd) {
  std::vector<qcombi::Identity> ids;
  if (cmd.suite == "all") {
    ids = {qcombi::Identity::QBINOM, qcombi::Identity::QMULTINOM, qcombi::Identity::MOCHIZUKI,
           qcombi::Identity::JOYCE_LT, qcombi::Identity::JOYCE_B};
  } else {
    ids = {qcombi::parse_identity(cmd.suite)};
  }
  qcombi::SuiteRange range;
  if (cmd.max_n > 0) {
    range.max_n = cmd.max_n;
    range.max_N = cmd.max_n;
    range.max_m = std::min(range.max_m, cmd.max_n - 1);
  }
  std::vector<Check> checks;
  json params{{"suite", cmd.suite}, {"max_n", range.max_n}, {"max_N", range.max_N}, {"max_m", range.max_m},
              {"max_len", range.max_len}};
  for (auto id : ids) {
    const auto inst = qcombi::suite_instances(id, range);
    std::vector<char> ok(inst.size(), 0);
    std::vector<std::string> errors(inst.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < inst.size(); i = next++) {
        try {
          ok[i] = qcombi::check_identity(id, inst[i].first, inst[i].second).verdict ? 1 : 0;
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned workers = std::max(1u, std::min<unsigned>(cmd.jobs, static_cast<unsigned>(inst.size())));
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    // Instances are generated smallest first, so the first failure is minimal.
    Check c{qcombi::identity_name(id), true, ""};
    std::size_t passed = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (ok[i]) {
        ++passed;
      } else if (c.verdict) {
        c.verdict = false;
        c.detail = "smallest failing instance: " + instance_string(id, inst[i].first, inst[i].second);
        if (!errors[i].empty()) c.detail += " (" + errors[i] + ")";
      }
    }
    if (c.verdict) c.detail = std::to_string(passed) + " instances";
    checks.push_back(c);
  }
  return {render_checks("check-identities", params, checks, cmd.format),
          std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict; })};
}

Check from_result(const std::string& name, const wallcross::CheckResult& r) {
  return {name, r.verdict, r.detail};
}

Outcome run_wcf(const Command& cmd) {
  const int N = cmd.frame_dim;
  std::vector<Check> checks;
  Check collapse{"W_collapse", true, ""};
  for (int m = 1; m <= std::min(cmd.order - cmd.n0 - 1, N - 1); ++m) {
    if (!(wallcross::W(m, N) == wallcross::FormalExpr::symbol(wallcross::Qt(m)))) {
      collapse.verdict = false;
      collapse.detail = "W(" + std::to_string(m) + "," + std::to_string(N) + ") is not Q~_" + std::to_string(m);
      break;
    }
  }
  checks.push_back(collapse);
  checks.push_back(from_result("mochizuki", wallcross::mochizuki_check(cmd.order, N, cmd.n0)));
  checks.push_back(from_result("joyce", wallcross::joyce_check_detailed(cmd.order, N, {}, cmd.n0)));
  if (cmd.order - cmd.n0 - 1 >= 1) {
    wallcross::WOptions broken;
    broken.inner_offset = 2;
    const bool accepted = wallcross::joyce_check(cmd.order, N, broken, cmd.n0);
    checks.push_back({"joyce_negative_control", !accepted,
                      accepted ? "corrupted word sum was accepted" : "corrupted word sum rejected"});
  }
  checks.push_back(from_result("rank2_formal", wallcross::rank2_formal_check(std::min(cmd.order, N - 1), N)));
  const json params{{"order", cmd.order}, {"frame_dim", N}, {"n0", cmd.n0}};
  return {render_checks("check-wcf", params, checks, cmd.format),
          std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict; })};
}

Outcome run_bridge(const Command& cmd) {
  vertexk::RunOptions opts;
  opts.jobs = cmd.jobs;
  const auto hilb = vertexk::dt_vertex_series({}, cmd.order, opts);
  const auto quot = vertexk::quot2_vertex_series(cmd.order, opts);
  const auto r = wallcross::rank2_bridge_detailed(cmd.order, cmd.frame_dim, hilb, &quot.series, opts);
  const json params{{"order", cmd.order}, {"frame_dim", cmd.frame_dim}};
  return {render_checks("bridge", params, {from_result("rank2_bridge", r)}, cmd.format), r.verdict};
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Parser p;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    p.app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError("");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  p.finish();
  return p.cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    if (cmd.subcommand == "dt-vertex" || cmd.subcommand == "pt-vertex" || cmd.subcommand == "quot2-vertex") {
      o = run_series(cmd);
    } else if (cmd.subcommand == "cy-limit") {
      o = run_cy_limit(cmd);
    } else if (cmd.subcommand == "check-identities") {
      o = run_identities(cmd);
    } else if (cmd.subcommand == "check-wcf") {
      o = run_wcf(cmd);
    } else if (cmd.subcommand == "bridge") {
      o = run_bridge(cmd);
    } else {
      err << "error: unknown subcommand " << cmd.subcommand << "\n";
      return kUsage;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputation;
  }
  if (cmd.out.empty()) {
    out << o.text;
  } else {
    std::ofstream f(cmd.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << cmd.out << "\n";
      return kComputation;
    }
    f << o.text;
  }
  if (!o.verdict) {
    err << "verification failed\n";
    return kVerificationFailed;
  }
  return kOk;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const UsageError& e) {
    if (std::string(e.what()).empty()) {
      Parser p;
      std::cout << p.app.help();
      return kOk;
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return run(cmd, std::cout, std::cerr);
}

}  // namespace kvertex::cli
