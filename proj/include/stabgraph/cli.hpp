#pragma once

// The `stabgraph` command line. `run` takes the arguments after the program
// name and writes to the given streams, so tests can drive it directly.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabgraph/boundary.hpp"
#include "stabgraph/contact.hpp"
#include "stabgraph/harness.hpp"
#include "stabgraph/level_set.hpp"

namespace stabgraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph_path;
  std::string g6;
  std::string t;
  std::string target;
  std::string format = "text";
  std::string out;
  std::size_t scan_resolution = 256;
  bool oracle = false;
  bool dump_s = false;
  std::size_t nmax = 6;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  bool connected = false;
  bool no_timing = false;
  std::size_t modifications = 0;
  std::size_t threads = 0;
};

namespace detail {

inline Rational parse_t(const std::string& text) {
  Rational t;
  try {
    t = parse_rational(text);
  } catch (const Error&) {
    throw UsageError("--t must be a rational p/q, got '" + text + "'");
  }
  if (sgn(t) < 0 || t >= 1) throw UsageError("--t must lie in [0, 1), got '" + text + "'");
  return t;
}

inline ColoredGraph load_graph(const Options& o, std::istream& in) {
  if (o.graph_path.empty() == o.g6.empty()) throw UsageError("give exactly one of --graph or --g6");
  ColoredGraph g;
  if (!o.g6.empty()) {
    g = parse_graph6(o.g6, Rational(0));
  } else if (o.graph_path == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    g = parse_edge_list(ss.str());
  } else {
    std::ifstream file(o.graph_path, std::ios::binary);
    if (!file) throw Error(Errc::IoError, "cannot open '" + o.graph_path + "'");
    std::stringstream ss;
    ss << file.rdbuf();
    g = parse_edge_list(ss.str());
  }
  if (!o.t.empty()) g = g.with_t(parse_t(o.t));
  return g;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Target default_target(const ColoredGraph& g) { return sgn(g.t()) == 0 ? Target{-1, 1} : Target{-1, -1}; }

inline Target target_option(const Options& o, const ColoredGraph& g) {
  if (o.target.empty()) return default_target(g);
  try {
    return parse_target(o.target);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline void cmd_construct(const Options& o, std::istream& in, std::ostream& out) {
  const ColoredGraph g = load_graph(o, in);
  const RationalFunction2 f = rf_reduce(f_of_graph(g));
  const StablePair s = cayley_to_rif(f);
  const auto rif = rif_exponents(s);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = g.order();
    j["t"] = g.t().get_str();
    j["connectivity"] = std::string(connectivity_name(is_connected_1n(g)));
    j["f"] = {{"num", to_string(f.num)}, {"den", to_string(f.den)}};
    j["q"] = to_string(s.q);
    j["p"] = to_string(s.p);
    j["bidegree"] = {s.bidegree.first, s.bidegree.second};
    if (rif) j["reflection"] = {{"lambda", rif->lambda.str()}, {"k", rif->k}, {"l", rif->l}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "f = " << to_string(f) << '\n';
  out << "q = " << to_string(s.q) << '\n';
  out << "p = " << to_string(s.p) << '\n';
  out << "bidegree = (" << s.bidegree.first << ", " << s.bidegree.second << ")\n";
  if (rif) out << "q = " << rif->lambda.str() << " * z1^" << rif->k << " * z2^" << rif->l << " * reflect(p)\n";
}

inline void cmd_contact(const Options& o, std::istream& in, std::ostream& out) {
  const ColoredGraph g = load_graph(o, in);
  const Target target = target_option(o, g);
  if (o.oracle) {
    OracleOptions opt;
    opt.seed = o.seed;
    const OracleResult r = level_set_oracle(g, target, opt);
    if (o.format == "json") {
      out << nlohmann::ordered_json{{"target", to_string(target)}, {"K", r.K}, {"slope", r.slope}, {"attempts", r.attempts}}.dump(2)
          << '\n';
    } else {
      out << "K=" << r.K << '\n' << "slope=" << fmt(r.slope) << '\n';
    }
    return;
  }
  const ContactReport r = contact_order(g, target);
  if (o.format == "json") {
    nlohmann::ordered_json j{{"target", to_string(target)}, {"K", r.K}};
    if (o.dump_s) {
      j["s"] = to_string(r.s);
      j["r1"] = to_string(r.r1);
      j["r2"] = to_string(r.r2);
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "K=" << r.K << '\n';
  if (o.dump_s) out << "s(x) = " << to_string(r.s) << '\n';
}

inline void cmd_boundary(const Options& o, std::istream& in, std::ostream& out) {
  const ColoredGraph g = load_graph(o, in);
  const StablePair s = construct(g);
  const GuaranteedZeroReport gz = guaranteed_zero_check(g, s);
  std::vector<BoundaryPoint> pts;
  if (s.p.depends_on_z2()) pts = circle_scan(s, o.scan_resolution);
  const std::string target = std::to_string(gz.target.first) + "," + std::to_string(gz.target.second);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["guaranteed"] = {{"target", target}, {"predicted", gz.predicted}, {"actual", gz.actual}, {"agree", gz.agree}};
    j["zeros"] = nlohmann::ordered_json::array();
    for (const auto& pt : pts)
      j["zeros"].push_back({{"tau1", {pt.tau1.real(), pt.tau1.imag()}},
                            {"tau2", {pt.tau2.real(), pt.tau2.imag()}},
                            {"exact", pt.exact.has_value()}});
    out << j.dump(2) << '\n';
    return;
  }
  if (o.format == "text") {
    out << "guaranteed (" << target << "): predicted=" << (gz.predicted ? "true" : "false")
        << " actual=" << (gz.actual ? "true" : "false") << " agree=" << (gz.agree ? "true" : "false") << '\n';
    if (!s.p.depends_on_z2()) out << "p does not depend on z2: no boundary zeros\n";
  }
  out << "tau1_re,tau1_im,tau2_re,tau2_im,exact\n";
  for (const auto& pt : pts)
    out << fmt(pt.tau1.real()) << ',' << fmt(pt.tau1.imag()) << ',' << fmt(pt.tau2.real()) << ','
        << fmt(pt.tau2.imag()) << ',' << (pt.exact ? "true" : "false") << '\n';
}

inline void cmd_paths(const Options& o, std::ostream& out) {
  if (o.n < 1) throw UsageError("paths needs --n N with N >= 1");
  const UniPoly G = path_G(o.n);
  const UniPoly h = path_h(o.n);
  std::optional<ContactReport> r;
  if (o.n >= 2) r = contact_order(path_graph(o.n), {-1, 1});
  if (o.format == "json") {
    nlohmann::ordered_json j{{"n", o.n}, {"G", to_string(G)}, {"h", to_string(h)}};
    if (r) {
      j["K"] = r->K;
      j["s"] = to_string(r->s);
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "G(" << o.n << ") = " << to_string(G) << '\n';
  out << "h(" << o.n << ") = " << to_string(h) << '\n';
  if (r) {
    out << "K=" << r->K << '\n';
    out << "s(x) = " << to_string(r->s) << '\n';
  }
}

inline void cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.n < 2) throw UsageError("enumerate needs --n N with 2 <= N <= 8");
  const Rational t = o.t.empty() ? Rational(0) : parse_t(o.t);
  const auto graphs = enumerate_graphs(o.n, t, o.connected);
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& g : graphs)
      arr.push_back({{"canonical_id", to_graph6(g)}, {"edges", edges_field(g)},
                     {"connectivity", std::string(connectivity_name(is_connected_1n(g)))}});
    out << arr.dump(2) << '\n';
    return;
  }
  if (o.format == "csv") out << "canonical_id,edges,connectivity\n";
  for (const auto& g : graphs) {
    if (o.format == "csv")
      out << to_graph6(g) << ',' << edges_field(g) << ',' << connectivity_name(is_connected_1n(g)) << '\n';
    else
      out << to_graph6(g) << '\n';
  }
}

inline std::vector<Rational> parse_t_list(const std::string& text) {
  std::vector<Rational> ts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Rational t = parse_t(item);
    if (sgn(t) == 0) throw UsageError("verify t samples must lie in (0, 1)");
    ts.push_back(t);
  }
  return ts;
}

inline void cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<Rational> ts = parse_t_list(o.t.empty() ? "1/4,1/2" : o.t);
  const ReportFormat format = o.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
  const auto rows = verify_conjecture(o.nmax, ts, {o.threads, !o.no_timing});
  std::size_t match0 = 0, matcht = 0, with_t = 0, errors = 0;
  for (const auto& r : rows) {
    match0 += r.match0 ? 1 : 0;
    if (!r.t.empty()) ++with_t;
    matcht += r.matcht ? 1 : 0;
    errors += r.error.empty() ? 0 : 1;
  }
  if (o.out.empty()) {
    write_report(rows, out, format);
  } else {
    write_report(rows, o.out, format);
    out << "rows=" << rows.size() << " match0=" << match0 << " matcht=" << matcht << "/" << with_t
        << " errors=" << errors << '\n';
  }
  if (o.modifications > 0) {
    const ModificationSummary m = verify_modifications(o.modifications, o.nmax, o.seed, o.threads);
    std::ostream& log = o.out.empty() ? std::cerr : out;
    for (auto kind : {Modification::AppendTail, Modification::PrependHead, Modification::Attach}) {
      const auto k = static_cast<std::size_t>(kind);
      log << modification_name(kind) << ": passed=" << m.passed[k] << " failed=" << m.failed[k] << '\n';
    }
    for (const auto& c : m.failures)
      log << "counterexample (" << modification_name(c.kind) << "):\n" << to_edge_list(c.before) << "->\n"
          << to_edge_list(c.after);
  }
}

}  // namespace detail

/// Runs one subcommand; returns 0, 1 (computational error) or 2 (usage).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Stable polynomials on the bidisk from colored graphs", "stabgraph"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph_path, "Edge-list file, or - for standard input");
    sub->add_option("--g6", o.g6, "Graph in graph6 form");
    sub->add_option("--t", o.t, "Weight t = p/q of the last vertex, in [0, 1)");
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(allowed)));
  };

  auto* construct_cmd = app.add_subcommand("construct", "Print f, q and p for a graph");
  add_input(construct_cmd);
  add_format(construct_cmd, {"text", "json"});

  auto* contact_cmd = app.add_subcommand("contact", "Contact order at a boundary zero");
  add_input(contact_cmd);
  add_format(contact_cmd, {"text", "json"});
  contact_cmd->add_option("--target", o.target, "One of -1,1  -1,-1  1,1  1,-1");
  contact_cmd->add_flag("--oracle", o.oracle, "Use the numeric level-set estimate");
  contact_cmd->add_flag("--dump-s", o.dump_s, "Print the pairing polynomial s(x)");
  contact_cmd->add_option("--seed", o.seed, "Seed for the oracle's random level sets");

  auto* boundary_cmd = app.add_subcommand("boundary", "Zeros of p on the torus");
  add_input(boundary_cmd);
  add_format(boundary_cmd, {"text", "csv", "json"});
  boundary_cmd->add_option("--scan-resolution", o.scan_resolution, "Extra Newton starts on the circle")
      ->check(CLI::PositiveNumber);

  auto* paths_cmd = app.add_subcommand("paths", "G(n), h(n) and the contact report of the n-path");
  paths_cmd->add_option("--n", o.n, "Number of vertices")->required();
  add_format(paths_cmd, {"text", "json"});

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Graphs up to permutations of v2..v(n-1)");
  enumerate_cmd->add_option("--n", o.n, "Number of vertices (2..8)")->required();
  enumerate_cmd->add_option("--t", o.t, "Weight t of the last vertex");
  enumerate_cmd->add_flag("--connected", o.connected, "Only graphs joining v1 and vn");
  add_format(enumerate_cmd, {"text", "csv", "json"});

  auto* verify_cmd = app.add_subcommand("verify", "Contact-order sweep over enumerated graphs");
  verify_cmd->add_option("--nmax", o.nmax, "Largest graph order (2..8)");
  verify_cmd->add_option("--t", o.t, "Comma-separated t samples in (0, 1)");
  verify_cmd->add_option("--out", o.out, "Report file");
  verify_cmd->add_flag("--no-timing", o.no_timing, "Write 0 in the micros column");
  verify_cmd->add_option("--modifications", o.modifications, "Also check N random graphs under the modifications");
  verify_cmd->add_option("--seed", o.seed, "Seed for --modifications");
  verify_cmd->add_option("--threads", o.threads, "Worker count (default: STABGRAPH_THREADS or all cores)");
  add_format(verify_cmd, {"text", "csv", "json"});

  for (auto* sub : {construct_cmd, contact_cmd, boundary_cmd, paths_cmd, enumerate_cmd})
    sub->add_option("--out", o.out, "Write output to this file");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) err << sub->help();
    return kExitUsage;
  }

  auto* sub = app.get_subcommands().front();
  std::ofstream file;
  std::ostream* sink = &out;
  const bool file_output = !o.out.empty() && sub != verify_cmd;
  try {
    if (file_output) {
      file.open(o.out, std::ios::binary);
      if (!file) throw Error(Errc::IoError, "cannot open '" + o.out + "' for writing");
      sink = &file;
    }
    if (sub == construct_cmd) detail::cmd_construct(o, in, *sink);
    else if (sub == contact_cmd) detail::cmd_contact(o, in, *sink);
    else if (sub == boundary_cmd) detail::cmd_boundary(o, in, *sink);
    else if (sub == paths_cmd) detail::cmd_paths(o, *sink);
    else if (sub == enumerate_cmd) detail::cmd_enumerate(o, *sink);
    else detail::cmd_verify(o, *sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace stabgraph::cli
