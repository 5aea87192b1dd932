#pragma once

// Batch checks over enumerated and random graphs, with CSV/JSON reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <exception>
#include <functional>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stabgraph/contact.hpp"

namespace stabgraph {

/// STABGRAPH_THREADS if set and positive, else the hardware concurrency.
inline std::size_t worker_count(std::size_t requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STABGRAPH_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(k) for k in [0, count) on `threads` workers. Exceptions stop the
/// pool and the first one is rethrown.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; !failed && (k = next.fetch_add(1)) < count;) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline std::string edges_field(const ColoredGraph& g) {
  std::string out;
  for (const auto& [i, j] : g.edges()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjecture sweep

struct ConjectureRow {
  std::size_t n = 0;
  std::string canonical_id;
  std::string edges;
  std::size_t ell = 0;
  std::optional<std::size_t> K0;
  bool match0 = false;
  std::string t;  // empty when no t sample was requested
  std::optional<std::size_t> Kt;
  bool matcht = false;
  std::uint64_t micros = 0;
  std::string error;  // first computational error for this row, if any

  friend bool operator==(const ConjectureRow&, const ConjectureRow&) = default;
};

struct SweepOptions {
  std::size_t threads = 0;
  bool timing = true;
};

namespace detail {

inline std::vector<ConjectureRow> conjecture_rows(const ColoredGraph& g, const std::vector<Rational>& ts,
                                                  bool timing) {
  const auto start = std::chrono::steady_clock::now();
  ConjectureRow base;
  base.n = g.order();
  base.canonical_id = canonical_form(g);
  base.edges = edges_field(g);
  base.ell = shortest_path_len(g, 1, g.order()).value_or(0);
  try {
    base.K0 = contact_order(g, {-1, 1}, false).K;
    base.match0 = *base.K0 == 2 * base.ell;
  } catch (const Error& e) {
    base.error = e.what();
  }
  std::vector<ConjectureRow> rows;
  if (ts.empty()) rows.push_back(base);
  for (const auto& t : ts) {
    ConjectureRow row = base;
    row.t = t.get_str();
    try {
      row.Kt = contact_order(g.with_t(t), {-1, -1}, false).K;
      row.matcht = *row.Kt == 2 * base.ell + 2;
    } catch (const Error& e) {
      if (row.error.empty()) row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (timing) {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    for (auto& r : rows) r.micros = static_cast<std::uint64_t>(us.count());
  }
  return rows;
}

}  // namespace detail

/// Rows for every Connected1n class with 2 <= n <= n_max, ordered by n, then
/// canonical id, then the position of t in `ts`. Mismatches are data.
inline std::vector<ConjectureRow> verify_conjecture(std::size_t n_max, const std::vector<Rational>& ts,
                                                    const SweepOptions& opt = {}) {
  if (n_max < 2 || n_max > kMaxEnumerationOrder) throw Error(Errc::TooLarge, "verify needs 2 <= nmax <= 8");
  for (const auto& t : ts)
    if (sgn(t) <= 0 || t >= 1) throw Error(Errc::InvalidT, "t samples must lie in (0, 1), got " + t.get_str());
  std::vector<ColoredGraph> graphs;
  for (std::size_t n = 2; n <= n_max; ++n) {
    auto batch = enumerate_graphs(n, Rational(0), true);
    graphs.insert(graphs.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  std::vector<std::vector<ConjectureRow>> slots(graphs.size());
  parallel_for(graphs.size(), worker_count(opt.threads),
               [&](std::size_t k) { slots[k] = detail::conjecture_rows(graphs[k], ts, opt.timing); });
  std::vector<ConjectureRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

// ---------------------------------------------------------------------------
// Modification checks

enum class Modification { AppendTail, PrependHead, Attach };

constexpr std::string_view modification_name(Modification m) {
  switch (m) {
    case Modification::AppendTail: return "append";
    case Modification::PrependHead: return "prepend";
    case Modification::Attach: return "attach";
  }
  return "?";
}

struct ModificationCase {
  Modification kind;
  ColoredGraph before;
  ColoredGraph after;
  std::optional<std::size_t> K_before;
  std::optional<std::size_t> K_after;
  std::string error;

  std::size_t expected_shift() const { return kind == Modification::Attach ? 0 : 2; }
  bool passed() const { return K_before && K_after && *K_after == *K_before + expected_shift(); }
};

struct ModificationSummary {
  std::size_t passed[3] = {0, 0, 0};
  std::size_t failed[3] = {0, 0, 0};
  std::vector<ModificationCase> failures;

  std::size_t total_failed() const { return failed[0] + failed[1] + failed[2]; }
};

inline ModificationCase evaluate_modification(Modification kind, const ColoredGraph& before, const ColoredGraph& after) {
  ModificationCase c{kind, before, after, std::nullopt, std::nullopt, {}};
  try {
    c.K_before = contact_order(before, {-1, 1}).K;
    c.K_after = contact_order(after, {-1, 1}).K;
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

/// Uniform random graph on n vertices (edge probability 1/2) conditioned on
/// v1 and vn being joined by a path.
inline ColoredGraph random_connected_graph(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    ColoredGraph g(n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        if (coin(rng)) g.add_edge(i, j);
    if (is_connected_1n(g) == Connectivity::Connected1n) return g;
  }
}

struct AttachInstance {
  ColoredGraph host;
  ColoredGraph h;
  std::vector<AttachLink> links;
};

/// A host with v_n pendant on v_{n-1} (appending a tail when needed), a random
/// graph on one or two vertices, and random links with at least one to v_{n-1}.
inline AttachInstance random_attach_instance(const ColoredGraph& g, std::mt19937_64& rng) {
  const std::size_t n = g.order();
  const bool pendant = n >= 2 && g.degree(n) == 1 && g.has_edge(n - 1, n);
  AttachInstance inst{pendant ? g : mod_append_tail(g), ColoredGraph(1), {}};
  const std::size_t hn = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  std::bernoulli_distribution coin(0.5);
  inst.h = ColoredGraph(hn);
  if (hn == 2 && coin(rng)) inst.h.add_edge(1, 2);
  const std::size_t hosted = inst.host.order();
  for (std::size_t v = 1; v <= hn; ++v) {
    if (coin(rng)) inst.links.push_back({v, hosted - 1});
    if (coin(rng)) inst.links.push_back({v, hosted});
  }
  if (std::none_of(inst.links.begin(), inst.links.end(), [&](const AttachLink& l) { return l.g_vertex == hosted - 1; }))
    inst.links.push_back({std::uniform_int_distribution<std::size_t>(1, hn)(rng), hosted - 1});
  return inst;
}

/// Seeded random Connected1n graphs with 2 <= n <= n_max; each is checked
/// under all three modifications.
inline ModificationSummary verify_modifications(std::size_t sample_count, std::size_t n_max, std::uint64_t seed,
                                                std::size_t threads = 0) {
  if (n_max < 2) throw Error(Errc::PreconditionViolated, "verify_modifications needs n_max >= 2");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Modification, std::pair<ColoredGraph, ColoredGraph>>> jobs;
  for (std::size_t k = 0; k < sample_count; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, n_max)(rng);
    const ColoredGraph g = random_connected_graph(n, rng);
    jobs.push_back({Modification::AppendTail, {g, mod_append_tail(g)}});
    jobs.push_back({Modification::PrependHead, {g, mod_prepend_head(g)}});
    const AttachInstance inst = random_attach_instance(g, rng);
    jobs.push_back({Modification::Attach, {inst.host, mod_attach(inst.host, inst.h, inst.links)}});
  }
  std::vector<std::optional<ModificationCase>> results(jobs.size());
  parallel_for(jobs.size(), worker_count(threads), [&](std::size_t k) {
    results[k] = evaluate_modification(jobs[k].first, jobs[k].second.first, jobs[k].second.second);
  });
  ModificationSummary summary;
  for (auto& r : results) {
    const auto idx = static_cast<std::size_t>(r->kind);
    if (r->passed()) {
      ++summary.passed[idx];
    } else {
      ++summary.failed[idx];
      summary.failures.push_back(std::move(*r));
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader = "n,canonical_id,edges,ell,K0,match0,t,Kt,matcht,micros";

namespace detail {

inline std::string order_field(const std::optional<std::size_t>& k, const std::string& error) {
  if (k) return std::to_string(*k);
  return error.empty() ? std::string() : "error";
}

inline nlohmann::ordered_json row_to_json(const ConjectureRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["canonical_id"] = r.canonical_id;
  j["edges"] = r.edges;
  j["ell"] = r.ell;
  j["K0"] = r.K0 ? nlohmann::ordered_json(*r.K0) : nlohmann::ordered_json(nullptr);
  j["match0"] = r.match0;
  j["t"] = r.t;
  j["Kt"] = r.Kt ? nlohmann::ordered_json(*r.Kt) : nlohmann::ordered_json(nullptr);
  j["matcht"] = r.matcht;
  j["micros"] = r.micros;
  j["error"] = r.error;
  return j;
}

inline std::optional<std::size_t> optional_size(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

}  // namespace detail

inline void write_report(const std::vector<ConjectureRow>& rows, std::ostream& os, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
      os << r.n << ',' << r.canonical_id << ',' << r.edges << ',' << r.ell << ','
         << detail::order_field(r.K0, r.error) << ',' << (r.match0 ? "true" : "false") << ',' << r.t << ','
         << (r.t.empty() ? std::string() : detail::order_field(r.Kt, r.error)) << ','
         << (r.t.empty() ? "" : (r.matcht ? "true" : "false")) << ',' << r.micros << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(detail::row_to_json(r));
  os << arr.dump(2) << '\n';
}

inline void write_report(const std::vector<ConjectureRow>& rows, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
  write_report(rows, out, format);
  out.flush();
  if (!out) throw Error(Errc::IoError, "write to '" + path + "' failed");
}

/// Reads a JSON report written by `write_report`.
inline std::vector<ConjectureRow> read_report_json(std::istream& is) {
  nlohmann::json arr;
  try {
    is >> arr;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON report: ") + e.what());
  }
  if (!arr.is_array()) throw Error(Errc::ParseError, "JSON report must be an array");
  std::vector<ConjectureRow> rows;
  try {
    for (const auto& j : arr) {
      ConjectureRow r;
      r.n = j.at("n").get<std::size_t>();
      r.canonical_id = j.at("canonical_id").get<std::string>();
      r.edges = j.at("edges").get<std::string>();
      r.ell = j.at("ell").get<std::size_t>();
      r.K0 = detail::optional_size(j.at("K0"));
      r.match0 = j.at("match0").get<bool>();
      r.t = j.at("t").get<std::string>();
      r.Kt = detail::optional_size(j.at("Kt"));
      r.matcht = j.at("matcht").get<bool>();
      r.micros = j.at("micros").get<std::uint64_t>();
      r.error = j.value("error", std::string());
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON report row: ") + e.what());
  }
  return rows;
}

inline std::vector<ConjectureRow> read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  return read_report_json(in);
}

}  // namespace stabgraph
