#pragma once

// Colored graphs: simple undirected graphs with distinguished first and last
// vertices and a rational weight t in [0, 1) on the last vertex.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabgraph/exactalg.hpp"

namespace stabgraph {

inline constexpr std::size_t kMaxVertices = 64;

class ColoredGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  ColoredGraph() : ColoredGraph(1) {}
  explicit ColoredGraph(std::size_t n, Rational t = Rational(0)) : n_(n), t_(std::move(t)), adj_(n, 0) {
    if (n == 0) throw Error(Errc::IndexOutOfRange, "a graph needs at least one vertex");
    if (n > kMaxVertices) throw Error(Errc::TooLarge, "at most 64 vertices are supported");
    if (sgn(t_) < 0 || t_ >= 1) throw Error(Errc::InvalidT, "t must lie in [0, 1), got " + t_.get_str());
  }
  ColoredGraph(std::size_t n, const std::vector<Edge>& edges, Rational t = Rational(0)) : ColoredGraph(n, std::move(t)) {
    for (const auto& [i, j] : edges) add_edge(i, j);
  }

  std::size_t order() const { return n_; }
  const Rational& t() const { return t_; }
  ColoredGraph with_t(Rational t) const {
    ColoredGraph g(n_, std::move(t));
    g.adj_ = adj_;
    return g;
  }

  /// Vertices are 1-based throughout the public interface.
  void add_edge(std::size_t i, std::size_t j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw Error(Errc::LoopEdge, "loop at vertex " + std::to_string(i));
    if (has_edge(i, j))
      throw Error(Errc::DuplicateEdge, "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
    adj_[i - 1] |= bit(j - 1);
    adj_[j - 1] |= bit(i - 1);
  }
  void remove_edge(std::size_t i, std::size_t j) {
    check_vertex(i);
    check_vertex(j);
    adj_[i - 1] &= ~bit(j - 1);
    adj_[j - 1] &= ~bit(i - 1);
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    check_vertex(i);
    check_vertex(j);
    return (adj_[i - 1] >> (j - 1)) & 1u;
  }
  std::size_t degree(std::size_t v) const {
    check_vertex(v);
    return static_cast<std::size_t>(std::popcount(adj_[v - 1]));
  }
  /// Neighbour bitmask with bit k standing for vertex k+1.
  std::uint64_t neighbours(std::size_t v) const {
    check_vertex(v);
    return adj_[v - 1];
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (auto row : adj_) total += static_cast<std::size_t>(std::popcount(row));
    return total / 2;
  }

  /// Edges (i, j), i < j, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 1; i <= n_; ++i)
      for (std::size_t j = i + 1; j <= n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

  /// perm[old - 1] = new label (1-based).
  ColoredGraph relabeled(const std::vector<std::size_t>& perm) const {
    if (perm.size() != n_) throw Error(Errc::PreconditionViolated, "permutation size mismatch");
    ColoredGraph g(n_, t_);
    for (const auto& [i, j] : edges()) g.add_edge(perm[i - 1], perm[j - 1]);
    return g;
  }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.n_ == b.n_ && a.t_ == b.t_ && a.adj_ == b.adj_;
  }

 private:
  static std::uint64_t bit(std::size_t k) { return std::uint64_t{1} << k; }
  void check_vertex(std::size_t v) const {
    if (v < 1 || v > n_)
      throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }

  std::size_t n_;
  Rational t_;
  std::vector<std::uint64_t> adj_;
};

// ---------------------------------------------------------------------------
// Text formats

/// First line `<n> t=<p>/<q>` (t may be omitted and then defaults to 0), then
/// one `<i> <j>` pair per line. `#` starts a comment.
inline ColoredGraph parse_edge_list(std::string_view text) {
  std::optional<ColoredGraph> g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto fail = [&](std::size_t col, const std::string& what) {
      return Error(Errc::ParseError, "line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": " + what);
    };
    std::vector<std::pair<std::size_t, std::string>> tokens;
    for (std::size_t k = 0; k < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[k]))) {
        ++k;
        continue;
      }
      const std::size_t start = k;
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      tokens.emplace_back(start + 1, line.substr(start, k - start));
    }
    if (tokens.empty()) continue;

    auto read_index = [&](const std::pair<std::size_t, std::string>& tok) {
      const std::string& s = tok.second;
      if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw fail(tok.first, "expected a non-negative integer, got '" + s + "'");
      return static_cast<std::size_t>(std::stoul(s));
    };

    if (!g) {
      if (tokens.size() > 2) throw fail(tokens[2].first, "unexpected token '" + tokens[2].second + "'");
      const std::size_t n = read_index(tokens[0]);
      if (n == 0) throw fail(tokens[0].first, "vertex count must be positive");
      if (n > kMaxVertices) throw Error(Errc::TooLarge, "at most 64 vertices are supported");
      Rational t(0);
      if (tokens.size() == 2) {
        const std::string& tt = tokens[1].second;
        if (tt.rfind("t=", 0) != 0) throw fail(tokens[1].first, "expected t=<p>/<q>");
        try {
          t = parse_rational(std::string_view(tt).substr(2));
        } catch (const Error& e) {
          throw fail(tokens[1].first + 2, "malformed t value '" + tt.substr(2) + "'");
        }
      }
      g.emplace(n, t);
      continue;
    }
    if (tokens.size() != 2) throw fail(tokens.size() < 2 ? line.size() + 1 : tokens[2].first, "expected '<i> <j>'");
    g->add_edge(read_index(tokens[0]), read_index(tokens[1]));
  }
  if (!g) throw Error(Errc::ParseError, "missing header line '<n> t=<p>/<q>'");
  return *g;
}

inline std::string to_edge_list(const ColoredGraph& g) {
  std::string out = std::to_string(g.order()) + " t=" + g.t().get_str() + "\n";
  for (const auto& [i, j] : g.edges()) out += std::to_string(i) + " " + std::to_string(j) + "\n";
  return out;
}

/// Standard short-form graph6 (n <= 62), upper triangle column by column.
inline ColoredGraph parse_graph6(std::string_view line, const Rational& t = Rational(0)) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  if (line.rfind(">>graph6<<", 0) == 0) line.remove_prefix(10);
  if (line.empty()) throw Error(Errc::ParseError, "empty graph6 string");
  for (std::size_t k = 0; k < line.size(); ++k) {
    const int c = static_cast<unsigned char>(line[k]);
    if (c < 63 || c > 126)
      throw Error(Errc::ParseError, "invalid graph6 character at column " + std::to_string(k + 1));
  }
  const int first = static_cast<unsigned char>(line[0]);
  if (first == 126) throw Error(Errc::UnsupportedLongForm, "graph6 long form (n > 62) is not supported");
  const std::size_t n = static_cast<std::size_t>(first - 63);
  if (n == 0) throw Error(Errc::ParseError, "graph6 with zero vertices");
  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t chars = (bits + 5) / 6;
  if (line.size() != 1 + chars)
    throw Error(Errc::ParseError, "graph6 length " + std::to_string(line.size()) + " does not match n=" +
                                      std::to_string(n) + " (expected " + std::to_string(1 + chars) + ")");
  ColoredGraph g(n, t);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int value = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if ((value >> (5 - k % 6)) & 1) g.add_edge(i + 1, j + 1);
    }
  }
  for (; k < chars * 6; ++k) {
    const int value = static_cast<unsigned char>(line[1 + k / 6]) - 63;
    if ((value >> (5 - k % 6)) & 1) throw Error(Errc::ParseError, "nonzero graph6 padding bits");
  }
  return g;
}

inline std::string to_graph6(const ColoredGraph& g) {
  const std::size_t n = g.order();
  if (n > 62) throw Error(Errc::UnsupportedLongForm, "graph6 long form (n > 62) is not supported");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0;
  int used = 0;
  for (std::size_t j = 2; j <= n; ++j) {
    for (std::size_t i = 1; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++used == 6) {
        out += static_cast<char>(63 + acc);
        acc = used = 0;
      }
    }
  }
  if (used > 0) out += static_cast<char>(63 + (acc << (6 - used)));
  return out;
}

// ---------------------------------------------------------------------------
// Connectivity

/// BFS distance in edges; nullopt when v is unreachable from u.
inline std::optional<std::size_t> shortest_path_len(const ColoredGraph& g, std::size_t u, std::size_t v) {
  g.degree(u);
  g.degree(v);
  std::uint64_t seen = std::uint64_t{1} << (u - 1);
  std::uint64_t frontier = seen;
  const std::uint64_t goal = std::uint64_t{1} << (v - 1);
  for (std::size_t dist = 0; frontier != 0; ++dist) {
    if (frontier & goal) return dist;
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= g.neighbours(static_cast<std::size_t>(std::countr_zero(f)) + 1);
    frontier = next & ~seen;
    seen |= next;
  }
  return std::nullopt;
}

enum class Connectivity { Isolated1, NotConnected1n, Connected1n };

constexpr std::string_view connectivity_name(Connectivity c) {
  switch (c) {
    case Connectivity::Isolated1: return "Isolated1";
    case Connectivity::NotConnected1n: return "NotConnected1n";
    case Connectivity::Connected1n: return "Connected1n";
  }
  return "?";
}

/// A single vertex counts as isolated: v1 has no neighbours.
inline Connectivity is_connected_1n(const ColoredGraph& g) {
  if (g.degree(1) == 0) return Connectivity::Isolated1;
  return shortest_path_len(g, 1, g.order()) ? Connectivity::Connected1n : Connectivity::NotConnected1n;
}

// ---------------------------------------------------------------------------
// Modifications

/// New last vertex joined only to the old last vertex.
inline ColoredGraph mod_append_tail(const ColoredGraph& g) {
  const std::size_t n = g.order();
  ColoredGraph out(n + 1, g.edges(), g.t());
  out.add_edge(n, n + 1);
  return out;
}

/// New first vertex joined only to the old first vertex; old k becomes k+1.
inline ColoredGraph mod_prepend_head(const ColoredGraph& g) {
  ColoredGraph out(g.order() + 1, g.t());
  for (const auto& [i, j] : g.edges()) out.add_edge(i + 1, j + 1);
  out.add_edge(1, 2);
  return out;
}

/// A link from vertex `h` of the attached graph to `g_vertex` of the host,
/// which must be n-1 or n (old labels).
struct AttachLink {
  std::size_t h;
  std::size_t g_vertex;
};

/// Inserts the graph `h` between v_{n-1} and v_n. Host vertices 1..n-1 keep
/// their labels, h's vertex k becomes n-1+k, and the old v_n becomes the new
/// last vertex m = n + |h|. Requires v_n to be pendant on v_{n-1} and at least
/// one link to v_{n-1}.
inline ColoredGraph mod_attach(const ColoredGraph& g, const ColoredGraph& h, const std::vector<AttachLink>& links) {
  const std::size_t n = g.order();
  if (n < 2 || g.degree(n) != 1 || !g.has_edge(n - 1, n))
    throw Error(Errc::PreconditionViolated, "the last vertex must be joined only to vertex n-1");
  if (std::none_of(links.begin(), links.end(), [&](const AttachLink& l) { return l.g_vertex == n - 1; }))
    throw Error(Errc::PreconditionViolated, "at least one link to vertex n-1 is required");
  const std::size_t k = h.order();
  const std::size_t m = n + k;
  ColoredGraph out(m, g.t());
  for (const auto& [i, j] : g.edges()) out.add_edge(i == n ? m : i, j == n ? m : j);
  for (const auto& [i, j] : h.edges()) out.add_edge(n - 1 + i, n - 1 + j);
  for (const auto& l : links) {
    if (l.h < 1 || l.h > k) throw Error(Errc::IndexOutOfRange, "link from a vertex outside the attached graph");
    if (l.g_vertex != n - 1 && l.g_vertex != n)
      throw Error(Errc::PreconditionViolated, "links may only reach vertices n-1 and n");
    out.add_edge(n - 1 + l.h, l.g_vertex == n ? m : n - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form under permutations of the internal vertices

namespace detail {

/// Lexicographically minimal upper-triangle bit string (column-major, as in
/// graph6) over all labelings that keep the vertices in `fixed` in place.
/// Returns the minimizing labeling: order[pos] = original 0-based vertex.
class MinLabeling {
 public:
  MinLabeling(const std::vector<std::uint64_t>& adj, std::size_t n, std::vector<bool> fixed)
      : adj_(adj), n_(n), fixed_(std::move(fixed)), order_(n), used_(n, false) {
    for (std::size_t p = 0; p < n_; ++p)
      if (fixed_[p]) {
        order_[p] = p;
        used_[p] = true;
      }
  }

  std::vector<std::size_t> run() {
    if (n_ <= 1) return {0};
    prefix_.assign(n_ * (n_ - 1) / 2, 0);
    search(0, 0);
    return best_order_;
  }

 private:
  bool edge(std::size_t a, std::size_t b) const { return (adj_[a] >> b) & 1u; }

  // Places a vertex at `pos`, writing that column of the bit string from
  // index `at`. Prefixes are compared against the current best each time,
  // since best_ changes while siblings are still being explored.
  void search(std::size_t pos, std::size_t at) {
    if (pos == n_) {
      if (best_.empty() || prefix_ < best_) {
        best_ = prefix_;
        best_order_ = order_;
      }
      return;
    }
    auto descend = [&](std::size_t v) {
      order_[pos] = v;
      std::size_t k = at;
      for (std::size_t i = 0; i < pos; ++i, ++k) prefix_[k] = edge(order_[i], v) ? 1 : 0;
      if (!best_.empty() && std::lexicographical_compare(best_.begin(), best_.begin() + static_cast<std::ptrdiff_t>(k),
                                                         prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(k)))
        return;
      search(pos + 1, k);
    };
    if (fixed_[pos]) {
      descend(pos);
      return;
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      used_[v] = true;
      descend(v);
      used_[v] = false;
    }
  }

  const std::vector<std::uint64_t>& adj_;
  std::size_t n_;
  std::vector<bool> fixed_;
  std::vector<std::size_t> order_;
  std::vector<bool> used_;
  std::vector<char> prefix_;
  std::vector<char> best_;
  std::vector<std::size_t> best_order_;
};

inline std::vector<std::uint64_t> adjacency_rows(const ColoredGraph& g) {
  std::vector<std::uint64_t> rows(g.order());
  for (std::size_t v = 1; v <= g.order(); ++v) rows[v - 1] = g.neighbours(v);
  return rows;
}

}  // namespace detail

inline constexpr std::size_t kMaxCanonicalOrder = 10;

/// Relabeling of g (fixing v1 and vn) whose adjacency bit string is minimal.
inline ColoredGraph canonical_graph(const ColoredGraph& g) {
  const std::size_t n = g.order();
  if (n > kMaxCanonicalOrder) throw Error(Errc::TooLarge, "canonical form supports at most 10 vertices");
  std::vector<bool> fixed(n, false);
  fixed[0] = true;
  fixed[n - 1] = true;
  const auto order = detail::MinLabeling(detail::adjacency_rows(g), n, fixed).run();
  std::vector<std::size_t> perm(n);
  for (std::size_t pos = 0; pos < n; ++pos) perm[order[pos]] = pos + 1;
  return g.relabeled(perm);
}

/// The graph6 string of `canonical_graph(g)`; equal strings mean the graphs
/// differ only by a permutation of v2..v_{n-1}.
inline std::string canonical_form(const ColoredGraph& g) { return to_graph6(canonical_graph(g)); }

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

struct InternalClass {
  std::vector<std::uint64_t> adj;
  std::vector<std::vector<std::size_t>> automorphisms;
};

/// One representative per isomorphism class of graphs on k vertices.
inline std::vector<InternalClass> internal_classes(std::size_t k) {
  std::vector<InternalClass> out;
  if (k == 0) {
    out.push_back({{}, {{}}});
    return out;
  }
  const std::size_t pairs = k * (k - 1) / 2;
  std::vector<std::string> seen;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i) slots.emplace_back(i, j);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::vector<std::uint64_t> adj(k, 0);
    for (std::size_t s = 0; s < pairs; ++s)
      if ((mask >> s) & 1u) {
        adj[slots[s].first] |= std::uint64_t{1} << slots[s].second;
        adj[slots[s].second] |= std::uint64_t{1} << slots[s].first;
      }
    const auto order = MinLabeling(adj, k, std::vector<bool>(k, false)).run();
    // Only keep the graph when it already is its canonical labeling.
    std::vector<std::size_t> identity(k);
    std::iota(identity.begin(), identity.end(), 0);
    bool is_min = true;
    for (std::size_t s = 0; s < pairs && is_min; ++s) {
      const bool here = (adj[slots[s].first] >> slots[s].second) & 1u;
      const bool canon = (adj[order[slots[s].first]] >> order[slots[s].second]) & 1u;
      if (here != canon) is_min = false;
    }
    if (!is_min) continue;
    InternalClass cls{adj, {}};
    std::vector<std::size_t> perm = identity;
    do {
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t b = a + 1; b < k && ok; ++b)
          ok = (((adj[a] >> b) & 1u) == ((adj[perm[a]] >> perm[b]) & 1u));
      if (ok) cls.automorphisms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxEnumerationOrder = 8;

/// One representative per class of graphs on n vertices up to permutations of
/// v2..v_{n-1}, each in canonical labeling, sorted by canonical form.
inline std::vector<ColoredGraph> enumerate_graphs(std::size_t n, const Rational& t = Rational(0),
                                                  bool require_connected_1n = false) {
  if (n < 2) throw Error(Errc::PreconditionViolated, "enumeration needs n >= 2");
  if (n > kMaxEnumerationOrder) throw Error(Errc::TooLarge, "enumeration supports n <= 8");
  const std::size_t k = n - 2;
  std::vector<std::pair<std::string, ColoredGraph>> found;
  for (const auto& cls : detail::internal_classes(k)) {
    std::size_t colorings = 1;
    for (std::size_t v = 0; v < k; ++v) colorings *= 4;
    std::vector<std::size_t> digits(k);
    for (std::size_t code = 0; code < colorings; ++code) {
      for (std::size_t v = 0, c = code; v < k; ++v, c /= 4) digits[v] = c % 4;
      bool minimal = true;
      for (const auto& perm : cls.automorphisms) {
        std::size_t image = 0;
        for (std::size_t v = k; v-- > 0;) image = image * 4 + digits[perm[v]];
        if (image < code) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      for (int direct = 0; direct < 2; ++direct) {
        ColoredGraph g(n, t);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = a + 1; b < k; ++b)
            if ((cls.adj[a] >> b) & 1u) g.add_edge(a + 2, b + 2);
        for (std::size_t v = 0; v < k; ++v) {
          if (digits[v] & 1u) g.add_edge(1, v + 2);
          if (digits[v] & 2u) g.add_edge(v + 2, n);
        }
        if (direct) g.add_edge(1, n);
        if (require_connected_1n && is_connected_1n(g) != Connectivity::Connected1n) continue;
        ColoredGraph canon = canonical_graph(g);
        found.emplace_back(to_graph6(canon), std::move(canon));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ColoredGraph> out;
  out.reserve(found.size());
  for (auto& [key, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace stabgraph
