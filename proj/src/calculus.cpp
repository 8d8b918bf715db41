#include "qtw/calculus.hpp"

#include <algorithm>

#include "json.hpp"

namespace qtw {

int numeric(LValue v) {
  if (v == LValue::Star) throw PreconditionError("star has no numeric value");
  return static_cast<int>(v);
}

LValue lvalue_from_int(int v) {
  switch (v) {
    case -1: return LValue::Minus;
    case 0: return LValue::Zero;
    case 1: return LValue::Plus;
    default: throw PreconditionError("label must be -1, 0, 1 or star");
  }
}

namespace {

// Calls visit(u, v) for every edge of g with both ends in `on`.
template <class Visit>
bool all_edges_on(const Graph& g, std::span<const Vertex> on, Visit visit) {
  if (on.empty()) {
    for (const Edge& e : g.edges())
      if (!visit(e.u, e.v)) return false;
    return true;
  }
  std::vector<char> in = membership(g.vertex_count(), on);
  for (Vertex u : on)
    for (const Incidence& inc : g.incident(u))
      if (u < inc.to && in[inc.to] && !visit(u, inc.to)) return false;
  return true;
}

bool continuous_pair(LValue a, LValue b) {
  return !((a == LValue::Plus && b == LValue::Minus) || (a == LValue::Minus && b == LValue::Plus));
}

bool holomorphic_pair(LValue a, LValue b) {
  return continuous_pair(a, b) && !((a == LValue::Zero && b == LValue::Star) ||
                                    (a == LValue::Star && b == LValue::Zero));
}

}  // namespace

bool is_continuous(const Graph& g, const LFunction& f, std::span<const Vertex> on) {
  return all_edges_on(g, on, [&](Vertex u, Vertex v) { return continuous_pair(f[u], f[v]); });
}

bool is_holomorphic(const Graph& g, const LFunction& f, std::span<const Vertex> on) {
  return all_edges_on(g, on, [&](Vertex u, Vertex v) { return holomorphic_pair(f[u], f[v]); });
}

bool is_entire(const Graph& g, const LFunction& f, std::span<const Vertex> on) {
  if (on.empty()) {
    if (std::any_of(f.values().begin(), f.values().end(), is_star)) return false;
  } else {
    if (std::any_of(on.begin(), on.end(), [&](Vertex v) { return is_star(f[v]); })) return false;
  }
  return is_continuous(g, f, on);
}

Orientation Orientation::random(const Graph& g, std::mt19937_64& rng) {
  Orientation o(g);
  for (auto& bit : o.flipped_) bit = static_cast<char>(rng() & 1u);
  return o;
}

bool OneChain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](std::int64_t v) { return v == 0; });
}

OneChain& OneChain::operator+=(const OneChain& other) {
  if (other.size() != size()) throw PreconditionError("chain size mismatch");
  for (int e = 0; e < size(); ++e) values_[e] += other.values_[e];
  return *this;
}

OneChain& OneChain::operator-=(const OneChain& other) {
  if (other.size() != size()) throw PreconditionError("chain size mismatch");
  for (int e = 0; e < size(); ++e) values_[e] -= other.values_[e];
  return *this;
}

// ---------------------------------------------------------------------------

Walk Walk::trivial(Vertex v) {
  Walk w;
  w.vertices_.push_back(v);
  return w;
}

Walk Walk::from_vertices(const Graph& g, std::span<const Vertex> vertices) {
  Walk w;
  w.vertices_.assign(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    auto e = g.find_edge(vertices[i], vertices[i + 1]);
    if (!e)
      throw PreconditionError("walk steps between non-adjacent vertices " +
                              std::to_string(vertices[i]) + " and " + std::to_string(vertices[i + 1]));
    w.edges_.push_back(*e);
  }
  return w;
}

Walk Walk::from_parts(const Graph& g, std::vector<Vertex> vertices, std::vector<EdgeId> edges) {
  if (vertices.empty() ? !edges.empty() : edges.size() + 1 != vertices.size())
    throw PreconditionError("walk needs one more vertex than edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = g.edge(edges[i]);
    bool joins = (e.u == vertices[i] && e.v == vertices[i + 1]) ||
                 (e.v == vertices[i] && e.u == vertices[i + 1]);
    if (!joins) throw PreconditionError("walk edge does not join its neighbouring vertices");
  }
  Walk w;
  w.vertices_ = std::move(vertices);
  w.edges_ = std::move(edges);
  return w;
}

Walk Walk::reversed() const {
  Walk w;
  w.vertices_.assign(vertices_.rbegin(), vertices_.rend());
  w.edges_.assign(edges_.rbegin(), edges_.rend());
  return w;
}

Walk Walk::then(const Walk& next) const {
  if (empty()) return next;
  if (next.empty()) return *this;
  if (end() != next.start()) throw PreconditionError("concatenated walks do not meet");
  Walk w = *this;
  w.vertices_.insert(w.vertices_.end(), next.vertices_.begin() + 1, next.vertices_.end());
  w.edges_.insert(w.edges_.end(), next.edges_.begin(), next.edges_.end());
  return w;
}

// ---------------------------------------------------------------------------

OneChain d(const Graph& g, const LFunction& f, const Orientation& orient) {
  OneChain df(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    LValue head = f[orient.head(g, e)];
    LValue tail = f[orient.tail(g, e)];
    if (is_star(head) || is_star(tail)) continue;
    df[e] = numeric(head) - numeric(tail);
  }
  return df;
}

OneChain indicator(const Graph& g, const Walk& w, const Orientation& orient) {
  OneChain chain(g.edge_count());
  for (int i = 0; i < w.length(); ++i) {
    EdgeId e = w.edges()[i];
    chain[e] += w.vertices()[i + 1] == orient.head(g, e) ? 1 : -1;
  }
  return chain;
}

std::int64_t integrate(const Graph& g, const Walk& w, const OneChain& h, const Orientation& orient) {
  // Summing traversal signs directly equals sum_e I_W(e) h(e).
  std::int64_t total = 0;
  for (int i = 0; i < w.length(); ++i) {
    EdgeId e = w.edges()[i];
    total += (w.vertices()[i + 1] == orient.head(g, e) ? 1 : -1) * h[e];
  }
  return total;
}

bool is_triangle(const Walk& t) { return t.length() == 3 && t.is_closed(); }

bool is_contractible(const Graph& g, const Walk& triangle, const LFunction& f) {
  if (!is_triangle(triangle)) throw PreconditionError("not a closed walk of length three");
  VertexSet vs = triangle.vertex_set();
  return is_holomorphic(g, f, vs);
}

bool verify_almost_contractible(const Graph& g, const Walk& w, std::span<const Walk> triangles,
                                const LFunction& f, int k, const Orientation& orient) {
  if (!w.is_closed() && !w.empty()) return false;
  OneChain sum(g.edge_count());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    if (!is_triangle(triangles[i])) return false;
    if (static_cast<int>(i) >= k && !is_contractible(g, triangles[i], f)) return false;
    sum += indicator(g, triangles[i], orient);
  }
  return sum == indicator(g, w, orient);
}

namespace {

bool constant_integer_on(const LFunction& f, const Walk& w) {
  if (w.empty()) return true;
  LValue first = f[w.start()];
  if (is_star(first)) return false;
  return std::all_of(w.vertices().begin(), w.vertices().end(),
                     [&](Vertex v) { return f[v] == first; });
}

}  // namespace

bool verify_almost_homotopic(const Graph& g, const Walk& w1, const Walk& w2, const Walk& q,
                             const Walk& r, std::span<const Walk> triangles, const LFunction& f,
                             int k, const Orientation& orient) {
  if (w1.empty() || w2.empty()) throw PreconditionError("homotopy needs non-empty walks");
  Walk qq = q.empty() ? Walk::trivial(w1.start()) : q;
  Walk rr = r.empty() ? Walk::trivial(w1.end()) : r;
  if (qq.start() != w1.start() || qq.end() != w2.start())
    throw PreconditionError("Q does not join the starts of the walks");
  if (rr.start() != w1.end() || rr.end() != w2.end())
    throw PreconditionError("R does not join the ends of the walks");
  if (!constant_integer_on(f, qq) || !constant_integer_on(f, rr)) return false;
  Walk loop = qq.then(w2).then(rr.reversed()).then(w1.reversed());
  return verify_almost_contractible(g, loop, triangles, f, k, orient);
}

std::vector<PathWeight> path_weights(const Graph& g, const Walk& path, const LFunction& f) {
  VertexSet vs = path.vertex_set();
  if (static_cast<int>(vs.size()) != static_cast<int>(path.vertices().size()))
    throw PreconditionError("path_weights needs a path (no repeated vertices)");
  if (!is_entire(g, f, vs)) throw PreconditionError("f is not entire on the path");
  std::vector<PathWeight> out;
  const auto& v = path.vertices();
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    out.push_back({v[i], numeric(f[v[i + 1]]) - numeric(f[v[i - 1]])});
  return out;
}

std::int64_t doubled_weight_of(std::span<const PathWeight> weights, const std::vector<char>& in_set) {
  std::int64_t total = 0;
  for (const PathWeight& w : weights)
    if (in_set[w.vertex]) total += w.doubled;
  return total;
}

// ---------------------------------------------------------------------------

std::string to_json_string(const LFunction& f) {
  auto arr = nlohmann::json::array();
  for (LValue v : f.values()) {
    if (is_star(v))
      arr.push_back("*");
    else
      arr.push_back(numeric(v));
  }
  return arr.dump();
}

LFunction lfunction_from_json_string(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw PreconditionError("L-function JSON must be an array");
  std::vector<LValue> values;
  for (const auto& item : arr) {
    if (item.is_string()) {
      if (item.get<std::string>() != "*") throw PreconditionError("unknown label");
      values.push_back(LValue::Star);
    } else {
      values.push_back(lvalue_from_int(item.get<int>()));
    }
  }
  return LFunction(std::move(values));
}

std::string to_json_string(const Walk& w) { return nlohmann::json(w.vertices()).dump(); }

Walk walk_from_json_string(const Graph& g, const std::string& text) {
  auto vertices = nlohmann::json::parse(text).get<std::vector<Vertex>>();
  return Walk::from_vertices(g, vertices);
}

}  // namespace qtw
