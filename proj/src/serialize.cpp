#include "snapcx/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "snapcx/errors.hpp"

namespace snapcx {

using nlohmann::json;

namespace {

json set_to_json(ProcessSet s) { return s.to_vector(); }

ProcessSet set_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an integer array, got " + j.dump());
  ProcessSet s;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw InvalidInput("expected an integer, got " + x.dump());
    const int v = x.get<int>();
    if (v < 0 || v > 63) throw InvalidInput("process id out of range: " + x.dump());
    s.insert(v);
  }
  return s;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

json to_json(const RoundCounter& r) {
  json j = json::object();
  for (auto [p, n] : r.entries()) j[std::to_string(p)] = n;
  return j;
}

RoundCounter counter_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("counter must be a JSON object");
  std::map<ProcessId, int> entries;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t used = 0;
    int p = -1;
    try {
      p = std::stoi(it.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it.key().size())
      throw InvalidInput("bad process id '" + it.key() + "'");
    if (!it.value().is_number_integer())
      throw InvalidInput("round count for " + it.key() + " is not an integer");
    entries[p] = it.value().get<int>();
  }
  return RoundCounter(std::move(entries));
}

json to_json(const Witness& sigma) {
  json pairs = json::array();
  for (const Row& row : sigma.rows)
    pairs.push_back(json::array({set_to_json(row.w), set_to_json(row.g)}));
  return {{"pairs", pairs}};
}

Witness witness_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array())
    throw InvalidInput("witness must be {\"pairs\": [...]}");
  Witness sigma;
  for (const json& pair : j["pairs"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw InvalidInput("witness pair must be [W, G], got " + pair.dump());
    sigma.rows.push_back({set_from_json(pair[0]), set_from_json(pair[1])});
  }
  if (sigma.rows.empty()) throw InvalidInput("witness has no pairs");
  return sigma;
}

Witness witness_from_key(std::string_view key) {
  Witness sigma;
  std::size_t i = 0;
  auto bad = [&] {
    return InvalidInput("malformed simplex key '" + std::string(key) + "'");
  };
  auto read_set = [&] {
    if (i >= key.size() || key[i] != '{') throw bad();
    const std::size_t close = key.find('}', i);
    if (close == std::string_view::npos) throw bad();
    ProcessSet s = ProcessSet::parse(key.substr(i, close - i + 1));
    i = close + 1;
    return s;
  };
  while (i < key.size()) {
    if (key[i] != '(') throw bad();
    ++i;
    Row row;
    row.w = read_set();
    if (i >= key.size() || key[i] != ',') throw bad();
    ++i;
    row.g = read_set();
    if (i >= key.size() || key[i] != ')') throw bad();
    ++i;
    sigma.rows.push_back(row);
  }
  if (sigma.rows.empty()) throw bad();
  return sigma;
}

json to_json(const Schedule& s) {
  json j = json::array();
  for (ProcessSet layer : s.layers) j.push_back(set_to_json(layer));
  return j;
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("schedule must be a list of layers");
  Schedule s;
  for (const json& layer : j) s.layers.push_back(set_from_json(layer));
  return s;
}

json complex_to_json(const Complex& k, bool full) {
  json facets = json::array();
  for (SimplexId f : k.facets()) facets.push_back(canonical_key(k.simplex(f)));
  json j = {{"counter", to_json(k.counter())},
            {"counter_text", k.counter().to_text()},
            {"dimension", k.top_dim()},
            {"f_vector", k.f_vector()},
            {"facets", facets},
            {"size", k.size()}};
  if (full) {
    json simplices = json::array();
    for (SimplexId id = 0; id < k.size(); ++id) {
      json faces = json::array();
      for (SimplexId f : k.faces(id)) faces.push_back(canonical_key(k.simplex(f)));
      simplices.push_back({{"id", canonical_key(k.simplex(id))},
                           {"dim", k.dim(id)},
                           {"pairs", to_json(k.simplex(id))["pairs"]},
                           {"faces", faces}});
    }
    j["simplices"] = simplices;
  }
  return j;
}

json collapse_to_json(const Complex& k, const CollapseSequence& seq) {
  json steps = json::array();
  std::map<std::string, std::size_t> by_stage;
  for (const CollapseStep& st : seq.steps) {
    steps.push_back({{"free", canonical_key(k.simplex(st.free))},
                     {"cofacet", canonical_key(k.simplex(st.cofacet))},
                     {"stage", st.stage}});
    ++by_stage[st.stage];
  }
  return {{"counter", to_json(k.counter())},
          {"steps", steps},
          {"report",
           {{"pairs", seq.steps.size()},
            {"simplices", k.size()},
            {"fallback_steps", seq.fallback_steps},
            {"stages", by_stage}}}};
}

std::vector<CollapseStep> collapse_steps_from_json(const Complex& k,
                                                   const json& j) {
  const json& list = j.is_object() ? j.at("steps") : j;
  if (!list.is_array()) throw InvalidInput("collapse steps must be a list");
  std::vector<CollapseStep> steps;
  for (const json& st : list) {
    if (!st.is_object() || !st.contains("free") || !st.contains("cofacet"))
      throw InvalidInput("collapse step needs free and cofacet");
    steps.push_back({k.id_of(witness_from_key(st["free"].get<std::string>())),
                     k.id_of(witness_from_key(st["cofacet"].get<std::string>())),
                     st.value("stage", std::string{})});
  }
  return steps;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string to_dot(const Complex& k) {
  std::ostringstream out;
  out << "digraph P {\n";
  out << "  label=\"P(" << k.counter().to_text() << ")\";\n";
  out << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\", fontsize=9];\n";
  for (int d = -1; d <= k.top_dim(); ++d) {
    out << "  { rank=same;";
    for (SimplexId id : k.of_dim(d)) out << " s" << id << ";";
    out << " }\n";
  }
  for (SimplexId id = 0; id < k.size(); ++id) {
    out << "  s" << id << " [label=\"" << canonical_key(k.simplex(id))
        << "\"];\n";
  }
  for (SimplexId id = 0; id < k.size(); ++id)
    for (SimplexId f : k.faces(id)) out << "  s" << f << " -> s" << id << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

struct Point {
  double x = 0, y = 0;
};

constexpr double kSize = 480, kCenter = kSize / 2, kRadius = 200;

const char* kColorPalette[] = {"#d62728", "#1f77b4", "#2ca02c"};
const char* kStratumPalette[] = {"#fde0dd", "#deebf7", "#e5f5e0", "#fff7bc",
                                 "#efedf5", "#fee6ce", "#f0f0f0"};

// Vertex adjacency through edges, as vertex-id lists.
std::map<SimplexId, std::vector<SimplexId>> edge_graph(
    const Complex& k, const SimplexMask* only = nullptr) {
  std::map<SimplexId, std::vector<SimplexId>> adj;
  for (SimplexId e : k.of_dim(1)) {
    if (only && !(*only)[e]) continue;
    const auto v = k.vertices(e);
    adj[v[0]].push_back(v[1]);
    adj[v[1]].push_back(v[0]);
  }
  return adj;
}

// Walks a path or cycle graph from `start`.
std::vector<SimplexId> walk(const std::map<SimplexId, std::vector<SimplexId>>& adj,
                            SimplexId start) {
  std::vector<SimplexId> order{start};
  std::optional<SimplexId> prev;
  SimplexId cur = start;
  while (order.size() <= adj.size()) {
    std::optional<SimplexId> step;
    for (SimplexId u : adj.at(cur))
      if (u != prev) {
        step = u;
        break;
      }
    if (!step || *step == start) break;
    order.push_back(*step);
    prev = cur;
    cur = *step;
  }
  return order;
}

std::map<SimplexId, Point> layout(const Complex& k) {
  std::map<SimplexId, Point> pos;
  const int n = k.counter().support().size();
  const auto verts = k.of_dim(0);
  if (n == 1) {
    for (SimplexId v : verts) pos[v] = {kCenter, kCenter};
    return pos;
  }
  if (n == 2) {
    const auto adj = edge_graph(k);
    SimplexId start = *verts.begin();
    for (auto& [v, nb] : adj)
      if (nb.size() == 1) {
        start = v;
        break;
      }
    const auto order = walk(adj, start);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double t = order.size() > 1 ? double(i) / (order.size() - 1) : 0.5;
      pos[order[i]] = {kCenter - kRadius + 2 * kRadius * t, kCenter};
    }
    return pos;
  }
  // Boundary cycle on a circle, interior by barycentric relaxation.
  const BoundaryReport b = boundary(k, Exec::serial);
  const auto cycle_adj = edge_graph(k, &b.boundary);
  std::vector<SimplexId> cycle;
  if (!cycle_adj.empty()) cycle = walk(cycle_adj, cycle_adj.begin()->first);
  if (cycle.size() != cycle_adj.size())
    throw VerificationFailure("boundary of P(" + k.counter().to_text() +
                              ") is not a single cycle");
  std::map<SimplexId, bool> fixed;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const double a = 2 * std::numbers::pi * double(i) / double(cycle.size()) -
                     std::numbers::pi / 2;
    pos[cycle[i]] = {kCenter + kRadius * std::cos(a), kCenter + kRadius * std::sin(a)};
    fixed[cycle[i]] = true;
  }
  const auto adj = edge_graph(k);
  for (SimplexId v : verts)
    if (!fixed.count(v)) pos[v] = {kCenter, kCenter};
  for (int iter = 0; iter < 20000; ++iter) {
    double moved = 0;
    for (SimplexId v : verts) {
      if (fixed.count(v)) continue;
      Point sum;
      for (SimplexId u : adj.at(v)) {
        sum.x += pos[u].x;
        sum.y += pos[u].y;
      }
      const double m = static_cast<double>(adj.at(v).size());
      const Point next{sum.x / m, sum.y / m};
      moved = std::max(moved, std::abs(next.x - pos[v].x) + std::abs(next.y - pos[v].y));
      pos[v] = next;
    }
    if (moved < 1e-9) break;
  }
  return pos;
}

int color_of(const Complex& k, SimplexId vertex) {
  return k.simplex(vertex).active().min();
}

}  // namespace

std::string to_svg(const Complex& k) {
  const int n = k.counter().support().size();
  if (n > 3) {
    throw InvalidInput("svg export needs |supp r| <= 3, got " + std::to_string(n));
  }
  const auto pos = layout(k);
  // Stratum index of a first layer S, by subset order of act r.
  std::map<std::uint64_t, std::size_t> stratum;
  for (ProcessSet s : subsets_of(k.counter().active())) {
    if (!s.empty()) stratum.emplace(s.bits(), stratum.size());
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize + 20 << "\" viewBox=\"0 0 " << kSize << " "
      << kSize + 20 << "\">\n";
  out << "  <title>P(" << k.counter().to_text() << ")</title>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (n == 3) {
    for (SimplexId f : k.of_dim(2)) {
      const Witness& sigma = k.simplex(f);
      const ProcessSet first = sigma.rows.size() > 1 ? sigma.rows[1].w : ProcessSet{};
      const std::size_t s = stratum.count(first.bits()) ? stratum[first.bits()] : 0;
      out << "  <polygon points=\"";
      bool lead = true;
      for (SimplexId v : k.vertices(f)) {
        out << (lead ? "" : " ") << fmt(pos.at(v).x) << "," << fmt(pos.at(v).y);
        lead = false;
      }
      out << "\" fill=\"" << kStratumPalette[s % std::size(kStratumPalette)]
          << "\" stroke=\"none\"><title>" << canonical_key(sigma)
          << "</title></polygon>\n";
    }
  }
  for (SimplexId e : k.of_dim(1)) {
    const auto v = k.vertices(e);
    out << "  <line x1=\"" << fmt(pos.at(v[0]).x) << "\" y1=\"" << fmt(pos.at(v[0]).y)
        << "\" x2=\"" << fmt(pos.at(v[1]).x) << "\" y2=\"" << fmt(pos.at(v[1]).y)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  }
  for (SimplexId v : k.of_dim(0)) {
    out << "  <circle cx=\"" << fmt(pos.at(v).x) << "\" cy=\"" << fmt(pos.at(v).y)
        << "\" r=\"4\" fill=\"" << kColorPalette[color_of(k, v) % 3]
        << "\"><title>" << canonical_key(k.simplex(v)) << "</title></circle>\n";
  }
  out << "  <text x=\"8\" y=\"" << kSize + 14
      << "\" font-family=\"monospace\" font-size=\"12\">P(" << k.counter().to_text()
      << ")</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace snapcx
