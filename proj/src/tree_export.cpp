#include <sstream>

#include "json.hpp"
#include "mdst/oracle.hpp"

namespace mdst {

std::string tree_to_dot(const Tree& t, const Graph& g) {
  std::ostringstream out;
  out << "graph mdst {\n";
  out << "  node [shape=circle];\n";
  for (const auto& [v, p] : t.parent) {
    (void)p;
    out << "  n" << v << " [label=\"" << v << "\"];\n";
  }
  if (t.root.is_real()) {
    out << "  n" << t.root.id1 << " [style=bold];\n";
  } else {
    out << "  center [shape=point, width=0.12, label=\"\"];\n";
    out << "  n" << t.root.id1 << " -- center [label=\"" << t.root.alpha.str() << "\"];\n";
    HalfUnit w = g.weight(t.root.id1, t.root.id2);
    out << "  center -- n" << t.root.id2 << " [label=\"" << (w - t.root.alpha).str()
        << "\"];\n";
  }
  for (const auto& [a, b] : tree_edge_set(t)) {
    if (!t.root.is_real() && a == t.root.id1 && b == t.root.id2) continue;
    out << "  n" << a << " -- n" << b << " [label=\"" << g.weight(a, b).str() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string tree_to_json(const Tree& t) {
  nlohmann::json j;
  if (t.root.is_real()) {
    j["root"] = {{"kind", "real"}, {"id", t.root.id1}};
  } else {
    j["root"] = {{"kind", "interior"},
                 {"id1", t.root.id1},
                 {"id2", t.root.id2},
                 {"alpha_hu", t.root.alpha.halves()},
                 {"alpha", t.root.alpha.str()}};
  }
  nlohmann::json parents = nlohmann::json::object();
  for (const auto& [v, p] : t.parent)
    parents[std::to_string(v)] = p ? nlohmann::json(*p) : nlohmann::json("center");
  j["parents"] = parents;
  return j.dump(2);
}

}  // namespace mdst
