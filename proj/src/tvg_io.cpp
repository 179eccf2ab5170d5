#include "mindgraph/tvg_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace mindgraph {

namespace {

template <typename T>
T parse_number(const std::string& tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw TvgFormatError(line, std::string("bad ") + what + " '" + tok + "'");
  return value;
}

Tick parse_bound(const std::string& tok, std::size_t line) {
  if (tok == "inf") return kForever;
  return parse_number<Tick>(tok, line, "time");
}

}  // namespace

TimeVaryingGraph read_tvg(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t entities = 0;
  Interval lifetime;
  std::vector<Interaction> interactions;

  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream ls(text);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "tvg") throw TvgFormatError(line_no, "expected 'tvg <n> <t_a> <t_b>'");
      entities = parse_number<std::size_t>(tok[1], line_no, "entity count");
      lifetime = {parse_bound(tok[2], line_no), parse_bound(tok[3], line_no)};
      if (lifetime.end < lifetime.begin) throw TvgFormatError(line_no, "lifetime end precedes begin");
      have_header = true;
      continue;
    }
    if (tok.size() < 4 || tok.size() > 5) throw TvgFormatError(line_no, "expected 'u v t1 t2 [label]'");
    Interaction c;
    c.u = parse_number<EntityId>(tok[0], line_no, "entity");
    c.v = parse_number<EntityId>(tok[1], line_no, "entity");
    c.t1 = parse_number<Tick>(tok[2], line_no, "time");
    c.t2 = parse_bound(tok[3], line_no);
    if (tok.size() == 5) c.label = tok[4];
    if (c.u >= entities || c.v >= entities) throw TvgFormatError(line_no, "entity id out of range");
    if (c.u == c.v) throw TvgFormatError(line_no, "self-loop");
    if (c.t1 >= c.t2) throw TvgFormatError(line_no, "empty interval");
    if (!c.interval().intersects(lifetime)) throw TvgFormatError(line_no, "interaction outside lifetime");
    interactions.push_back(std::move(c));
  }
  if (!have_header) throw TvgFormatError(line_no, "missing 'tvg' header");
  return TimeVaryingGraph(entities, lifetime, std::move(interactions));
}

TimeVaryingGraph read_tvg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tvg(in);
}

void write_tvg(std::ostream& out, const TimeVaryingGraph& g) {
  auto bound = [](Tick t) { return t == kForever ? std::string("inf") : std::to_string(t); };
  out << "tvg " << g.entity_count() << ' ' << bound(g.lifetime().begin) << ' ' << bound(g.lifetime().end) << '\n';
  std::vector<const Interaction*> order;
  for (const Interaction& c : g.interactions()) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Interaction* a, const Interaction* b) {
    return std::tie(a->t1, a->u, a->v, a->t2, a->label) < std::tie(b->t1, b->u, b->v, b->t2, b->label);
  });
  for (const Interaction* c : order) {
    out << c->u << ' ' << c->v << ' ' << c->t1 << ' ' << bound(c->t2);
    if (!c->label.empty()) out << ' ' << c->label;
    out << '\n';
  }
}

}  // namespace mindgraph
