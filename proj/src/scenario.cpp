#include "mindgraph/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mindgraph/tvg_io.hpp"

namespace mindgraph {

std::string_view code_of(ConfigErrc c) noexcept {
  switch (c) {
    case ConfigErrc::syntax: return "E_SYNTAX";
    case ConfigErrc::unknown_key: return "E_UNKNOWN_KEY";
    case ConfigErrc::duplicate_key: return "E_DUPLICATE_KEY";
    case ConfigErrc::missing_field: return "E_MISSING";
    case ConfigErrc::out_of_range: return "E_RANGE";
    case ConfigErrc::bad_value: return "E_VALUE";
    case ConfigErrc::malformed_record: return "E_RECORD";
    case ConfigErrc::malformed_tvg: return "E_TVG";
    case ConfigErrc::missing_file: return "E_FILE";
    case ConfigErrc::mismatch: return "E_MISMATCH";
  }
  return "E_UNKNOWN";
}

std::string Diagnostic::to_string() const {
  std::string s(code_of(code));
  s += line > 0 ? " line " + std::to_string(line) : std::string(" (override)");
  if (!field.empty()) s += " [" + field + "]";
  return s + ": " + message;
}

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

namespace {

constexpr std::array<std::string_view, 18> kKeys = {
    "n_agents",    "horizon",  "topology",  "initial_opinions",    "minds",      "topic",
    "mu",          "eps_min",  "eps_max",   "delta_share",         "confidence_feedback",
    "resistance",  "seed",     "metrics_every", "cluster_delta",   "converge_tol",
    "converge_window", "record_sharing"};

bool known_key(std::string_view k) { return std::find(kKeys.begin(), kKeys.end(), k) != kKeys.end(); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(ConfigErrc code, std::size_t line, std::string field, std::string message) {
  throw ConfigError({code, line, std::move(field), std::move(message)});
}

template <typename T>
bool parse_num(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_bool(std::string_view text, bool& out) {
  if (text == "true" || text == "1" || text == "yes") return out = true, true;
  if (text == "false" || text == "0" || text == "no") return out = false, true;
  return false;
}

// "name(a, b)" -> name and trimmed args; a bare word has no args.
struct Call {
  std::string name;
  std::vector<std::string> args;
  bool has_parens = false;
};

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

bool parse_call(std::string_view text, Call& out) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    out.name = trim(text);
    return !out.name.empty();
  }
  if (text.back() != ')') return false;
  out.name = trim(text.substr(0, open));
  out.has_parens = true;
  const auto inner = trim(text.substr(open + 1, text.size() - open - 2));
  if (!inner.empty()) out.args = split_top_level(inner);
  return !out.name.empty();
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Record {
  std::size_t line = 0;
  std::vector<std::string> tokens;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> kv) : kv_(std::move(kv)) {}

  [[nodiscard]] bool has(const std::string& k) const { return kv_.count(k) != 0; }
  [[nodiscard]] const Entry& at(const std::string& k) const { return kv_.at(k); }

  const Entry& require(const std::string& k) const {
    if (!has(k)) fail(ConfigErrc::missing_field, 0, k, "required field '" + k + "' is missing");
    return at(k);
  }

  template <typename T>
  T number(const std::string& k, T fallback) const {
    if (!has(k)) return fallback;
    T v{};
    if (!parse_num(at(k).value, v)) fail(ConfigErrc::bad_value, at(k).line, k, "not a number: '" + at(k).value + "'");
    return v;
  }

  template <typename T>
  T required_number(const std::string& k) const {
    require(k);
    return number<T>(k, T{});
  }

  bool boolean(const std::string& k, bool fallback) const {
    if (!has(k)) return fallback;
    bool v = false;
    if (!parse_bool(at(k).value, v)) fail(ConfigErrc::bad_value, at(k).line, k, "not a boolean: '" + at(k).value + "'");
    return v;
  }

  std::size_t line(const std::string& k) const { return has(k) ? at(k).line : 0; }

 private:
  std::map<std::string, Entry> kv_;
};

void check_range(bool ok, const Reader& r, const std::string& k, double value, const std::string& bound) {
  if (!ok)
    fail(ConfigErrc::out_of_range, r.line(k), k, k + " = " + format_double(value) + " outside " + bound);
}

Topology parse_topology(const Reader& r) {
  const Entry& e = r.require("topology");
  Call call;
  if (!parse_call(e.value, call)) fail(ConfigErrc::bad_value, e.line, "topology", "cannot parse '" + e.value + "'");
  auto arity = [&](std::size_t n) {
    if (call.args.size() != n)
      fail(ConfigErrc::bad_value, e.line, "topology", call.name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (call.name == "complete" && !call.has_parens) return CompleteTopology{};
  if (call.name == "ring") {
    arity(1);
    std::size_t k = 0;
    if (!parse_num(call.args[0], k)) fail(ConfigErrc::bad_value, e.line, "topology", "ring(k) needs an integer k");
    if (k < 1) fail(ConfigErrc::out_of_range, e.line, "topology", "ring(k) needs k >= 1");
    return RingTopology{k};
  }
  if (call.name == "random") {
    arity(2);
    RandomTopology t;
    if (!parse_num(call.args[0], t.p) || !parse_num(call.args[1], t.seed))
      fail(ConfigErrc::bad_value, e.line, "topology", "random(p, seed) needs a probability and an integer seed");
    if (!(t.p >= 0.0 && t.p <= 1.0))
      fail(ConfigErrc::out_of_range, e.line, "topology", "random p = " + call.args[0] + " outside [0, 1]");
    return t;
  }
  if (call.name == "file") {
    arity(1);
    if (call.args[0].empty()) fail(ConfigErrc::bad_value, e.line, "topology", "file() needs a path");
    return FileTopology{call.args[0]};
  }
  fail(ConfigErrc::bad_value, e.line, "topology",
       "expected complete, ring(k), random(p, seed) or file(path), got '" + e.value + "'");
}

InitialOpinions parse_initial(const Reader& r) {
  if (!r.has("initial_opinions")) return NoInitialOpinions{};
  const Entry& e = r.at("initial_opinions");
  Call call;
  if (!parse_call(e.value, call) || !call.has_parens)
    fail(ConfigErrc::bad_value, e.line, "initial_opinions", "expected uniform(seed) or list(x0, x1, ...)");
  if (call.name == "uniform") {
    UniformOpinions u;
    if (call.args.size() != 1 || !parse_num(call.args[0], u.seed))
      fail(ConfigErrc::bad_value, e.line, "initial_opinions", "uniform(seed) needs an integer seed");
    return u;
  }
  if (call.name == "list") {
    ExplicitOpinions list;
    for (const auto& a : call.args) {
      double x = 0;
      if (!parse_num(a, x)) fail(ConfigErrc::bad_value, e.line, "initial_opinions", "not a number: '" + a + "'");
      if (!(x >= 0.0 && x <= 1.0))
        fail(ConfigErrc::out_of_range, e.line, "initial_opinions", "opinion " + a + " outside [0, 1]");
      list.values.push_back(x);
    }
    return list;
  }
  fail(ConfigErrc::bad_value, e.line, "initial_opinions", "expected uniform(seed) or list(x0, x1, ...)");
}

double unit_token(const Record& rec, const std::string& tok, const char* what) {
  double x = 0;
  if (!parse_num(tok, x)) fail(ConfigErrc::malformed_record, rec.line, what, "not a number: '" + tok + "'");
  if (!(x >= 0.0 && x <= 1.0)) fail(ConfigErrc::malformed_record, rec.line, what, tok + " outside [0, 1]");
  return x;
}

Tick tick_token(const Record& rec, const std::string& tok) {
  if (tok == "inf") return kForever;
  Tick t = 0;
  if (!parse_num(tok, t) || t < 0) fail(ConfigErrc::malformed_record, rec.line, "sup", "bad time '" + tok + "'");
  return t;
}

ExplicitMinds parse_minds(const std::vector<Record>& reps, const std::vector<Record>& sups, std::size_t n) {
  ExplicitMinds minds;
  std::set<std::pair<EntityId, std::string>> held;
  auto agent_of = [&](const Record& rec, const char* kind) {
    EntityId a = 0;
    if (!parse_num(rec.tokens[1], a) || a >= n)
      fail(ConfigErrc::malformed_record, rec.line, kind, "agent '" + rec.tokens[1] + "' is not in 0.." + std::to_string(n - 1));
    return a;
  };

  for (const Record& rec : reps) {
    if (rec.tokens.size() != 7)
      fail(ConfigErrc::malformed_record, rec.line, "rep", "expected 'rep <agent> <prop> <T_o|?> <T_s> <d_c> <verifiable>'");
    RepresentationRecord rr;
    rr.agent = agent_of(rec, "rep");
    rr.rep.proposition = rec.tokens[2];
    if (rec.tokens[3] != "?") rr.rep.objective_truth = unit_token(rec, rec.tokens[3], "T_o");
    rr.rep.perceived_truth = unit_token(rec, rec.tokens[4], "T_s");
    rr.rep.confidence = unit_token(rec, rec.tokens[5], "d_c");
    if (!parse_bool(rec.tokens[6], rr.rep.verifiable))
      fail(ConfigErrc::malformed_record, rec.line, "verifiable", "not a boolean: '" + rec.tokens[6] + "'");
    if (!held.emplace(rr.agent, rr.rep.proposition).second)
      fail(ConfigErrc::malformed_record, rec.line, "rep", "agent " + rec.tokens[1] + " already holds " + rec.tokens[2]);
    minds.reps.push_back(std::move(rr));
  }

  for (const Record& rec : sups) {
    if (rec.tokens.size() != 7)
      fail(ConfigErrc::malformed_record, rec.line, "sup", "expected 'sup <agent> <prop_u> <prop_v> <w> <t1> <t2>'");
    SupportRecord sr;
    sr.agent = agent_of(rec, "sup");
    sr.link.a = rec.tokens[2];
    sr.link.b = rec.tokens[3];
    if (!parse_num(rec.tokens[4], sr.link.weight) || !(sr.link.weight > 0.0 && sr.link.weight <= 1.0))
      fail(ConfigErrc::malformed_record, rec.line, "sup", "weight '" + rec.tokens[4] + "' outside (0, 1]");
    sr.link.t1 = tick_token(rec, rec.tokens[5]);
    sr.link.t2 = tick_token(rec, rec.tokens[6]);
    if (sr.link.t1 >= sr.link.t2) fail(ConfigErrc::malformed_record, rec.line, "sup", "empty interval");
    if (sr.link.a == sr.link.b) fail(ConfigErrc::malformed_record, rec.line, "sup", "a representation cannot support itself");
    for (const auto& p : {sr.link.a, sr.link.b})
      if (!held.count({sr.agent, p}))
        fail(ConfigErrc::malformed_record, rec.line, "sup", "agent " + rec.tokens[1] + " has no representation " + p);
    minds.supports.push_back(std::move(sr));
  }
  return minds;
}

void check_file_topology(const ScenarioConfig& cfg, std::size_t line) {
  const auto* file = std::get_if<FileTopology>(&cfg.topology);
  if (!file) return;
  const auto path = cfg.base_dir.empty() ? std::filesystem::path(file->path) : cfg.base_dir / file->path;
  std::ifstream in(path);
  if (!in) fail(ConfigErrc::missing_file, line, "topology", "cannot open " + path.string());
  try {
    const auto g = read_tvg(in);
    if (g.entity_count() != cfg.n_agents)
      fail(ConfigErrc::mismatch, line, "topology",
           path.string() + " has " + std::to_string(g.entity_count()) + " entities but n_agents = " +
               std::to_string(cfg.n_agents));
  } catch (const TvgFormatError& err) {
    fail(ConfigErrc::malformed_tvg, line, "topology", path.string() + ": " + err.what());
  } catch (const std::invalid_argument& err) {
    fail(ConfigErrc::malformed_tvg, line, "topology", path.string() + ": " + err.what());
  }
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || trim(text.substr(0, eq)).empty())
    fail(ConfigErrc::syntax, 0, "", "override must look like key=value: '" + std::string(text) + "'");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

ScenarioConfig parse_scenario(std::string_view text, const ParseOptions& options) {
  std::map<std::string, Entry> kv;
  std::vector<Record> reps;
  std::vector<Record> sups;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "rep" || head == "sup") {
      Record rec{line_no, {head}};
      for (std::string t; ls >> t;) rec.tokens.push_back(t);
      (head == "rep" ? reps : sups).push_back(std::move(rec));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ConfigErrc::syntax, line_no, "", "expected 'key = value' or a rep/sup record");
    const std::string key = trim(line.substr(0, eq));
    if (!known_key(key)) fail(ConfigErrc::unknown_key, line_no, key, "unknown key '" + key + "'");
    if (kv.count(key)) fail(ConfigErrc::duplicate_key, line_no, key, "'" + key + "' given twice");
    kv[key] = {trim(line.substr(eq + 1)), line_no};
  }
  for (const auto& [key, value] : options.overrides) {
    if (!known_key(key)) fail(ConfigErrc::unknown_key, 0, key, "unknown key '" + key + "'");
    kv[key] = {value, 0};
  }

  const Reader r(std::move(kv));
  ScenarioConfig cfg;
  cfg.base_dir = options.base_dir;

  const auto n = r.required_number<long long>("n_agents");
  check_range(n >= 1, r, "n_agents", static_cast<double>(n), "[1, inf)");
  cfg.n_agents = static_cast<std::size_t>(n);
  cfg.horizon = r.required_number<Tick>("horizon");
  check_range(cfg.horizon >= 0, r, "horizon", static_cast<double>(cfg.horizon), "[0, inf)");
  cfg.topology = parse_topology(r);
  cfg.initial_opinions = parse_initial(r);

  const std::string minds = r.has("minds") ? r.at("minds").value : "scalar";
  if (minds != "scalar" && minds != "explicit")
    fail(ConfigErrc::bad_value, r.line("minds"), "minds", "expected scalar or explicit, got '" + minds + "'");

  if (r.has("topic")) {
    cfg.topic = r.at("topic").value;
    if (cfg.topic.empty() || cfg.topic.find_first_of(" \t") != std::string::npos)
      fail(ConfigErrc::bad_value, r.line("topic"), "topic", "topic must be a single nonempty word");
  }

  auto& p = cfg.params;
  p.mu = r.number("mu", p.mu);
  check_range(p.mu > 0.0 && p.mu <= 0.5, r, "mu", p.mu, "(0, 0.5]");
  p.eps_min = r.number("eps_min", p.eps_min);
  p.eps_max = r.number("eps_max", p.eps_max);
  check_range(p.eps_min >= 0.0 && p.eps_min <= 1.0, r, "eps_min", p.eps_min, "[0, 1]");
  check_range(p.eps_max >= p.eps_min && p.eps_max <= 1.0, r, "eps_max", p.eps_max,
              "[eps_min = " + format_double(p.eps_min) + ", 1]");
  p.delta_share = r.number("delta_share", p.delta_share);
  check_range(p.delta_share > 0.0 && p.delta_share < 1.0, r, "delta_share", p.delta_share, "(0, 1)");
  p.confidence_feedback = r.boolean("confidence_feedback", p.confidence_feedback);
  if (r.has("resistance")) {
    const auto& v = r.at("resistance").value;
    if (v == "mean") p.resistance = ResistanceMode::mean;
    else if (v == "min") p.resistance = ResistanceMode::min;
    else if (v == "max") p.resistance = ResistanceMode::max;
    else fail(ConfigErrc::bad_value, r.line("resistance"), "resistance", "expected mean, min or max");
  }

  cfg.seed = r.number<std::uint64_t>("seed", cfg.seed);
  cfg.metrics_every = r.number("metrics_every", cfg.metrics_every);
  check_range(cfg.metrics_every >= 1, r, "metrics_every", static_cast<double>(cfg.metrics_every), "[1, inf)");
  cfg.cluster_delta = r.number("cluster_delta", cfg.cluster_delta);
  check_range(cfg.cluster_delta > 0.0, r, "cluster_delta", cfg.cluster_delta, "(0, inf)");
  cfg.converge_tol = r.number("converge_tol", cfg.converge_tol);
  check_range(cfg.converge_tol > 0.0, r, "converge_tol", cfg.converge_tol, "(0, inf)");
  cfg.converge_window = r.number<std::size_t>("converge_window", cfg.converge_window);
  cfg.record_sharing = r.boolean("record_sharing", cfg.record_sharing);

  if (const auto* list = std::get_if<ExplicitOpinions>(&cfg.initial_opinions); list && list->values.size() != cfg.n_agents)
    fail(ConfigErrc::mismatch, r.line("initial_opinions"), "initial_opinions",
         std::to_string(list->values.size()) + " opinions for n_agents = " + std::to_string(cfg.n_agents));

  if (minds == "scalar") {
    if (!reps.empty() || !sups.empty())
      fail(ConfigErrc::mismatch, (reps.empty() ? sups : reps).front().line, "minds",
           "rep/sup records require minds = explicit");
    if (std::holds_alternative<NoInitialOpinions>(cfg.initial_opinions))
      fail(ConfigErrc::missing_field, 0, "initial_opinions", "required field 'initial_opinions' is missing");
    cfg.minds = ScalarMinds{};
  } else {
    auto records = parse_minds(reps, sups, cfg.n_agents);
    std::vector<char> has_topic(cfg.n_agents, 0);
    for (const auto& rr : records.reps)
      if (rr.rep.proposition == cfg.topic) has_topic[rr.agent] = 1;
    for (std::size_t a = 0; a < cfg.n_agents; ++a)
      if (!has_topic[a])
        fail(ConfigErrc::mismatch, r.line("minds"), "minds",
             "agent " + std::to_string(a) + " has no representation of topic '" + cfg.topic + "'");
    cfg.minds = std::move(records);
  }

  if (options.check_files) check_file_topology(cfg, r.line("topology"));
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path, std::vector<Override> overrides) {
  std::ifstream in(path);
  if (!in) fail(ConfigErrc::missing_file, 0, "scenario", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ParseOptions opts;
  opts.base_dir = path.parent_path();
  opts.overrides = std::move(overrides);
  return parse_scenario(buf.str(), opts);
}

std::vector<std::pair<std::string, std::string>> scenario_settings(const ScenarioConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto put = [&](std::string k, std::string v) { out.emplace_back(std::move(k), std::move(v)); };
  put("n_agents", std::to_string(c.n_agents));
  put("horizon", std::to_string(c.horizon));
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, CompleteTopology>) put("topology", "complete");
        else if constexpr (std::is_same_v<T, RingTopology>) put("topology", "ring(" + std::to_string(t.k) + ")");
        else if constexpr (std::is_same_v<T, RandomTopology>)
          put("topology", "random(" + format_double(t.p) + ", " + std::to_string(t.seed) + ")");
        else put("topology", "file(" + t.path + ")");
      },
      c.topology);
  if (const auto* u = std::get_if<UniformOpinions>(&c.initial_opinions)) {
    put("initial_opinions", "uniform(" + std::to_string(u->seed) + ")");
  } else if (const auto* e = std::get_if<ExplicitOpinions>(&c.initial_opinions)) {
    std::string s = "list(";
    for (std::size_t i = 0; i < e->values.size(); ++i) s += (i ? ", " : "") + format_double(e->values[i]);
    put("initial_opinions", s + ")");
  }
  put("minds", std::holds_alternative<ScalarMinds>(c.minds) ? "scalar" : "explicit");
  put("topic", c.topic);
  put("mu", format_double(c.params.mu));
  put("eps_min", format_double(c.params.eps_min));
  put("eps_max", format_double(c.params.eps_max));
  put("delta_share", format_double(c.params.delta_share));
  put("confidence_feedback", c.params.confidence_feedback ? "true" : "false");
  put("resistance", std::string(to_string(c.params.resistance)));
  put("seed", std::to_string(c.seed));
  put("metrics_every", std::to_string(c.metrics_every));
  put("cluster_delta", format_double(c.cluster_delta));
  put("converge_tol", format_double(c.converge_tol));
  put("converge_window", std::to_string(c.converge_window));
  put("record_sharing", c.record_sharing ? "true" : "false");
  return out;
}

std::string emit_scenario(const ScenarioConfig& c) {
  std::ostringstream out;
  for (const auto& [k, v] : scenario_settings(c)) out << k << " = " << v << '\n';
  if (const auto* m = std::get_if<ExplicitMinds>(&c.minds)) {
    auto tick = [](Tick t) { return t == kForever ? std::string("inf") : std::to_string(t); };
    for (const auto& r : m->reps) {
      out << "rep " << r.agent << ' ' << r.rep.proposition << ' '
          << (r.rep.objective_truth ? format_double(*r.rep.objective_truth) : "?") << ' '
          << format_double(r.rep.perceived_truth) << ' ' << format_double(r.rep.confidence) << ' '
          << (r.rep.verifiable ? "true" : "false") << '\n';
    }
    for (const auto& s : m->supports) {
      out << "sup " << s.agent << ' ' << s.link.a << ' ' << s.link.b << ' ' << format_double(s.link.weight) << ' '
          << tick(s.link.t1) << ' ' << tick(s.link.t2) << '\n';
    }
  }
  return out.str();
}

std::vector<std::vector<Override>> expand_grid(const std::vector<std::string>& axes) {
  std::vector<std::vector<Override>> combos{{}};
  for (const auto& axis : axes) {
    const auto [key, values] = parse_override(axis);
    if (!known_key(key)) fail(ConfigErrc::unknown_key, 0, key, "unknown key '" + key + "'");
    const auto options = split_top_level(values);
    std::vector<std::vector<Override>> next;
    for (const auto& combo : combos) {
      for (const auto& v : options) {
        if (v.empty()) fail(ConfigErrc::bad_value, 0, key, "empty grid value");
        auto c = combo;
        c.emplace_back(key, v);
        next.push_back(std::move(c));
      }
    }
    combos = std::move(next);
  }
  return combos;
}

}  // namespace mindgraph
