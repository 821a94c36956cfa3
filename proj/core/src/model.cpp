#include "symflow/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <sstream>

#include "symflow/csv.hpp"
#include "symflow/error.hpp"

namespace symflow {

namespace {

struct Pair {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Pair> pairs;
};

[[noreturn]] void syntax(int line, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::int64_t parse_int(std::string_view s, int line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) syntax(line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

int parse_small(std::string_view s, int line) {
  const auto v = parse_int(s, line);
  if (v < 0 || v > 1'000'000) syntax(line, "value out of range: " + std::string(s));
  return static_cast<int>(v);
}

IntVector parse_vec(std::string_view s, int line) {
  IntVector out;
  for (const auto part : split(s, ',')) out.push_back(parse_int(part, line));
  return out;
}

Edge parse_edge(std::string_view s, int line) {
  const auto parts = split(s, '>');
  if (parts.size() != 2) syntax(line, "expected an edge 'from>to', got '" + std::string(s) + "'");
  return Edge{parse_small(parts[0], line), parse_small(parts[1], line)};
}

std::vector<Pair> parse_pairs(std::string_view rest, int line) {
  static const std::regex kPair(R"((\w+)\s*=\s*(\S+))");
  std::vector<Pair> out;
  const std::string text(rest);
  auto it = std::sregex_iterator(text.begin(), text.end(), kPair);
  std::size_t pos = 0;
  for (; it != std::sregex_iterator(); ++it) {
    if (!trim(std::string_view(text).substr(pos, static_cast<std::size_t>(it->position()) - pos)).empty())
      syntax(line, "unexpected text '" + text.substr(pos, static_cast<std::size_t>(it->position()) - pos) + "'");
    out.push_back(Pair{(*it)[1].str(), (*it)[2].str(), line});
    pos = static_cast<std::size_t>(it->position() + it->length());
  }
  if (!trim(std::string_view(text).substr(pos)).empty()) syntax(line, "unexpected text '" + text.substr(pos) + "'");
  return out;
}

std::vector<Section> tokenize(std::string_view text) {
  static const std::regex kHeader(R"(\[(\w+)\](.*))");
  std::vector<Section> out;
  int line_no = 0;
  for (const auto raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string rest;
    if (line.front() == '[') {
      std::cmatch m;
      if (!std::regex_match(line.data(), line.data() + line.size(), m, kHeader)) syntax(line_no, "malformed section header");
      out.push_back(Section{m[1].str(), line_no, {}});
      rest = m[2].str();
    } else {
      if (out.empty()) syntax(line_no, "key/value pair outside any section");
      rest = std::string(line);
    }
    for (auto& p : parse_pairs(rest, line_no)) out.back().pairs.push_back(std::move(p));
  }
  return out;
}

// Looks up single-valued keys of a section, rejecting unknown and repeated ones.
class Keys {
 public:
  Keys(const Section& s, std::initializer_list<std::string_view> allowed, std::initializer_list<std::string_view> repeatable = {})
      : s_(s) {
    for (const auto& p : s.pairs) {
      const bool single = std::find(allowed.begin(), allowed.end(), p.key) != allowed.end();
      const bool multi = std::find(repeatable.begin(), repeatable.end(), p.key) != repeatable.end();
      if (!single && !multi) syntax(p.line, "unknown key '" + p.key + "' in [" + s.name + "]");
      if (single && find(p.key) != &p)
        syntax(p.line, "repeated key '" + p.key + "' in [" + s.name + "]");
    }
  }

  [[nodiscard]] const Pair* find(std::string_view key) const {
    for (const auto& p : s_.pairs)
      if (p.key == key) return &p;
    return nullptr;
  }
  [[nodiscard]] const Pair& need(std::string_view key) const {
    const Pair* p = find(key);
    if (!p) syntax(s_.line, "[" + s_.name + "] requires '" + std::string(key) + "'");
    return *p;
  }

 private:
  const Section& s_;
};

std::string join_vec(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_edge(const Edge& e) { return std::to_string(e.from) + ">" + std::to_string(e.to); }

FiniteQuotient parse_quotient(const Section& s, const Keys& keys, std::string& name) {
  name = keys.need("name").value;
  const Pair* mod = keys.find("modulus");
  const Pair* lat = keys.find("lattice");
  const Pair* deg = keys.find("degree");
  if ((mod != nullptr) + (lat != nullptr) + (deg != nullptr) != 1)
    syntax(s.line, "[quotient] needs exactly one of modulus, lattice, degree");
  try {
    if (mod) {
      // Dimension is fixed later against the model.
      return FiniteQuotient::modulus(1, parse_int(mod->value, mod->line));
    }
    if (lat) {
      std::vector<IntVector> rows;
      for (const auto r : split(lat->value, ';')) rows.push_back(parse_vec(r, lat->line));
      return FiniteQuotient::lattice(std::move(rows));
    }
    const Pair& perms = keys.need("perms");
    std::vector<Permutation> labels;
    for (const auto p : split(perms.value, ';')) {
      Permutation perm;
      for (const auto x : parse_vec(p, perms.line)) perm.push_back(static_cast<int>(x));
      labels.push_back(std::move(perm));
    }
    return FiniteQuotient::permutations(parse_small(deg->value, deg->line), std::move(labels));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SyntaxError) throw;
    throw Error(ErrorCode::ValidationError, "quotient '" + name + "': " + e.what());
  }
}

}  // namespace

const FiniteQuotient& ModelSpec::quotient(std::string_view q) const {
  for (const auto& nq : quotients)
    if (nq.name == q) return nq.quotient;
  throw Error(ErrorCode::InvalidArgument, "model has no quotient named '" + std::string(q) + "'");
}

double parse_real(std::string_view text) {
  auto number = [](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw Error(ErrorCode::SyntaxError, "expected a real number, got '" + std::string(s) + "'");
    return v;
  };
  if (text.starts_with("log(") && text.ends_with(")")) {
    const double x = number(text.substr(4, text.size() - 5));
    if (!(x > 0.0)) throw Error(ErrorCode::SyntaxError, "log argument must be positive");
    return std::log(x);
  }
  return number(text);
}

ModelSpec parse_model(std::string_view text) {
  const auto sections = tokenize(text);
  ModelSpec m;
  int vertices = -1;
  bool have_model = false;
  std::vector<Edge> edges;
  std::vector<std::optional<IntVector>> classes;
  struct RawCycle {
    std::vector<int> vertices;
    int line;
  };
  std::vector<RawCycle> removed_raw;

  for (const auto& s : sections) {
    if (s.name == "model") {
      if (have_model) syntax(s.line, "repeated [model] section");
      have_model = true;
      const Keys k(s, {"name", "b", "n_removed", "vertices"});
      if (const Pair* p = k.find("name")) m.name = p->value;
      const Pair& b = k.need("b");
      const Pair& n = k.need("n_removed");
      const Pair& v = k.need("vertices");
      m.b = parse_small(b.value, b.line);
      m.N = parse_small(n.value, n.line);
      vertices = parse_small(v.value, v.line);
    } else if (s.name == "edge") {
      const Keys k(s, {"from", "to", "roof", "class"});
      const Pair& from = k.need("from");
      const Pair& to = k.need("to");
      const Pair& roof = k.need("roof");
      edges.push_back(Edge{parse_small(from.value, from.line), parse_small(to.value, to.line)});
      try {
        m.weights.roof.push_back(parse_real(roof.value));
      } catch (const Error& e) {
        syntax(roof.line, e.what());
      }
      m.roof_literals.push_back(roof.value);
      const Pair* c = k.find("class");
      classes.push_back(c ? std::optional<IntVector>(parse_vec(c->value, c->line)) : std::nullopt);
    } else if (s.name == "chords") {
      if (m.chords) syntax(s.line, "repeated [chords] section");
      const Keys k(s, {"tree"}, {"chord"});
      ChordAssignment ca;
      const Pair& tree = k.need("tree");
      for (const auto e : split(tree.value, ';')) ca.tree_edges.push_back(parse_edge(e, tree.line));
      for (const auto& p : s.pairs) {
        if (p.key != "chord") continue;
        const auto colon = p.value.find(':');
        if (colon == std::string::npos) syntax(p.line, "chord must look like 'from>to:values'");
        ca.chord_values.emplace_back(parse_edge(std::string_view(p.value).substr(0, colon), p.line),
                                     parse_vec(std::string_view(p.value).substr(colon + 1), p.line));
      }
      m.chords = std::move(ca);
    } else if (s.name == "removed") {
      const Keys k(s, {}, {"cycle"});
      for (const auto& p : s.pairs) {
        std::vector<int> cyc;
        for (const auto x : parse_vec(p.value, p.line)) cyc.push_back(static_cast<int>(x));
        removed_raw.push_back(RawCycle{std::move(cyc), p.line});
      }
    } else if (s.name == "quotient") {
      const Keys k(s, {"name", "modulus", "lattice", "degree", "perms"});
      std::string qname;
      FiniteQuotient q = parse_quotient(s, k, qname);
      NamedQuotient nq{std::move(qname), std::move(q)};
      if (k.find("modulus") && m.b + m.N > 1)
        nq.quotient = FiniteQuotient::modulus(m.b + m.N, nq.quotient.lattice_rows()[0][0]);
      for (const auto& other : m.quotients)
        if (other.name == nq.name) syntax(s.line, "repeated quotient name '" + nq.name + "'");
      m.quotients.push_back(std::move(nq));
    } else {
      syntax(s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!have_model) throw Error(ErrorCode::SyntaxError, "line 1: missing [model] section");

  // Validation: collect every violation before failing.
  std::vector<std::string> problems;
  auto fail = [&]() {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::ValidationError, msg);
  };
  try {
    m.graph = DirectedGraph(vertices, edges);
  } catch (const Error& e) {
    problems.emplace_back(e.what());
    fail();
  }
  for (auto& p : validate_graph(m.graph)) problems.push_back(std::move(p));

  m.weights.b = m.b;
  m.weights.N = m.N;
  const int d = m.b + m.N;
  if (m.chords) {
    if (std::any_of(classes.begin(), classes.end(), [](const auto& c) { return c.has_value(); }))
      problems.emplace_back("edge classes must be omitted when [chords] is given");
    else if (problems.empty()) {
      try {
        m.weights.cls = weights_from_chords(m.graph, *m.chords, d);
      } catch (const Error& e) {
        problems.emplace_back(e.what());
      }
    }
  } else {
    for (std::size_t e = 0; e < classes.size(); ++e) {
      if (classes[e]) {
        m.weights.cls.push_back(*classes[e]);
      } else if (d == 0) {
        m.weights.cls.emplace_back();
      } else {
        problems.push_back("edge " + join_edge(edges[e]) + " has no class");
        m.weights.cls.emplace_back(static_cast<std::size_t>(d), 0);
      }
    }
  }
  if (problems.empty())
    for (auto& p : weight_diagnostics(m.graph, m.weights)) problems.push_back(std::move(p));
  if (!problems.empty()) fail();

  for (const auto& r : removed_raw) {
    try {
      PrimeCycle c = canonical_form(m.graph, r.vertices);
      if (std::find(m.removed.begin(), m.removed.end(), c) != m.removed.end())
        problems.push_back("removed cycle on line " + std::to_string(r.line) + " is listed twice");
      m.removed.push_back(std::move(c));
    } catch (const Error& e) {
      problems.push_back("removed cycle on line " + std::to_string(r.line) + ": " + e.what());
    }
  }
  for (const auto& nq : m.quotients) {
    try {
      nq.quotient.check_against(m.graph, m.weights);
    } catch (const Error& e) {
      problems.push_back("quotient '" + nq.name + "': " + e.what());
    }
  }
  if (!problems.empty()) fail();

  if (static_cast<int>(m.removed.size()) != m.N)
    m.warnings.push_back("model lists " + std::to_string(m.removed.size()) + " removed cycles but n_removed = " +
                         std::to_string(m.N));
  return m;
}

std::string serialize_model(const ModelSpec& m) {
  std::ostringstream os;
  os << "[model]\n";
  if (!m.name.empty()) os << "name = " << m.name << '\n';
  os << "b = " << m.b << "\nn_removed = " << m.N << "\nvertices = " << m.graph.vertex_count() << '\n';
  for (std::size_t e = 0; e < m.graph.edge_count(); ++e) {
    const Edge& x = m.graph.edge(e);
    const std::string roof = e < m.roof_literals.size() ? m.roof_literals[e] : format_real(m.weights.roof[e]);
    os << "[edge] from=" << x.from << " to=" << x.to << " roof=" << roof;
    if (!m.chords && !m.weights.cls[e].empty()) os << " class=" << join_vec(m.weights.cls[e]);
    os << '\n';
  }
  if (m.chords) {
    os << "[chords]\ntree = ";
    for (std::size_t i = 0; i < m.chords->tree_edges.size(); ++i)
      os << (i ? ";" : "") << join_edge(m.chords->tree_edges[i]);
    os << '\n';
    for (const auto& [edge, value] : m.chords->chord_values) os << "chord = " << join_edge(edge) << ':' << join_vec(value) << '\n';
  }
  for (const auto& c : m.removed) {
    os << "[removed] cycle = ";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) os << (i ? "," : "") << c.vertices[i];
    os << '\n';
  }
  for (const auto& nq : m.quotients) {
    os << "[quotient] name=" << nq.name;
    const auto& q = nq.quotient;
    if (q.kind() == FiniteQuotient::Kind::Lattice) {
      os << " lattice=";
      for (std::size_t i = 0; i < q.lattice_rows().size(); ++i) os << (i ? ";" : "") << join_vec(q.lattice_rows()[i]);
    } else {
      os << " degree=" << q.degree() << " perms=";
      for (std::size_t i = 0; i < q.edge_labels().size(); ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < q.edge_labels()[i].size(); ++j) os << (j ? "," : "") << q.edge_labels()[i][j];
      }
    }
    os << '\n';
  }
  return os.str();
}

namespace {

constexpr std::string_view kFull2 = R"([model]
name = full2
b = 0
n_removed = 1
vertices = 2
[edge] from=1 to=1 roof=1.0 class=0
[edge] from=1 to=2 roof=1.0 class=1
[edge] from=2 to=1 roof=1.0 class=0
[edge] from=2 to=2 roof=1.0 class=1
[removed] cycle = 2
[quotient] name = z2 modulus = 2
)";

constexpr std::string_view kGoldenMean = R"([model]
name = goldenmean
b = 1
n_removed = 0
vertices = 2
[edge] from=1 to=1 roof=1.0 class=0
[edge] from=1 to=2 roof=1.0 class=1
[edge] from=2 to=1 roof=1.0 class=0
[quotient] name = z2 modulus = 2
)";

// Complete graph on three vertices, roofs log 2 .. log 23 in edge order.
// Classes come from the spanning tree 1>2, 2>3 and one value per chord.
constexpr std::string_view kBench3 = R"([model]
name = bench3
b = 0
n_removed = 2
vertices = 3
[edge] from=1 to=1 roof=log(2)
[edge] from=1 to=2 roof=log(3)
[edge] from=1 to=3 roof=log(5)
[edge] from=2 to=1 roof=log(7)
[edge] from=2 to=2 roof=log(11)
[edge] from=2 to=3 roof=log(13)
[edge] from=3 to=1 roof=log(17)
[edge] from=3 to=2 roof=log(19)
[edge] from=3 to=3 roof=log(23)
[chords]
tree = 1>2;2>3
chord = 1>1:0,0
chord = 1>3:1,0
chord = 2>1:0,1
chord = 2>2:1,0
chord = 3>1:-1,0
chord = 3>2:0,-1
chord = 3>3:0,1
[removed] cycle = 1,2
[removed] cycle = 1,3
[quotient] name = z2xz3 lattice = 2,0;0,3
)";

}  // namespace

std::vector<std::string> builtin_names() { return {"full2", "goldenmean", "bench3"}; }

std::string builtin_text(std::string_view name) {
  if (name == "full2") return std::string(kFull2);
  if (name == "goldenmean") return std::string(kGoldenMean);
  if (name == "bench3") return std::string(kBench3);
  throw Error(ErrorCode::UnknownModel, "no builtin model named '" + std::string(name) + "'");
}

ModelSpec builtin_model(std::string_view name) { return parse_model(builtin_text(name)); }

}  // namespace symflow
