#include "ceforge/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ceforge {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& expected,
                             const std::string& got) {
  std::string msg = "line " + std::to_string(line);
  if (column) msg += ", column " + std::to_string(column);
  msg += ": expected " + expected;
  msg += got.empty() ? ", got end of input" : ", got '" + got + "'";
  throw Error(ErrorCode::ParseError, msg);
}

[[noreturn]] void invalid(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ValidationError, "line " + std::to_string(line) + ": " + what);
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch == '<' || ch == '=' || ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') return false;
  return true;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : lines_(tokenize(text)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  std::size_t last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

  bool at(const std::string& key) const { return !done() && peek().tokens[0].text == key; }

  const Line& expect(const std::string& key) {
    if (done()) parse_fail(last_line() + 1, 0, "'" + key + "'", "");
    const Line& l = peek();
    if (l.tokens[0].text != key) parse_fail(l.number, l.tokens[0].column, "'" + key + "'", l.tokens[0].text);
    return next();
  }

  void expect_header(const std::string& kind) {
    const Line& l = expect(kind);
    if (l.tokens.size() != 2 || l.tokens[1].text != "1") {
      parse_fail(l.number, l.tokens.size() > 1 ? l.tokens[1].column : 0, "format version '1'",
                 l.tokens.size() > 1 ? l.tokens[1].text : "");
    }
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void expect_arity(const Line& l, std::size_t n, const std::string& what) {
  if (l.tokens.size() < n) parse_fail(l.number, 0, what, "");
  if (l.tokens.size() > n) parse_fail(l.number, l.tokens[n].column, "end of line", l.tokens[n].text);
}

Coefficients parse_coefficients(Reader& r) {
  const Line& l = r.expect("coefficients");
  if (l.tokens.size() < 2) parse_fail(l.number, 0, "coefficient tag (Z, Q, Z2 or Zp <prime>)", "");
  const Token& t = l.tokens[1];
  if (t.text == "Z" || t.text == "Q" || t.text == "Z2") {
    expect_arity(l, 2, "");
    if (t.text == "Z") return Coefficients::integers();
    if (t.text == "Q") return Coefficients::rationals();
    return Coefficients::binary_field();
  }
  if (t.text != "Zp") parse_fail(l.number, t.column, "coefficient tag (Z, Q, Z2 or Zp <prime>)", t.text);
  expect_arity(l, 3, "prime modulus");
  const Token& m = l.tokens[2];
  unsigned long p = 0;
  try {
    std::size_t used = 0;
    p = std::stoul(m.text, &used);
    if (used != m.text.size()) throw std::invalid_argument(m.text);
  } catch (const std::exception&) {
    parse_fail(l.number, m.column, "prime modulus", m.text);
  }
  if (!is_prime(p)) parse_fail(l.number, m.column, "prime modulus", m.text);
  return p == 2 ? Coefficients::binary_field() : Coefficients::prime_field(p);
}

Poset parse_poset(Reader& r) {
  const Line& el = r.expect("elements");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i < el.tokens.size(); ++i) {
    const Token& t = el.tokens[i];
    if (!valid_label(t.text)) parse_fail(el.number, t.column, "element label", t.text);
    if (std::find(labels.begin(), labels.end(), t.text) != labels.end()) {
      parse_fail(el.number, t.column, "distinct element label", t.text);
    }
    labels.push_back(t.text);
  }
  if (labels.empty()) parse_fail(el.number, 0, "at least one element", "");
  if (labels.size() > configured_element_bound()) {
    throw Error(ErrorCode::BoundExceeded, "line " + std::to_string(el.number) + ": " + std::to_string(labels.size()) +
                                              " elements exceed the bound of " +
                                              std::to_string(configured_element_bound()));
  }
  auto index = [&](const Line& l, const Token& t, const std::string& label) -> std::size_t {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) parse_fail(l.number, t.column, "declared element", label);
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::size_t order_line = el.number;
  if (r.at("order")) {
    const Line& ol = r.next();
    order_line = ol.number;
    for (std::size_t i = 1; i < ol.tokens.size(); ++i) {
      const Token& t = ol.tokens[i];
      auto lt = t.text.find('<');
      if (lt == std::string::npos || t.text.find('<', lt + 1) != std::string::npos) {
        parse_fail(ol.number, t.column, "relation 'a<b'", t.text);
      }
      std::size_t a = index(ol, t, t.text.substr(0, lt));
      std::size_t b = index(ol, t, t.text.substr(lt + 1));
      if (a == b) invalid(ol.number, "relation " + t.text + " is not strict");
      rel.emplace_back(a, b);
    }
  }
  try {
    return Poset(labels, rel);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAPoset) invalid(order_line, e.what());
    throw;
  }
}

std::vector<std::size_t> parse_ranks(Reader& r, const std::string& key, const Poset& P) {
  const Line& l = r.expect(key);
  std::vector<std::size_t> ranks(P.size(), 0);
  std::vector<char> seen(P.size(), 0);
  for (std::size_t i = 1; i < l.tokens.size(); ++i) {
    const Token& t = l.tokens[i];
    auto eq = t.text.find('=');
    if (eq == std::string::npos) parse_fail(l.number, t.column, "'label=rank'", t.text);
    const std::string label = t.text.substr(0, eq), value = t.text.substr(eq + 1);
    auto it = std::find(P.labels().begin(), P.labels().end(), label);
    if (it == P.labels().end()) parse_fail(l.number, t.column, "declared element", label);
    const std::size_t p = static_cast<std::size_t>(it - P.labels().begin());
    if (seen[p]) parse_fail(l.number, t.column, "one rank per element", t.text);
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        value.size() > 4) {
      parse_fail(l.number, t.column + eq + 1, "non-negative rank", value);
    }
    ranks[p] = std::stoul(value);
    seen[p] = 1;
  }
  for (std::size_t p = 0; p < P.size(); ++p)
    if (!seen[p]) parse_fail(l.number, 0, "rank for element '" + P.label(p) + "'", "");
  return ranks;
}

Scalar parse_scalar(const std::string& s, const Coefficients& ring, std::size_t line, std::size_t column) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const std::size_t digits_start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits_start) parse_fail(line, column, "number", s);
  if (i < s.size()) {
    if (s[i] != '/' || ring.kind() != Coefficients::Kind::Rationals) {
      parse_fail(line, column, ring.kind() == Coefficients::Kind::Rationals ? "rational number" : "integer", s);
    }
    const std::size_t den_start = ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == den_start || i != s.size()) parse_fail(line, column, "rational number", s);
    Scalar q(s);
    if (q.get_den() == 0) parse_fail(line, column, "nonzero denominator", s);
    q.canonicalize();
    return ring.reduce(q);
  }
  return ring.reduce(Scalar(mpz_class(s)));
}

// "[[1,0],[0,2]]" with row/column counts checked against the expected shape.
Matrix parse_matrix(const Line& l, std::size_t first_token, const Coefficients& ring, std::size_t rows,
                    std::size_t cols) {
  if (l.tokens.size() <= first_token) parse_fail(l.number, 0, "matrix '[[...]]'", "");
  std::string text;
  const std::size_t column = l.tokens[first_token].column;
  for (std::size_t i = first_token; i < l.tokens.size(); ++i) text += l.tokens[i].text;
  Matrix m(ring, rows, cols);
  if (text == "[]") {
    if (rows != 0 && cols != 0) parse_fail(l.number, column, std::to_string(rows) + "x" + std::to_string(cols) + " matrix", text);
    return m;
  }
  std::size_t pos = 0;
  auto want = [&](char ch) {
    if (pos >= text.size() || text[pos] != ch) {
      parse_fail(l.number, column, std::string("'") + ch + "' at offset " + std::to_string(pos),
                 pos < text.size() ? text.substr(pos, 1) : "");
    }
    ++pos;
  };
  want('[');
  std::size_t r = 0;
  for (;;) {
    want('[');
    if (r >= rows) parse_fail(l.number, column, std::to_string(rows) + " rows", text);
    std::size_t c = 0;
    for (;;) {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
      if (c >= cols) parse_fail(l.number, column, std::to_string(cols) + " columns in row " + std::to_string(r + 1), text);
      m.set(r, c, parse_scalar(text.substr(start, pos - start), ring, l.number, column));
      ++c;
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    want(']');
    if (c != cols) parse_fail(l.number, column, std::to_string(cols) + " columns in row " + std::to_string(r + 1), text);
    ++r;
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  want(']');
  if (pos != text.size()) parse_fail(l.number, column, "end of matrix", text.substr(pos));
  if (r != rows) parse_fail(l.number, column, std::to_string(rows) + " rows", text);
  return m;
}

std::pair<std::size_t, std::size_t> parse_block_key(const Line& l, const Poset& P) {
  if (l.tokens.size() < 2) parse_fail(l.number, 0, "block key 'p<-q'", "");
  const Token& t = l.tokens[1];
  auto arrow = t.text.find("<-");
  if (arrow == std::string::npos) parse_fail(l.number, t.column, "block key 'p<-q'", t.text);
  auto lookup = [&](const std::string& label) {
    auto it = std::find(P.labels().begin(), P.labels().end(), label);
    if (it == P.labels().end()) parse_fail(l.number, t.column, "declared element", label);
    return static_cast<std::size_t>(it - P.labels().begin());
  };
  return {lookup(t.text.substr(0, arrow)), lookup(t.text.substr(arrow + 2))};
}

std::string coefficients_line(const Coefficients& ring) { return "coefficients " + ring.file_tag() + "\n"; }

std::string poset_lines(const Poset& P) {
  std::string out = "elements";
  for (const auto& l : P.labels()) out += " " + l;
  out += "\n";
  auto covers = P.cover_relations();
  std::sort(covers.begin(), covers.end());
  if (!covers.empty()) {
    out += "order";
    for (auto [p, q] : covers) out += " " + P.label(p) + "<" + P.label(q);
    out += "\n";
  }
  return out;
}

std::string ranks_line(const std::string& key, const Poset& P, const std::vector<std::size_t>& ranks) {
  std::string out = key;
  for (std::size_t p = 0; p < P.size(); ++p) out += " " + P.label(p) + "=" + std::to_string(ranks[p]);
  return out + "\n";
}

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& ranks) {
  std::vector<std::size_t> off(ranks.size() + 1, 0);
  for (std::size_t p = 0; p < ranks.size(); ++p) off[p + 1] = off[p] + ranks[p];
  return off;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

std::string block_lines(const Poset& P, const std::vector<std::size_t>& row_ranks,
                        const std::vector<std::size_t>& col_ranks, const Matrix& m) {
  auto ro = offsets_of(row_ranks), co = offsets_of(col_ranks);
  std::string out;
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q) {
      Matrix b = m.submatrix(range(ro[p], ro[p + 1]), range(co[q], co[q + 1]));
      if (b.empty() || b.is_zero()) continue;
      out += "block " + P.label(p) + "<-" + P.label(q) + " " + b.to_string() + "\n";
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

GradedDifferentialGroup parse_instance(const std::string& text, bool check_invariants) {
  Reader r(text);
  r.expect_header("ceforge-instance");
  Coefficients ring = parse_coefficients(r);
  Poset P = parse_poset(r);
  auto ranks = parse_ranks(r, "ranks", P);
  GradedDifferentialGroup c(P, ring, ranks);

  if (r.at("degrees")) {
    const Line& l = r.next();
    std::vector<std::optional<std::vector<long>>> per(P.size());
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      const Token& t = l.tokens[i];
      auto eq = t.text.find('=');
      if (eq == std::string::npos) parse_fail(l.number, t.column, "'label=degree[,degree...]'", t.text);
      const std::string label = t.text.substr(0, eq);
      auto it = std::find(P.labels().begin(), P.labels().end(), label);
      if (it == P.labels().end()) parse_fail(l.number, t.column, "declared element", label);
      const std::size_t p = static_cast<std::size_t>(it - P.labels().begin());
      if (per[p]) parse_fail(l.number, t.column, "one degree list per element", t.text);
      std::vector<long> degs;
      std::stringstream ss(t.text.substr(eq + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          degs.push_back(std::stol(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          parse_fail(l.number, t.column, "integer degree", item);
        }
      }
      if (degs.size() != ranks[p]) {
        parse_fail(l.number, t.column, std::to_string(ranks[p]) + " degrees for '" + label + "'", t.text);
      }
      per[p] = std::move(degs);
    }
    std::vector<long> all;
    for (std::size_t p = 0; p < P.size(); ++p) {
      if (!per[p] && ranks[p] != 0) parse_fail(l.number, 0, "degrees for element '" + P.label(p) + "'", "");
      if (per[p]) all.insert(all.end(), per[p]->begin(), per[p]->end());
    }
    c.set_degrees(all);
  }
  if (r.at("strict")) {
    expect_arity(r.peek(), 1, "");
    r.next();
    c.set_strict_flag(true);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> block_line;
  while (!r.done()) {
    const Line& l = r.expect("block");
    auto key = parse_block_key(l, P);
    if (block_line.count(key)) parse_fail(l.number, l.tokens[1].column, "each block key once", l.tokens[1].text);
    block_line[key] = l.number;
    c.set_block(key.first, key.second, parse_matrix(l, 2, ring, ranks[key.first], ranks[key.second]));
  }

  if (!check_invariants) return c;

  auto line_of = [&](std::size_t p, std::size_t q) { return block_line.at({p, q}); };
  for (const auto& [key, line] : block_line) {
    auto [p, q] = key;
    if (!P.leq(p, q) && !c.block(p, q).is_zero()) {
      invalid(line, "filtered: block " + P.label(p) + "<-" + P.label(q) + " is nonzero but " + P.label(p) +
                        " is not <= " + P.label(q));
    }
  }
  Matrix d2 = c.differential() * c.differential();
  for (std::size_t i = 0; i < d2.rows(); ++i)
    for (std::size_t j = 0; j < d2.cols(); ++j) {
      if (d2(i, j) == 0) continue;
      const std::size_t p = c.grade_of(i), q = c.grade_of(j);
      std::size_t line = block_line.begin()->second;
      for (std::size_t s = 0; s < P.size(); ++s) {
        if (block_line.count({p, s}) && block_line.count({s, q}) && !(c.block(p, s) * c.block(s, q)).is_zero()) {
          line = line_of(p, s);
          break;
        }
      }
      invalid(line, "d_squared_zero: block " + P.label(p) + "<-" + P.label(q) + " of d*d is nonzero");
    }
  if (c.degrees()) {
    const auto& deg = *c.degrees();
    const Matrix& d = c.differential();
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0 && deg[i] != deg[j] - 1) {
          const std::size_t p = c.grade_of(i), q = c.grade_of(j);
          invalid(line_of(p, q), "degree: block " + P.label(p) + "<-" + P.label(q) + " maps degree " +
                                     std::to_string(deg[j]) + " to degree " + std::to_string(deg[i]));
        }
  }
  if (c.strict_flag()) {
    for (const auto& [key, line] : block_line)
      if (key.first == key.second && !c.block(key.first, key.first).is_zero()) {
        invalid(line, "strict: diagonal block " + P.label(key.first) + "<-" + P.label(key.first) + " is nonzero");
      }
  }
  return c;
}

std::string serialize_instance(const GradedDifferentialGroup& c) {
  const Poset& P = c.poset();
  std::string out = "ceforge-instance 1\n";
  out += coefficients_line(c.ring());
  out += poset_lines(P);
  out += ranks_line("ranks", P, c.ranks());
  if (c.degrees()) {
    out += "degrees";
    for (std::size_t p = 0; p < P.size(); ++p) {
      if (c.rank(p) == 0) continue;
      out += " " + P.label(p) + "=";
      for (std::size_t k = 0; k < c.rank(p); ++k) {
        if (k) out += ",";
        out += std::to_string((*c.degrees())[c.offset(p) + k]);
      }
    }
    out += "\n";
  }
  if (c.strict_flag()) out += "strict\n";
  out += block_lines(P, c.ranks(), c.ranks(), c.differential());
  return out;
}

// ---------------------------------------------------------------------------

MapDocument parse_map(const std::string& text) {
  Reader r(text);
  r.expect_header("ceforge-map");
  MapDocument m;
  if (r.at("name")) {
    const Line& l = r.next();
    expect_arity(l, 2, "map name");
    m.name = l.tokens[1].text;
  }
  m.ring = parse_coefficients(r);
  m.poset = parse_poset(r);
  m.source_ranks = parse_ranks(r, "source-ranks", m.poset);
  m.target_ranks = parse_ranks(r, "target-ranks", m.poset);
  auto ro = offsets_of(m.target_ranks), co = offsets_of(m.source_ranks);
  m.matrix = Matrix(m.ring, ro.back(), co.back());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  while (!r.done()) {
    const Line& l = r.expect("block");
    auto key = parse_block_key(l, m.poset);
    if (seen.count(key)) parse_fail(l.number, l.tokens[1].column, "each block key once", l.tokens[1].text);
    seen[key] = l.number;
    Matrix b = parse_matrix(l, 2, m.ring, m.target_ranks[key.first], m.source_ranks[key.second]);
    m.matrix.place(range(ro[key.first], ro[key.first + 1]), range(co[key.second], co[key.second + 1]), b);
  }
  return m;
}

std::string serialize_map(const MapDocument& m) {
  std::string out = "ceforge-map 1\n";
  if (!m.name.empty()) out += "name " + m.name + "\n";
  out += coefficients_line(m.ring);
  out += poset_lines(m.poset);
  out += ranks_line("source-ranks", m.poset, m.source_ranks);
  out += ranks_line("target-ranks", m.poset, m.target_ranks);
  out += block_lines(m.poset, m.target_ranks, m.source_ranks, m.matrix);
  return out;
}

MapDocument map_document(const std::string& name, const GradedDifferentialGroup& source,
                         const GradedDifferentialGroup& target, const Matrix& matrix) {
  if (source.poset() != target.poset() || source.ring() != target.ring()) {
    throw Error(ErrorCode::DimensionMismatch, "map endpoints use different posets or rings");
  }
  if (matrix.rows() != target.total_rank() || matrix.cols() != source.total_rank()) {
    throw Error(ErrorCode::DimensionMismatch, "map matrix does not match the endpoint ranks");
  }
  return MapDocument{name, source.poset(), source.ring(), source.ranks(), target.ranks(), matrix};
}

// ---------------------------------------------------------------------------

std::string serialize_ce_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h) {
  const Poset& P = sysC.poset();
  std::string out = "ceforge-ce-iso 1\n";
  out += coefficients_line(sysC.base().ring());
  out += poset_lines(P);
  std::vector<ElementMask> keys;
  for (const auto& [xi, hom] : h.components) keys.push_back(xi);
  std::sort(keys.begin(), keys.end(), canonical_mask_less);
  for (ElementMask xi : keys) {
    const GroupHom& hom = h.components.at(xi);
    if (sysC.group(xi).is_trivial() && sysA.group(xi).is_trivial()) continue;
    out += "component " + P.format(xi) + " " + hom.matrix().to_string() + "\n";
  }
  return out;
}

CEIso parse_ce_iso(const std::string& text, const CESystem& sysC, const CESystem& sysA) {
  Reader r(text);
  r.expect_header("ceforge-ce-iso");
  Coefficients ring = parse_coefficients(r);
  const std::size_t poset_line = r.done() ? 0 : r.peek().number;
  Poset P = parse_poset(r);
  if (ring != sysC.base().ring() || P != sysC.poset()) {
    invalid(poset_line, "CE isomorphism file does not match the instances' poset and coefficients");
  }
  CEIso h;
  while (!r.done()) {
    const Line& l = r.expect("component");
    if (l.tokens.size() < 2) parse_fail(l.number, 0, "convex set '{p,q}'", "");
    ElementMask xi = 0;
    try {
      xi = P.parse_subset(l.tokens[1].text);
    } catch (const Error&) {
      parse_fail(l.number, l.tokens[1].column, "set of declared elements", l.tokens[1].text);
    }
    if (!P.is_convex(xi) || xi == 0) parse_fail(l.number, l.tokens[1].column, "nonempty convex set", l.tokens[1].text);
    if (h.components.count(xi)) parse_fail(l.number, l.tokens[1].column, "each convex set once", l.tokens[1].text);
    const FgGroup& src = sysC.group(xi);
    const FgGroup& dst = sysA.group(xi);
    Matrix m = parse_matrix(l, 2, ring, dst.generators(), src.generators());
    h.components.emplace(xi, GroupHom(src, dst, m));
  }
  for (ElementMask xi : convex_sets(P)) {
    if (h.components.count(xi)) continue;
    const FgGroup& src = sysC.group(xi);
    const FgGroup& dst = sysA.group(xi);
    if (src.is_trivial() && dst.is_trivial()) h.components.emplace(xi, GroupHom::zero(src, dst));
  }
  return h;
}

// ---------------------------------------------------------------------------

std::string document_kind(const std::string& text) {
  auto lines = tokenize(text);
  return lines.empty() ? std::string() : lines.front().tokens.front().text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ceforge
