#include "ukoszul/formats.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <vector>

#include "ukoszul/graphs.hpp"

namespace ukoszul {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Field {
  std::string_view key;
  std::string_view value;
  std::size_t key_offset;
  std::size_t value_offset;
};

// "key = value" lines with '#' comments; offsets are into the whole text.
std::vector<Field> split_fields(std::string_view text) {
  std::vector<Field> fields;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = 0;
    while (b < line.size() && is_space(line[b])) ++b;
    std::size_t e = line.size();
    while (e > b && is_space(line[e - 1])) --e;
    if (b < e) {
      std::string_view body = line.substr(b, e - b);
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_start + b);
      std::size_t ke = eq;
      while (ke > 0 && is_space(body[ke - 1])) --ke;
      std::size_t vb = eq + 1;
      while (vb < body.size() && is_space(body[vb])) ++vb;
      if (ke == 0) throw ParseError("missing key", line_start + b);
      fields.push_back({body.substr(0, ke), body.substr(vb), line_start + b, line_start + b + vb});
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return fields;
}

long long parse_integer(std::string_view s, std::size_t offset) {
  std::size_t start = 0;
  if (!s.empty() && s[0] == '+') start = 1;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.size() == start)
    throw ParseError("expected an integer", offset);
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t offset) {
  long long v = parse_integer(s, offset);
  if (v < 0) throw ParseError("expected a non-negative integer", offset);
  return static_cast<std::size_t>(v);
}

PrimeField checked_field(long long p, std::size_t offset, const Limits& limits) {
  if (p < 2 || !is_prime(static_cast<unsigned>(p))) throw ParseError("p must be prime", offset);
  if (static_cast<unsigned long long>(p) > limits.max_p)
    throw LimitError("p = " + std::to_string(p) + " exceeds the limit " + std::to_string(limits.max_p));
  return PrimeField(static_cast<unsigned>(p));
}

void check_generators(std::size_t d, const Limits& limits) {
  if (d > limits.max_enum_dim)
    throw LimitError("d = " + std::to_string(d) + " exceeds the limit " + std::to_string(limits.max_enum_dim));
}

class RelationParser {
 public:
  RelationParser(std::string_view text, std::size_t base, const PrimeField& f, std::size_t d)
      : text_(text), base_(base), f_(f), d_(d) {}

  Vector parse() {
    Vector v(d_ * d_, 0);
    skip();
    if (peek() == '[') {
      const std::size_t open = pos_++;
      std::size_t k = 0;
      while (true) {
        skip();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        if (k == v.size()) fail("coefficient vector longer than d*d");
        v[k++] = f_.reduce(integer());
        skip();
        if (peek() == ',') ++pos_;
      }
      if (k != v.size()) {
        pos_ = open;
        fail("coefficient vector must have d*d entries");
      }
    } else {
      bool first = true;
      while (true) {
        skip();
        long long sign = 1;
        if (peek() == '+' || peek() == '-') {
          sign = peek() == '-' ? -1 : 1;
          ++pos_;
          skip();
        } else if (!first) {
          fail("expected '+' or '-'");
        }
        long long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          coeff = integer();
          skip();
          if (peek() == '*') ++pos_;
        }
        std::size_t i = generator();
        skip();
        if (peek() != '*') fail("expected '*'");
        ++pos_;
        std::size_t j = generator();
        const std::size_t at = pair_index(d_, i, j);
        v[at] = f_.add(v[at], f_.reduce(sign * coeff));
        first = false;
        skip();
        if (pos_ == text_.size()) break;
      }
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  long long integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    long long v = 0;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      pos_ = start;
      fail("expected an integer");
    }
    return v;
  }
  std::size_t generator() {
    skip();
    const std::size_t start = pos_;
    if (peek() != 'a') fail("expected a generator a1..a" + std::to_string(d_));
    ++pos_;
    if (peek() == '_') ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
    (void)ptr;
    if (pos_ == digits || ec != std::errc{} || k == 0 || k > d_) {
      pos_ = start;
      fail("expected a generator a1..a" + std::to_string(d_));
    }
    return k - 1;
  }

  std::string_view text_;
  std::size_t base_;
  const PrimeField& f_;
  std::size_t d_;
  std::size_t pos_ = 0;
};

struct ScalarFields {
  std::map<std::string_view, const Field*> seen;

  void record(const Field& field) {
    if (!seen.emplace(field.key, &field).second)
      throw ParseError("duplicate key '" + std::string(field.key) + "'", field.key_offset);
  }
  const Field* get(std::string_view key) const {
    auto it = seen.find(key);
    return it == seen.end() ? nullptr : it->second;
  }
};

}  // namespace

Vector parse_relation(std::string_view text, const PrimeField& field, std::size_t d) {
  return RelationParser(text, 0, field, d).parse();
}

AlgebraDescription parse_algebra(std::string_view text, const Limits& limits) {
  const std::vector<Field> fields = split_fields(text);
  ScalarFields scalars;
  std::vector<const Field*> relations;
  for (const Field& field : fields) {
    if (field.key == "relation") {
      relations.push_back(&field);
    } else if (field.key == "p" || field.key == "d" || field.key == "base" || field.key == "graph" ||
               field.key == "class") {
      scalars.record(field);
    } else {
      throw ParseError("unknown key '" + std::string(field.key) + "'", field.key_offset);
    }
  }
  const Field* pf = scalars.get("p");
  if (!pf) throw InputError("algebra description is missing 'p ='");
  PrimeField f = checked_field(parse_integer(pf->value, pf->value_offset), pf->value_offset, limits);

  std::optional<Graph> graph;
  if (const Field* g = scalars.get("graph")) {
    // The edge list reuses the graph grammar without the vertex-count prefix.
    const Field* df = scalars.get("d");
    if (!df) throw InputError("'graph =' requires 'd =' for the vertex count");
    std::string edge_text = std::string(df->value) + ";" + std::string(g->value);
    try {
      graph = parse_graph(edge_text);
    } catch (const ParseError& e) {
      const std::size_t shift = df->value.size() + 1;
      throw ParseError("graph: " + std::string(e.what()), g->value_offset + (e.offset() >= shift ? e.offset() - shift : 0));
    }
  }

  std::size_t d = 0;
  if (const Field* df = scalars.get("d")) {
    d = parse_count(df->value, df->value_offset);
  } else {
    throw InputError("algebra description is missing 'd ='");
  }
  if (d == 0) throw InputError("d must be at least 1");
  check_generators(d, limits);

  FpMatrix omega(f, 0, d * d);
  auto add_rows = [&](const Subspace& s) {
    for (std::size_t r = 0; r < s.dim(); ++r) omega.append_row(s.basis().row(r));
  };
  if (const Field* b = scalars.get("base")) {
    std::string_view v = b->value;
    if (v == "tensor")
      add_rows(standard_algebra(StandardKind::tensor, f, d).omega());
    else if (v == "trivial")
      add_rows(standard_algebra(StandardKind::trivial, f, d).omega());
    else if (v == "symmetric")
      add_rows(standard_algebra(StandardKind::symmetric, f, d).omega());
    else if (v == "exterior")
      add_rows(standard_algebra(StandardKind::exterior, f, d).omega());
    else if (v == "demushkin")
      add_rows(demushkin_algebra(f, d).omega());
    else
      throw ParseError("unknown base '" + std::string(v) + "'", b->value_offset);
  }
  if (graph) add_rows(stanley_reisner(*graph, f).omega());
  for (const Field* r : relations) omega.append_row(RelationParser(r->value, r->value_offset, f, d).parse());

  Subspace span = Subspace::span(std::move(omega));
  std::optional<Commutativity> cls;
  if (const Field* c = scalars.get("class")) {
    if (c->value != "auto") {
      cls = parse_commutativity(c->value);
      if (!cls) throw ParseError("unknown class '" + std::string(c->value) + "'", c->value_offset);
    }
  }
  if (cls) return {QuadraticPresentation(f, d, std::move(span), *cls), graph};
  return {QuadraticPresentation::with_detected_class(f, d, std::move(span)), graph};
}

std::string format_algebra(const QuadraticPresentation& pres) {
  std::string s = "p = " + std::to_string(pres.field().p()) + "\n";
  s += "d = " + std::to_string(pres.generators()) + "\n";
  s += std::string("class = ") + to_string(pres.commutativity()) + "\n";
  const Subspace& omega = pres.omega();
  for (std::size_t r = 0; r < omega.dim(); ++r) {
    s += "relation = [";
    auto row = omega.basis().row(r);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(row[k]);
    }
    s += "]\n";
  }
  return s;
}

GroupPresentation parse_presentation(std::string_view text, const Limits& limits) {
  const std::vector<Field> fields = split_fields(text);
  ScalarFields scalars;
  std::vector<const Field*> relators;
  for (const Field& field : fields) {
    if (field.key == "relator")
      relators.push_back(&field);
    else if (field.key == "p" || field.key == "d")
      scalars.record(field);
    else
      throw ParseError("unknown key '" + std::string(field.key) + "'", field.key_offset);
  }
  const Field* pf = scalars.get("p");
  const Field* df = scalars.get("d");
  if (!pf) throw InputError("presentation is missing 'p ='");
  if (!df) throw InputError("presentation is missing 'd ='");
  PrimeField f = checked_field(parse_integer(pf->value, pf->value_offset), pf->value_offset, limits);
  const std::size_t d = parse_count(df->value, df->value_offset);
  if (d == 0) throw InputError("d must be at least 1");
  check_generators(d, limits);
  GroupPresentation pres{f, d, {}};
  for (const Field* r : relators) {
    try {
      pres.relators.push_back(parse_word(r->value, d));
    } catch (const ParseError& e) {
      std::string what = e.what();
      if (auto at = what.rfind(" at offset "); at != std::string::npos) what.resize(at);
      throw ParseError(what, r->value_offset + e.offset());
    }
  }
  return pres;
}

std::string format_presentation(const GroupPresentation& pres) {
  std::string s = "p = " + std::to_string(pres.field.p()) + "\n";
  s += "d = " + std::to_string(pres.generators) + "\n";
  for (const Word& w : pres.relators) s += "relator = " + w.to_string() + "\n";
  return s;
}

void set_limit(Limits& limits, std::string_view key, std::string_view value) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() || v < 0)
    throw InputError("limit '" + std::string(key) + "' needs a non-negative integer, got '" +
                     std::string(value) + "'");
  const auto u = static_cast<std::size_t>(v);
  if (key == "max_enum_dim")
    limits.max_enum_dim = u;
  else if (key == "max_enum_points")
    limits.max_enum_points = u;
  else if (key == "workspace")
    limits.workspace = u;
  else if (key == "max_cap") {
    if (v > std::numeric_limits<int>::max()) throw InputError("max_cap is too large");
    limits.max_cap = static_cast<int>(v);
  } else if (key == "max_p") {
    if (v > 251) throw InputError("max_p cannot exceed 251");
    limits.max_p = static_cast<unsigned>(v);
  } else if (key == "max_table_entries")
    limits.max_table_entries = u;
  else
    throw InputError("unknown limit '" + std::string(key) + "'");
}

Limits parse_limits(std::string_view text, Limits base) {
  for (const Field& field : split_fields(text)) {
    try {
      set_limit(base, field.key, field.value);
    } catch (const InputError& e) {
      throw ParseError(e.what(), field.key_offset);
    }
  }
  return base;
}

}  // namespace ukoszul
