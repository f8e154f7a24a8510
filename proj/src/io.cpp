#include "incidence/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace incidence {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Non-empty lines with comments stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
    start = end + 1;
  }
  return out;
}

// "key: value" -> value, when the line starts with key.
std::optional<std::string_view> keyed(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != ':') return std::nullopt;
  return trim(line.substr(key.size() + 1));
}

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return n;
}

std::size_t element_index(const Poset& poset, std::string_view label, std::size_t line) {
  auto idx = poset.index_of(label);
  if (!idx) throw ParseError("unknown element '" + std::string(label) + "'", line);
  return *idx;
}

// "{a,b}" or "{}".
Subset parse_subset(const Poset& poset, std::string_view text, std::size_t line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("expected a set like {a,b}, got '" + std::string(text) + "'", line);
  auto s = Subset::empty(poset.size());
  auto inner = trim(text.substr(1, text.size() - 2));
  if (inner.empty()) return s;
  for (auto label : split(inner, ',')) s = s.with(element_index(poset, label, line));
  return s;
}

std::vector<std::pair<std::string, std::string>> parse_relation_tokens(const std::vector<std::string_view>& tokens,
                                                                       std::size_t line) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto tok : tokens) {
    auto chain = split(tok, '<');
    if (chain.size() < 2) throw ParseError("expected a relation like a<b, got '" + std::string(tok) + "'", line);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (chain[i].empty() || chain[i + 1].empty())
        throw ParseError("empty label in relation '" + std::string(tok) + "'", line);
      out.emplace_back(std::string(chain[i]), std::string(chain[i + 1]));
    }
  }
  return out;
}

Poset build_poset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& rel,
                  std::size_t line) {
  try {
    return Poset::from_relations(std::move(labels), rel);
  } catch (const PosetError& e) {
    throw ParseError(e.what(), line);
  }
}

Poset parse_poset_literal(std::string_view text) {
  auto inner = trim(text.substr(1, text.size() - 2));
  auto bar = inner.find('|');
  std::vector<std::string> labels;
  for (auto l : split(inner.substr(0, bar), ','))
    if (!l.empty()) labels.emplace_back(l);
  std::vector<std::string_view> rel_tokens;
  if (bar != std::string_view::npos)
    for (auto r : split(inner.substr(bar + 1), ','))
      if (!r.empty()) rel_tokens.push_back(r);
  return build_poset(std::move(labels), parse_relation_tokens(rel_tokens, 0), 0);
}

std::optional<Poset> builtin_poset(std::string_view name) {
  if (name == "v") return Poset::v();
  if (name == "diamond") return Poset::diamond();
  for (std::string_view prefix : {"chain:", "antichain:"}) {
    if (name.substr(0, prefix.size()) != prefix) continue;
    const auto n = parse_count(name.substr(prefix.size()), "poset size");
    if (n == 0 || n > Poset::kMaxElements)
      throw ParseError("poset size must be between 1 and " + std::to_string(Poset::kMaxElements));
    return prefix == "chain:" ? Poset::chain(n) : Poset::antichain(n);
  }
  return std::nullopt;
}

FieldDesc parse_field_line(std::string_view value, std::size_t line) {
  try {
    return parse_field(value);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

PosetPtr parse_poset_line(std::string_view value, const std::filesystem::path& base, std::size_t line) {
  try {
    return resolve_poset(value, base);
  } catch (const ParseError& e) {
    if (e.line()) throw;
    throw ParseError(e.what(), line);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line);
  }
}

struct Header {
  std::optional<FieldDesc> field;
  std::optional<PosetPtr> poset;
  std::size_t next = 0;
};

Header parse_header(const std::vector<Line>& lines, std::string_view kind, const MapContext& ctx) {
  if (lines.empty() || lines[0].text != kind) throw ParseError("expected '" + std::string(kind) + "' header", lines.empty() ? 1 : lines[0].number);
  Header h;
  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    if (auto v = keyed(lines[i].text, "field")) {
      h.field = parse_field_line(*v, lines[i].number);
    } else if (auto p = keyed(lines[i].text, "poset")) {
      h.poset = parse_poset_line(*p, ctx.base_dir, lines[i].number);
    } else {
      break;
    }
  }
  h.next = i;
  if (ctx.field) {
    if (h.field && !(*h.field == *ctx.field))
      throw ParseError("file declares field " + h.field->literal() + " but " + ctx.field->literal() + " was requested");
    h.field = ctx.field;
  }
  if (ctx.poset) {
    if (h.poset && !(**h.poset == **ctx.poset)) throw ParseError("file declares a different poset than the one requested");
    h.poset = ctx.poset;
  }
  if (!h.field) throw ParseError("no field given (add a 'field:' line or pass --field)");
  if (!h.poset) throw ParseError("no poset given (add a 'poset:' line or pass --poset)");
  return h;
}

// Reads exactly d matrix rows starting at lines[i].
std::vector<std::vector<Scalar>> parse_rows(const std::vector<Line>& lines, std::size_t& i, std::size_t d,
                                            const FieldDesc& field, std::string_view block) {
  std::vector<std::vector<Scalar>> rows;
  while (i < lines.size() && rows.size() < d && lines[i].text.find(':') == std::string_view::npos) {
    std::vector<Scalar> row;
    for (auto tok : split_ws(lines[i].text)) {
      try {
        row.push_back(parse_scalar(field, tok));
      } catch (const std::exception& e) {
        throw ParseError("bad scalar '" + std::string(tok) + "': " + e.what(), lines[i].number);
      }
    }
    if (row.size() != d)
      throw ParseError(std::string(block) + " row has " + std::to_string(row.size()) + " entries; expected " +
                           std::to_string(d),
                       lines[i].number);
    rows.push_back(std::move(row));
    ++i;
  }
  if (rows.size() != d)
    throw ParseError(std::string(block) + " has " + std::to_string(rows.size()) + " rows; the basis size is " +
                     std::to_string(d));
  return rows;
}

std::string write_rows(const LinearMap& phi) {
  std::string out;
  for (std::size_t r = 0; r < phi.dimension(); ++r) {
    for (std::size_t c = 0; c < phi.dimension(); ++c) {
      if (c) out += ' ';
      out += phi(r, c).to_string();
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_subset(const Poset& poset, const Subset& s) {
  std::string out = "{";
  bool first = true;
  for (auto x : s.elements()) {
    if (!first) out += ',';
    out += poset.label(x);
    first = false;
  }
  return out + "}";
}

std::string format_lambda(const Poset& poset, const Lambda& lambda) {
  std::string out;
  for (std::size_t x = 0; x < poset.size(); ++x) {
    const auto image = std::visit(
        [&](const auto& l) {
          if constexpr (std::is_same_v<std::decay_t<decltype(l)>, PartitionEndo>)
            return l.block(x);
          else
            return l.column(x);
        },
        lambda);
    if (x) out += ' ';
    out += poset.label(x) + "->" + format_subset(poset, image);
  }
  return out;
}

std::string poset_literal(const Poset& poset) {
  std::string out = "[";
  for (std::size_t i = 0; i < poset.size(); ++i) out += (i ? "," : "") + poset.label(i);
  const auto covers = poset.covering_pairs();
  if (!covers.empty()) {
    out += " |";
    for (std::size_t i = 0; i < covers.size(); ++i)
      out += (i ? ", " : " ") + poset.label(covers[i].lower) + "<" + poset.label(covers[i].upper);
  }
  return out + "]";
}

std::string write_poset(const Poset& poset) {
  std::string out = "poset\nelements:";
  for (const auto& l : poset.labels()) out += " " + l;
  out += "\nrelations:";
  for (const auto& p : poset.covering_pairs()) out += " " + poset.label(p.lower) + "<" + poset.label(p.upper);
  return out + "\n";
}

Poset parse_poset(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty() || lines[0].text != "poset") throw ParseError("expected 'poset' header", lines.empty() ? 1 : lines[0].number);
  std::optional<std::vector<std::string>> labels;
  std::vector<std::pair<std::string, std::string>> rel;
  std::size_t last = lines[0].number;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    last = lines[i].number;
    if (auto v = keyed(lines[i].text, "elements")) {
      if (labels) throw ParseError("duplicate 'elements:' line", last);
      labels.emplace();
      for (auto t : split_ws(*v)) labels->emplace_back(t);
      if (labels->empty()) throw ParseError("a poset needs at least one element", last);
    } else if (auto r = keyed(lines[i].text, "relations")) {
      if (!labels) throw ParseError("'relations:' before 'elements:'", last);
      auto more = parse_relation_tokens(split_ws(*r), last);
      rel.insert(rel.end(), more.begin(), more.end());
    } else if (lines[i].text == "relations:") {
      continue;
    } else {
      throw ParseError("unexpected line '" + std::string(lines[i].text) + "'", last);
    }
  }
  if (!labels) throw ParseError("missing 'elements:' line", last);
  if (labels->size() > Poset::kMaxElements)
    throw ParseError("at most " + std::to_string(Poset::kMaxElements) + " elements are supported");
  return build_poset(std::move(*labels), rel, last);
}

PosetPtr resolve_poset(std::string_view reference, const std::filesystem::path& base_dir) {
  reference = trim(reference);
  if (reference.empty()) throw ParseError("empty poset reference");
  if (auto p = builtin_poset(reference)) return share(std::move(*p));
  if (reference.front() == '[') {
    if (reference.back() != ']') throw ParseError("unterminated poset literal");
    return share(parse_poset_literal(reference));
  }
  std::filesystem::path path(reference);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  try {
    return share(parse_poset(read_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

FIElement parse_element(const PosetPtr& poset, const FieldDesc& field, std::string_view text) {
  text = trim(text);
  if (text == "0") return FIElement::zero(poset, field);
  if (text == "delta") return FIElement::identity(poset, field);
  auto out = FIElement::zero(poset, field);
  std::string normalized;
  // Turn "a - b" into "a + -b" so terms split on '+'.
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '-' && i > 0) {
      auto before = trim(text.substr(0, i));
      if (!before.empty() && before.back() != '+' && before.back() != '*' && before.back() != '/') {
        normalized += "+-";
        continue;
      }
    }
    normalized += text[i];
  }
  for (auto term : split(normalized, '+')) {
    if (term.empty()) throw ParseError("empty term in element '" + std::string(text) + "'");
    Scalar coeff = Scalar::one(field);
    auto basis = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coeff = parse_scalar(field, trim(term.substr(0, star)));
      basis = trim(term.substr(star + 1));
    } else if (term.front() == '-') {
      coeff = -coeff;
      basis = trim(term.substr(1));
    }
    if (basis.size() < 4 || basis.substr(0, 2) != "e[" || basis.back() != ']')
      throw ParseError("expected a basis element like e[a] or e[a,b], got '" + std::string(basis) + "'");
    auto labels = split(basis.substr(2, basis.size() - 3), ',');
    if (labels.size() > 2) throw ParseError("a basis element has one or two indices");
    const auto x = element_index(*poset, labels[0], 0);
    const auto y = labels.size() == 2 ? element_index(*poset, labels[1], 0) : x;
    auto coord = poset->coordinate(x, y);
    if (!coord) throw ParseError("e[" + poset->label(x) + "," + poset->label(y) + "] is not in the algebra (need x <= y)");
    out[*coord] += coeff;
  }
  return out;
}

std::string write_map(const LinearMap& phi) {
  return "map\nfield: " + phi.field().literal() + "\nposet: " + poset_literal(phi.poset()) + "\nmatrix:\n" +
         write_rows(phi);
}

LinearMap parse_map(std::string_view text, const MapContext& context) {
  auto lines = content_lines(text);
  auto h = parse_header(lines, "map", context);
  std::size_t i = h.next;
  if (i >= lines.size() || lines[i].text != "matrix:")
    throw ParseError("expected 'matrix:'", i < lines.size() ? lines[i].number : 0);
  ++i;
  const auto d = (*h.poset)->basis_size();
  auto rows = parse_rows(lines, i, d, *h.field, "matrix");
  if (i < lines.size()) throw ParseError("unexpected trailing line", lines[i].number);
  return LinearMap::from_rows(*h.poset, *h.field, rows);
}

std::string write_spec(const PreserverSpec& spec) {
  const auto& poset = spec.psi.poset();
  const bool xor_lambda = std::holds_alternative<XorEndo>(spec.lambda);
  return "spec\nfield: " + spec.psi.field().literal() + "\nposet: " + poset_literal(poset) + "\n" +
         (xor_lambda ? "xor-lambda: " : "lambda: ") + format_lambda(poset, spec.lambda) + "\npsi:\n" +
         write_rows(spec.psi);
}

PreserverSpec parse_spec(std::string_view text, const MapContext& context) {
  auto lines = content_lines(text);
  auto h = parse_header(lines, "spec", context);
  const auto& poset = **h.poset;
  const std::size_t n = poset.size();
  std::size_t i = h.next;
  if (i >= lines.size()) throw ParseError("expected 'lambda:' or 'xor-lambda:'");
  const auto lambda_line = lines[i].number;
  auto plain = keyed(lines[i].text, "lambda");
  auto xored = keyed(lines[i].text, "xor-lambda");
  if (!plain && !xored) throw ParseError("expected 'lambda:' or 'xor-lambda:'", lambda_line);
  std::vector<std::optional<Subset>> images(n);
  for (auto tok : split_ws(plain ? *plain : *xored)) {
    auto arrow = tok.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected x->{...}, got '" + std::string(tok) + "'", lambda_line);
    const auto x = element_index(poset, tok.substr(0, arrow), lambda_line);
    if (images[x]) throw ParseError("duplicate image for " + poset.label(x), lambda_line);
    images[x] = parse_subset(poset, tok.substr(arrow + 2), lambda_line);
  }
  std::vector<Subset> sets;
  for (std::size_t x = 0; x < n; ++x) {
    if (!images[x]) throw ParseError("lambda size: no image given for " + poset.label(x), lambda_line);
    sets.push_back(*images[x]);
  }
  std::optional<Lambda> lambda;
  try {
    if (plain)
      lambda = PartitionEndo::from_blocks(sets);
    else
      lambda = XorEndo::from_columns(sets);
  } catch (const EndoError& e) {
    throw ParseError(e.what(), lambda_line);
  }
  ++i;
  if (i >= lines.size() || lines[i].text != "psi:") throw ParseError("expected 'psi:'", i < lines.size() ? lines[i].number : 0);
  ++i;
  auto rows = parse_rows(lines, i, poset.basis_size(), *h.field, "psi");
  if (i < lines.size()) throw ParseError("unexpected trailing line", lines[i].number);
  PreserverSpec spec{*lambda, LinearMap::from_rows(*h.poset, *h.field, rows)};
  try {
    spec.validate();
  } catch (const SpecError& e) {
    throw ParseError(e.what());
  }
  return spec;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace incidence
