#pragma once

// Line-oriented descriptor format:
//
//   # comment
//   l = 2
//   d = 1
//   H = Z/5
//   T = Z/2 + Z/4
//   spin = false
//   smooth = true          (default true)
//   pd_mode = false        (default false)
//   c1 = 0                 (invariant data: c1, c2, consumed, case)
//   c2 = 1
//   consumed = [2]         (1-based positions in the 2-primary part of T)
//   case = tilde_eta(1)    (null | eta | tilde_eta(j) | ip_tilde_eta(j) | eta_sq | i_eta_sq(j))
//
// or attaching data instead of the invariant keys:
//
//   [h_matrix]
//   sphere: eta 0
//   moore r=1: 0 i3eta
//   [phi]
//   y: 1
//   z: 0
//   eps: 0
//   w: 1

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "susp5/abelian.hpp"
#include "susp5/decompose.hpp"

namespace susp5 {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Range, Consistency };

  ParseError(Kind kind, int line, int column, const std::string& message)
      : std::runtime_error(message), kind_(kind), line_(line), column_(column) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }      // 1-based; 0 when not tied to a line
  int column() const { return column_; }  // 1-based; 0 when not tied to a column

  static std::string kind_name(Kind k) {
    switch (k) {
      case Kind::Syntax: return "syntax";
      case Kind::Range: return "range";
      case Kind::Consistency: return "consistency";
    }
    return "?";
  }

 private:
  Kind kind_;
  int line_;
  int column_;
};

namespace detail {

inline std::string_view trim_view(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  std::size_t b = s.size();
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

[[noreturn]] inline void syntax(int line, int col, const std::string& msg) {
  throw ParseError(ParseError::Kind::Syntax, line, col, msg);
}

inline int parse_int(std::string_view s, int line, int col) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) throw ParseError(ParseError::Kind::Range, line, col, "integer out of range");
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) syntax(line, col, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

inline bool parse_bool(std::string_view s, int line, int col) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  syntax(line, col, "expected true or false, got '" + std::string(s) + "'");
}

/// Whitespace-separated tokens with their 1-based columns.
inline std::vector<std::pair<std::string, int>> tokens(std::string_view s, int base_col) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.emplace_back(std::string(s.substr(start, i - start)), base_col + static_cast<int>(start));
  }
  return out;
}

inline std::vector<int> parse_index_list(std::string_view s, int line, int col) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') syntax(line, col, "expected a list like [1, 2]");
  std::vector<int> out;
  for (const auto& [tok, c] : tokens(s.substr(1, s.size() - 2), col + 1)) {
    int v = parse_int(tok, line, c);
    if (v < 1) throw ParseError(ParseError::Kind::Range, line, c, "indices are 1-based");
    out.push_back(v - 1);
  }
  return out;
}

inline AttachCase parse_case(std::string_view s, int line, int col) {
  auto with_index = [&](std::string_view name) -> std::optional<int> {
    if (s.substr(0, name.size()) != name) return std::nullopt;
    std::string_view rest = s.substr(name.size());
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') return std::nullopt;
    int j = parse_int(trim_view(rest.substr(1, rest.size() - 2)), line, col + static_cast<int>(name.size()) + 1);
    if (j < 1) throw ParseError(ParseError::Kind::Range, line, col, "case indices are 1-based");
    return j - 1;
  };
  if (s == "null") return AttachCase::null();
  if (s == "eta") return AttachCase::eta_top();
  if (s == "eta_sq") return AttachCase::eta_sq_top();
  if (auto j = with_index("tilde_eta")) return {AttachCase::Kind::TildeEtaTop, *j, 0};
  if (auto j = with_index("ip_tilde_eta")) return {AttachCase::Kind::IPTildeEtaTop, *j, 0};
  if (auto j = with_index("i_eta_sq")) return {AttachCase::Kind::IEtaSqTop, *j, 0};
  syntax(line, col, "unknown case '" + std::string(s) + "'");
}

inline std::string render_case(const AttachCase& a) {
  using K = AttachCase::Kind;
  const std::string j = std::to_string(a.index + 1);
  switch (a.kind) {
    case K::Null: return "null";
    case K::EtaTop: return "eta";
    case K::EtaSqTop: return "eta_sq";
    case K::TildeEtaTop: return "tilde_eta(" + j + ")";
    case K::IPTildeEtaTop: return "ip_tilde_eta(" + j + ")";
    case K::IEtaSqTop: return "i_eta_sq(" + j + ")";
  }
  return "?";
}

}  // namespace detail

/// Parses a descriptor. With `validate_for` set, hypothesis and consistency
/// checks for that suspension mode run too and are reported as ParseError.
inline ManifoldDescriptor parse_descriptor(std::string_view text,
                                           std::optional<SuspensionMode> validate_for = SuspensionMode::Single) {
  using detail::syntax;
  ManifoldDescriptor m;
  InvariantData inv;
  AttachingData att;
  std::map<std::string, int> key_line;
  int invariant_line = 0, block_line = 0;
  enum class Section { None, HMatrix, Phi } section = Section::None;
  bool have_sphere_rows = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    std::string_view line = detail::trim_view(raw, &lead);
    if (line.empty()) continue;
    const int base = static_cast<int>(lead) + 1;

    if (line.front() == '[' && line.find('=') == std::string_view::npos) {
      if (line == "[h_matrix]") section = Section::HMatrix;
      else if (line == "[phi]") section = Section::Phi;
      else syntax(line_no, base, "unknown section " + std::string(line));
      if (!block_line) block_line = line_no;
      continue;
    }

    const std::size_t eq = line.find('=');
    const std::size_t colon = line.find(':');
    auto is_identifier = [](std::string_view k) {
      return !k.empty() && std::all_of(k.begin(), k.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
    };
    if (eq != std::string_view::npos && (colon == std::string_view::npos || eq < colon) &&
        is_identifier(detail::trim_view(line.substr(0, eq)))) {
      section = Section::None;
      std::string key(detail::trim_view(line.substr(0, eq)));
      std::size_t vlead = 0;
      std::string_view value = detail::trim_view(line.substr(eq + 1), &vlead);
      const int vcol = base + static_cast<int>(eq + 1 + vlead);
      if (value.empty()) syntax(line_no, vcol, "missing value for '" + key + "'");
      if (key_line.count(key))
        throw ParseError(ParseError::Kind::Consistency, line_no, base, "duplicate key '" + key + "'");
      key_line[key] = line_no;
      if (key == "l") m.l = detail::parse_int(value, line_no, vcol);
      else if (key == "d") m.d = detail::parse_int(value, line_no, vcol);
      else if (key == "H" || key == "T") {
        try {
          (key == "H" ? m.H : m.T) = parse_group(value);
        } catch (const GroupSyntaxError& e) {
          syntax(line_no, vcol + static_cast<int>(e.column()) - 1, e.what());
        }
      } else if (key == "spin") m.spin = detail::parse_bool(value, line_no, vcol);
      else if (key == "smooth") m.smooth = detail::parse_bool(value, line_no, vcol);
      else if (key == "pd_mode") m.pd_mode = detail::parse_bool(value, line_no, vcol);
      else if (key == "c1" || key == "c2" || key == "consumed" || key == "case") {
        if (!invariant_line) invariant_line = line_no;
        if (key == "c1") inv.c1 = detail::parse_int(value, line_no, vcol);
        else if (key == "c2") inv.c2 = detail::parse_int(value, line_no, vcol);
        else if (key == "consumed") inv.consumed = detail::parse_index_list(value, line_no, vcol);
        else inv.attach = detail::parse_case(value, line_no, vcol);
      } else {
        syntax(line_no, base, "unknown key '" + key + "'");
      }
      continue;
    }

    if (colon == std::string_view::npos || section == Section::None)
      syntax(line_no, base, "expected 'key = value' or a row inside [h_matrix] / [phi]");
    std::string label(detail::trim_view(line.substr(0, colon)));
    auto toks = detail::tokens(line.substr(colon + 1), base + static_cast<int>(colon) + 1);

    if (section == Section::HMatrix) {
      std::vector<std::uint8_t> row;
      bool sphere_row = label == "sphere";
      int r = 0;
      if (!sphere_row) {
        if (label.rfind("moore", 0) != 0) syntax(line_no, base, "h-matrix rows are 'sphere:' or 'moore r=R:'");
        std::string_view rest = detail::trim_view(std::string_view(label).substr(5));
        if (rest.rfind("r=", 0) != 0) syntax(line_no, base, "Moore rows need an exponent, e.g. 'moore r=2:'");
        r = detail::parse_int(detail::trim_view(rest.substr(2)), line_no, base);
        if (r < 1) throw ParseError(ParseError::Kind::Range, line_no, base, "Moore exponent must be >= 1");
      }
      const std::string one = sphere_row ? "eta" : "i3eta";
      for (const auto& [tok, c] : toks) {
        if (tok == "0") row.push_back(0);
        else if (tok == one) row.push_back(1);
        else syntax(line_no, c, "expected 0 or " + one + ", got '" + tok + "'");
      }
      if (!have_sphere_rows && att.h.sphere_rows.empty() && att.h.moore_rows.empty()) att.h.l = static_cast<int>(row.size());
      if (sphere_row) {
        have_sphere_rows = true;
        att.h.sphere_rows.push_back(std::move(row));
      } else {
        att.h.moore_r.push_back(r);
        att.h.moore_rows.push_back(std::move(row));
      }
      continue;
    }

    std::vector<std::uint8_t> bits;
    for (const auto& [tok, c] : toks) {
      if (tok == "0") bits.push_back(0);
      else if (tok == "1") bits.push_back(1);
      else syntax(line_no, c, "phi coefficients are 0 or 1, got '" + tok + "'");
    }
    std::optional<std::vector<std::uint8_t>>* slot = nullptr;
    if (label == "x") slot = &att.phi.x;
    else if (label == "y") slot = &att.phi.y;
    else if (label == "z") slot = &att.phi.z;
    else if (label == "eps") slot = &att.phi.eps;
    else if (label == "w") slot = &att.phi.w;
    else syntax(line_no, base, "phi rows are x:, y:, z:, eps: or w:");
    if (*slot) throw ParseError(ParseError::Kind::Consistency, line_no, base, "duplicate phi row '" + label + "'");
    *slot = std::move(bits);
  }

  for (const char* key : {"l", "d", "spin"})
    if (!key_line.count(key)) syntax(0, 0, std::string("missing required key '") + key + "'");
  if (invariant_line && block_line)
    throw ParseError(ParseError::Kind::Consistency, std::max(invariant_line, block_line), 1,
                     "provide invariant data or attaching data, not both");
  if (block_line) {
    if (att.h.sphere_rows.empty() && att.h.moore_rows.empty()) att.h.l = m.l;
    m.data = std::move(att);
  } else {
    m.data = std::move(inv);
  }

  if (validate_for) {
    ValidationReport rep = validate(m, *validate_for);
    if (!rep.ok()) {
      const Violation& v = rep.violations.front();
      int line = 0;
      if (auto it = key_line.find(v.key); it != key_line.end()) line = it->second;
      else if (v.key == "h_matrix" || v.key == "phi") line = block_line;
      throw ParseError(v.kind == Violation::Kind::Range ? ParseError::Kind::Range : ParseError::Kind::Consistency, line,
                       line ? 1 : 0, rep.summary());
    }
  }
  return m;
}

/// Text that parse_descriptor maps back to an equal descriptor.
inline std::string render_descriptor(const ManifoldDescriptor& m) {
  std::ostringstream os;
  os << "l = " << m.l << "\n";
  os << "d = " << m.d << "\n";
  os << "H = " << m.H.to_string() << "\n";
  os << "T = " << m.T.to_string() << "\n";
  os << "spin = " << (m.spin ? "true" : "false") << "\n";
  os << "smooth = " << (m.smooth ? "true" : "false") << "\n";
  os << "pd_mode = " << (m.pd_mode ? "true" : "false") << "\n";
  if (const auto* inv = std::get_if<InvariantData>(&m.data)) {
    os << "c1 = " << inv->c1 << "\n";
    os << "c2 = " << inv->c2 << "\n";
    if (inv->consumed) {
      os << "consumed = [";
      for (std::size_t i = 0; i < inv->consumed->size(); ++i) os << (i ? ", " : "") << (*inv->consumed)[i] + 1;
      os << "]\n";
    }
    os << "case = " << detail::render_case(inv->attach) << "\n";
    return os.str();
  }
  const auto& att = std::get<AttachingData>(m.data);
  os << "[h_matrix]\n";
  for (const auto& row : att.h.sphere_rows) {
    os << "sphere:";
    for (auto v : row) os << (v ? " eta" : " 0");
    os << "\n";
  }
  for (std::size_t j = 0; j < att.h.moore_rows.size(); ++j) {
    os << "moore r=" << att.h.moore_r[j] << ":";
    for (auto v : att.h.moore_rows[j]) os << (v ? " i3eta" : " 0");
    os << "\n";
  }
  const std::pair<const char*, const std::optional<std::vector<std::uint8_t>>*> rows[] = {
      {"x", &att.phi.x}, {"y", &att.phi.y}, {"z", &att.phi.z}, {"eps", &att.phi.eps}, {"w", &att.phi.w}};
  bool any = false;
  for (const auto& [name, v] : rows) any = any || v->has_value();
  if (any) {
    os << "[phi]\n";
    for (const auto& [name, v] : rows) {
      if (!*v) continue;
      os << name << ":";
      for (auto b : **v) os << " " << int(b);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace susp5
