#pragma once

// Elementary complexes (spheres, Moore spaces, Chang complexes and the
// two-cell-on-top hybrids), their cellular homology, and wedges of them.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "susp5/abelian.hpp"

namespace susp5 {

enum class ComplexKind {
  Sphere,
  Moore,
  ChangEta,
  ChangR,
  ChangS,
  ChangRS,
  ATilde,   // P^{n-2}(2^r) with an n-cell on eta~_r
  AIP,      // C^{n-1}_r with an n-cell on i_P eta~_r
  SEtaSq,   // S^{n-3} with an n-cell on eta^2
  AEpsSq,   // P^{n-2}(2^r) with an n-cell on i eta^2
};

/// One wedge summand. `n` is always the top dimension.
///
/// Unused parameters stay zero so that the defaulted ordering (kind, n, p, e,
/// r, s) is the canonical wedge order.
struct ElementaryComplex {
  ComplexKind kind = ComplexKind::Sphere;
  int n = 0;
  long long p = 0;
  int e = 0;
  int r = 0;
  int s = 0;

  friend auto operator<=>(const ElementaryComplex&, const ElementaryComplex&) = default;

  static ElementaryComplex sphere(int n) {
    if (n < 1) throw std::invalid_argument("S^n needs n >= 1");
    return {ComplexKind::Sphere, n};
  }
  /// P^n(Z/p^e): bottom cell n-1, top cell n.
  static ElementaryComplex moore(int n, long long p, int e) {
    if (n < 2) throw std::invalid_argument("P^n needs n >= 2");
    if (!is_prime(p) || e < 1) throw std::invalid_argument("Moore space order must be a prime power >= 2");
    return {ComplexKind::Moore, n, p, e};
  }
  static ElementaryComplex chang_eta(int n) {
    if (n < 5) throw std::invalid_argument("C^n_eta needs n >= 5");
    return {ComplexKind::ChangEta, n};
  }
  static ElementaryComplex chang_r(int n, int r) {
    if (n < 5 || r < 1) throw std::invalid_argument("C^n_r needs n >= 5, r >= 1");
    return {ComplexKind::ChangR, n, 0, 0, r};
  }
  static ElementaryComplex chang_s(int n, int s) {
    if (n < 5 || s < 1) throw std::invalid_argument("C^{n,s} needs n >= 5, s >= 1");
    return {ComplexKind::ChangS, n, 0, 0, 0, s};
  }
  static ElementaryComplex chang_rs(int n, int r, int s) {
    if (n < 5 || r < 1 || s < 1) throw std::invalid_argument("C^{n,s}_r needs n >= 5, r, s >= 1");
    return {ComplexKind::ChangRS, n, 0, 0, r, s};
  }
  static ElementaryComplex a_tilde(int n, int r) {
    if (n < 6 || r < 1) throw std::invalid_argument("A^n(eta~_r) needs n >= 6, r >= 1");
    return {ComplexKind::ATilde, n, 0, 0, r};
  }
  static ElementaryComplex a_ip(int n, int r) {
    if (n < 6 || r < 1) throw std::invalid_argument("A^n(i_P eta~_r) needs n >= 6, r >= 1");
    return {ComplexKind::AIP, n, 0, 0, r};
  }
  static ElementaryComplex s_eta_sq(int n) {
    if (n < 6) throw std::invalid_argument("A^n(eta^2) needs n >= 6");
    return {ComplexKind::SEtaSq, n};
  }
  static ElementaryComplex a_eps_sq(int n, int r) {
    if (n < 6 || r < 1) throw std::invalid_argument("A^n(2^r eta^2) needs n >= 6, r >= 1");
    return {ComplexKind::AEpsSq, n, 0, 0, r};
  }

  long long moore_order() const { return detail::ipow(p, e); }
  int bottom_dim() const;
  std::string to_string() const;
};

namespace detail {

/// Reduced cellular chain complex: cell counts per dimension and the
/// boundary matrix out of each dimension (rows = cells one dimension down).
struct ChainComplex {
  std::map<int, int> cells;
  std::map<int, IntMatrix> boundary;

  int count(int k) const {
    auto it = cells.find(k);
    return it == cells.end() ? 0 : it->second;
  }
  const IntMatrix* d(int k) const {
    auto it = boundary.find(k);
    return it == boundary.end() ? nullptr : &it->second;
  }

  FgAbGroup homology(int k) const {
    int c = count(k);
    if (c == 0) return {};
    int rank_out = 0;
    if (const IntMatrix* dk = d(k)) rank_out = static_cast<int>(smith_normal_form(*dk).nonzero_diagonal().size());
    FgAbGroup g;
    int rank_in = 0;
    if (const IntMatrix* dk1 = d(k + 1)) {
      auto diag = smith_normal_form(*dk1).nonzero_diagonal();
      rank_in = static_cast<int>(diag.size());
      for (long long v : diag) g += FgAbGroup::cyclic(v);
    }
    return g + FgAbGroup::free(c - rank_out - rank_in);
  }
};

inline ChainComplex chains(const ElementaryComplex& x) {
  ChainComplex cc;
  const int n = x.n;
  auto one = [](long long v) { return IntMatrix{{v}}; };
  switch (x.kind) {
    case ComplexKind::Sphere:
      cc.cells[n] = 1;
      break;
    case ComplexKind::Moore:
      cc.cells[n - 1] = 1;
      cc.cells[n] = 1;
      cc.boundary[n] = one(x.moore_order());
      break;
    case ComplexKind::ChangEta:
      cc.cells[n - 2] = 1;
      cc.cells[n] = 1;
      break;
    case ComplexKind::ChangR:
      cc.cells[n - 2] = 1;
      cc.cells[n - 1] = 1;
      cc.cells[n] = 1;
      cc.boundary[n - 1] = one(ipow(2, x.r));
      cc.boundary[n] = one(0);
      break;
    case ComplexKind::ChangS:
      cc.cells[n - 2] = 1;
      cc.cells[n - 1] = 1;
      cc.cells[n] = 1;
      cc.boundary[n - 1] = one(0);
      cc.boundary[n] = one(ipow(2, x.s));
      break;
    case ComplexKind::ChangRS:
      cc.cells[n - 2] = 1;
      cc.cells[n - 1] = 2;
      cc.cells[n] = 1;
      cc.boundary[n - 1] = IntMatrix{{ipow(2, x.r), 0}};
      cc.boundary[n] = IntMatrix{{0}, {ipow(2, x.s)}};
      break;
    case ComplexKind::ATilde:
    case ComplexKind::AEpsSq:
      cc.cells[n - 3] = 1;
      cc.cells[n - 2] = 1;
      cc.cells[n] = 1;
      cc.boundary[n - 2] = one(ipow(2, x.r));
      break;
    case ComplexKind::AIP:
      cc.cells[n - 3] = 1;
      cc.cells[n - 2] = 1;
      cc.cells[n - 1] = 1;
      cc.cells[n] = 1;
      cc.boundary[n - 2] = one(ipow(2, x.r));
      cc.boundary[n - 1] = one(0);
      cc.boundary[n] = one(0);
      break;
    case ComplexKind::SEtaSq:
      cc.cells[n - 3] = 1;
      cc.cells[n] = 1;
      break;
  }
  return cc;
}

}  // namespace detail

inline int ElementaryComplex::bottom_dim() const {
  return detail::chains(*this).cells.begin()->first;
}

/// Reduced integral homology.
inline FgAbGroup homology(const ElementaryComplex& x, int i) { return detail::chains(x).homology(i); }

/// Number of positive-dimensional cells.
inline int cell_count(const ElementaryComplex& x) {
  int total = 0;
  for (const auto& [dim, c] : detail::chains(x).cells) total += c;
  return total;
}

inline ElementaryComplex suspend(ElementaryComplex x) {
  ++x.n;
  return x;
}

inline std::string ElementaryComplex::to_string() const {
  const std::string N = std::to_string(n);
  switch (kind) {
    case ComplexKind::Sphere: return "S^" + N;
    case ComplexKind::Moore: return "P^" + N + "(Z/" + std::to_string(moore_order()) + ")";
    case ComplexKind::ChangEta: return "C^" + N + "_eta";
    case ComplexKind::ChangR: return "C^" + N + "_{r=" + std::to_string(r) + "}";
    case ComplexKind::ChangS: return "C^{" + N + ",s=" + std::to_string(s) + "}";
    case ComplexKind::ChangRS:
      return "C^{" + N + ",s=" + std::to_string(s) + "}_{r=" + std::to_string(r) + "}";
    case ComplexKind::ATilde: return "A^" + N + "(eta~_" + std::to_string(r) + ")";
    case ComplexKind::AIP: return "A^" + N + "(i_P eta~_" + std::to_string(r) + ")";
    case ComplexKind::SEtaSq: return "A^" + N + "(eta^2)";
    case ComplexKind::AEpsSq: return "A^" + N + "(2^" + std::to_string(r) + " eta^2)";
  }
  return "?";
}

/// Multiset of elementary complexes, always kept in canonical order.
class Wedge {
 public:
  Wedge() = default;
  Wedge(std::initializer_list<ElementaryComplex> xs) : items_(xs) { normalize(); }
  explicit Wedge(std::vector<ElementaryComplex> xs) : items_(std::move(xs)) { normalize(); }

  const std::vector<ElementaryComplex>& summands() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Adds `copies` copies of x; a non-positive count adds nothing.
  Wedge& add(const ElementaryComplex& x, int copies = 1) {
    for (int i = 0; i < copies; ++i) items_.push_back(x);
    normalize();
    return *this;
  }
  Wedge& add(const Wedge& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    normalize();
    return *this;
  }
  /// Removes one copy of x; throws if absent.
  Wedge& remove(const ElementaryComplex& x) {
    auto it = std::find(items_.begin(), items_.end(), x);
    if (it == items_.end()) throw std::logic_error("wedge has no summand " + x.to_string());
    items_.erase(it);
    return *this;
  }

  int count(const ElementaryComplex& x) const {
    return static_cast<int>(std::count(items_.begin(), items_.end(), x));
  }
  bool contains(const ElementaryComplex& x) const { return count(x) > 0; }

  std::string to_string() const {
    if (items_.empty()) return "*";
    std::string out;
    for (const auto& x : items_) {
      if (!out.empty()) out += " v ";
      out += x.to_string();
    }
    return out;
  }

  friend bool operator==(const Wedge&, const Wedge&) = default;

 private:
  void normalize() { std::sort(items_.begin(), items_.end()); }
  std::vector<ElementaryComplex> items_;
};

inline Wedge normalize_wedge(const Wedge& w) { return w; }

/// Moore spaces P^n(Z/k), k split into its prime powers.
inline Wedge moore_wedge(int n, long long k) {
  if (k < 2) throw std::invalid_argument("Moore space order must be >= 2");
  Wedge w;
  for (const auto& pp : factor(k)) w.add(ElementaryComplex::moore(n, pp.p, pp.e));
  return w;
}

/// The Peterson space P^n(G) of a torsion group, as a wedge of Moore spaces.
inline Wedge peterson(const FgAbGroup& g, int n) {
  if (g.free_rank() != 0) throw std::invalid_argument("peterson: group has a free part");
  Wedge w;
  for (const auto& t : g.torsion()) w.add(ElementaryComplex::moore(n, t.p, t.e));
  return w;
}

inline Wedge suspend_wedge(const Wedge& w) {
  std::vector<ElementaryComplex> out;
  out.reserve(w.size());
  for (const auto& x : w.summands()) out.push_back(suspend(x));
  return Wedge(std::move(out));
}

inline FgAbGroup wedge_homology(const Wedge& w, int i) {
  FgAbGroup g;
  for (const auto& x : w.summands()) g += homology(x, i);
  return g;
}

inline int cell_count(const Wedge& w) {
  int total = 0;
  for (const auto& x : w.summands()) total += cell_count(x);
  return total;
}

class WedgeSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of Wedge::to_string. Composite Moore orders are split.
inline Wedge parse_wedge(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  Wedge w;
  std::string_view rest = trim(text);
  if (rest == "*") return w;
  if (rest.empty()) throw WedgeSyntaxError("empty wedge (write * for a point)");

  static const std::regex sphere(R"(S\^(\d+))");
  static const std::regex moore(R"(P\^(\d+)\(Z/(\d+)\))");
  static const std::regex ceta(R"(C\^(\d+)_eta)");
  static const std::regex cr(R"(C\^(\d+)_\{r=(\d+)\})");
  static const std::regex cs(R"(C\^\{(\d+),s=(\d+)\})");
  static const std::regex crs(R"(C\^\{(\d+),s=(\d+)\}_\{r=(\d+)\})");
  static const std::regex atilde(R"(A\^(\d+)\(eta~_(\d+)\))");
  static const std::regex aip(R"(A\^(\d+)\(i_P eta~_(\d+)\))");
  static const std::regex aeta2(R"(A\^(\d+)\(eta\^2\))");
  static const std::regex aeps(R"(A\^(\d+)\(2\^(\d+) eta\^2\))");

  while (true) {
    std::size_t sep = rest.find(" v ");
    std::string term(trim(rest.substr(0, sep)));
    std::smatch m;
    auto num = [&m](int i) { return std::stoi(m[i].str()); };
    try {
      if (std::regex_match(term, m, sphere)) {
        w.add(ElementaryComplex::sphere(num(1)));
      } else if (std::regex_match(term, m, moore)) {
        w.add(moore_wedge(num(1), std::stoll(m[2].str())));
      } else if (std::regex_match(term, m, ceta)) {
        w.add(ElementaryComplex::chang_eta(num(1)));
      } else if (std::regex_match(term, m, cr)) {
        w.add(ElementaryComplex::chang_r(num(1), num(2)));
      } else if (std::regex_match(term, m, crs)) {
        w.add(ElementaryComplex::chang_rs(num(1), num(3), num(2)));
      } else if (std::regex_match(term, m, cs)) {
        w.add(ElementaryComplex::chang_s(num(1), num(2)));
      } else if (std::regex_match(term, m, atilde)) {
        w.add(ElementaryComplex::a_tilde(num(1), num(2)));
      } else if (std::regex_match(term, m, aip)) {
        w.add(ElementaryComplex::a_ip(num(1), num(2)));
      } else if (std::regex_match(term, m, aeta2)) {
        w.add(ElementaryComplex::s_eta_sq(num(1)));
      } else if (std::regex_match(term, m, aeps)) {
        w.add(ElementaryComplex::a_eps_sq(num(1), num(2)));
      } else {
        throw WedgeSyntaxError("unrecognised wedge summand '" + term + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw WedgeSyntaxError("invalid summand '" + term + "': " + e.what());
    } catch (const std::out_of_range&) {
      throw WedgeSyntaxError("number out of range in '" + term + "'");
    }
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 3);
  }
  return w;
}

}  // namespace susp5
