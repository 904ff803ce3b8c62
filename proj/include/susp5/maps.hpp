#pragma once

// Homotopy classes between spheres, Moore spaces and Chang complexes in the
// low range: tabulated mapping groups with named generators and a symbolic
// composition calculus driven by a closed relation table.

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "susp5/abelian.hpp"
#include "susp5/errors.hpp"
#include "susp5/spaces.hpp"

namespace susp5 {

enum class GenKind {
  Degree,         // m * 1
  Eta,            // eta
  EtaSq,          // eta^2
  IEta,           // i eta
  IEtaSq,         // i eta^2
  TildeEta,       // eta~_r, with q eta~_r = eta
  IPTildeEta,     // i_P eta~_r
  IEtaZetaTilde,  // i_eta zeta~
  ZetaTilde,      // zeta~, with q zeta~ = 2
  ZetaBar,        // zeta-, with zeta- i = 2
  BChi,           // B(chi^r_s)
  IncBottom,      // i (bottom cell)
  PinchTop,       // q (pinch to a sphere)
  EtaQ,           // eta q
  IEtaQ,          // i eta q
  IncP,           // i_P : P^{n+1}(2^r) -> C^{n+2}_r
  XiBar,          // xi-_r : C^{n+2}_r -> P^{n+1}(2^{r+1})
  HatEta,         // eta^_s B(chi^r_s) : P^4(p^r) -> P^3(p^s)
  Gamma,          // generator of pi_5(P^3(3^r)) = Z/3^{r+1}
  TopExtension,   // extension over the top cell of m * q
};

/// chi^r_s: 1 when r >= s, p^{s-r} otherwise.
inline long long chi(long long p, int r, int s) { return r >= s ? 1 : detail::ipow(p, s - r); }

struct Generator {
  GenKind kind = GenKind::Degree;
  int a = 0;
  int b = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;

  static Generator degree(int m) { return {GenKind::Degree, m}; }
  static Generator identity() { return degree(1); }
  static Generator eta() { return {GenKind::Eta}; }
  static Generator eta_sq() { return {GenKind::EtaSq}; }
  static Generator i_eta() { return {GenKind::IEta}; }
  static Generator i_eta_sq() { return {GenKind::IEtaSq}; }
  static Generator tilde_eta(int r) { return {GenKind::TildeEta, r}; }
  static Generator ip_tilde_eta(int r) { return {GenKind::IPTildeEta, r}; }
  static Generator i_eta_zeta_tilde() { return {GenKind::IEtaZetaTilde}; }
  static Generator zeta_tilde() { return {GenKind::ZetaTilde}; }
  static Generator zeta_bar() { return {GenKind::ZetaBar}; }
  static Generator b_chi(int r, int s) { return {GenKind::BChi, r, s}; }
  static Generator inc_bottom() { return {GenKind::IncBottom}; }
  static Generator pinch() { return {GenKind::PinchTop}; }
  static Generator eta_q() { return {GenKind::EtaQ}; }
  static Generator i_eta_q() { return {GenKind::IEtaQ}; }
  static Generator inc_p() { return {GenKind::IncP}; }
  static Generator xi_bar(int r) { return {GenKind::XiBar, r}; }
  static Generator hat_eta(int r, int s) { return {GenKind::HatEta, r, s}; }
  static Generator gamma(int r) { return {GenKind::Gamma, r}; }
  static Generator top_extension(int m) { return {GenKind::TopExtension, m}; }

  std::string to_string() const {
    const std::string A = std::to_string(a);
    const std::string B = std::to_string(b);
    switch (kind) {
      case GenKind::Degree: return A;
      case GenKind::Eta: return "eta";
      case GenKind::EtaSq: return "eta^2";
      case GenKind::IEta: return "i eta";
      case GenKind::IEtaSq: return "i eta^2";
      case GenKind::TildeEta: return "eta~_" + A;
      case GenKind::IPTildeEta: return "i_P eta~_" + A;
      case GenKind::IEtaZetaTilde: return "i_eta zeta~";
      case GenKind::ZetaTilde: return "zeta~";
      case GenKind::ZetaBar: return "zeta-";
      case GenKind::BChi: return "B(chi^" + A + "_" + B + ")";
      case GenKind::IncBottom: return "i";
      case GenKind::PinchTop: return "q";
      case GenKind::EtaQ: return "eta q";
      case GenKind::IEtaQ: return "i eta q";
      case GenKind::IncP: return "i_P";
      case GenKind::XiBar: return "xi-_" + A;
      case GenKind::HatEta: return "eta^_" + B + " B(chi^" + A + "_" + B + ")";
      case GenKind::Gamma: return "gamma_" + A;
      case GenKind::TopExtension: return "ext(" + A + "q)";
    }
    return "?";
  }
};

/// A tabulated group [X, Y].
struct MappingGroup {
  struct Summand {
    Generator gen;
    long long order = 0;  // 0: infinite cyclic
  };
  /// A non-basis generator written as coeff * basis generator.
  struct Alias {
    Generator from;
    Generator to;
    long long coeff = 1;
  };

  ElementaryComplex domain;
  ElementaryComplex codomain;
  std::vector<Summand> summands{};
  std::vector<Alias> aliases{};
  /// Value not stated as such but forced by the stated closed forms.
  bool implied = false;
  /// Value computed here from a cofibration sequence rather than quoted.
  bool derived = false;
  /// The whole group dies under one suspension.
  bool suspends_trivially = false;

  FgAbGroup group() const {
    FgAbGroup g;
    for (const auto& s : summands) g += FgAbGroup::cyclic(s.order);
    return g;
  }
  std::optional<std::size_t> index_of(const Generator& gen) const {
    for (std::size_t i = 0; i < summands.size(); ++i)
      if (summands[i].gen == gen) return i;
    return std::nullopt;
  }
  bool is_trivial() const { return summands.empty(); }
};

namespace detail {

inline std::string pair_name(const ElementaryComplex& x, const ElementaryComplex& y) {
  return "[" + x.to_string() + ", " + y.to_string() + "]";
}

[[noreturn]] inline void unsupported_pair(const ElementaryComplex& x, const ElementaryComplex& y) {
  throw UnsupportedError("unsupported pair " + pair_name(x, y));
}

inline MappingGroup sphere_source(const ElementaryComplex& x, const ElementaryComplex& y) {
  MappingGroup g{x, y};
  const int m = x.n;
  const int b = y.bottom_dim();
  if (m < b) return g;
  switch (y.kind) {
    case ComplexKind::Sphere: {
      const int n = y.n;
      if (n == 1) return g;  // S^1 is aspherical
      if (m == n) g.summands = {{Generator::identity(), 0}};
      else if (m == n + 1) g.summands = {{Generator::eta(), n == 2 ? 0 : 2}};
      else if (m == n + 2) g.summands = {{Generator::eta_sq(), 2}};
      else unsupported_pair(x, y);
      return g;
    }
    case ComplexKind::Moore: {
      const long long k = y.moore_order();
      if (b < 2 && m > b) unsupported_pair(x, y);
      if (m == b) {
        g.summands = {{Generator::inc_bottom(), k}};
      } else if (m == b + 1) {
        if (y.p == 2) {
          if (b < 3) unsupported_pair(x, y);
          g.summands = {{Generator::i_eta(), 2}};
        } else if (b == 2) {
          g.summands = {{Generator::i_eta(), k}};
        }
      } else if (m == b + 2) {
        if (y.p == 2) {
          if (b < 3) unsupported_pair(x, y);
          if (y.e == 1) {
            g.summands = {{Generator::tilde_eta(1), 4}};
            g.aliases = {{Generator::i_eta_sq(), Generator::tilde_eta(1), 2}};
          } else {
            g.summands = {{Generator::tilde_eta(y.e), 2}, {Generator::i_eta_sq(), 2}};
          }
        } else if (b < 3) {
          unsupported_pair(x, y);
        }
      } else if (m == b + 3 && y.p != 2 && b == 2) {
        if (y.p == 3) {
          g.summands = {{Generator::gamma(y.e), detail::ipow(3, y.e + 1)}};
          g.suspends_trivially = true;
        }
      } else {
        unsupported_pair(x, y);
      }
      return g;
    }
    case ComplexKind::ChangEta:
      if (b < 3) unsupported_pair(x, y);
      if (m == b) g.summands = {{Generator::inc_bottom(), 0}};
      else if (m == b + 2) g.summands = {{Generator::zeta_tilde(), 0}};
      else if (m != b + 1) unsupported_pair(x, y);
      return g;
    case ComplexKind::ChangR:
      if (b < 3) unsupported_pair(x, y);
      if (m == b) g.summands = {{Generator::inc_bottom(), detail::ipow(2, y.r)}};
      else if (m == b + 2) g.summands = {{Generator::i_eta_zeta_tilde(), 0}, {Generator::ip_tilde_eta(y.r), 2}};
      else if (m != b + 1) unsupported_pair(x, y);
      return g;
    default:
      unsupported_pair(x, y);
  }
}

inline MappingGroup moore_source(const ElementaryComplex& x, const ElementaryComplex& y) {
  MappingGroup g{x, y};
  const int a = x.n - 1;  // bottom cell of the source
  const long long p = x.p;
  if (y.kind == ComplexKind::Sphere) {
    const int n = y.n;
    if (p != 2 && (n > x.n || n == x.n - 1)) {
      g.implied = true;
      return g;
    }
    if (n > x.n) return g;
    if (n == x.n) {
      g.summands = {{Generator::pinch(), x.moore_order()}};
      return g;
    }
    if (n == a && p == 2 && a >= 3) {
      g.summands = {{Generator::eta_q(), 2}};
      return g;
    }
    unsupported_pair(x, y);
  }
  if (y.kind == ComplexKind::Moore) {
    if (y.p != p) return g;
    const long long pm = detail::ipow(p, std::min(x.e, y.e));
    if (x.n == y.n) {
      const Generator B = Generator::b_chi(x.e, y.e);
      if (p != 2) {
        if (a == 2) g.summands = {{B, pm}, {Generator::i_eta_q(), pm}};
        else g.summands = {{B, pm}};
        if (x.e == y.e) g.aliases = {{Generator::identity(), B, 1}};
        return g;
      }
      if (a < 3) unsupported_pair(x, y);
      if (x.e == 1 && y.e == 1) {
        g.summands = {{B, 4}};
        g.aliases = {{Generator::i_eta_q(), B, 2}, {Generator::identity(), B, 1}};
      } else {
        g.summands = {{B, pm}, {Generator::i_eta_q(), 2}};
        if (x.e == y.e) g.aliases = {{Generator::identity(), B, 1}};
      }
      return g;
    }
    if (x.n == y.n + 1 && p != 2) {
      if (y.n == 3) g.summands = {{Generator::hat_eta(x.e, y.e), pm}};
      return g;
    }
    if (x.n < y.n - 1) return g;
    unsupported_pair(x, y);
  }
  unsupported_pair(x, y);
}

inline MappingGroup other_source(const ElementaryComplex& x, const ElementaryComplex& y) {
  MappingGroup g{x, y};
  if (y.kind != ComplexKind::Sphere) unsupported_pair(x, y);
  const int n = y.n;
  if (n > x.n) return g;
  switch (x.kind) {
    case ComplexKind::ChangEta:
      if (n == x.n) g.summands = {{Generator::pinch(), 0}};
      else if (x.n == 5 && n == 4) return g;
      else if (x.n == 6 && n == 4) {
        g.summands = {{Generator::zeta_bar(), 0}};
        g.derived = true;
      } else unsupported_pair(x, y);
      return g;
    case ComplexKind::ChangR:
      if (n == x.n) g.summands = {{Generator::pinch(), 0}};
      else if (x.n == 5 && n == 4) g.summands = {{Generator::pinch(), detail::ipow(2, x.r + 1)}};
      else unsupported_pair(x, y);
      return g;
    case ComplexKind::ATilde:
      if (x.n == 6 && n == 4) {
        if (x.r > 1) g.summands = {{Generator::top_extension(2), detail::ipow(2, x.r - 1)}};
      } else unsupported_pair(x, y);
      return g;
    case ComplexKind::AIP:
      if (x.n == 6 && n == 4) g.summands = {{Generator::top_extension(1), detail::ipow(2, x.r)}};
      else unsupported_pair(x, y);
      return g;
    case ComplexKind::SEtaSq:
      if (x.n == 6 && n == 4) g.derived = true;
      else unsupported_pair(x, y);
      return g;
    default:
      unsupported_pair(x, y);
  }
}

}  // namespace detail

/// [X, Y] from the closed tables; throws UnsupportedError for any other pair.
inline MappingGroup mapping_group(const ElementaryComplex& x, const ElementaryComplex& y) {
  switch (x.kind) {
    case ComplexKind::Sphere: return detail::sphere_source(x, y);
    case ComplexKind::Moore: return detail::moore_source(x, y);
    default: return detail::other_source(x, y);
  }
}

/// Formal sum of generators in [domain, codomain].
///
/// When the pair is tabulated the sum is normalised: aliases rewritten,
/// coefficients reduced mod their orders, zero terms dropped. Classes on
/// untabulated pairs (operators such as xi-_r) keep raw integer coefficients.
class MapClass {
 public:
  using Term = std::pair<Generator, long long>;

  MapClass() = default;
  MapClass(ElementaryComplex domain, ElementaryComplex codomain, std::vector<Term> terms)
      : domain_(domain), codomain_(codomain), terms_(std::move(terms)) {
    normalize();
  }

  static MapClass of(const ElementaryComplex& x, const ElementaryComplex& y, Generator g, long long c = 1) {
    return MapClass(x, y, {{g, c}});
  }
  static MapClass zero(const ElementaryComplex& x, const ElementaryComplex& y) { return MapClass(x, y, {}); }

  const ElementaryComplex& domain() const { return domain_; }
  const ElementaryComplex& codomain() const { return codomain_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool reduced() const { return reduced_; }

  long long coefficient(const Generator& g) const {
    for (const auto& [gen, c] : terms_)
      if (gen == g) return c;
    return 0;
  }

  friend MapClass operator+(const MapClass& a, const MapClass& b) {
    if (a.domain_ != b.domain_ || a.codomain_ != b.codomain_)
      throw std::invalid_argument("adding classes in different groups");
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return MapClass(a.domain_, a.codomain_, std::move(t));
  }
  friend MapClass operator*(long long k, const MapClass& a) {
    std::vector<Term> t = a.terms_;
    for (auto& term : t) term.second = detail::checked_mul(term.second, k);
    return MapClass(a.domain_, a.codomain_, std::move(t));
  }

  friend bool operator==(const MapClass&, const MapClass&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [g, c] : terms_) {
      if (!out.empty()) out += " + ";
      if (c != 1) out += std::to_string(c) + "*";
      out += g.to_string();
    }
    return out;
  }

 private:
  void normalize() {
    std::optional<MappingGroup> group;
    try {
      group = mapping_group(domain_, codomain_);
    } catch (const UnsupportedError&) {
    }
    std::vector<Term> merged;
    auto add = [&merged](const Generator& g, long long c) {
      for (auto& [gen, coeff] : merged)
        if (gen == g) {
          coeff = detail::checked_add(coeff, c);
          return;
        }
      merged.emplace_back(g, c);
    };
    for (const auto& [g, c] : terms_) {
      if (!group) {
        add(g, c);
        continue;
      }
      if (group->is_trivial()) continue;
      if (g.kind == GenKind::Degree && g.a != 1) {
        add(Generator::identity(), detail::checked_mul(c, g.a));
        continue;
      }
      add(g, c);
    }
    if (group) {
      // rewrite aliases into basis generators, then reduce
      std::vector<Term> basis;
      auto add_basis = [&basis](const Generator& g, long long c) {
        for (auto& [gen, coeff] : basis)
          if (gen == g) {
            coeff = detail::checked_add(coeff, c);
            return;
          }
        basis.emplace_back(g, c);
      };
      for (const auto& [g, c] : merged) {
        if (group->index_of(g)) {
          add_basis(g, c);
          continue;
        }
        auto alias = std::find_if(group->aliases.begin(), group->aliases.end(),
                                  [&g](const MappingGroup::Alias& al) { return al.from == g; });
        if (alias == group->aliases.end())
          throw std::invalid_argument(g.to_string() + " is not an element of " +
                                      detail::pair_name(domain_, codomain_));
        add_basis(alias->to, detail::checked_mul(c, alias->coeff));
      }
      merged.clear();
      for (const auto& s : group->summands) {
        long long c = 0;
        for (const auto& [g, coeff] : basis)
          if (g == s.gen) c = coeff;
        if (s.order != 0) c = ((c % s.order) + s.order) % s.order;
        if (c != 0) merged.emplace_back(s.gen, c);
      }
      reduced_ = true;
    } else {
      std::erase_if(merged, [](const Term& t) { return t.second == 0; });
      std::sort(merged.begin(), merged.end());
      reduced_ = false;
    }
    terms_ = std::move(merged);
  }

  ElementaryComplex domain_;
  ElementaryComplex codomain_;
  std::vector<Term> terms_;
  bool reduced_ = false;
};

inline bool is_null(const MapClass& f) { return f.terms().empty(); }

namespace detail {

inline bool is_identity(const Generator& g, const ElementaryComplex& on) {
  if (g.kind == GenKind::Degree && g.a == 1) return true;
  return g.kind == GenKind::BChi && on.kind == ComplexKind::Moore && g.a == on.e && g.b == on.e;
}

/// g o f for single generators f : X -> Y, g : Y -> Z.
inline MapClass relation(const Generator& g, const Generator& f, const ElementaryComplex& X,
                         const ElementaryComplex& Y, const ElementaryComplex& Z) {
  auto make = [&](Generator h, long long c = 1) { return MapClass::of(X, Z, h, c); };
  const MapClass zero = MapClass::zero(X, Z);
  using G = GenKind;

  if (is_identity(g, Y)) return make(f);
  if (is_identity(f, X)) return make(g);
  if (g.kind == G::Degree) return make(f, g.a);
  if (f.kind == G::Degree) return make(g, f.a);

  switch (g.kind) {
    case G::Eta:
      if (f.kind == G::Eta) return make(Generator::eta_sq());
      if (f.kind == G::PinchTop) return make(Generator::eta_q());
      break;
    case G::IncBottom:
      if (Z.kind == ComplexKind::ChangEta || Z.kind == ComplexKind::ChangR) {
        if (f.kind == G::Eta) return zero;
        break;
      }
      if (f.kind == G::Eta) return make(Generator::i_eta());
      if (f.kind == G::EtaSq) return make(Generator::i_eta_sq());
      if (f.kind == G::EtaQ) return make(Generator::i_eta_q());
      break;
    case G::IEta:
      if (f.kind == G::Eta) return make(Generator::i_eta_sq());
      if (f.kind == G::PinchTop) return make(Generator::i_eta_q());
      break;
    case G::PinchTop:
      if (Y.kind == ComplexKind::Moore) {
        if (f.kind == G::TildeEta) return make(Generator::eta());
        if (f.kind == G::IEtaSq || f.kind == G::IEta || f.kind == G::IncBottom || f.kind == G::IEtaQ) return zero;
        if (f.kind == G::BChi) return make(Generator::pinch(), chi(Y.p, f.b, f.a));
        if (f.kind == G::XiBar) return make(Generator::pinch());
      } else if (Y.kind == ComplexKind::ChangR) {
        const bool top = Z.n == Y.n;
        if (f.kind == G::IPTildeEta) return top ? zero : make(Generator::eta());
        if (f.kind == G::IEtaZetaTilde) return top ? make(Generator::degree(2)) : zero;
        if (f.kind == G::IncP) return top ? zero : make(Generator::pinch());
      } else if (Y.kind == ComplexKind::ChangEta) {
        if (f.kind == G::ZetaTilde) return make(Generator::degree(2));
      }
      break;
    case G::ZetaBar:
      if (f.kind == G::IncBottom) return make(Generator::degree(2));
      break;
    case G::BChi: {
      const long long p = Y.p;
      if (f.kind == G::TildeEta) return make(Generator::tilde_eta(g.b), chi(p, g.b, g.a));
      if (f.kind == G::IEtaSq) return make(Generator::i_eta_sq(), chi(p, g.a, g.b));
      if (f.kind == G::IEta) return make(Generator::i_eta(), chi(p, g.a, g.b));
      if (f.kind == G::IncBottom) return make(Generator::inc_bottom(), chi(p, g.a, g.b));
      break;
    }
    case G::IEtaQ:
    case G::EtaQ: {
      const Generator top = g.kind == G::IEtaQ ? Generator::i_eta_sq() : Generator::eta_sq();
      if (Y.kind == ComplexKind::Moore) {
        if (f.kind == G::TildeEta) return make(top);
        if (f.kind == G::IEtaSq || f.kind == G::IEta || f.kind == G::IncBottom) return zero;
      } else if (Y.kind == ComplexKind::ChangR) {
        if (f.kind == G::IPTildeEta) return make(top);
        if (f.kind == G::IEtaZetaTilde) return zero;
      }
      break;
    }
    case G::IncP:
      if (f.kind == G::TildeEta) return make(Generator::ip_tilde_eta(f.a));
      if (f.kind == G::IEtaSq || f.kind == G::IEta) return zero;
      if (f.kind == G::IncBottom) return make(Generator::inc_bottom());
      break;
    case G::XiBar:
      if (f.kind == G::IPTildeEta) return make(Generator::tilde_eta(g.a + 1));
      if (f.kind == G::IncP) return make(Generator::b_chi(g.a, g.a + 1));
      if (f.kind == G::IncBottom) return make(Generator::inc_bottom(), 2);
      break;
    case G::HatEta:
      if (f.kind == G::IncBottom) return make(Generator::i_eta(), chi(Y.p, g.a, g.b));
      if (f.kind == G::BChi && g.a == g.b) return make(Generator::hat_eta(f.a, g.b));
      break;
    default:
      break;
  }
  throw UnknownCompositeError("unknown composite " + g.to_string() + " o " + f.to_string() + " in " +
                              pair_name(X, Z));
}

}  // namespace detail

/// g o f, bilinear over formal sums (all sources here are suspensions in the
/// stable range, so composition distributes on both sides).
inline MapClass compose(const MapClass& g, const MapClass& f) {
  if (f.codomain() != g.domain())
    throw std::invalid_argument("compose: codomain " + f.codomain().to_string() + " != domain " +
                                g.domain().to_string());
  MapClass out = MapClass::zero(f.domain(), g.codomain());
  for (const auto& [gg, a] : g.terms())
    for (const auto& [ff, b] : f.terms()) {
      MapClass r = detail::relation(gg, ff, f.domain(), f.codomain(), g.codomain());
      out = out + detail::checked_mul(a, b) * r;
    }
  return out;
}

}  // namespace susp5
