#pragma once

// Reduced K- and KO-groups and the third cohomotopy group of M, computed
// summand-wise over the suspension wedges and checked against closed forms.

#include <stdexcept>
#include <string>
#include <vector>

#include "susp5/abelian.hpp"
#include "susp5/decompose.hpp"
#include "susp5/errors.hpp"
#include "susp5/maps.hpp"
#include "susp5/spaces.hpp"

namespace susp5 {

/// A table value together with where it came from.
struct TableEntry {
  FgAbGroup group;
  std::string source;  // "table", "sphere", "derived", "implied"
};

/// One summand's contribution to a summand-wise computation.
struct Contribution {
  ElementaryComplex summand;
  TableEntry entry;
};

struct SummandwiseResult {
  FgAbGroup total;
  std::vector<Contribution> terms;
};

/// Reduced complex K-group of one summand.
inline TableEntry k_entry(const ElementaryComplex& x) {
  const bool even = x.n % 2 == 0;
  switch (x.kind) {
    case ComplexKind::Sphere:
      return {even ? FgAbGroup::free(1) : FgAbGroup{}, "sphere"};
    case ComplexKind::Moore:
      return {even ? FgAbGroup::cyclic(x.moore_order()) : FgAbGroup{}, "table"};
    case ComplexKind::ChangEta:
      return {even ? FgAbGroup::free(2) : FgAbGroup{}, "table"};
    case ComplexKind::ChangR:
      if (x.n == 6) return {FgAbGroup::free(1), "table"};
      break;
    case ComplexKind::AIP:
      if (x.n == 7) return {FgAbGroup::free(1), "table"};
      break;
    case ComplexKind::ATilde:
      if (x.n == 7) return {{}, "table"};
      break;
    case ComplexKind::SEtaSq:
      if (x.n == 7) return {FgAbGroup::free(1), "derived"};
      break;
    case ComplexKind::AEpsSq:
      if (x.n == 7) return {{}, "derived"};
      break;
    default:
      break;
  }
  throw UnsupportedError("no K-group entry for " + x.to_string());
}

/// KO~(S^i) for i >= 0, indexed by i mod 8.
inline FgAbGroup ko_sphere(int i) {
  switch (((i % 8) + 8) % 8) {
    case 0:
    case 4: return FgAbGroup::free(1);
    case 1:
    case 2: return FgAbGroup::cyclic(2);
    default: return {};
  }
}

/// KO~^2 of one summand, i.e. KO~ of its double desuspension.
inline TableEntry ko2_entry(const ElementaryComplex& x) {
  const FgAbGroup z = FgAbGroup::free(1);
  const FgAbGroup z2 = FgAbGroup::cyclic(2);
  switch (x.kind) {
    case ComplexKind::Sphere:
      if (x.n >= 2) return {ko_sphere(x.n - 2), "sphere"};
      break;
    case ComplexKind::Moore:
      if (x.p != 2 && x.n >= 4 && x.n <= 6) return {{}, "table"};
      if (x.p == 2 && x.n == 5) return {z2, "table"};
      break;
    case ComplexKind::ChangEta:
      if (x.n == 7) return {{}, "table"};
      if (x.n == 6) return {z + z2, "table"};
      break;
    case ComplexKind::ChangR:
      if (x.n == 6) return {z + z2, "table"};
      break;
    case ComplexKind::AIP:
      if (x.n == 7) return {z + z2, "table"};
      break;
    case ComplexKind::ATilde:
      if (x.n == 7) return {z2, "table"};
      break;
    case ComplexKind::SEtaSq:
      if (x.n == 7) return {z2, "derived"};
      break;
    case ComplexKind::AEpsSq:
      if (x.n == 7) return {z2, "derived"};
      break;
    default:
      break;
  }
  throw UnsupportedError("no KO^2-group entry for " + x.to_string());
}

namespace detail {

template <class Entry>
SummandwiseResult sum_over(const Wedge& w, Entry entry) {
  SummandwiseResult out;
  for (const auto& x : w.summands()) {
    TableEntry e = entry(x);
    out.total += e.group;
    out.terms.push_back({x, std::move(e)});
  }
  return out;
}

inline SuspensionMode widest_mode(const ManifoldDescriptor& m) {
  return has_3_torsion(m.H) ? SuspensionMode::Double : SuspensionMode::Single;
}

}  // namespace detail

/// K~(M) = K~(Sigma^2 M) summed over the double-suspension wedge.
inline SummandwiseResult k_group_summandwise(const ManifoldDescriptor& m) {
  return detail::sum_over(double_suspension_decomposition(m), k_entry);
}

inline SummandwiseResult ko_group_summandwise(const ManifoldDescriptor& m) {
  return detail::sum_over(double_suspension_decomposition(m), ko2_entry);
}

inline FgAbGroup k_group_closed_form(const ManifoldDescriptor& m) {
  return FgAbGroup::free(m.d + m.l) + m.H + m.H;
}

inline FgAbGroup ko_group_closed_form(const ManifoldDescriptor& m) {
  return FgAbGroup::free(m.l) + FgAbGroup::cyclic(2).power(m.l + m.d + m.t2());
}

/// Summand-wise K~(M), asserted equal to Z^{d+l} + H + H.
inline FgAbGroup k_group(const ManifoldDescriptor& m) {
  FgAbGroup g = k_group_summandwise(m).total;
  if (g != k_group_closed_form(m))
    throw std::logic_error("K-group mismatch: summand-wise " + g.to_string() + " vs closed form " +
                           k_group_closed_form(m).to_string());
  return g;
}

/// Summand-wise KO~(M), asserted equal to Z^l + (Z/2)^{l+d+t2}.
inline FgAbGroup ko_group(const ManifoldDescriptor& m) {
  FgAbGroup g = ko_group_summandwise(m).total;
  if (g != ko_group_closed_form(m))
    throw std::logic_error("KO-group mismatch: summand-wise " + g.to_string() + " vs closed form " +
                           ko_group_closed_form(m).to_string());
  return g;
}

namespace detail {

inline void require_manifold_case(const Resolved& res) {
  using K = AttachCase::Kind;
  if (res.attach.kind == K::EtaSqTop || res.attach.kind == K::IEtaSqTop)
    throw UnsupportedError("third cohomotopy group is not available for the Poincare-complex case " + res.attach.name());
}

}  // namespace detail

/// pi^3(M) from the closed forms of the classification branches.
inline FgAbGroup pi3(const ManifoldDescriptor& m) {
  Resolved res = resolve(m, detail::widest_mode(m));
  detail::require_manifold_case(res);
  const auto rs = m.t2_exponents();
  const FgAbGroup z2 = FgAbGroup::cyclic(2);
  const FgAbGroup t_rest = m.T.quotient_by_summands(std::vector<std::size_t>(res.consumed.begin(), res.consumed.end()));
  auto chang_part = [&](int skip) {
    FgAbGroup g;
    for (int j : res.consumed)
      if (j != skip) g += FgAbGroup::cyclic(1LL << (rs[j] + 1));
    return g;
  };
  const int base = m.l - res.c1 - res.c2;
  if (base < 0) throw std::logic_error("pi3: l - c1 - c2 is negative");
  FgAbGroup g = FgAbGroup::free(m.d);
  using K = AttachCase::Kind;
  const int r = res.attach.r;
  switch (res.attach.kind) {
    case K::Null:
      return g + z2.power(base + 1) + t_rest + chang_part(-1);
    case K::EtaTop:
      return g + z2.power(base) + t_rest + chang_part(-1);
    case K::TildeEtaTop: {
      // drop the eta~ summand from T[c2]; its torsion position is its T_2 index
      std::vector<std::size_t> drop(res.consumed.begin(), res.consumed.end());
      drop.push_back(static_cast<std::size_t>(res.attach.index));
      return g + z2.power(base) + m.T.quotient_by_summands(drop) + chang_part(-1) + FgAbGroup::cyclic(1LL << (r - 1));
    }
    case K::IPTildeEtaTop:
      return g + z2.power(base) + t_rest + chang_part(res.attach.index) + FgAbGroup::cyclic(1LL << r);
    default:
      break;
  }
  throw std::logic_error("pi3: unreachable case");
}

/// [Sigma M, S^4] summed over the suspension wedge. With 3-torsion in H the
/// single-suspension summands are used through [X, S^4] = [Sigma X, S^5].
inline SummandwiseResult pi4_sigma_summandwise(const ManifoldDescriptor& m) {
  Resolved res = resolve(m, detail::widest_mode(m));
  detail::require_manifold_case(res);
  Wedge w = detail::single_wedge(m, res);
  const ElementaryComplex s4 = ElementaryComplex::sphere(4);
  return detail::sum_over(w, [&s4](const ElementaryComplex& x) {
    MappingGroup g = mapping_group(x, s4);
    std::string src = g.implied ? "implied" : g.derived ? "derived" : "table";
    return TableEntry{g.group(), src};
  });
}

inline FgAbGroup pi4_sigma_crosscheck(const ManifoldDescriptor& m) { return pi4_sigma_summandwise(m).total; }

/// Cohomotopy groups that agree with cohomology: degree 1 and 5.
inline FgAbGroup hurewicz_cohomotopy(const ManifoldDescriptor& m, int i) {
  if (i == 1) return FgAbGroup::free(m.l);
  if (i == 5) return FgAbGroup::free(1);
  throw UnsupportedError("cohomotopy group pi^" + std::to_string(i) + " is only available in degrees 1 and 5");
}

}  // namespace susp5
