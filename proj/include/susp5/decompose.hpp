#pragma once

// Manifold descriptors and the pipeline from them to the homology sections
// W3, W4, W5 and the wedge decompositions of the single and double suspension.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "susp5/abelian.hpp"
#include "susp5/errors.hpp"
#include "susp5/reduction.hpp"
#include "susp5/spaces.hpp"

namespace susp5 {

enum class SuspensionMode { Single, Double };

inline std::string to_string(SuspensionMode m) { return m == SuspensionMode::Single ? "single" : "double"; }

/// c1, c2 and the top-cell case supplied directly. Indices are 0-based
/// positions in the 2-primary part of T (canonical order).
struct InvariantData {
  int c1 = 0;
  int c2 = 0;
  std::optional<std::vector<int>> consumed{};
  AttachCase attach{};  // index: position in T_2 for the Moore/Chang cases

  friend bool operator==(const InvariantData&, const InvariantData&) = default;
};

/// Raw phi coefficients; an absent block means all zero.
struct PhiBits {
  std::optional<std::vector<std::uint8_t>> x, y, z, eps, w;
  friend bool operator==(const PhiBits&, const PhiBits&) = default;
};

struct AttachingData {
  HMatrix h;
  PhiBits phi;
  friend bool operator==(const AttachingData&, const AttachingData&) = default;
};

struct ManifoldDescriptor {
  int l = 1;
  int d = 1;
  FgAbGroup H;
  FgAbGroup T;
  bool spin = true;
  bool smooth = true;
  bool pd_mode = false;
  std::variant<InvariantData, AttachingData> data;

  friend bool operator==(const ManifoldDescriptor&, const ManifoldDescriptor&) = default;

  /// Exponents r_j of the 2-primary part of T, ascending.
  std::vector<int> t2_exponents() const {
    std::vector<int> out;
    for (const auto& t : T.torsion())
      if (t.p == 2) out.push_back(t.e);
    return out;
  }
  int t2() const { return static_cast<int>(t2_exponents().size()); }
};

struct Violation {
  enum class Kind { Range, Consistency };
  Kind kind = Kind::Range;
  std::string key;  // descriptor key the violation is about
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.message;
    }
    return out;
  }
};

/// Everything the wedge construction needs, with the provenance of each value.
struct Resolved {
  int c1 = 0;
  int c2 = 0;
  std::vector<int> consumed;  // ascending T_2 positions that become C^5_r
  AttachCase attach;          // index: T_2 position for Moore/Chang cases
  std::optional<HReduction> h_reduction;
  std::optional<PhiReduction> phi_reduction;
  std::vector<std::string> trace;
};

namespace detail {

inline std::vector<std::uint8_t> bits_or_zero(const std::optional<std::vector<std::uint8_t>>& v, std::size_t n) {
  return v ? *v : std::vector<std::uint8_t>(n, 0);
}

/// Phi vector laid out over W5's summands, plus the T_2 position of every
/// Moore and Chang entry.
struct PhiLayout {
  PhiVector v;
  std::vector<int> moore_pos;
  std::vector<int> chang_pos;
};

inline PhiLayout layout_phi(const ManifoldDescriptor& m, const PhiBits& bits, int c1, const std::vector<int>& consumed,
                            std::vector<Violation>& out) {
  const auto rs = m.t2_exponents();
  PhiLayout lay;
  for (int j = 0; j < static_cast<int>(rs.size()); ++j) {
    if (std::find(consumed.begin(), consumed.end(), j) != consumed.end()) lay.chang_pos.push_back(j);
    else lay.moore_pos.push_back(j);
  }
  auto expect = [&out](const std::optional<std::vector<std::uint8_t>>& v, std::size_t n, const char* key) {
    if (v && v->size() != n)
      out.push_back({Violation::Kind::Consistency, "phi",
                     std::string("phi block '") + key + "' needs " + std::to_string(n) + " entries, got " +
                         std::to_string(v->size())});
  };
  const std::size_t nx = static_cast<std::size_t>(std::max(0, m.d - c1));
  expect(bits.x, nx, "x");
  expect(bits.y, m.d, "y");
  expect(bits.z, lay.moore_pos.size(), "z");
  expect(bits.eps, lay.moore_pos.size(), "eps");
  expect(bits.w, lay.chang_pos.size(), "w");
  if (!out.empty()) return lay;
  lay.v.x = bits_or_zero(bits.x, nx);
  lay.v.y = bits_or_zero(bits.y, m.d);
  auto z = bits_or_zero(bits.z, lay.moore_pos.size());
  auto eps = bits_or_zero(bits.eps, lay.moore_pos.size());
  auto w = bits_or_zero(bits.w, lay.chang_pos.size());
  for (std::size_t k = 0; k < lay.moore_pos.size(); ++k)
    lay.v.moore.push_back(PhiVector::moore_entry(rs[lay.moore_pos[k]], z[k] != 0, eps[k] != 0));
  for (std::size_t k = 0; k < lay.chang_pos.size(); ++k)
    lay.v.chang.push_back({rs[lay.chang_pos[k]], w[k]});
  return lay;
}

inline bool is_bits(const std::optional<std::vector<std::uint8_t>>& v) {
  return !v || std::all_of(v->begin(), v->end(), [](auto b) { return b <= 1; });
}

}  // namespace detail

inline ValidationReport validate(const ManifoldDescriptor& m, SuspensionMode mode) {
  ValidationReport rep;
  auto range = [&rep](std::string key, std::string msg) {
    rep.violations.push_back({Violation::Kind::Range, std::move(key), std::move(msg)});
  };
  auto consistency = [&rep](std::string key, std::string msg) {
    rep.violations.push_back({Violation::Kind::Consistency, std::move(key), std::move(msg)});
  };

  if (m.l < 1) range("l", "l must be a positive integer");
  if (m.d < 1) range("d", "d must be a positive integer");
  if (m.H.free_rank() != 0) range("H", "H must be a torsion group");
  if (m.T.free_rank() != 0) range("T", "T must be a torsion group");
  if (has_2_torsion(m.H)) range("H", "H contains 2-torsion");
  if (mode == SuspensionMode::Single && has_3_torsion(m.H))
    range("H", "H contains 3-torsion (only the double suspension is available)");
  if (!m.smooth && !m.pd_mode)
    consistency("smooth", "a non-smooth descriptor must set pd_mode = true");
  if (!rep.ok()) return rep;

  const auto rs = m.t2_exponents();
  const int t2 = static_cast<int>(rs.size());

  if (const auto* inv = std::get_if<InvariantData>(&m.data)) {
    if (inv->c1 < 0 || inv->c1 > std::min(m.l, m.d))
      range("c1", "c1 = " + std::to_string(inv->c1) + " outside [0, min(l, d)] = [0, " +
                      std::to_string(std::min(m.l, m.d)) + "]");
    else if (inv->c2 < 0 || inv->c2 > std::min(m.l - inv->c1, t2))
      range("c2", "c2 = " + std::to_string(inv->c2) + " outside [0, min(l - c1, t2)] = [0, " +
                      std::to_string(std::min(m.l - inv->c1, t2)) + "]");
    if (!rep.ok()) return rep;

    std::vector<int> consumed;
    if (inv->consumed) {
      consumed = *inv->consumed;
      std::set<int> uniq(consumed.begin(), consumed.end());
      if (uniq.size() != consumed.size()) range("consumed", "consumed indices must be distinct");
      for (int j : consumed)
        if (j < 0 || j >= t2) range("consumed", "consumed index " + std::to_string(j + 1) + " is not a 2-primary summand of T");
      if (static_cast<int>(consumed.size()) != inv->c2)
        consistency("consumed", "consumed lists " + std::to_string(consumed.size()) + " summands but c2 = " +
                                    std::to_string(inv->c2));
      if (!rep.ok()) return rep;
    } else {
      for (int j = 0; j < inv->c2; ++j) consumed.push_back(j);
    }
    auto is_consumed = [&consumed](int j) { return std::find(consumed.begin(), consumed.end(), j) != consumed.end(); };

    using K = AttachCase::Kind;
    const AttachCase& a = inv->attach;
    const int j = a.index;
    const bool needs_index = a.kind == K::TildeEtaTop || a.kind == K::IPTildeEtaTop || a.kind == K::IEtaSqTop;
    if (needs_index && (j < 0 || j >= t2)) {
      range("case", "case index " + std::to_string(j + 1) + " is not a 2-primary summand of T");
      return rep;
    }
    if (m.spin) {
      if (a.kind == K::EtaTop || a.kind == K::TildeEtaTop || a.kind == K::IPTildeEtaTop)
        consistency("case", "case " + a.name() + " requires a non-spin manifold");
      else if (a.kind != K::Null) {
        if (m.smooth)
          consistency("case", "a smooth spin manifold has a null top attaching map (case " + a.name() + " needs a non-smooth pd_mode descriptor)");
        else if (a.kind == K::EtaSqTop && m.d - inv->c1 < 1)
          consistency("case", "case eta_sq needs an unabsorbed S^3 (d - c1 >= 1)");
        else if (a.kind == K::IEtaSqTop && is_consumed(j))
          consistency("case", "case i_eta_sq must name an unconsumed summand of T_2");
      }
    } else {
      if (a.kind == K::Null || a.kind == K::EtaSqTop || a.kind == K::IEtaSqTop)
        consistency("case", "a non-spin manifold needs case eta, tilde_eta or ip_tilde_eta, not " + a.name());
      else if (a.kind == K::TildeEtaTop && is_consumed(j))
        consistency("case", "case tilde_eta must name an unconsumed summand of T_2");
      else if (a.kind == K::IPTildeEtaTop && !is_consumed(j))
        consistency("case", "case ip_tilde_eta must name a consumed summand of T_2");
    }
    return rep;
  }

  const auto& att = std::get<AttachingData>(m.data);
  if (att.h.l != m.l) range("h_matrix", "h-matrix has " + std::to_string(att.h.l) + " columns, expected l = " + std::to_string(m.l));
  if (att.h.d() != m.d) range("h_matrix", "h-matrix has " + std::to_string(att.h.d()) + " sphere rows, expected d = " + std::to_string(m.d));
  if (att.h.moore_r != rs) range("h_matrix", "h-matrix Moore rows must list the exponents of T_2 in ascending order");
  try {
    att.h.validate();
  } catch (const std::invalid_argument& e) {
    range("h_matrix", e.what());
  }
  for (const auto* v : {&att.phi.x, &att.phi.y, &att.phi.z, &att.phi.eps, &att.phi.w})
    if (!detail::is_bits(*v)) range("phi", "phi coefficients are bits (0 or 1)");
  if (!rep.ok()) return rep;

  HReduction hr = reduce_h_matrix(att.h);
  auto lay = detail::layout_phi(m, att.phi, hr.c1, hr.consumed_moore_rows, rep.violations);
  if (!rep.ok()) return rep;
  try {
    reduce_phi(lay.v, {m.spin, m.smooth, m.pd_mode});
  } catch (const ContradictionError& e) {
    consistency("phi", e.what());
  }
  return rep;
}

/// Validates and fixes c1, c2, consumed summands and the top-cell case.
inline Resolved resolve(const ManifoldDescriptor& m, SuspensionMode mode) {
  ValidationReport rep = validate(m, mode);
  if (!rep.ok()) throw InvalidDescriptorError(rep.summary());
  Resolved res;
  const auto rs = m.t2_exponents();
  if (const auto* inv = std::get_if<InvariantData>(&m.data)) {
    res.c1 = inv->c1;
    res.c2 = inv->c2;
    if (inv->consumed) {
      res.consumed = *inv->consumed;
      std::sort(res.consumed.begin(), res.consumed.end());
    } else {
      for (int j = 0; j < inv->c2; ++j) res.consumed.push_back(j);
    }
    res.attach = inv->attach;
    if (res.attach.index >= 0 && res.attach.index < static_cast<int>(rs.size())) res.attach.r = rs[res.attach.index];
    res.trace.push_back("invariants supplied: c1 = " + std::to_string(res.c1) + ", c2 = " + std::to_string(res.c2));
  } else {
    const auto& att = std::get<AttachingData>(m.data);
    HReduction hr = reduce_h_matrix(att.h);
    res.c1 = hr.c1;
    res.c2 = hr.c2;
    res.consumed = hr.consumed_moore_rows;
    std::vector<Violation> ignored;
    auto lay = detail::layout_phi(m, att.phi, hr.c1, hr.consumed_moore_rows, ignored);
    PhiReduction pr = reduce_phi(lay.v, {m.spin, m.smooth, m.pd_mode});
    res.attach = pr.attach;
    using K = AttachCase::Kind;
    if (pr.attach.kind == K::TildeEtaTop || pr.attach.kind == K::IEtaSqTop) res.attach.index = lay.moore_pos[pr.attach.index];
    if (pr.attach.kind == K::IPTildeEtaTop) res.attach.index = lay.chang_pos[pr.attach.index];
    res.trace.push_back("h-matrix reduced: c1 = " + std::to_string(hr.c1) + ", c2 = " + std::to_string(hr.c2));
    res.trace.push_back("phi normalised: " + pr.rule);
    res.h_reduction = std::move(hr);
    res.phi_reduction = std::move(pr);
  }
  return res;
}

/// Human-readable name of the classification branch a case selects.
inline std::string case_description(const AttachCase& a, bool spin) {
  using K = AttachCase::Kind;
  const std::string r = std::to_string(a.r);
  switch (a.kind) {
    case K::Null: return spin ? "spin: top cell splits off as S^6" : "top cell splits off as S^6";
    case K::EtaTop: return "non-spin, no Bockstein lift: top cell on eta, giving C^6_eta";
    case K::TildeEtaTop: return "non-spin with Bockstein lift: top cell on eta~_" + r + " over P^4(Z/" + std::to_string(1LL << a.r) + ")";
    case K::IPTildeEtaTop: return "non-spin with Bockstein lift: top cell on i_P eta~_" + r + " over C^5_{r=" + r + "}";
    case K::EtaSqTop: return "Poincare complex, secondary operation nonzero, no Bockstein image: top cell on eta^2 over S^3";
    case K::IEtaSqTop: return "Poincare complex, secondary operation nonzero with Bockstein image: top cell on i eta^2 over P^4(Z/" + std::to_string(1LL << a.r) + ")";
  }
  return "?";
}

namespace detail {

/// The wedge decomposing Sigma M, with H taken as given (including any
/// 3-torsion, which only the double suspension can split off).
inline Wedge single_wedge(const ManifoldDescriptor& m, const Resolved& res) {
  using EC = ElementaryComplex;
  Wedge w;
  w.add(EC::sphere(2), m.l);
  w.add(EC::sphere(3), m.d - res.c1);
  w.add(EC::sphere(4), m.d);
  w.add(EC::sphere(5), m.l - res.c1 - res.c2);
  w.add(peterson(m.H, 3));
  w.add(peterson(m.H, 5));
  w.add(EC::chang_eta(5), res.c1);
  const auto& tors = m.T.torsion();
  for (int i = 0; i < static_cast<int>(tors.size()); ++i) {
    // 2-primary entries come first, so the torsion index is the T_2 index
    const bool consumed = tors[i].p == 2 && std::find(res.consumed.begin(), res.consumed.end(), i) != res.consumed.end();
    if (consumed) w.add(EC::chang_r(5, tors[i].e));
    else w.add(EC::moore(4, tors[i].p, tors[i].e));
  }
  w.add(EC::sphere(6));

  using K = AttachCase::Kind;
  const int r = res.attach.r;
  switch (res.attach.kind) {
    case K::Null: break;
    case K::EtaTop:
      w.remove(EC::sphere(4)).remove(EC::sphere(6)).add(EC::chang_eta(6));
      break;
    case K::TildeEtaTop:
      w.remove(EC::moore(4, 2, r)).remove(EC::sphere(6)).add(EC::a_tilde(6, r));
      break;
    case K::IPTildeEtaTop:
      w.remove(EC::chang_r(5, r)).remove(EC::sphere(6)).add(EC::a_ip(6, r));
      break;
    case K::EtaSqTop:
      w.remove(EC::sphere(3)).remove(EC::sphere(6)).add(EC::s_eta_sq(6));
      break;
    case K::IEtaSqTop:
      w.remove(EC::moore(4, 2, r)).remove(EC::sphere(6)).add(EC::a_eps_sq(6, r));
      break;
  }
  return w;
}

}  // namespace detail

struct HomologySections {
  Wedge w3;
  Wedge w4;
  Wedge w5;
};

inline HomologySections homology_sections(const ManifoldDescriptor& m, SuspensionMode mode = SuspensionMode::Single) {
  Resolved res = resolve(m, mode);
  using EC = ElementaryComplex;
  HomologySections s;
  s.w3.add(EC::sphere(3), m.d).add(peterson(m.H, 3)).add(peterson(m.T, 4));
  s.w4.add(EC::sphere(3), m.d).add(EC::sphere(4), m.d).add(peterson(m.H, 3)).add(peterson(m.H, 5)).add(peterson(m.T, 4));

  s.w5.add(peterson(m.H, 3)).add(peterson(m.H, 5));
  s.w5.add(EC::sphere(3), m.d - res.c1).add(EC::sphere(4), m.d).add(EC::sphere(5), m.l - res.c1 - res.c2);
  s.w5.add(EC::chang_eta(5), res.c1);
  const auto& tors = m.T.torsion();
  for (int i = 0; i < static_cast<int>(tors.size()); ++i) {
    const bool consumed = tors[i].p == 2 && std::find(res.consumed.begin(), res.consumed.end(), i) != res.consumed.end();
    s.w5.add(consumed ? EC::chang_r(5, tors[i].e) : EC::moore(4, tors[i].p, tors[i].e));
  }
  return s;
}

inline Wedge suspension_decomposition(const ManifoldDescriptor& m) {
  return detail::single_wedge(m, resolve(m, SuspensionMode::Single));
}

inline Wedge double_suspension_decomposition(const ManifoldDescriptor& m) {
  return suspend_wedge(detail::single_wedge(m, resolve(m, SuspensionMode::Double)));
}

inline Wedge decomposition(const ManifoldDescriptor& m, SuspensionMode mode) {
  return mode == SuspensionMode::Single ? suspension_decomposition(m) : double_suspension_decomposition(m);
}

/// Reduced integral homology of M itself.
inline FgAbGroup manifold_homology(const ManifoldDescriptor& m, int i) {
  switch (i) {
    case 1: return FgAbGroup::free(m.l) + m.H;
    case 2: return FgAbGroup::free(m.d) + m.T;
    case 3: return FgAbGroup::free(m.d) + m.H;
    case 4: return FgAbGroup::free(m.l);
    case 5: return FgAbGroup::free(1);
    default: return {};
  }
}

/// Positive-dimensional cells any decomposition must have: one per cell of a
/// minimal CW structure on M (bottom cell excluded).
inline int expected_cell_count(const ManifoldDescriptor& m) {
  return 2 * m.l + 2 * m.d + 4 * static_cast<int>(m.H.torsion().size()) + 2 * static_cast<int>(m.T.torsion().size()) + 1;
}

}  // namespace susp5
