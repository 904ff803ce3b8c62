#pragma once

// Normal forms for the two pieces of attaching data:
//  - the matrix of S^4 -> (S^3's v P^4(2^r)'s) classes, reduced to c1, c2;
//  - the top-cell attaching vector phi, reduced to one of six cases.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "susp5/errors.hpp"

namespace susp5 {

/// Entries are bits: a sphere-row 1 is eta : S^4 -> S^3, a Moore-row 1 is
/// i_3 eta : S^4 -> P^4(2^r).
struct HMatrix {
  int l = 0;
  std::vector<std::vector<std::uint8_t>> sphere_rows;
  std::vector<int> moore_r;
  std::vector<std::vector<std::uint8_t>> moore_rows;

  friend auto operator<=>(const HMatrix&, const HMatrix&) = default;

  int d() const { return static_cast<int>(sphere_rows.size()); }
  int t2() const { return static_cast<int>(moore_rows.size()); }

  static HMatrix zero(int l, int d, std::vector<int> moore_r) {
    HMatrix m;
    m.l = l;
    m.sphere_rows.assign(d, std::vector<std::uint8_t>(l, 0));
    m.moore_rows.assign(moore_r.size(), std::vector<std::uint8_t>(l, 0));
    m.moore_r = std::move(moore_r);
    return m;
  }

  void validate() const {
    if (l < 0) throw std::invalid_argument("h-matrix: negative column count");
    if (moore_r.size() != moore_rows.size()) throw std::invalid_argument("h-matrix: every Moore row needs an exponent");
    for (int r : moore_r)
      if (r < 1) throw std::invalid_argument("h-matrix: Moore exponent must be >= 1");
    auto check = [this](const std::vector<std::vector<std::uint8_t>>& rows) {
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != l) throw std::invalid_argument("h-matrix: row length differs from l");
        for (auto v : row)
          if (v > 1) throw std::invalid_argument("h-matrix: entries must be 0, eta or i3eta");
      }
    };
    check(sphere_rows);
    check(moore_rows);
  }
};

struct HReduction {
  int c1 = 0;
  int c2 = 0;
  std::vector<int> consumed_sphere_cols;  // pivot columns of the sphere block
  std::vector<int> consumed_moore_rows;   // ascending; these become C^5_{r_j}
  HMatrix normal_form;
};

namespace detail {

inline void add_row(std::vector<std::uint8_t>& dst, const std::vector<std::uint8_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

inline void add_col(HMatrix& m, int dst, int src) {
  for (auto& row : m.sphere_rows) row[dst] ^= row[src];
  for (auto& row : m.moore_rows) row[dst] ^= row[src];
}

inline void swap_col(HMatrix& m, int a, int b) {
  if (a == b) return;
  for (auto& row : m.sphere_rows) std::swap(row[a], row[b]);
  for (auto& row : m.moore_rows) std::swap(row[a], row[b]);
}

}  // namespace detail

/// Greedy elimination: the sphere block by full-pivot F2 elimination, then
/// Moore rows in descending exponent (ties: lowest index), each reduced by the
/// earlier Moore pivots before contributing a pivot of its own.
inline HReduction reduce_h_matrix(const HMatrix& input) {
  input.validate();
  HMatrix m = input;
  const int l = m.l;
  HReduction out;

  std::vector<int> col_of(l);  // current position -> original column
  for (int j = 0; j < l; ++j) col_of[j] = j;

  int k = 0;
  for (; k < std::min(m.d(), l); ++k) {
    int pi = -1, pj = -1;
    for (int i = k; i < m.d() && pi < 0; ++i)
      for (int j = k; j < l; ++j)
        if (m.sphere_rows[i][j]) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(m.sphere_rows[k], m.sphere_rows[pi]);
    detail::swap_col(m, k, pj);
    std::swap(col_of[k], col_of[pj]);
    for (int i = 0; i < m.d(); ++i)
      if (i != k && m.sphere_rows[i][k]) detail::add_row(m.sphere_rows[i], m.sphere_rows[k]);
    for (int j = 0; j < l; ++j)
      if (j != k && m.sphere_rows[k][j]) detail::add_col(m, j, k);
    out.consumed_sphere_cols.push_back(col_of[k]);
  }
  out.c1 = k;

  // i_3 composition clears Moore entries under sphere pivots
  for (auto& row : m.moore_rows)
    for (int c = 0; c < out.c1; ++c)
      if (row[c]) detail::add_row(row, m.sphere_rows[c]);

  std::vector<int> order(m.t2());
  for (int j = 0; j < m.t2(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&m](int a, int b) { return m.moore_r[a] > m.moore_r[b]; });

  struct Pivot {
    int row;
    int col;
  };
  std::vector<Pivot> pivots;
  int next_col = out.c1;
  for (int j : order) {
    auto& row = m.moore_rows[j];
    for (const auto& pv : pivots)
      if (row[pv.col]) detail::add_row(row, m.moore_rows[pv.row]);
    int c = -1;
    for (int col = next_col; col < l; ++col)
      if (row[col]) {
        c = col;
        break;
      }
    if (c < 0) continue;
    detail::swap_col(m, next_col, c);
    std::swap(col_of[next_col], col_of[c]);
    for (int col = 0; col < l; ++col)
      if (col != next_col && row[col]) detail::add_col(m, col, next_col);
    pivots.push_back({j, next_col});
    ++next_col;
  }
  out.c2 = static_cast<int>(pivots.size());
  for (const auto& pv : pivots) out.consumed_moore_rows.push_back(pv.row);
  std::sort(out.consumed_moore_rows.begin(), out.consumed_moore_rows.end());
  out.normal_form = std::move(m);
  return out;
}

/// All matrices reachable from m within `move_budget` elementary moves.
inline std::set<HMatrix> enumerate_orbit(const HMatrix& m, int move_budget) {
  m.validate();
  if (m.l > 3 || m.d() + m.t2() > 3) throw std::invalid_argument("enumerate_orbit: at most 3 rows and 3 columns");
  std::set<HMatrix> seen{m};
  std::deque<std::pair<HMatrix, int>> queue{{m, 0}};
  auto visit = [&](HMatrix next, int depth) {
    if (seen.insert(next).second) queue.emplace_back(std::move(next), depth);
  };
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth >= move_budget) continue;
    const int d = cur.d(), t = cur.t2();
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        if (i != k) {
          HMatrix nx = cur;
          detail::add_row(nx.sphere_rows[i], nx.sphere_rows[k]);
          visit(std::move(nx), depth + 1);
        }
    for (int j = 0; j < t; ++j)
      for (int k = 0; k < d; ++k) {
        HMatrix nx = cur;
        detail::add_row(nx.moore_rows[j], nx.sphere_rows[k]);
        visit(std::move(nx), depth + 1);
      }
    for (int j = 0; j < t; ++j)
      for (int k = 0; k < t; ++k)
        if (j != k && cur.moore_r[j] >= cur.moore_r[k]) {
          HMatrix nx = cur;
          detail::add_row(nx.moore_rows[k], nx.moore_rows[j]);
          visit(std::move(nx), depth + 1);
        }
    for (int a = 0; a < cur.l; ++a)
      for (int b = 0; b < cur.l; ++b)
        if (a != b) {
          HMatrix nx = cur;
          detail::add_col(nx, a, b);
          visit(std::move(nx), depth + 1);
        }
  }
  return seen;
}

/// Coefficients of the top attaching map phi : S^5 -> (remaining summands).
///
/// Moore entries with r = 1 carry one Z/4 coefficient of eta~_1 (2 eta~_1 =
/// i_3 eta^2); for r >= 2 bit 0 is z (eta~_r) and bit 1 is eps (i_3 eta^2).
struct PhiVector {
  struct MooreEntry {
    int r = 1;
    int value = 0;
    friend auto operator<=>(const MooreEntry&, const MooreEntry&) = default;
    bool z() const { return (value & 1) != 0; }
    bool eps() const { return r == 1 ? (value & 3) >= 2 : (value & 2) != 0; }
  };
  struct ChangEntry {
    int r = 1;
    std::uint8_t w = 0;
    friend auto operator<=>(const ChangEntry&, const ChangEntry&) = default;
  };

  std::vector<std::uint8_t> x;  // eta^2 on S^3 summands
  std::vector<std::uint8_t> y;  // eta on S^4 summands
  std::vector<MooreEntry> moore;
  std::vector<ChangEntry> chang;

  friend auto operator<=>(const PhiVector&, const PhiVector&) = default;

  static MooreEntry moore_entry(int r, bool z, bool eps) {
    if (r < 1) throw std::invalid_argument("Moore exponent must be >= 1");
    int v = r == 1 ? ((z ? 1 : 0) + (eps ? 2 : 0)) % 4 : (z ? 1 : 0) | (eps ? 2 : 0);
    return {r, v};
  }

  bool any_x() const { return std::any_of(x.begin(), x.end(), [](auto b) { return b != 0; }); }
  bool any_y() const { return std::any_of(y.begin(), y.end(), [](auto b) { return b != 0; }); }
  bool any_z() const { return std::any_of(moore.begin(), moore.end(), [](const auto& m) { return m.z(); }); }
  bool any_eps() const { return std::any_of(moore.begin(), moore.end(), [](const auto& m) { return m.eps(); }); }
  bool any_w() const { return std::any_of(chang.begin(), chang.end(), [](const auto& c) { return c.w != 0; }); }

  PhiVector zeroed() const {
    PhiVector v = *this;
    std::fill(v.x.begin(), v.x.end(), 0);
    std::fill(v.y.begin(), v.y.end(), 0);
    for (auto& m : v.moore) m.value = 0;
    for (auto& c : v.chang) c.w = 0;
    return v;
  }

  void validate() const {
    for (auto b : x)
      if (b > 1) throw std::invalid_argument("phi: x entries are bits");
    for (auto b : y)
      if (b > 1) throw std::invalid_argument("phi: y entries are bits");
    for (const auto& m : moore) {
      if (m.r < 1) throw std::invalid_argument("phi: Moore exponent must be >= 1");
      if (m.value < 0 || m.value > 3) throw std::invalid_argument("phi: Moore coefficient out of range");
    }
    for (const auto& c : chang) {
      if (c.r < 1) throw std::invalid_argument("phi: Chang exponent must be >= 1");
      if (c.w > 1) throw std::invalid_argument("phi: w entries are bits");
    }
  }
};

/// Outcome of normalising phi. `index` is the position inside the block the
/// case lives in (y for EtaTop, x for EtaSqTop, Moore entries for TildeEtaTop
/// and IEtaSqTop, Chang entries for IPTildeEtaTop); `r` its exponent.
struct AttachCase {
  enum class Kind { Null, EtaTop, TildeEtaTop, IPTildeEtaTop, EtaSqTop, IEtaSqTop };
  Kind kind = Kind::Null;
  int index = -1;
  int r = 0;

  friend auto operator<=>(const AttachCase&, const AttachCase&) = default;

  static AttachCase null() { return {}; }
  static AttachCase eta_top(int index = 0) { return {Kind::EtaTop, index, 0}; }
  static AttachCase tilde_eta_top(int index, int r) { return {Kind::TildeEtaTop, index, r}; }
  static AttachCase ip_tilde_eta_top(int index, int r) { return {Kind::IPTildeEtaTop, index, r}; }
  static AttachCase eta_sq_top(int index = 0) { return {Kind::EtaSqTop, index, 0}; }
  static AttachCase i_eta_sq_top(int index, int r) { return {Kind::IEtaSqTop, index, r}; }

  std::string name() const {
    switch (kind) {
      case Kind::Null: return "null";
      case Kind::EtaTop: return "eta";
      case Kind::TildeEtaTop: return "tilde_eta";
      case Kind::IPTildeEtaTop: return "ip_tilde_eta";
      case Kind::EtaSqTop: return "eta_sq";
      case Kind::IEtaSqTop: return "i_eta_sq";
    }
    return "?";
  }
};

struct PhiContext {
  bool spin = true;
  bool smooth = true;
  bool pd_mode = false;
};

struct PhiReduction {
  AttachCase attach;
  PhiVector normal_form;  // representative of the case, reachable from the input
  std::string rule;       // which normalisation rule fired
};

/// Normalises phi by the dominance rules:
///  non-spin: an eta~-type coefficient (z or w) wins over y; among those the
///  smallest exponent wins, z over w at equal exponent, lowest index first;
///  otherwise a y coefficient gives an eta top cell.
///  spin (Poincare-complex mode only): an x coefficient gives eta^2 on a
///  3-sphere; otherwise eps gives i eta^2 at the largest exponent.
inline PhiReduction reduce_phi(const PhiVector& v, const PhiContext& ctx) {
  v.validate();
  PhiReduction out;
  out.normal_form = v.zeroed();
  const bool sq2 = v.any_y() || v.any_z() || v.any_w();
  const bool secondary = v.any_x() || v.any_eps();

  if (ctx.spin) {
    if (sq2)
      throw ContradictionError("spin manifold with a nonzero y, z or w coefficient (Sq^2 would act nontrivially)");
    if (!secondary) {
      out.rule = "spin: phi is null";
      return out;
    }
    if (ctx.smooth)
      throw ContradictionError(
          "nonzero x or eps coefficient on a smooth spin manifold (the secondary operation vanishes there)");
    if (!ctx.pd_mode) throw ContradictionError("nonzero x or eps coefficient requires Poincare-complex mode");
    if (v.any_x()) {
      int i = static_cast<int>(std::find(v.x.begin(), v.x.end(), 1) - v.x.begin());
      out.attach = AttachCase::eta_sq_top(i);
      out.normal_form.x[i] = 1;
      out.rule = "x active: eta^2 on a 3-sphere clears every eps through i_3";
      return out;
    }
    int best = -1;
    for (int j = 0; j < static_cast<int>(v.moore.size()); ++j)
      if (v.moore[j].eps() && (best < 0 || v.moore[j].r > v.moore[best].r)) best = j;
    out.attach = AttachCase::i_eta_sq_top(best, v.moore[best].r);
    out.normal_form.moore[best] = PhiVector::moore_entry(v.moore[best].r, false, true);
    out.rule = "eps active: the largest exponent clears the others through B(chi)";
    return out;
  }

  if (!sq2) throw ContradictionError("non-spin manifold needs a nonzero y, z or w coefficient");
  int bz = -1, bw = -1;
  for (int j = 0; j < static_cast<int>(v.moore.size()); ++j)
    if (v.moore[j].z() && (bz < 0 || v.moore[j].r < v.moore[bz].r)) bz = j;
  for (int j = 0; j < static_cast<int>(v.chang.size()); ++j)
    if (v.chang[j].w && (bw < 0 || v.chang[j].r < v.chang[bw].r)) bw = j;
  if (bz >= 0 && (bw < 0 || v.moore[bz].r <= v.chang[bw].r)) {
    out.attach = AttachCase::tilde_eta_top(bz, v.moore[bz].r);
    out.normal_form.moore[bz] = PhiVector::moore_entry(v.moore[bz].r, true, false);
    out.rule = "z active at minimal exponent: eta~ on a Moore space";
    return out;
  }
  if (bw >= 0) {
    out.attach = AttachCase::ip_tilde_eta_top(bw, v.chang[bw].r);
    out.normal_form.chang[bw].w = 1;
    out.rule = "w active at exponent below every z: i_P eta~ on a Chang complex";
    return out;
  }
  int i = static_cast<int>(std::find(v.y.begin(), v.y.end(), 1) - v.y.begin());
  out.attach = AttachCase::eta_top(i);
  out.normal_form.y[i] = 1;
  out.rule = "only y active: eta on a 4-sphere clears x and eps";
  return out;
}

}  // namespace susp5
