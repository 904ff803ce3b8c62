#pragma once

// Random valid descriptors over every case branch, for property tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "susp5/decompose.hpp"

namespace susp5::testing {

enum class Branch { Spin, NonSpin, Poincare };

struct RandomOptions {
  int max_l = 5;
  int max_d = 5;
  int max_torsion = 6;  // summands of H and T together
  int max_exponent = 5;
  bool allow_3_torsion_in_h = false;
};

/// A descriptor carrying invariant data; smooth = false switches on pd_mode.
inline ManifoldDescriptor with_invariants(int l, int d, std::string_view h, std::string_view t, bool spin,
                                          InvariantData inv, bool smooth = true) {
  ManifoldDescriptor m;
  m.l = l;
  m.d = d;
  m.H = parse_group(h);
  m.T = parse_group(t);
  m.spin = spin;
  m.smooth = smooth;
  m.pd_mode = !smooth;
  m.data = std::move(inv);
  return m;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(std::mt19937_64& rng) { return uniform(rng, 0, 1) == 1; }

inline std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(uniform(rng, 0, 1));
  return v;
}

/// Picks l, d, H, T and the branch; the data part is left for the caller.
inline ManifoldDescriptor random_shape(std::mt19937_64& rng, const RandomOptions& o, Branch branch) {
  ManifoldDescriptor m;
  m.l = uniform(rng, 1, o.max_l);
  m.d = uniform(rng, 1, o.max_d);
  const int nh = uniform(rng, 0, std::min(3, o.max_torsion));
  const int nt = uniform(rng, 0, o.max_torsion - nh);
  std::vector<long long> h_primes{5, 7, 11};
  if (o.allow_3_torsion_in_h) h_primes.push_back(3);
  const long long t_primes[] = {2, 2, 2, 3, 5};
  std::vector<PrimePower> h, t;
  for (int i = 0; i < nh; ++i)
    h.push_back({h_primes[uniform(rng, 0, static_cast<int>(h_primes.size()) - 1)], uniform(rng, 1, std::min(3, o.max_exponent))});
  for (int i = 0; i < nt; ++i) {
    long long p = t_primes[uniform(rng, 0, 4)];
    t.push_back({p, uniform(rng, 1, p == 2 ? o.max_exponent : 2)});
  }
  m.H = FgAbGroup::from_parts(0, h);
  m.T = FgAbGroup::from_parts(0, t);
  m.spin = branch != Branch::NonSpin;
  m.smooth = branch == Branch::Spin || (branch == Branch::NonSpin && coin(rng));
  m.pd_mode = !m.smooth;
  return m;
}

inline InvariantData random_invariants(std::mt19937_64& rng, const ManifoldDescriptor& m, Branch branch) {
  const int t2 = m.t2();
  InvariantData inv;
  inv.c1 = uniform(rng, 0, std::min(m.l, m.d));
  inv.c2 = uniform(rng, 0, std::min(m.l - inv.c1, t2));
  // explicit consumed positions half the time, otherwise the default first c2
  std::vector<int> idx(t2);
  std::iota(idx.begin(), idx.end(), 0);
  if (coin(rng)) std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<int> consumed(idx.begin(), idx.begin() + inv.c2);
  std::vector<int> free(idx.begin() + inv.c2, idx.end());
  if (!std::is_sorted(idx.begin(), idx.end()) || coin(rng)) inv.consumed = consumed;
  auto pick = [&rng](const std::vector<int>& v) { return v[uniform(rng, 0, static_cast<int>(v.size()) - 1)]; };

  std::vector<AttachCase> options;
  if (branch == Branch::Spin) {
    options.push_back(AttachCase::null());
  } else if (branch == Branch::NonSpin) {
    options.push_back(AttachCase::eta_top());
    if (!free.empty()) options.push_back({AttachCase::Kind::TildeEtaTop, pick(free), 0});
    if (!consumed.empty()) options.push_back({AttachCase::Kind::IPTildeEtaTop, pick(consumed), 0});
  } else {
    if (m.d - inv.c1 >= 1) options.push_back(AttachCase::eta_sq_top());
    if (!free.empty()) options.push_back({AttachCase::Kind::IEtaSqTop, pick(free), 0});
    if (options.empty()) options.push_back(AttachCase::null());
  }
  inv.attach = options[uniform(rng, 0, static_cast<int>(options.size()) - 1)];
  return inv;
}

inline AttachingData random_attaching(std::mt19937_64& rng, const ManifoldDescriptor& m, Branch branch) {
  AttachingData a;
  a.h = HMatrix::zero(m.l, m.d, m.t2_exponents());
  for (auto& row : a.h.sphere_rows) row = random_bits(rng, m.l);
  for (auto& row : a.h.moore_rows) row = random_bits(rng, m.l);
  HReduction hr = reduce_h_matrix(a.h);
  const std::size_t nx = static_cast<std::size_t>(m.d - hr.c1);
  const std::size_t nm = static_cast<std::size_t>(m.t2() - hr.c2);
  const std::size_t nc = static_cast<std::size_t>(hr.c2);
  if (branch == Branch::Spin) {
    if (coin(rng)) a.phi.y = std::vector<std::uint8_t>(static_cast<std::size_t>(m.d), 0);
    return a;
  }
  if (branch == Branch::Poincare) {
    do {
      a.phi.x = random_bits(rng, nx);
      a.phi.eps = random_bits(rng, nm);
    } while (std::count(a.phi.x->begin(), a.phi.x->end(), 1) + std::count(a.phi.eps->begin(), a.phi.eps->end(), 1) == 0 &&
             nx + nm > 0);
    return a;
  }
  do {
    a.phi.y = random_bits(rng, static_cast<std::size_t>(m.d));
    a.phi.z = random_bits(rng, nm);
    a.phi.w = random_bits(rng, nc);
  } while (std::count(a.phi.y->begin(), a.phi.y->end(), 1) + std::count(a.phi.z->begin(), a.phi.z->end(), 1) +
               std::count(a.phi.w->begin(), a.phi.w->end(), 1) ==
           0);
  a.phi.x = random_bits(rng, nx);
  a.phi.eps = random_bits(rng, nm);
  return a;
}

/// A valid descriptor for `mode`; branches and both input kinds are mixed evenly.
inline ManifoldDescriptor random_descriptor(std::mt19937_64& rng, RandomOptions o = {},
                                            SuspensionMode mode = SuspensionMode::Single) {
  if (mode == SuspensionMode::Single) o.allow_3_torsion_in_h = false;
  for (;;) {
    const Branch branch = static_cast<Branch>(uniform(rng, 0, 2));
    ManifoldDescriptor m = random_shape(rng, o, branch);
    if (coin(rng)) m.data = random_invariants(rng, m, branch);
    else m.data = random_attaching(rng, m, branch);
    // a Poincare-complex draw with nothing to attach to is retried
    if (validate(m, mode).ok()) return m;
  }
}

}  // namespace susp5::testing
