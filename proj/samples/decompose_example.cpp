// Builds a descriptor in code and prints its suspension splitting and invariants.

#include <iostream>

#include "susp5/decompose.hpp"
#include "susp5/invariants.hpp"

int main() {
  using namespace susp5;
  ManifoldDescriptor m;
  m.l = 2;
  m.d = 1;
  m.H = parse_group("Z/5");
  m.T = parse_group("Z/2 + Z/4");
  m.spin = false;
  m.data = InvariantData{0, 1, std::vector<int>{1}, AttachCase::ip_tilde_eta_top(1, 2)};

  Resolved res = resolve(m, SuspensionMode::Single);
  std::cout << "case      : " << case_description(res.attach, m.spin) << "\n";
  std::cout << "Sigma M   ~ " << suspension_decomposition(m).to_string() << "\n";
  std::cout << "Sigma^2 M ~ " << double_suspension_decomposition(m).to_string() << "\n";
  std::cout << "K~(M)     = " << k_group(m).to_string() << "\n";
  std::cout << "KO~(M)    = " << ko_group(m).to_string() << "\n";
  std::cout << "pi^3(M)   = " << pi3(m).to_string() << "\n";
  std::cout << "[SM, S^4] = " << pi4_sigma_crosscheck(m).to_string() << "\n";
}
